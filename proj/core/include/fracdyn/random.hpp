#pragma once

#include <cstdint>
#include <random>

namespace fracdyn {

// Portable standard-normal source: std::mt19937_64 (whose output sequence is
// fixed by the C++ standard) feeding a Box-Muller transform. Uniforms use the
// top 53 bits of each draw; both Box-Muller outputs are consumed in order
// (cosine branch first). Same seed, same sequence, on every conforming
// platform.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double next();

 private:
  // (0, 1]
  double open_uniform();
  // [0, 1)
  double uniform();

  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace fracdyn
