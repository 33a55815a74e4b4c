#pragma once

#include <cstddef>
#include <vector>

namespace fracdyn {

// Uniform grid s_n = t0 + n * step, n = 0..N, step = (T - t0) / N.
struct GridSpec {
  double t0 = 0.0;
  double T = 1.0;
  std::size_t N = 1;

  // Throws DomainError unless t0 < T, both finite and N >= 1.
  void validate() const;

  double step() const { return (T - t0) / static_cast<double>(N); }
  double node(std::size_t n) const { return t0 + static_cast<double>(n) * step(); }

  // All N + 1 nodes.
  std::vector<double> nodes() const;
  // The N left endpoints s_0..s_{N-1} at which explicit schemes evaluate.
  std::vector<double> evaluation_nodes() const;

  bool operator==(const GridSpec&) const = default;
};

}  // namespace fracdyn
