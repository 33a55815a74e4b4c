#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fracdyn/grid.hpp"
#include "fracdyn/kernel.hpp"

namespace fracdyn {

// Cumulative values of a path given its increments: value[0] = 0,
// value[n] = sum_{k<n} increments[k].
std::vector<double> cumulative(std::span<const double> increments);

struct WienerPath {
  GridSpec grid;
  std::uint64_t seed = 0;
  // N draws from Normal(0, step).
  std::vector<double> increments;

  std::vector<double> values() const { return cumulative(increments); }
};

// Deterministic Liu path at a fixed credibility level c in (0, 1): each
// increment is the inverse of the normal fuzzy credibility distribution,
//   dL = e K + sigma K (sqrt 6 / pi) ln(c / (1 - c)).
struct LiuPath {
  GridSpec grid;
  double z = 0.0;
  double drift = 0.0;
  double sigma = 1.0;
  double credibility = 0.5;
  std::vector<double> increments;

  std::vector<double> values() const { return cumulative(increments); }
};

// c = 1 / (1 + exp(-pi z / (sigma sqrt 6))).
double credibility_level(double z, double sigma);

WienerPath sample_wiener(const GridSpec& grid, std::uint64_t seed);

// Liu path indexed by the fuzzy realization z. Throws DomainError if sigma <= 0.
LiuPath sample_liu(const GridSpec& grid, double z, double drift, double sigma);

// Same path family indexed directly by the credibility level c in (0, 1).
LiuPath sample_liu_at_level(const GridSpec& grid, double credibility, double drift, double sigma);

enum class Driver { Wiener, Liu };

// J^alpha (Wiener driver) or K^alpha (Liu driver) sampled at every grid node.
struct FractionalProcessSample {
  KernelSpec kernel;
  Driver driver = Driver::Wiener;
  GridSpec grid;
  std::vector<double> values;
};

// Weights g_{s_n}(s_k), k = 0..n-1, for the fractional integral observed at
// grid node n.
std::vector<double> fractional_weights(const KernelSpec& kernel, const GridSpec& grid,
                                       std::size_t n, const SingularityPolicy& policy = {});

// values[n] = sum_{k<n} g_{s_n}(s_k) increments[k]; the observation time of
// the kernel is moved to each evaluation point s_n. O(N^2).
std::vector<double> fractional_values(const KernelSpec& kernel, const GridSpec& grid,
                                      std::span<const double> increments,
                                      const SingularityPolicy& policy = {});

FractionalProcessSample fractional_process(const KernelSpec& kernel, const WienerPath& path,
                                           const SingularityPolicy& policy = {});
FractionalProcessSample fractional_process(const KernelSpec& kernel, const LiuPath& path,
                                           const SingularityPolicy& policy = {});

// CSV with header `n,s,increment,value`. Row n carries the increment that
// leads into s_n (0 on the first row) and the path value at s_n.
void write_path_csv(std::ostream& out, const GridSpec& grid, std::span<const double> increments);

}  // namespace fracdyn
