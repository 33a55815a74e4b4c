#include "fracdyn/grid.hpp"

#include <cmath>

#include "fracdyn/error.hpp"

namespace fracdyn {

void GridSpec::validate() const {
  if (!std::isfinite(t0) || !std::isfinite(T)) throw DomainError("grid bounds must be finite");
  if (!(T > t0)) throw DomainError("grid requires T > t0");
  if (N < 1) throw DomainError("grid requires N >= 1");
  if (!(step() > 0.0)) throw DomainError("grid step underflows to zero");
}

std::vector<double> GridSpec::nodes() const {
  std::vector<double> out(N + 1);
  for (std::size_t n = 0; n <= N; ++n) out[n] = node(n);
  return out;
}

std::vector<double> GridSpec::evaluation_nodes() const {
  std::vector<double> out(N);
  for (std::size_t n = 0; n < N; ++n) out[n] = node(n);
  return out;
}

}  // namespace fracdyn
