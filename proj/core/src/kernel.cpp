#include "fracdyn/kernel.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "fracdyn/error.hpp"
#include "fracdyn/special.hpp"

namespace fracdyn {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double logistic_unit(const AlphaFunction::Logistic& l, double z) {
  return 1.0 / (1.0 + std::exp(-(z - l.center) / l.width));
}

// Offset s - t after applying the singularity policy. Clamping keeps the sign
// of s - t and maps an exact hit to -epsilon (s approaching t from below).
double policy_offset(const KernelSpec& spec, double s, const SingularityPolicy& policy) {
  const double offset = s - spec.observed_time;
  if (std::abs(offset) >= policy.epsilon) return offset;
  if (policy.mode == SingularityPolicy::Mode::Error) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "kernel evaluated at s=" << s << " within epsilon=" << policy.epsilon
        << " of observed time t=" << spec.observed_time;
    throw SingularityError(msg.str(), s, spec.observed_time);
  }
  return offset > 0.0 ? policy.epsilon : -policy.epsilon;
}

double checked_order(const KernelSpec& spec, double z, double s) {
  const double a = spec.alpha.value(z);
  if (!(a > 0.0 && a <= 1.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "fractional order alpha(s-t)=" << a << " at s=" << s << " is outside (0, 1]";
    throw DomainError(msg.str());
  }
  return a;
}

}  // namespace

AlphaFunction::AlphaFunction(Variant form) : form_(form) {
  std::visit(Overloaded{
                 [](const Constant& c) {
                   if (!std::isfinite(c.a)) throw DomainError("alpha.a must be finite");
                 },
                 [](const Affine& a) {
                   if (!std::isfinite(a.a0) || !std::isfinite(a.a1))
                     throw DomainError("alpha affine coefficients must be finite");
                 },
                 [](const Logistic& l) {
                   if (!std::isfinite(l.lo) || !std::isfinite(l.hi) ||
                       !std::isfinite(l.center) || !std::isfinite(l.width))
                     throw DomainError("alpha logistic parameters must be finite");
                   if (!(l.width > 0.0)) throw DomainError("alpha.width must be > 0");
                 },
             },
             form_);
}

double AlphaFunction::value(double z) const {
  return std::visit(Overloaded{
                        [](const Constant& c) { return c.a; },
                        [z](const Affine& a) { return a.a0 + a.a1 * z; },
                        [z](const Logistic& l) { return l.lo + (l.hi - l.lo) * logistic_unit(l, z); },
                    },
                    form_);
}

double AlphaFunction::derivative(double z) const {
  return std::visit(Overloaded{
                        [](const Constant&) { return 0.0; },
                        [](const Affine& a) { return a.a1; },
                        [z](const Logistic& l) {
                          const double u = logistic_unit(l, z);
                          return (l.hi - l.lo) * u * (1.0 - u) / l.width;
                        },
                    },
                    form_);
}

void KernelSpec::validate() const {
  if (!std::isfinite(rho) || rho < 0.0) throw DomainError("rho must be finite and >= 0");
  if (!std::isfinite(observed_time)) throw DomainError("observed_time must be finite");
}

void SingularityPolicy::validate() const {
  if (!std::isfinite(epsilon) || !(epsilon > 0.0)) {
    throw DomainError("singularity epsilon must be finite and > 0");
  }
}

double kernel_value(const KernelSpec& spec, double s, const SingularityPolicy& policy) {
  const double offset = policy_offset(spec, s, policy);
  const double z = s - spec.observed_time;
  const double a = checked_order(spec, z, s);
  const double exponent = (a - 1.0) * std::log(std::abs(offset)) - spec.rho * z;
  return std::exp(exponent) / special::gamma(a);
}

double h_correction(const KernelSpec& spec, double s, const SingularityPolicy& policy,
                    HConvention convention) {
  const double offset = policy_offset(spec, s, policy);
  const double z = s - spec.observed_time;
  const double a = checked_order(spec, z, s);
  const double da = spec.alpha.derivative(z);

  double h = (a - 1.0) / offset;
  if (da != 0.0) {
    // (1/Gamma(alpha)) dGamma(alpha(s-t))/ds = psi(alpha) alpha'
    h += da * std::log(std::abs(offset)) - special::digamma(a) * da;
  }
  h += convention == HConvention::PlusRho ? spec.rho : -spec.rho;
  return h;
}

std::vector<std::size_t> validate_grid(const KernelSpec& spec, std::span<const double> nodes,
                                       const SingularityPolicy& policy) {
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (std::abs(nodes[i] - spec.observed_time) < policy.epsilon) hits.push_back(i);
  }
  return hits;
}

void check_order_range(const KernelSpec& spec, std::span<const double> nodes) {
  for (double s : nodes) checked_order(spec, s - spec.observed_time, s);
}

}  // namespace fracdyn
