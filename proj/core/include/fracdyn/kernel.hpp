#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace fracdyn {

// Variable fractional order alpha(z), z = s - t, with its exact derivative.
// The family is closed so that configs can serialize it and the drift
// correction h(s, t) can use alpha' analytically.
class AlphaFunction {
 public:
  struct Constant {
    double a = 1.0;
    bool operator==(const Constant&) const = default;
  };
  // a0 + a1 * z
  struct Affine {
    double a0 = 1.0;
    double a1 = 0.0;
    bool operator==(const Affine&) const = default;
  };
  // lo + (hi - lo) / (1 + exp(-(z - center) / width))
  struct Logistic {
    double lo = 0.5;
    double hi = 1.0;
    double center = 0.0;
    double width = 1.0;
    bool operator==(const Logistic&) const = default;
  };
  using Variant = std::variant<Constant, Affine, Logistic>;

  AlphaFunction() : form_(Constant{}) {}
  AlphaFunction(Variant form);  // NOLINT(google-explicit-constructor)

  static AlphaFunction constant(double a) { return AlphaFunction(Constant{a}); }
  static AlphaFunction affine(double a0, double a1) { return AlphaFunction(Affine{a0, a1}); }
  static AlphaFunction logistic(double lo, double hi, double center, double width) {
    return AlphaFunction(Logistic{lo, hi, center, width});
  }

  double value(double z) const;
  double derivative(double z) const;

  bool is_constant() const { return std::holds_alternative<Constant>(form_); }
  const Variant& form() const { return form_; }

  bool operator==(const AlphaFunction&) const = default;

 private:
  Variant form_;
};

// Kernel parameters: order function, discount rate rho and the observed time t.
struct KernelSpec {
  AlphaFunction alpha;
  double rho = 0.0;
  double observed_time = 0.0;

  // Throws DomainError when rho < 0 or a parameter is not finite.
  void validate() const;

  KernelSpec at_observed_time(double t) const {
    KernelSpec copy = *this;
    copy.observed_time = t;
    return copy;
  }

  bool operator==(const KernelSpec&) const = default;
};

struct SingularityPolicy {
  enum class Mode { Error, ClampToEpsilon };

  double epsilon = 1e-8;
  Mode mode = Mode::Error;

  void validate() const;

  bool operator==(const SingularityPolicy&) const = default;
};

// Sign convention for the rho and Gamma terms of h(s, t).
//   PlusRho:       alpha' ln|t-s| + (alpha-1)/(s-t) + rho - psi(alpha) alpha'
//   LogDerivative: d/ds ln g_t(s), i.e. the same with -rho.
// Both coincide when rho = 0.
enum class HConvention { PlusRho, LogDerivative };

// g_t(s) = exp((alpha(s-t) - 1) ln|t-s| - rho (s-t)) / Gamma(alpha(s-t)).
double kernel_value(const KernelSpec& spec, double s, const SingularityPolicy& policy = {});

// Logarithmic drift correction h(s, t).
double h_correction(const KernelSpec& spec, double s, const SingularityPolicy& policy = {},
                    HConvention convention = HConvention::PlusRho);

// Indices i with |s_i - t| < epsilon.
std::vector<std::size_t> validate_grid(const KernelSpec& spec, std::span<const double> nodes,
                                       const SingularityPolicy& policy = {});

// Throws DomainError naming the first node at which alpha(s_i - t) leaves (0, 1].
void check_order_range(const KernelSpec& spec, std::span<const double> nodes);

}  // namespace fracdyn
