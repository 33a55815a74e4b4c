#pragma once

// Gamma and digamma on the positive real axis.

namespace fracdyn::special {

// Euler Gamma function for 0 < x <= 171.6. Integer arguments up to 22 are
// returned as exact factorials. Throws DomainError outside that range.
double gamma(double x);

// Natural log of gamma(x) for 0 < x, computed without overflow.
double log_gamma(double x);

// Digamma psi(x) = d/dx ln gamma(x) for x > 0. Throws DomainError otherwise.
double digamma(double x);

inline constexpr double kEulerMascheroni = 0.57721566490153286061;

}  // namespace fracdyn::special
