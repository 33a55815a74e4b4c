#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracdyn {

// Root of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Kernel evaluated inside the epsilon ball around the observed time.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double s, double observed_time)
      : Error(what), s_(s), observed_time_(observed_time) {}

  double s() const noexcept { return s_; }
  double observed_time() const noexcept { return observed_time_; }

 private:
  double s_;
  double observed_time_;
};

// A state, coefficient or integrand became NaN or infinite.
class NonFiniteError : public Error {
 public:
  NonFiniteError(const std::string& what, std::size_t step)
      : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  // Index of the first step whose result is not finite.
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Metric is not symmetric positive definite at the evaluated point.
class MetricError : public Error {
 public:
  using Error::Error;
};

// Invalid experiment configuration. field() names the offending entry,
// e.g. "grid.N".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracdyn
