#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fracdyn {

// Shortest-independent fixed form: 17 significant digits, '%g' style,
// locale independent.
std::string format_double(double value);

// Writes LF-terminated CSV rows of numbers.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& columns);
  void row(std::span<const double> values);
  void row(std::initializer_list<double> values) { row(std::span(values.begin(), values.size())); }
  // Integer index followed by floating-point columns.
  void row(std::size_t index, std::span<const double> values);
  void row(std::size_t index, std::initializer_list<double> values) {
    row(index, std::span(values.begin(), values.size()));
  }

 private:
  std::ostream& out_;
};

}  // namespace fracdyn
