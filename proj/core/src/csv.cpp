#include "fracdyn/csv.hpp"

#include <array>
#include <charconv>
#include <ostream>

namespace fracdyn {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto result =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), result.ptr);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_double(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::row(std::size_t index, std::span<const double> values) {
  out_ << index;
  for (double v : values) out_ << ',' << format_double(v);
  out_ << '\n';
}

}  // namespace fracdyn
