#include "fracdyn/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>


namespace fracdyn {
namespace {

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#17becf"};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    } else if (hi - lo <= 0.0) {
      const double pad = std::abs(lo) > 0.0 ? 0.5 * std::abs(lo) : 0.5;
      lo -= pad;
      hi += pad;
    }
  }
};

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

void write_svg_plot(std::ostream& out, const PlotSpec& spec, const std::vector<PlotSeries>& series) {
  constexpr double margin_left = 70.0, margin_right = 20.0, margin_top = 40.0, margin_bottom = 50.0;
  const double w = spec.width, h = spec.height;
  const double plot_w = w - margin_left - margin_right;
  const double plot_h = h - margin_top - margin_bottom;

  Range xr, yr;
  for (const auto& s : series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.finish();
  yr.finish();

  auto px = [&](double x) { return margin_left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) { return margin_top + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << escape(spec.title) << "</text>\n";
  out << "<rect x=\"" << margin_left << "\" y=\"" << margin_top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double base = margin_top + plot_h;
  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<text x=\"" << margin_left << "\" y=\"" << base + 16 << "\" text-anchor=\"start\">"
      << tick(xr.lo) << "</text>\n";
  out << "<text x=\"" << margin_left + plot_w << "\" y=\"" << base + 16
      << "\" text-anchor=\"end\">" << tick(xr.hi) << "</text>\n";
  out << "<text x=\"" << margin_left - 6 << "\" y=\"" << base << "\" text-anchor=\"end\">"
      << tick(yr.lo) << "</text>\n";
  out << "<text x=\"" << margin_left - 6 << "\" y=\"" << margin_top + 10
      << "\" text-anchor=\"end\">" << tick(yr.hi) << "</text>\n";
  out << "<text x=\"" << margin_left + plot_w / 2 << "\" y=\"" << h - 12
      << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << margin_top + plot_h / 2 << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << margin_top + plot_h / 2 << ")\">" << escape(spec.y_label)
      << "</text>\n";
  out << "</g>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    out << "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"" << kPalette[i % kPalette.size()]
        << "\" points=\"";
    const std::size_t count = std::min(s.x.size(), s.y.size());
    bool first = true;
    for (std::size_t k = 0; k < count; ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      if (!first) out << ' ';
      first = false;
      out << tick(px(s.x[k])) << ',' << tick(py(s.y[k]));
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace fracdyn
