#include "skintone/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "skintone/text_format.hpp"

namespace skintone {

namespace {

constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 60.0;
constexpr int kTicks = 5;

struct Frame {
  double x_min, x_max, y_min, y_max;
  double left, right, top, bottom;

  double px(double x) const { return left + (x - x_min) / (x_max - x_min) * (right - left); }
  double py(double y) const { return bottom - (y - y_min) / (y_max - y_min) * (bottom - top); }
};

std::string num(double v) { return format_fixed(v, 2); }

}  // namespace

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::vector<BandVertex> sample_band(const stats::RegressionFit& fit, std::span<const double> xs, double level,
                                    double x_min, double x_max, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("sample_band: need at least 2 samples");
  std::vector<BandVertex> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(samples - 1);
    const auto [lo, hi] = stats::confidence_band(fit, xs, x, level);
    out.push_back({x, lo, hi});
  }
  return out;
}

std::string report_scatter(std::span<const ScatterPoint> points, const stats::RegressionFit& fit, double level,
                           const ScatterOptions& options) {
  if (points.size() < 3) throw std::invalid_argument("report_scatter: need at least 3 points");
  std::vector<double> xs;
  xs.reserve(points.size());
  for (const auto& p : points) xs.push_back(p.x);
  const auto [xmin_it, xmax_it] = std::minmax_element(xs.begin(), xs.end());
  const double x_lo = *xmin_it;
  const double x_hi = *xmax_it;
  if (!(x_hi > x_lo)) throw std::domain_error("report_scatter: degenerate x range");

  const auto band = sample_band(fit, xs, level, x_lo, x_hi, std::max<std::size_t>(options.band_samples, 100));

  double y_lo = points.front().y;
  double y_hi = points.front().y;
  for (const auto& p : points) {
    y_lo = std::min(y_lo, p.y);
    y_hi = std::max(y_hi, p.y);
  }
  for (const auto& v : band) {
    y_lo = std::min(y_lo, v.lo);
    y_hi = std::max(y_hi, v.hi);
  }
  if (!(y_hi > y_lo)) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double x_pad = 0.05 * (x_hi - x_lo);
  const double y_pad = 0.05 * (y_hi - y_lo);
  const Frame f{x_lo - x_pad, x_hi + x_pad, y_lo - y_pad, y_hi + y_pad,
                kMarginLeft, options.width - kMarginRight, kMarginTop, options.height - kMarginBottom};

  double max_weight = 0.0;
  for (const auto& p : points) max_weight = std::max(max_weight, p.weight);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << num(options.width / 2.0) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
      << xml_escape(options.title) << "</text>\n";

  // Band: upper edge left to right, lower edge right to left.
  svg << "<polygon class=\"band\" fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
  for (const auto& v : band) svg << num(f.px(v.x)) << ',' << num(f.py(v.hi)) << ' ';
  for (auto it = band.rbegin(); it != band.rend(); ++it) svg << num(f.px(it->x)) << ',' << num(f.py(it->lo)) << ' ';
  svg << "\"/>\n";

  svg << "<line class=\"fit\" x1=\"" << num(f.px(x_lo)) << "\" y1=\"" << num(f.py(fit.predict(x_lo))) << "\" x2=\""
      << num(f.px(x_hi)) << "\" y2=\"" << num(f.py(fit.predict(x_hi))) << "\" stroke=\"#08519c\" stroke-width=\"2\"/>\n";

  // Axes with ticks.
  svg << "<g class=\"axes\" stroke=\"black\" font-size=\"11\">\n"
      << "<line x1=\"" << num(f.left) << "\" y1=\"" << num(f.bottom) << "\" x2=\"" << num(f.right) << "\" y2=\""
      << num(f.bottom) << "\"/>\n"
      << "<line x1=\"" << num(f.left) << "\" y1=\"" << num(f.top) << "\" x2=\"" << num(f.left) << "\" y2=\""
      << num(f.bottom) << "\"/>\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = f.x_min + (f.x_max - f.x_min) * i / kTicks;
    const double yv = f.y_min + (f.y_max - f.y_min) * i / kTicks;
    svg << "<line x1=\"" << num(f.px(xv)) << "\" y1=\"" << num(f.bottom) << "\" x2=\"" << num(f.px(xv))
        << "\" y2=\"" << num(f.bottom + 5) << "\"/>\n"
        << "<text stroke=\"none\" x=\"" << num(f.px(xv)) << "\" y=\"" << num(f.bottom + 18)
        << "\" text-anchor=\"middle\">" << format_fixed(xv, 2) << "</text>\n"
        << "<line x1=\"" << num(f.left - 5) << "\" y1=\"" << num(f.py(yv)) << "\" x2=\"" << num(f.left)
        << "\" y2=\"" << num(f.py(yv)) << "\"/>\n"
        << "<text stroke=\"none\" x=\"" << num(f.left - 8) << "\" y=\"" << num(f.py(yv) + 4)
        << "\" text-anchor=\"end\">" << format_fixed(yv, 3) << "</text>\n";
  }
  svg << "</g>\n"
      << "<text x=\"" << num((f.left + f.right) / 2) << "\" y=\"" << num(options.height - 15.0)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << xml_escape(options.x_label) << "</text>\n"
      << "<text x=\"20\" y=\"" << num((f.top + f.bottom) / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 20 " << num((f.top + f.bottom) / 2) << ")\">" << xml_escape(options.y_label)
      << "</text>\n";

  svg << "<g class=\"points\" font-size=\"9\">\n";
  for (const auto& p : points) {
    const double r = max_weight > 0 ? 2.0 + 6.0 * std::sqrt(std::max(p.weight, 0.0) / max_weight) : 3.0;
    svg << "<circle cx=\"" << num(f.px(p.x)) << "\" cy=\"" << num(f.py(p.y)) << "\" r=\"" << num(r)
        << "\" fill=\"#de2d26\" fill-opacity=\"0.7\"/>\n";
    if (!p.label.empty())
      svg << "<text x=\"" << num(f.px(p.x) + r + 2) << "\" y=\"" << num(f.py(p.y) + 3) << "\">" << xml_escape(p.label)
          << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace skintone
