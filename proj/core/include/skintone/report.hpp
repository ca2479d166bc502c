#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skintone/stats.hpp"

namespace skintone {

struct ScatterPoint {
  double x = 0.0;  // mean tone
  double y = 0.0;  // mean sentiment
  std::string label;
  double weight = 1.0;  // drives marker area
};

struct BandVertex {
  double x;
  double lo;
  double hi;
};

// Confidence band evaluated at `samples` evenly spaced x positions covering
// [x_min, x_max] (endpoints included), in data coordinates.
std::vector<BandVertex> sample_band(const stats::RegressionFit& fit, std::span<const double> xs, double level,
                                    double x_min, double x_max, std::size_t samples);

struct ScatterOptions {
  std::string title = "Mean tweet sentiment vs mean tweet skin tone";
  std::string x_label = "Mean tweet skin tone";
  std::string y_label = "Mean tweet sentiment";
  int width = 800;
  int height = 600;
  std::size_t band_samples = 120;
};

// Standalone SVG: axes, labelled points, the fitted line and the shaded
// confidence band. `fit` must be the OLS fit of the points. Throws
// std::invalid_argument for fewer than 3 points and std::domain_error when
// all x values coincide.
std::string report_scatter(std::span<const ScatterPoint> points, const stats::RegressionFit& fit, double level,
                           const ScatterOptions& options = {});

std::string xml_escape(std::string_view text);

}  // namespace skintone
