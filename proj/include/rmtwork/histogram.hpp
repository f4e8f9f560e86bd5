#pragma once

#include <algorithm>
#include <vector>

namespace rmtwork {

/// Uniform-bin histogram over [lo, hi].
struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> centers;
  std::vector<double> values;
  /// Mass that fell outside [lo, hi] (not included in `values`).
  double outside_mass = 0.0;

  double bin_width() const { return centers.empty() ? 0.0 : (hi - lo) / static_cast<double>(centers.size()); }

  /// Mass outside [a, b], counting partially covered bins by overlap fraction.
  double mass_outside(double a, double b) const {
    const double width = bin_width();
    double inside = 0.0;
    double total = outside_mass;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double left = lo + static_cast<double>(k) * width;
      const double overlap = std::max(0.0, std::min(b, left + width) - std::max(a, left));
      inside += values[k] * overlap;
      total += values[k] * width;
    }
    return std::max(0.0, total - inside);
  }
};

}  // namespace rmtwork
