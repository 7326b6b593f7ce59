#include "ilion/vector_math.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ilion {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

std::optional<double> cosine(std::span<const double> v, std::span<const double> w) {
  if (v.size() != w.size()) {
    throw std::invalid_argument("cosine: vector length mismatch");
  }
  double dot = 0.0;
  double norm_v = 0.0;
  double norm_w = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    dot += v[i] * w[i];
    norm_v += v[i] * v[i];
    norm_w += w[i] * w[i];
  }
  if (norm_v == 0.0 || norm_w == 0.0) return std::nullopt;
  double c = dot / (std::sqrt(norm_v) * std::sqrt(norm_w));
  // Entries are nonnegative, so the exact value lies in [0,1]; clamp the
  // floating-point rounding overshoot at the upper bound.
  return std::clamp(c, 0.0, 1.0);
}

std::optional<double> cosine(const FeatureVector& v, const FeatureVector& w) {
  return cosine(std::span<const double>(v.values), std::span<const double>(w.values));
}

}  // namespace ilion
