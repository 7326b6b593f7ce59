#pragma once

#include <optional>
#include <span>

#include "ilion/types.hpp"

namespace ilion {

/// min(1, max(0, x)).
double clamp01(double x);

/// Cosine similarity over nonnegative vectors. Returns nullopt when either
/// vector has zero norm (the undefined case is explicit, never NaN).
/// Throws std::invalid_argument on length mismatch.
std::optional<double> cosine(std::span<const double> v, std::span<const double> w);

std::optional<double> cosine(const FeatureVector& v, const FeatureVector& w);

}  // namespace ilion
