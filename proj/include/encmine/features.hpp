#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "encmine/filter.hpp"
#include "encmine/matrix.hpp"

namespace encmine {

/// Scale constants for the two feature channels: the encounter radius bounds
/// the relative distance and a folded heading difference is at most 180 deg.
inline constexpr double kDistanceScaleM = 100.0;
inline constexpr double kHeadingScaleDeg = 180.0;

/// Per-tick (L, theta) shape signature of an encounter: relative distance in
/// meters and relative heading in [0, 180] degrees.
struct FeatureSeries {
    std::string encounter_id;
    std::vector<std::int64_t> timestamps_ds;
    std::vector<std::array<double, 2>> points;  // [L_m, theta_deg]
};

/// Dimensionless signature: L/100 and theta/180. L may exceed 1 slightly
/// inside merged gaps.
struct NormalizedSeries {
    std::vector<std::array<double, 2>> points;
};

FeatureSeries extract_features(const VehicleEncounter& encounter);

NormalizedSeries normalize(const FeatureSeries& series);

/// Uniform decimation to at most `cap` points, endpoints preserved.
NormalizedSeries decimate(const NormalizedSeries& series, std::size_t cap);

/// Dynamic time warping distance: the minimum cumulative Euclidean cost over
/// monotone warping paths with steps (1,0), (0,1), (1,1), anchored at both
/// endpoints. No path-length normalization. An optional Sakoe-Chiba band
/// restricts |i - j| to the given half-width (widened to the length
/// difference so a path always exists). Throws EmptySeries on empty input.
double dtw_distance(const NormalizedSeries& s1, const NormalizedSeries& s2,
                    std::optional<std::size_t> window = std::nullopt);

struct DtwOptions {
    std::optional<std::size_t> window;
    std::size_t downsample_cap = 600;  // bounds the O(mn) program for long encounters
    bool length_normalize = false;     // divide by m+n (config variant, off by default)
};

/// Pairwise DTW over the (decimated) series, computed concurrently into a
/// symmetric matrix with zero diagonal. Deterministic for any thread count.
DistanceMatrix dtw_matrix(std::span<const NormalizedSeries> series, const DtwOptions& options,
                          unsigned threads);

}  // namespace encmine
