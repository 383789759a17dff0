#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "encmine/geo.hpp"
#include "encmine/match.hpp"

namespace encmine {

/// Thresholds for both refinement stages. D is the coarse elimination radius,
/// d the encounter radius (the approximate DSRC range).
struct FilterParams {
    double coarse_radius_m = 1000.0;     // D
    double encounter_radius_m = 100.0;   // d
    std::int64_t min_duration_ds = 50;   // 5 s
    std::int64_t merge_gap_ds = 20;      // 2 s
};

/// One shared tick of an encounter: both fixes plus their separation.
struct AlignedSample {
    GpsSample a;
    GpsSample b;
    double distance_m = 0.0;
};

/// A maximal window in which two trips stay within the encounter radius
/// (interior excursions above it only inside merged gaps). Samples cover
/// every tick in [t_start, t_end].
struct VehicleEncounter {
    std::string trip_a;
    std::string trip_b;
    std::int64_t t_start_ds = 0;
    std::int64_t t_end_ds = 0;
    std::vector<AlignedSample> samples;

    std::string id() const {
        return trip_a + "__" + trip_b + "__" + std::to_string(t_start_ds);
    }

    std::int64_t duration_ticks() const { return t_end_ds - t_start_ds + 1; }

    double min_distance_m() const;
};

/// Returned by coarse_interval for an effectively stationary pair: the
/// inter-vehicle distance is constant, so one mid-window sample decides.
inline constexpr std::int64_t kStationaryInterval = std::numeric_limits<std::int64_t>::max();

/// Coarse re-sampling step, floor(10 * 2(D - d) / (v_a + v_b)) deciseconds,
/// at least 1. Distance cannot change faster than the summed maxima, so
/// between samples this far apart it moves by at most D - d from the nearest
/// sample; any true approach to <= d therefore forces some coarse sample
/// <= D. Returns kStationaryInterval when v_a + v_b < 0.01 m/s.
std::int64_t coarse_interval(double v_max_a, double v_max_b, const FilterParams& params);

/// Samples the shared window at coarse_interval spacing (window endpoints
/// always included) and keeps the pair unless every sampled distance is
/// >= D. Maximum speeds are taken from per-tick displacements so the bound
/// holds even when the input file supplied its own speed column.
/// Returns true to keep, false to eliminate.
bool coarse_filter(const TripPairCandidate& pair, const Trip& trip_a, const Trip& trip_b,
                   const FilterParams& params);

/// Exact per-tick pass: maximal runs with distance <= d, runs separated by
/// gaps <= merge_gap merged, results shorter than min_duration dropped.
std::vector<VehicleEncounter> fine_filter(const TripPairCandidate& pair, const Trip& trip_a,
                                          const Trip& trip_b, const FilterParams& params);

struct FilterRunStats {
    std::size_t pairs_in = 0;
    std::size_t eliminated_coarse = 0;
    std::size_t encounters_out = 0;

    double elimination_rate() const {
        return pairs_in == 0 ? 0.0 : static_cast<double>(eliminated_coarse) / static_cast<double>(pairs_in);
    }
};

/// Batch coarse+fine over candidate pairs, evaluated concurrently. Output is
/// deterministic regardless of thread count: encounters are ordered by
/// canonical pair order, then start time.
std::vector<VehicleEncounter> filter_pairs(std::span<const TripPairCandidate> pairs,
                                           const TripIndex& trips, const FilterParams& params,
                                           bool skip_coarse, unsigned threads,
                                           FilterRunStats* stats = nullptr);

}  // namespace encmine
