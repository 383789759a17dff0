#include "encmine/filter.hpp"

#include <algorithm>
#include <cmath>

#include "encmine/parallel.hpp"

namespace encmine {

double VehicleEncounter::min_distance_m() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) best = std::min(best, s.distance_m);
    return samples.empty() ? 0.0 : best;
}

std::int64_t coarse_interval(double v_max_a, double v_max_b, const FilterParams& params) {
    double combined = v_max_a + v_max_b;
    if (combined < 0.01) return kStationaryInterval;
    double seconds = 2.0 * (params.coarse_radius_m - params.encounter_radius_m) / combined;
    auto ticks = static_cast<std::int64_t>(std::floor(seconds * 10.0));
    return std::max<std::int64_t>(ticks, 1);
}

bool coarse_filter(const TripPairCandidate& pair, const Trip& trip_a, const Trip& trip_b,
                   const FilterParams& params) {
    const std::int64_t start = pair.overlap_start_ds;
    const std::int64_t end = pair.overlap_end_ds;
    const std::int64_t interval = coarse_interval(max_step_speed(trip_a), max_step_speed(trip_b), params);

    auto distance_at = [&](std::int64_t t) {
        return haversine_distance(trip_a.sample_at(t), trip_b.sample_at(t));
    };

    if (interval == kStationaryInterval) {
        return distance_at(start + (end - start) / 2) < params.coarse_radius_m;
    }

    // Both endpoints are always sampled so windows shorter than the interval
    // are still checked.
    if (distance_at(start) < params.coarse_radius_m) return true;
    std::int64_t t = start;
    while (end - t > interval) {
        t += interval;
        if (distance_at(t) < params.coarse_radius_m) return true;
    }
    if (end != start && distance_at(end) < params.coarse_radius_m) return true;
    return false;
}

std::vector<VehicleEncounter> fine_filter(const TripPairCandidate& pair, const Trip& trip_a,
                                          const Trip& trip_b, const FilterParams& params) {
    const std::int64_t start = pair.overlap_start_ds;
    const std::int64_t end = pair.overlap_end_ds;

    // Maximal runs of ticks with distance <= d.
    struct Run {
        std::int64_t start;
        std::int64_t end;
    };
    std::vector<Run> runs;
    std::vector<double> distances(static_cast<std::size_t>(end - start + 1));
    bool in_run = false;
    for (std::int64_t t = start; t <= end; ++t) {
        double dist = haversine_distance(trip_a.sample_at(t), trip_b.sample_at(t));
        distances[static_cast<std::size_t>(t - start)] = dist;
        if (dist <= params.encounter_radius_m) {
            if (!in_run) {
                runs.push_back(Run{t, t});
                in_run = true;
            } else {
                runs.back().end = t;
            }
        } else {
            in_run = false;
        }
    }

    // Merge runs separated by short excursions above d.
    std::vector<Run> merged;
    for (const Run& run : runs) {
        if (!merged.empty() && run.start - merged.back().end - 1 <= params.merge_gap_ds) {
            merged.back().end = run.end;
        } else {
            merged.push_back(run);
        }
    }

    std::vector<VehicleEncounter> encounters;
    for (const Run& run : merged) {
        if (run.end - run.start + 1 < params.min_duration_ds) continue;
        VehicleEncounter enc;
        enc.trip_a = pair.trip_a;
        enc.trip_b = pair.trip_b;
        enc.t_start_ds = run.start;
        enc.t_end_ds = run.end;
        enc.samples.reserve(static_cast<std::size_t>(run.end - run.start + 1));
        for (std::int64_t t = run.start; t <= run.end; ++t) {
            enc.samples.push_back(AlignedSample{trip_a.sample_at(t), trip_b.sample_at(t),
                                                distances[static_cast<std::size_t>(t - start)]});
        }
        encounters.push_back(std::move(enc));
    }
    return encounters;
}

std::vector<VehicleEncounter> filter_pairs(std::span<const TripPairCandidate> pairs,
                                           const TripIndex& trips, const FilterParams& params,
                                           bool skip_coarse, unsigned threads,
                                           FilterRunStats* stats) {
    std::vector<std::vector<VehicleEncounter>> per_pair(pairs.size());
    std::vector<char> eliminated(pairs.size(), 0);

    parallel_for(pairs.size(), threads, [&](std::size_t i) {
        const TripPairCandidate& pair = pairs[i];
        const Trip& a = trips.by_key(pair.trip_a);
        const Trip& b = trips.by_key(pair.trip_b);
        if (!skip_coarse && !coarse_filter(pair, a, b, params)) {
            eliminated[i] = 1;
            return;
        }
        per_pair[i] = fine_filter(pair, a, b, params);
    });

    std::vector<VehicleEncounter> all;
    std::size_t n_eliminated = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        n_eliminated += eliminated[i];
        for (auto& enc : per_pair[i]) all.push_back(std::move(enc));
    }
    std::sort(all.begin(), all.end(), [](const VehicleEncounter& x, const VehicleEncounter& y) {
        if (x.trip_a != y.trip_a) return x.trip_a < y.trip_a;
        if (x.trip_b != y.trip_b) return x.trip_b < y.trip_b;
        return x.t_start_ds < y.t_start_ds;
    });

    if (stats) {
        stats->pairs_in = pairs.size();
        stats->eliminated_coarse = n_eliminated;
        stats->encounters_out = all.size();
    }
    return all;
}

}  // namespace encmine
