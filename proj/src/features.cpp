#include "encmine/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "encmine/error.hpp"
#include "encmine/parallel.hpp"

namespace encmine {

FeatureSeries extract_features(const VehicleEncounter& encounter) {
    FeatureSeries series;
    series.encounter_id = encounter.id();
    series.timestamps_ds.reserve(encounter.samples.size());
    series.points.reserve(encounter.samples.size());
    for (const auto& s : encounter.samples) {
        series.timestamps_ds.push_back(s.a.timestamp_ds);
        series.points.push_back({s.distance_m, fold_heading_difference(s.a.heading_deg, s.b.heading_deg)});
    }
    return series;
}

NormalizedSeries normalize(const FeatureSeries& series) {
    NormalizedSeries out;
    out.points.reserve(series.points.size());
    for (const auto& p : series.points) {
        out.points.push_back({p[0] / kDistanceScaleM, p[1] / kHeadingScaleDeg});
    }
    return out;
}

NormalizedSeries decimate(const NormalizedSeries& series, std::size_t cap) {
    const std::size_t n = series.points.size();
    if (cap == 0 || n <= cap) return series;
    NormalizedSeries out;
    out.points.reserve(cap);
    for (std::size_t i = 0; i < cap; ++i) {
        // Uniform index map keeping both endpoints.
        std::size_t j = (i * (n - 1) + (cap - 1) / 2) / (cap - 1);
        out.points.push_back(series.points[j]);
    }
    return out;
}

double dtw_distance(const NormalizedSeries& s1, const NormalizedSeries& s2,
                    std::optional<std::size_t> window) {
    const auto& a = s1.points;
    const auto& b = s2.points;
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    if (n == 0 || m == 0) throw EmptySeries("dtw_distance: empty series");

    const double inf = std::numeric_limits<double>::infinity();
    std::size_t band = m + n;  // effectively unbounded
    if (window) {
        std::size_t diff = n > m ? n - m : m - n;
        band = std::max(*window, diff);
    }

    auto cost = [&](std::size_t i, std::size_t j) {
        double dl = a[i][0] - b[j][0];
        double dt = a[i][1] - b[j][1];
        return std::sqrt(dl * dl + dt * dt);
    };

    // Two-row dynamic program.
    std::vector<double> prev(m, inf), cur(m, inf);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(cur.begin(), cur.end(), inf);
        std::size_t j_lo = i >= band ? i - band : 0;
        std::size_t j_hi = std::min(m - 1, i + band);
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
            double best;
            if (i == 0 && j == 0) {
                best = 0.0;
            } else {
                best = inf;
                if (i > 0) best = std::min(best, prev[j]);
                if (j > 0) best = std::min(best, cur[j - 1]);
                if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
            }
            if (best < inf) cur[j] = best + cost(i, j);
        }
        std::swap(prev, cur);
    }
    return prev[m - 1];
}

DistanceMatrix dtw_matrix(std::span<const NormalizedSeries> series, const DtwOptions& options,
                          unsigned threads) {
    const std::size_t n = series.size();

    std::vector<NormalizedSeries> capped(n);
    for (std::size_t i = 0; i < n; ++i) capped[i] = decimate(series[i], options.downsample_cap);

    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    jobs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) jobs.emplace_back(i, j);
    }

    DistanceMatrix matrix(n);
    parallel_for(jobs.size(), threads, [&](std::size_t idx) {
        auto [i, j] = jobs[idx];
        double d = dtw_distance(capped[i], capped[j], options.window);
        if (options.length_normalize) {
            d /= static_cast<double>(capped[i].points.size() + capped[j].points.size());
        }
        matrix.set(i, j, d);
    });
    return matrix;
}

}  // namespace encmine
