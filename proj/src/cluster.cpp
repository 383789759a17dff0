#include "encmine/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "encmine/error.hpp"
#include "encmine/parallel.hpp"
#include "encmine/rng.hpp"

namespace encmine {

namespace {

void validate_matrix(const DistanceMatrix& matrix) {
    const std::size_t n = matrix.size();
    if (matrix.data().size() != n * n) throw InvalidMatrix("matrix storage is not n*n");
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix(i, i) != 0.0) throw InvalidMatrix("matrix diagonal must be zero");
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = matrix(i, j);
            if (!(v >= 0.0)) throw InvalidMatrix("matrix entries must be non-negative");
            if (v != matrix(j, i)) throw InvalidMatrix("matrix must be symmetric");
        }
    }
}

std::vector<std::size_t> seed_medoids(const DistanceMatrix& matrix, std::size_t k, Rng& rng) {
    const std::size_t n = matrix.size();
    std::vector<std::size_t> medoids;
    medoids.reserve(k);
    medoids.push_back(rng.index(n));

    // Farthest-point (maximin) for the rest; robust to density imbalance.
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    while (medoids.size() < k) {
        std::size_t last = medoids.back();
        for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], matrix(i, last));
        std::size_t best = n;
        double best_dist = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::find(medoids.begin(), medoids.end(), i) != medoids.end()) continue;
            if (nearest[i] > best_dist) {
                best_dist = nearest[i];
                best = i;
            }
        }
        medoids.push_back(best);
    }
    return medoids;
}

/// Nearest-medoid assignment; medoid points always own their cluster, other
/// ties break toward the lower cluster index.
std::vector<std::size_t> assign_points(const DistanceMatrix& matrix,
                                       const std::vector<std::size_t>& medoids) {
    const std::size_t n = matrix.size();
    std::vector<std::size_t> assignment(n, 0);
    for (std::size_t c = 0; c < medoids.size(); ++c) assignment[medoids[c]] = c;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::find(medoids.begin(), medoids.end(), i) != medoids.end()) continue;
        std::size_t best = 0;
        double best_dist = matrix(i, medoids[0]);
        for (std::size_t c = 1; c < medoids.size(); ++c) {
            double d = matrix(i, medoids[c]);
            if (d < best_dist) {
                best_dist = d;
                best = c;
            }
        }
        assignment[i] = best;
    }
    return assignment;
}

double objective_of(const DistanceMatrix& matrix, const std::vector<std::size_t>& medoids,
                    const std::vector<std::size_t>& assignment) {
    double sum = 0.0;
    for (std::size_t i = 0; i < matrix.size(); ++i) sum += matrix(i, medoids[assignment[i]]);
    return sum;
}

}  // namespace

ClusteringResult kmedoids(const DistanceMatrix& matrix, std::size_t k, std::uint64_t seed,
                          std::size_t max_iter, unsigned threads) {
    const std::size_t n = matrix.size();
    if (k < 1 || k > n) throw InvalidK("k must be in [1, n]");
    validate_matrix(matrix);

    ClusteringResult result;
    result.k = k;
    result.seed = seed;

    Rng rng(seed);
    result.medoids = seed_medoids(matrix, k, rng);
    result.assignment = assign_points(matrix, result.medoids);
    result.objective = objective_of(matrix, result.medoids, result.assignment);

    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        for (auto& m : members) m.clear();
        for (std::size_t i = 0; i < n; ++i) members[result.assignment[i]].push_back(i);

        std::vector<std::size_t> new_medoids = result.medoids;
        parallel_for(k, threads, [&](std::size_t c) {
            const auto& cluster = members[c];
            std::size_t best = new_medoids[c];
            double best_sum = std::numeric_limits<double>::infinity();
            for (std::size_t candidate : cluster) {
                double sum = 0.0;
                for (std::size_t other : cluster) sum += matrix(candidate, other);
                if (sum < best_sum || (sum == best_sum && candidate < best)) {
                    best_sum = sum;
                    best = candidate;
                }
            }
            new_medoids[c] = best;
        });

        auto new_assignment = assign_points(matrix, new_medoids);
        double new_objective = objective_of(matrix, new_medoids, new_assignment);

        result.iterations = iter;
        result.objective_trace.push_back(new_objective);
        bool converged = new_assignment == result.assignment && new_medoids == result.medoids;
        result.medoids = std::move(new_medoids);
        result.assignment = std::move(new_assignment);
        result.objective = new_objective;
        if (converged) break;
    }
    return result;
}

AccuracyReport evaluate_accuracy(const ClusteringResult& result, std::span<const std::string> labels) {
    if (labels.size() != result.assignment.size()) {
        throw MissingLabel("label count does not match point count");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].empty()) {
            throw MissingLabel("point " + std::to_string(i) + " has no label");
        }
    }

    AccuracyReport report;
    for (std::size_t c = 0; c < result.k; ++c) {
        std::map<std::string, std::size_t> counts;
        std::size_t total = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (result.assignment[i] != c) continue;
            ++counts[std::string(labels[i])];
            ++total;
        }
        ClusterAccuracy row;
        row.cluster = c;
        for (const auto& [label, count] : counts) {
            // std::map order makes the tie-break lexicographic.
            if (count > row.true_count) {
                row.true_count = count;
                row.majority_label = label;
            }
        }
        row.false_count = total - row.true_count;
        report.per_cluster.push_back(std::move(row));
    }
    return report;
}

}  // namespace encmine
