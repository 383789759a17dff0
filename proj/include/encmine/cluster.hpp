#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "encmine/matrix.hpp"

namespace encmine {

struct ClusteringResult {
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> medoids;     // point index per cluster
    std::vector<std::size_t> assignment;  // point -> cluster index
    double objective = 0.0;               // sum of distances to assigned medoids
    std::size_t iterations = 0;
    std::vector<double> objective_trace;  // objective after each iteration
};

/// Partitions the points behind a distance matrix into k clusters using
/// actual points as representatives, so only pairwise distances are needed
/// (DTW provides no vector space to average in). Seeding is a seeded uniform
/// first pick followed by farthest-point selection; iterations alternate
/// assign-to-nearest-medoid with best-medoid-per-cluster until assignments
/// stop changing or max_iter. Ties break toward the lower cluster/point
/// index, so results are deterministic for a fixed (matrix, k, seed).
/// Throws InvalidK when k is outside [1, n] (n > 0), InvalidMatrix when the
/// matrix is not symmetric/non-negative/zero-diagonal.
ClusteringResult kmedoids(const DistanceMatrix& matrix, std::size_t k, std::uint64_t seed,
                          std::size_t max_iter = 100, unsigned threads = 1);

struct ClusterAccuracy {
    std::size_t cluster = 0;
    std::string majority_label;
    std::size_t true_count = 0;
    std::size_t false_count = 0;

    double accuracy() const {
        std::size_t total = true_count + false_count;
        return total == 0 ? 0.0 : static_cast<double>(true_count) / static_cast<double>(total);
    }
};

struct AccuracyReport {
    std::vector<ClusterAccuracy> per_cluster;
};

/// Scores a clustering against ground-truth labels: each cluster's majority
/// label is its prediction; accuracy = true / (true + false) per cluster.
/// labels[i] belongs to point i; an empty label throws MissingLabel.
AccuracyReport evaluate_accuracy(const ClusteringResult& result, std::span<const std::string> labels);

}  // namespace encmine
