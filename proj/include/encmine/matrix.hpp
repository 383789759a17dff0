#pragma once

#include <cstddef>
#include <vector>

namespace encmine {

/// Dense symmetric distance matrix, row-major.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
    DistanceMatrix(std::size_t n, std::vector<double> data) : n_(n), data_(std::move(data)) {}

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, double v) {
        data_[i * n_ + j] = v;
        data_[j * n_ + i] = v;
    }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace encmine
