#pragma once

#include <limits>
#include <string>
#include <vector>

#include "divcurve/errors.hpp"

namespace divcurve {

constexpr double kInfDist = std::numeric_limits<double>::infinity();

// Square symmetric table of pairwise values. For the genuine metrics this is
// a distance matrix (zero diagonal, non-negative, +inf across components);
// the verbatim heat-kernel tables reuse the type but need not satisfy either.
class DistMatrix {
public:
    DistMatrix() = default;
    explicit DistMatrix(int n, double fill = 0.0)
        : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {
        if (n < 0) throw ValidationError("distance matrix: negative dimension");
    }

    int size() const { return n_; }

    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)];
    }
    double& operator()(int i, int j) {
        return data_[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)];
    }

    void set_symmetric(int i, int j, double value) {
        (*this)(i, j) = value;
        (*this)(j, i) = value;
    }

    const std::vector<double>& data() const { return data_; }

    // Row-major CSV with an "inf" token for infinite entries.
    std::string to_csv() const;

private:
    int n_ = 0;
    std::vector<double> data_;
};

}  // namespace divcurve
