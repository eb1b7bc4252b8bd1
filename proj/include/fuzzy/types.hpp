#ifndef FUZZY_TYPES_HPP
#define FUZZY_TYPES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"

namespace fuzzy {

/// N points in R^k, one per row, with optional ground-truth labels.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(Matrix points, std::optional<std::vector<int>> labels = std::nullopt)
        : points_(std::move(points)), labels_(std::move(labels)) {
        if (points_.rows() == 0 || points_.cols() == 0)
            throw InvalidData("dataset needs at least one point and one dimension");
        for (double v : points_.values())
            if (!std::isfinite(v)) throw InvalidData("dataset contains a non-finite coordinate");
        if (labels_ && labels_->size() != points_.rows())
            throw InvalidData("label count does not match point count");
    }

    std::size_t size() const noexcept { return points_.rows(); }
    std::size_t dim() const noexcept { return points_.cols(); }
    std::span<const double> point(std::size_t i) const { return points_.row(i); }
    const Matrix& points() const noexcept { return points_; }
    const std::optional<std::vector<int>>& labels() const noexcept { return labels_; }

private:
    Matrix points_;
    std::optional<std::vector<int>> labels_;
};

/// N x c membership matrix; rows sum to one.
class FuzzyPartition {
public:
    static constexpr double kRowTolerance = 1e-9;

    FuzzyPartition() = default;
    explicit FuzzyPartition(Matrix weights) : w_(std::move(weights)) {}

    std::size_t points() const noexcept { return w_.rows(); }
    std::size_t clusters() const noexcept { return w_.cols(); }
    double operator()(std::size_t i, std::size_t j) const { return w_(i, j); }
    std::span<const double> row(std::size_t i) const { return w_.row(i); }
    const Matrix& weights() const noexcept { return w_; }

    /// Largest |sum_j w_ij - 1| over rows.
    double max_row_defect() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < points(); ++i) {
            double s = 0.0;
            for (double v : row(i)) s += v;
            worst = std::max(worst, std::abs(s - 1.0));
        }
        return worst;
    }

    bool valid(double tol = kRowTolerance) const {
        for (double v : w_.values())
            if (!(v >= 0.0 && v <= 1.0)) return false;
        return max_row_defect() <= tol;
    }

    friend bool operator==(const FuzzyPartition&, const FuzzyPartition&) = default;

private:
    Matrix w_;
};

struct ClusterStats {
    double cardinality = 0.0;  // n_j = sum_i w_ij^alpha
    double volume = 1.0;       // V_j = sqrt(det C_j)
    double density = 0.0;      // rho_j = n_j / V_j

    static ClusterStats from(double n, double v) { return {n, v, n / v}; }
    friend bool operator==(const ClusterStats&, const ClusterStats&) = default;
};

struct ClusterModel {
    std::vector<std::vector<double>> centers;
    std::vector<SymMatrix> covariances;
    std::vector<double> sizes;  // f_j, on the unit simplex
    std::vector<ClusterStats> stats;

    std::size_t clusters() const noexcept { return centers.size(); }
    std::size_t dim() const noexcept { return centers.empty() ? 0 : centers.front().size(); }
    friend bool operator==(const ClusterModel&, const ClusterModel&) = default;
};

enum class Algorithm { FCM, GK, GGK, GG };

inline std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::FCM: return "FCM";
        case Algorithm::GK: return "GK";
        case Algorithm::GGK: return "GGK";
        case Algorithm::GG: return "GG";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
    if (s == "FCM" || s == "fcm") return Algorithm::FCM;
    if (s == "GK" || s == "gk") return Algorithm::GK;
    if (s == "GGK" || s == "ggk") return Algorithm::GGK;
    if (s == "GG" || s == "gg") return Algorithm::GG;
    throw InvalidConfig("unknown algorithm '" + std::string(s) + "'");
}

enum class InitMethod { RandomPartition, SampledCenters };

inline std::string_view to_string(InitMethod m) {
    return m == InitMethod::RandomPartition ? "random-partition" : "sampled-centers";
}

inline InitMethod parse_init(std::string_view s) {
    if (s == "random-partition") return InitMethod::RandomPartition;
    if (s == "sampled-centers") return InitMethod::SampledCenters;
    throw InvalidConfig("unknown init method '" + std::string(s) + "'");
}

struct FitConfig {
    Algorithm algorithm = Algorithm::GGK;
    std::size_t clusters = 2;
    double alpha = 2.0;
    std::vector<double> lambda;  // GK only; empty means all ones
    double tol = 1e-6;
    std::size_t max_iter = 300;
    std::uint64_t seed = 0;
    InitMethod init = InitMethod::SampledCenters;
    // GGK only: pin f to these values instead of re-solving them each
    // iteration. With all entries 1/c the iterates coincide with GK.
    std::optional<std::vector<double>> pinned_sizes;

    void validate(std::size_t n_points) const {
        if (clusters < 1) throw InvalidConfig("number of clusters must be at least 1");
        if (clusters > n_points) throw InvalidConfig("more clusters than points");
        if (!(alpha > 1.0) || !std::isfinite(alpha)) throw InvalidConfig("fuzzifier alpha must be > 1");
        if (!(tol > 0.0)) throw InvalidConfig("tol must be positive");
        if (max_iter < 1) throw InvalidConfig("max_iter must be positive");
        if (!lambda.empty()) {
            if (lambda.size() != clusters) throw InvalidConfig("lambda needs one entry per cluster");
            for (double l : lambda)
                if (!(l > 0.0)) throw InvalidConfig("lambda entries must be positive");
        }
        if (pinned_sizes) {
            if (pinned_sizes->size() != clusters)
                throw InvalidConfig("pinned sizes need one entry per cluster");
            for (double f : *pinned_sizes)
                if (!(f > 0.0 && f <= 1.0)) throw InvalidConfig("pinned sizes must lie in (0, 1]");
        }
    }

    double lambda_for(std::size_t j) const { return lambda.empty() ? 1.0 : lambda[j]; }
};

struct FitReport {
    Algorithm algorithm = Algorithm::GGK;
    double alpha = 2.0;
    std::uint64_t seed = 0;
    std::vector<double> lambda;
    ClusterModel model;
    FuzzyPartition partition;
    std::vector<double> objective_trace;
    std::size_t iterations = 0;
    bool converged = false;
    double final_delta = 0.0;  // max |W_new - W_old| of the last iteration
    bool objective_increased = false;  // monitored, not an error
    std::size_t reseeds = 0;
};

}  // namespace fuzzy

#endif  // FUZZY_TYPES_HPP
