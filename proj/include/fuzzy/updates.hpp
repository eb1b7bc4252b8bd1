#ifndef FUZZY_UPDATES_HPP
#define FUZZY_UPDATES_HPP

// Closed-form update steps shared by FCM, Gustafson-Kessel (GK), the
// generalized Gustafson-Kessel (GGK) with per-cluster size parameters f_j,
// and Gath-Geva (GG).
//
// GGK dissimilarity of point i to cluster j:
//
//     D_ij = (V_j / f_j)^(2/k) * d_ij^2,   V_j = sqrt(det C_j)
//
// and the optimal sizes on the simplex are
//
//     f_j = (n_j^k V_j^2)^(1/(k+2)) / sum_t (n_t^k V_t^2)^(1/(k+2)).
//
// Several updates come with a second, algebraically equivalent route
// (density forms, closed-form objective). Those exist as cross-checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "types.hpp"

namespace fuzzy {

using Centers = std::vector<std::vector<double>>;

namespace detail {

inline double weight_power(double w, double alpha) {
    if (w <= 0.0) return 0.0;
    if (alpha == 2.0) return w * w;
    return std::pow(w, alpha);
}

inline void check_partition_shape(const Dataset& data, const FuzzyPartition& w) {
    if (w.points() != data.size())
        throw LengthMismatch("partition row count does not match the dataset");
}

/// Mean over dimensions of the per-dimension population variance.
inline double average_variance(const Dataset& data) {
    const std::size_t n = data.size();
    const std::size_t k = data.dim();
    double total = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += data.point(i)[a];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = data.point(i)[a] - mean;
            var += d * d;
        }
        total += var / static_cast<double>(n);
    }
    return total / static_cast<double>(k);
}

}  // namespace detail

/// n_j = sum_i w_ij^alpha for every cluster.
inline std::vector<double> fuzzy_cardinalities(const FuzzyPartition& w, double alpha) {
    std::vector<double> n(w.clusters(), 0.0);
    for (std::size_t i = 0; i < w.points(); ++i)
        for (std::size_t j = 0; j < w.clusters(); ++j) n[j] += detail::weight_power(w(i, j), alpha);
    return n;
}

/// m_j = sum_i w_ij^alpha x_i / sum_i w_ij^alpha.
inline Centers update_centers(const Dataset& data, const FuzzyPartition& w, double alpha) {
    detail::check_partition_shape(data, w);
    const std::size_t k = data.dim();
    const std::size_t c = w.clusters();
    Centers centers(c, std::vector<double>(k, 0.0));
    std::vector<double> mass(c, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto x = data.point(i);
        for (std::size_t j = 0; j < c; ++j) {
            const double u = detail::weight_power(w(i, j), alpha);
            if (u == 0.0) continue;
            mass[j] += u;
            for (std::size_t a = 0; a < k; ++a) centers[j][a] += u * x[a];
        }
    }
    for (std::size_t j = 0; j < c; ++j) {
        if (!(mass[j] > 0.0))
            throw EmptyCluster(j, "cluster " + std::to_string(j) + " has zero fuzzy mass");
        for (double& v : centers[j]) v /= mass[j];
    }
    return centers;
}

/// Unregularized weighted scatter sum_i w^alpha (x-m)(x-m)^T / sum_i w^alpha.
inline SymMatrix weighted_scatter(const Dataset& data, const FuzzyPartition& w,
                                  std::size_t j, std::span<const double> center, double alpha) {
    const std::size_t k = data.dim();
    Matrix s(k, k);
    double mass = 0.0;
    std::vector<double> diff(k);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double u = detail::weight_power(w(i, j), alpha);
        if (u == 0.0) continue;
        mass += u;
        const auto x = data.point(i);
        for (std::size_t a = 0; a < k; ++a) diff[a] = x[a] - center[a];
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b <= a; ++b) s(a, b) += u * diff[a] * diff[b];
    }
    if (!(mass > 0.0)) throw EmptyCluster(j, "cluster " + std::to_string(j) + " has zero fuzzy mass");
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b <= a; ++b) {
            s(a, b) /= mass;
            s(b, a) = s(a, b);
        }
    return SymMatrix(s);
}

/// A covariance lifted to SPD by the ridge ladder, with its factor.
struct CovarianceEstimate {
    SymMatrix covariance;  // already includes the ridge
    CholeskyFactor factor;
    double ridge = 0.0;
};

/// Factors `raw`, escalating the ridge as needed. Throws DegenerateCluster
/// tagged with `cluster` when the ladder is exhausted.
inline CovarianceEstimate regularize_covariance(const SymMatrix& raw, std::size_t cluster,
                                                double fallback_scale) {
    try {
        auto [factor, ridge] = regularized_cholesky(raw, fallback_scale);
        return {raw.shifted(ridge), std::move(factor), ridge};
    } catch (const NotPositiveDefinite& e) {
        throw DegenerateCluster(cluster, "cluster " + std::to_string(cluster) +
                                             " covariance is degenerate: " + e.what());
    }
}

inline std::vector<CovarianceEstimate> estimate_covariances(const Dataset& data,
                                                            const FuzzyPartition& w,
                                                            const Centers& centers,
                                                            double alpha) {
    detail::check_partition_shape(data, w);
    if (centers.size() != w.clusters()) throw LengthMismatch("one center per cluster required");
    const double fallback = detail::average_variance(data);
    std::vector<CovarianceEstimate> out;
    out.reserve(centers.size());
    for (std::size_t j = 0; j < centers.size(); ++j)
        out.push_back(regularize_covariance(weighted_scatter(data, w, j, centers[j], alpha), j,
                                            fallback > 0.0 ? fallback : 1.0));
    return out;
}

/// Fuzzy covariance per cluster, regularized to SPD.
inline std::vector<SymMatrix> fuzzy_covariance(const Dataset& data, const FuzzyPartition& w,
                                               const Centers& centers, double alpha) {
    std::vector<SymMatrix> out;
    for (auto& e : estimate_covariances(data, w, centers, alpha)) out.push_back(std::move(e.covariance));
    return out;
}

/// (x - m)^T C^{-1} (x - m).
inline double mahalanobis_sq(std::span<const double> x, std::span<const double> m,
                             const CholeskyFactor& cov) {
    if (x.size() != m.size() || x.size() != cov.dim())
        throw LengthMismatch("mahalanobis_sq: dimension mismatch");
    std::vector<double> diff(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) diff[a] = x[a] - m[a];
    return inverse_quadratic_form(cov, diff);
}

inline double squared_euclidean(std::span<const double> x, std::span<const double> m) {
    double s = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
        const double d = x[a] - m[a];
        s += d * d;
    }
    return s;
}

/// N x c matrix of squared Mahalanobis distances.
inline Matrix mahalanobis_table(const Dataset& data, const Centers& centers,
                                std::span<const CholeskyFactor> factors) {
    Matrix d(data.size(), centers.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        for (std::size_t j = 0; j < centers.size(); ++j)
            d(i, j) = mahalanobis_sq(data.point(i), centers[j], factors[j]);
    return d;
}

inline std::vector<ClusterStats> cluster_stats(std::span<const double> cardinalities,
                                               std::span<const CholeskyFactor> factors) {
    if (cardinalities.size() != factors.size()) throw LengthMismatch("cluster_stats: size mismatch");
    std::vector<ClusterStats> out;
    out.reserve(factors.size());
    for (std::size_t j = 0; j < factors.size(); ++j)
        out.push_back(ClusterStats::from(cardinalities[j], std::sqrt(determinant(factors[j]))));
    return out;
}

/// n_j = sum_i w_ij^alpha, V_j = sqrt(det C_j), rho_j = n_j / V_j.
inline std::vector<ClusterStats> cluster_stats(const FuzzyPartition& w,
                                               std::span<const SymMatrix> covs, double alpha) {
    if (covs.size() != w.clusters()) throw LengthMismatch("cluster_stats: one covariance per cluster");
    std::vector<CholeskyFactor> factors;
    factors.reserve(covs.size());
    for (const auto& c : covs) factors.push_back(regularized_cholesky(c).factor);
    const auto n = fuzzy_cardinalities(w, alpha);
    return cluster_stats(n, factors);
}

/// Optimal sizes f_j. Evaluated in log space, (k log n_j + 2 log V_j)/(k+2),
/// then normalized like a softmax so n_j^k cannot overflow.
inline std::vector<double> update_f(std::span<const ClusterStats> stats, std::size_t k) {
    const double kk = static_cast<double>(k);
    std::vector<double> logs(stats.size());
    for (std::size_t j = 0; j < stats.size(); ++j) {
        if (!(stats[j].cardinality > 0.0) || !(stats[j].volume > 0.0))
            throw InvalidData("update_f: cardinalities and volumes must be positive");
        logs[j] = (kk * std::log(stats[j].cardinality) + 2.0 * std::log(stats[j].volume)) / (kk + 2.0);
    }
    const double top = *std::max_element(logs.begin(), logs.end());
    std::vector<double> f(stats.size());
    double total = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        f[j] = std::exp(logs[j] - top);
        total += f[j];
    }
    for (double& v : f) v /= total;
    return f;
}

/// Density form of the same sizes: f_j proportional to rho_j^(k/(k+2)) V_j.
inline std::vector<double> update_f_density_form(std::span<const ClusterStats> stats, std::size_t k) {
    const double kk = static_cast<double>(k);
    std::vector<double> f(stats.size());
    double total = 0.0;
    for (std::size_t j = 0; j < stats.size(); ++j) {
        f[j] = std::pow(stats[j].density, kk / (kk + 2.0)) * stats[j].volume;
        total += f[j];
    }
    for (double& v : f) v /= total;
    return f;
}

/// GK: (lambda_j det C_j)^(1/k) d^2.
inline double dissimilarity_gk(double d_sq, double det_c, double lambda_j, std::size_t k) {
    return std::pow(lambda_j * det_c, 1.0 / static_cast<double>(k)) * d_sq;
}

/// GGK: (V_j / f_j)^(2/k) d^2.
inline double dissimilarity_ggk(double d_sq, double volume, double f_j, std::size_t k) {
    return std::pow(volume / f_j, 2.0 / static_cast<double>(k)) * d_sq;
}

/// GG (fuzzy maximum likelihood): sqrt(det C_j) / P_j * exp(d^2 / 2).
inline double dissimilarity_gg(double d_sq, double det_c, double prior) {
    return std::sqrt(det_c) / prior * std::exp(0.5 * d_sq);
}

namespace detail {

/// Memberships from a row of scores s_t = -log(D_t)/(alpha-1), softmax-style.
/// A score of +inf marks a zero dissimilarity; those columns share the row.
inline void memberships_from_scores(std::span<const double> scores, std::span<double> out) {
    const double inf = std::numeric_limits<double>::infinity();
    std::size_t zeros = 0;
    for (double s : scores)
        if (s == inf) ++zeros;
    if (zeros > 0) {
        for (std::size_t t = 0; t < scores.size(); ++t)
            out[t] = scores[t] == inf ? 1.0 / static_cast<double>(zeros) : 0.0;
        return;
    }
    const double top = *std::max_element(scores.begin(), scores.end());
    double total = 0.0;
    for (std::size_t t = 0; t < scores.size(); ++t) {
        out[t] = std::exp(scores[t] - top);
        total += out[t];
    }
    for (double& v : out) v /= total;
}

}  // namespace detail

/// Memberships from log-dissimilarities. Equivalent to update_memberships on
/// exp(log_d) but safe when D itself would overflow (Gath-Geva).
inline FuzzyPartition memberships_from_log(const Matrix& log_d, double alpha) {
    if (!(alpha > 1.0)) throw InvalidConfig("alpha must be > 1");
    const double inv = 1.0 / (alpha - 1.0);
    Matrix w(log_d.rows(), log_d.cols());
    std::vector<double> scores(log_d.cols());
    for (std::size_t i = 0; i < log_d.rows(); ++i) {
        for (std::size_t t = 0; t < log_d.cols(); ++t) scores[t] = -log_d(i, t) * inv;
        detail::memberships_from_scores(scores, w.row(i));
    }
    return FuzzyPartition(std::move(w));
}

/// w_ij = 1 / sum_t (D_ij / D_it)^(1/(alpha-1)); a row containing zero
/// dissimilarities is split equally among those clusters.
inline FuzzyPartition update_memberships(const Matrix& d, double alpha) {
    Matrix logs(d.rows(), d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t t = 0; t < d.cols(); ++t) {
            if (!(d(i, t) >= 0.0)) throw InvalidData("dissimilarities must be nonnegative");
            logs(i, t) = std::log(d(i, t));  // log(0) = -inf
        }
    return memberships_from_log(logs, alpha);
}

/// Density form of the GGK memberships:
/// w_ij proportional to (rho_j^(2/(k+2)) / d_ij^2)^(1/(alpha-1)).
inline FuzzyPartition memberships_density_form(const Matrix& d_sq, std::span<const ClusterStats> stats,
                                               double alpha, std::size_t k) {
    if (!(alpha > 1.0)) throw InvalidConfig("alpha must be > 1");
    if (d_sq.cols() != stats.size()) throw LengthMismatch("one stats entry per column required");
    const double inv = 1.0 / (alpha - 1.0);
    const double expo = 2.0 / (static_cast<double>(k) + 2.0);
    Matrix w(d_sq.rows(), d_sq.cols());
    std::vector<double> scores(d_sq.cols());
    for (std::size_t i = 0; i < d_sq.rows(); ++i) {
        for (std::size_t t = 0; t < d_sq.cols(); ++t)
            scores[t] = (expo * std::log(stats[t].density) - std::log(d_sq(i, t))) * inv;
        detail::memberships_from_scores(scores, w.row(i));
    }
    return FuzzyPartition(std::move(w));
}

/// J = sum_j sum_i w_ij^alpha D_ij.
inline double objective(const FuzzyPartition& w, const Matrix& d, double alpha) {
    if (w.points() != d.rows() || w.clusters() != d.cols()) throw LengthMismatch("objective: shape mismatch");
    double j = 0.0;
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t t = 0; t < d.cols(); ++t) j += detail::weight_power(w(i, t), alpha) * d(i, t);
    return j;
}

/// Objective from log-dissimilarities: sum exp(alpha log w + log D).
inline double objective_from_log(const FuzzyPartition& w, const Matrix& log_d, double alpha) {
    if (w.points() != log_d.rows() || w.clusters() != log_d.cols())
        throw LengthMismatch("objective: shape mismatch");
    double j = 0.0;
    for (std::size_t i = 0; i < log_d.rows(); ++i)
        for (std::size_t t = 0; t < log_d.cols(); ++t) {
            const double u = w(i, t);
            if (u <= 0.0 || log_d(i, t) == -std::numeric_limits<double>::infinity()) continue;
            j += std::exp(alpha * std::log(u) + log_d(i, t));
        }
    return j;
}

/// sum_j (V_j / f_j)^(2/k) k n_j. Equals objective() for GGK once the
/// covariances have been recomputed from the current memberships, since then
/// sum_i w_ij^alpha d_ij^2 = k n_j.
inline double objective_closed_form(std::span<const ClusterStats> stats, std::span<const double> f,
                                    std::size_t k) {
    if (stats.size() != f.size()) throw LengthMismatch("objective_closed_form: size mismatch");
    const double kk = static_cast<double>(k);
    double j = 0.0;
    for (std::size_t t = 0; t < stats.size(); ++t)
        j += std::pow(stats[t].volume / f[t], 2.0 / kk) * kk * stats[t].cardinality;
    return j;
}

}  // namespace fuzzy

#endif  // FUZZY_UPDATES_HPP
