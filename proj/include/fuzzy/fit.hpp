#ifndef FUZZY_FIT_HPP
#define FUZZY_FIT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "types.hpp"
#include "updates.hpp"

namespace fuzzy {

/// Seeded generator with a platform-independent double conversion.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
    }

private:
    std::mt19937_64 engine_;
};

/// Initial centers by greedy farthest-point selection from a seeded start.
inline std::vector<std::size_t> farthest_point_indices(const Dataset& data, std::size_t c, Rng& rng) {
    const std::size_t n = data.size();
    std::vector<std::size_t> chosen{rng.index(n)};
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    std::vector<bool> taken(n, false);
    taken[chosen[0]] = true;
    while (chosen.size() < c) {
        const auto last = data.point(chosen.back());
        std::size_t best = n;
        double best_dist = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], squared_euclidean(data.point(i), last));
            if (!taken[i] && nearest[i] > best_dist) {
                best_dist = nearest[i];
                best = i;
            }
        }
        taken[best] = true;
        chosen.push_back(best);
    }
    return chosen;
}

inline FuzzyPartition init_partition(const Dataset& data, const FitConfig& cfg) {
    cfg.validate(data.size());
    const std::size_t n = data.size();
    const std::size_t c = cfg.clusters;
    Rng rng(cfg.seed);
    if (cfg.init == InitMethod::RandomPartition) {
        Matrix w(n, c);
        for (std::size_t i = 0; i < n; ++i) {
            double total = 0.0;
            for (std::size_t j = 0; j < c; ++j) total += (w(i, j) = rng.uniform());
            for (std::size_t j = 0; j < c; ++j) w(i, j) /= total;
        }
        return FuzzyPartition(std::move(w));
    }
    const auto idx = farthest_point_indices(data, c, rng);
    Matrix d(n, c);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < c; ++j) d(i, j) = squared_euclidean(data.point(i), data.point(idx[j]));
    return update_memberships(d, cfg.alpha);
}

/// Log-dissimilarities of every point to every cluster of `model` under
/// `algorithm`. `lambda` may be empty (all ones).
inline Matrix log_dissimilarities(const Dataset& data, Algorithm algorithm, const Centers& centers,
                                  std::span<const CholeskyFactor> factors,
                                  std::span<const ClusterStats> stats, std::span<const double> sizes,
                                  std::span<const double> lambda) {
    const std::size_t n = data.size();
    const std::size_t c = centers.size();
    const double k = static_cast<double>(data.dim());
    Matrix log_d(n, c);
    if (algorithm == Algorithm::FCM) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < c; ++j)
                log_d(i, j) = std::log(squared_euclidean(data.point(i), centers[j]));
        return log_d;
    }
    std::vector<double> offset(c);
    double mass = 0.0;
    for (const auto& s : stats) mass += s.cardinality;
    for (std::size_t j = 0; j < c; ++j) {
        switch (algorithm) {
            case Algorithm::GK:
                offset[j] = (std::log(lambda.empty() ? 1.0 : lambda[j]) + log_determinant(factors[j])) / k;
                break;
            case Algorithm::GGK:
                offset[j] = 2.0 / k * (std::log(stats[j].volume) - std::log(sizes[j]));
                break;
            case Algorithm::GG:
                offset[j] = 0.5 * log_determinant(factors[j]) - std::log(stats[j].cardinality / mass);
                break;
            case Algorithm::FCM: break;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const double d_sq = mahalanobis_sq(data.point(i), centers[j], factors[j]);
            log_d(i, j) = algorithm == Algorithm::GG ? offset[j] + 0.5 * d_sq : offset[j] + std::log(d_sq);
        }
    return log_d;
}

/// Called after every iteration with the centers used and the new partition.
using IterationObserver =
    std::function<void(std::size_t iteration, const Centers& centers, const FuzzyPartition& w)>;

namespace detail {

struct Prototypes {
    Centers centers;
    std::vector<CovarianceEstimate> covariances;
    std::vector<ClusterStats> stats;
    std::vector<double> sizes;
    std::size_t reseeded = 0;
};

inline std::vector<CholeskyFactor> factors_of(const std::vector<CovarianceEstimate>& covs) {
    std::vector<CholeskyFactor> out;
    out.reserve(covs.size());
    for (const auto& e : covs) out.push_back(e.factor);
    return out;
}

// Centers, covariances, stats and sizes from the current partition. A cluster
// whose fuzzy mass underflows is reseeded at the point with the lowest
// maximum membership, with an isotropic covariance at the data's average
// per-dimension variance and a fuzzy cardinality of one point.
inline Prototypes update_prototypes(const Dataset& data, const FuzzyPartition& w,
                                    const FitConfig& cfg, bool need_covariances) {
    const std::size_t n = data.size();
    const std::size_t c = w.clusters();
    const std::size_t k = data.dim();
    Prototypes p;
    p.centers.assign(c, std::vector<double>(k, 0.0));
    const auto mass = fuzzy_cardinalities(w, cfg.alpha);

    std::vector<bool> empty(c, false);
    std::vector<bool> used(n, false);
    for (std::size_t j = 0; j < c; ++j) {
        if (mass[j] > 0.0) continue;
        empty[j] = true;
        ++p.reseeded;
        std::size_t pick = n;
        double lowest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            const auto r = w.row(i);
            const double top = *std::max_element(r.begin(), r.end());
            if (top < lowest) {
                lowest = top;
                pick = i;
            }
        }
        used[pick] = true;
        const auto x = data.point(pick);
        p.centers[j].assign(x.begin(), x.end());
    }

    if (p.reseeded == 0) {
        p.centers = update_centers(data, w, cfg.alpha);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                if (empty[j]) continue;
                const double u = weight_power(w(i, j), cfg.alpha);
                for (std::size_t a = 0; a < k; ++a) p.centers[j][a] += u * data.point(i)[a];
            }
        for (std::size_t j = 0; j < c; ++j)
            if (!empty[j])
                for (double& v : p.centers[j]) v /= mass[j];
    }
    if (!need_covariances) return p;

    const double spread = average_variance(data);
    const double fallback = spread > 0.0 ? spread : 1.0;
    std::vector<double> cardinality = mass;
    for (std::size_t j = 0; j < c; ++j) {
        if (empty[j]) {
            p.covariances.push_back(regularize_covariance(SymMatrix::identity(k, fallback), j, fallback));
            cardinality[j] = 1.0;
        } else {
            p.covariances.push_back(
                regularize_covariance(weighted_scatter(data, w, j, p.centers[j], cfg.alpha), j, fallback));
        }
    }
    p.stats = cluster_stats(cardinality, factors_of(p.covariances));
    if (cfg.algorithm == Algorithm::GGK)
        p.sizes = cfg.pinned_sizes ? *cfg.pinned_sizes : update_f(p.stats, k);
    else
        p.sizes.assign(c, 1.0 / static_cast<double>(c));
    return p;
}

}  // namespace detail

/// Alternating optimization from a given initial partition.
///
/// Each iteration: centers, then (GK/GGK/GG) covariances and cluster stats,
/// then (GGK) sizes f, then dissimilarities and memberships. Stops when the
/// largest membership change is at most cfg.tol or after cfg.max_iter
/// iterations.
inline FitReport fit(const Dataset& data, const FitConfig& cfg, const FuzzyPartition& initial,
                     const IterationObserver& observer = {}) {
    cfg.validate(data.size());
    if (initial.points() != data.size() || initial.clusters() != cfg.clusters)
        throw LengthMismatch("initial partition has the wrong shape");

    FitReport report;
    report.algorithm = cfg.algorithm;
    report.alpha = cfg.alpha;
    report.seed = cfg.seed;
    report.lambda = cfg.lambda;

    const bool with_cov = cfg.algorithm != Algorithm::FCM;
    FuzzyPartition w = initial;
    detail::Prototypes proto;
    for (std::size_t iter = 1; iter <= cfg.max_iter; ++iter) {
        proto = detail::update_prototypes(data, w, cfg, with_cov);
        report.reseeds += proto.reseeded;
        const auto factors = detail::factors_of(proto.covariances);
        const Matrix log_d = log_dissimilarities(data, cfg.algorithm, proto.centers, factors, proto.stats,
                                                 proto.sizes, cfg.lambda);
        FuzzyPartition next = memberships_from_log(log_d, cfg.alpha);

        double delta = 0.0;
        const auto a = w.weights().values();
        const auto b = next.weights().values();
        for (std::size_t t = 0; t < a.size(); ++t) delta = std::max(delta, std::abs(a[t] - b[t]));

        const double j = objective_from_log(next, log_d, cfg.alpha);
        if (!report.objective_trace.empty() && j > report.objective_trace.back())
            report.objective_increased = true;
        report.objective_trace.push_back(j);
        w = std::move(next);
        report.iterations = iter;
        report.final_delta = delta;
        if (observer) observer(iter, proto.centers, w);
        if (delta <= cfg.tol) {
            report.converged = true;
            break;
        }
    }

    if (!with_cov) {
        // FCM has no covariances of its own; report the fuzzy scatter about
        // the final centers so the model can still be summarized and drawn.
        const double spread = detail::average_variance(data);
        for (std::size_t j = 0; j < cfg.clusters; ++j)
            proto.covariances.push_back(regularize_covariance(
                weighted_scatter(data, w, j, proto.centers[j], cfg.alpha), j, spread > 0.0 ? spread : 1.0));
        proto.stats = cluster_stats(fuzzy_cardinalities(w, cfg.alpha), detail::factors_of(proto.covariances));
        proto.sizes.assign(cfg.clusters, 1.0 / static_cast<double>(cfg.clusters));
    }
    report.model.centers = proto.centers;
    for (const auto& e : proto.covariances) report.model.covariances.push_back(e.covariance);
    report.model.stats = proto.stats;
    report.model.sizes = proto.sizes;
    report.partition = std::move(w);
    return report;
}

inline FitReport fit(const Dataset& data, const FitConfig& cfg) {
    return fit(data, cfg, init_partition(data, cfg));
}

/// Memberships a fitted model assigns to `data`.
inline FuzzyPartition predict_memberships(const Dataset& data, Algorithm algorithm, const ClusterModel& model,
                                          double alpha, std::span<const double> lambda = {}) {
    if (model.dim() != data.dim()) throw LengthMismatch("model dimension does not match the data");
    std::vector<CholeskyFactor> factors;
    if (algorithm != Algorithm::FCM)
        for (const auto& cov : model.covariances) factors.push_back(regularized_cholesky(cov).factor);
    return memberships_from_log(
        log_dissimilarities(data, algorithm, model.centers, factors, model.stats, model.sizes, lambda), alpha);
}

}  // namespace fuzzy

#endif  // FUZZY_FIT_HPP
