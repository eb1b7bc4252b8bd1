// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each check prints the worst observed error next to its bound.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fuzzy/fuzzy.hpp"
#include "test_support.hpp"

using namespace fuzzy;
namespace ts = fuzzy::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

template <class T>
T pick(std::mt19937_64& g, std::initializer_list<T> options) {
    std::uniform_int_distribution<std::size_t> u(0, options.size() - 1);
    return *(options.begin() + u(g));
}

struct State {
    Dataset data;
    FuzzyPartition w;
    double alpha;
    std::size_t k, c;
};

State random_state(std::mt19937_64& g, std::size_t n_lo = 20, std::size_t n_hi = 200) {
    const auto n = std::uniform_int_distribution<std::size_t>(n_lo, n_hi)(g);
    const auto k = pick<std::size_t>(g, {2, 3, 5});
    const auto c = pick<std::size_t>(g, {2, 3, 4});
    const auto alpha = pick<double>(g, {1.5, 2.0, 3.0});
    return {ts::random_dataset(g, n, k), ts::random_partition(g, n, c), alpha, k, c};
}

// Weighted Mahalanobis sum checked with Gaussian elimination on the covariance.
void weighted_distance_identity() {
    std::mt19937_64 g(1001);
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = random_state(g);
        const auto centers = update_centers(s.data, s.w, s.alpha);
        const auto covs = fuzzy_covariance(s.data, s.w, centers, s.alpha);
        const auto n = fuzzy_cardinalities(s.w, s.alpha);
        for (std::size_t j = 0; j < s.c; ++j) {
            double lhs = 0.0;
            std::vector<double> diff(s.k);
            for (std::size_t i = 0; i < s.data.size(); ++i) {
                for (std::size_t a = 0; a < s.k; ++a) diff[a] = s.data.point(i)[a] - centers[j][a];
                const auto y = ts::gauss_solve(covs[j].dense(), diff);
                double d2 = 0.0;
                for (std::size_t a = 0; a < s.k; ++a) d2 += diff[a] * y[a];
                lhs += std::pow(s.w(i, j), s.alpha) * d2;
            }
            worst = std::max(worst, ts::relative_error(lhs, static_cast<double>(s.k) * n[j]));
        }
    }
    const double secs = seconds_since(t0);
    report(1, "weighted distance identity", worst < 1e-8 && secs < 10.0,
           fmt("max rel err %.3g (< 1e-8), %.2f s (< 10 s)", worst, secs));
}

void equivalences() {
    std::mt19937_64 g(1002);
    double f_err = 0.0, w_err = 0.0, j_err = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = pick<std::size_t>(g, {1, 2, 3, 5, 8});
        const auto stats = ts::random_stats(g, 2 + trial % 6);
        const auto a = update_f(stats, k);
        const auto b = update_f_density_form(stats, k);
        for (std::size_t j = 0; j < a.size(); ++j) f_err = std::max(f_err, std::abs(a[j] - b[j]));
    }
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = random_state(g);
        const auto centers = update_centers(s.data, s.w, s.alpha);
        const auto est = estimate_covariances(s.data, s.w, centers, s.alpha);
        std::vector<CholeskyFactor> factors;
        for (const auto& e : est) factors.push_back(e.factor);
        const auto stats = cluster_stats(fuzzy_cardinalities(s.w, s.alpha), factors);
        const auto f = update_f(stats, s.k);
        const auto d_sq = mahalanobis_table(s.data, centers, factors);
        Matrix d(d_sq.rows(), s.c);
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < s.c; ++j) d(i, j) = dissimilarity_ggk(d_sq(i, j), stats[j].volume, f[j], s.k);
        const auto wa = update_memberships(d, s.alpha);
        const auto wb = memberships_density_form(d_sq, stats, s.alpha, s.k);
        for (std::size_t t = 0; t < wa.weights().values().size(); ++t)
            w_err = std::max(w_err, std::abs(wa.weights().values()[t] - wb.weights().values()[t]));
        j_err = std::max(j_err, ts::relative_error(objective(s.w, d, s.alpha), objective_closed_form(stats, f, s.k)));
    }
    report(2, "equivalent forms", f_err <= 1e-10 && w_err <= 1e-9 && j_err <= 1e-8,
           fmt("sizes %.3g (<= 1e-10), memberships %.3g (<= 1e-9), objective rel %.3g (<= 1e-8)", f_err, w_err,
               j_err));
}

void reduction() {
    std::mt19937_64 g(1003);
    double worst = 0.0;
    bool lengths_match = true;
    for (int trial = 0; trial < 20; ++trial) {
        const auto n = std::uniform_int_distribution<std::size_t>(30, 150)(g);
        const std::size_t k = pick<std::size_t>(g, {2, 3});
        const auto d = ts::random_dataset(g, n, k);
        FitConfig gk;
        gk.algorithm = Algorithm::GK;
        gk.clusters = pick<std::size_t>(g, {2, 3, 4});
        gk.seed = trial;
        gk.init = InitMethod::RandomPartition;
        gk.max_iter = 100;
        auto ggk = gk;
        ggk.algorithm = Algorithm::GGK;
        ggk.pinned_sizes = std::vector<double>(gk.clusters, 1.0 / gk.clusters);
        const auto init = init_partition(d, gk);

        std::vector<FuzzyPartition> gk_w;
        std::vector<Centers> gk_m;
        (void)fit(d, gk, init, [&](std::size_t, const Centers& m, const FuzzyPartition& w) {
            gk_m.push_back(m);
            gk_w.push_back(w);
        });
        std::size_t it = 0;
        (void)fit(d, ggk, init, [&](std::size_t, const Centers& m, const FuzzyPartition& w) {
            if (it >= gk_w.size()) {
                lengths_match = false;
                return;
            }
            const auto a = w.weights().values();
            const auto b = gk_w[it].weights().values();
            for (std::size_t t = 0; t < a.size(); ++t) worst = std::max(worst, std::abs(a[t] - b[t]));
            for (std::size_t j = 0; j < m.size(); ++j)
                for (std::size_t x = 0; x < m[j].size(); ++x)
                    worst = std::max(worst, std::abs(m[j][x] - gk_m[it][j][x]));
            ++it;
        });
        lengths_match = lengths_match && it == gk_w.size();
    }
    report(3, "pinned sizes reduce to GK", worst <= 1e-9 && lengths_match,
           fmt("max iterate diff %.3g (<= 1e-9), iteration counts ", worst) + (lengths_match ? "equal" : "differ"));
}

void minimizer() {
    std::mt19937_64 g(1004);
    int violations = 0;
    double slack = INFINITY;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = pick<std::size_t>(g, {1, 2, 3, 5});
        const auto stats = ts::random_stats(g, 2 + trial % 5);
        const double best = objective_closed_form(stats, update_f(stats, k), k);
        for (int s = 0; s < 1000; ++s) {
            const auto f = ts::random_simplex_point(g, stats.size());
            const double other = objective_closed_form(stats, f, k);
            if (best > other) ++violations;
            slack = std::min(slack, (other - best) / best);
        }
    }
    report(4, "optimal sizes minimize the objective", violations == 0,
           fmt("%g of 50000 simplex points beat the optimum, min relative margin %.3g", violations, slack));
}

void two_ellipse() {
    const auto t0 = Clock::now();
    int ggk_high = 0, ggk_ge_gk = 0, gg_close = 0;
    std::string aris;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto d = sample_scenario(builtin_scenario("two-ellipse", seed));
        FitConfig cfg;
        cfg.clusters = 2;
        cfg.seed = seed;
        const std::vector<Algorithm> algs{Algorithm::GK, Algorithm::GGK, Algorithm::GG};
        const auto r = compare(d, algs, cfg);
        const auto* gk = r.find(Algorithm::GK);
        const auto* ggk = r.find(Algorithm::GGK);
        const auto* gg = r.find(Algorithm::GG);
        const bool ok = gk->ok && ggk->ok && gg->ok;
        ggk_high += ok && ggk->ari >= 0.95;
        ggk_ge_gk += ok && ggk->ari >= gk->ari;
        gg_close += ok && std::abs(gg->ari - ggk->ari) <= 0.1;
        aris += fmt(" %.2f/%.2f/%.2f", gk->ari, ggk->ari, gg->ari);
    }
    const double secs = seconds_since(t0);
    report(5, "two-ellipse reproduction", ggk_high >= 8 && ggk_ge_gk == 10 && gg_close >= 8 && secs < 30.0,
           fmt("GGK>=0.95 in %g/10 (>= 8), GGK>=GK in %g/10 (10), |GG-GGK|<=0.1 in %g/10 (>= 8)", ggk_high,
               ggk_ge_gk, gg_close) +
               fmt(", %.2f s (< 30 s); ARI GK/GGK/GG:", secs) + aris);
}

void three_ellipse() {
    int ggk_ge_gk = 0;
    std::string aris;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto d = sample_scenario(builtin_scenario("three-ellipse", seed));
        FitConfig cfg;
        cfg.clusters = 3;
        cfg.seed = seed;
        const std::vector<Algorithm> algs{Algorithm::GK, Algorithm::GGK};
        const auto r = compare(d, algs, cfg);
        const auto* gk = r.find(Algorithm::GK);
        const auto* ggk = r.find(Algorithm::GGK);
        ggk_ge_gk += gk->ok && ggk->ok && ggk->ari >= gk->ari;
        aris += fmt(" %.2f/%.2f", gk->ari, ggk->ari);
    }
    report(6, "three-ellipse reproduction", ggk_ge_gk >= 9,
           fmt("GGK>=GK in %g/10 (>= 9); ARI GK/GGK:", ggk_ge_gk) + aris);
}

void constraints() {
    double row_err = 0.0, f_err = 0.0;
    bool identical = true;
    std::size_t partitions = 0;
    for (const auto& name : builtin_scenario_names())
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto d = sample_scenario(builtin_scenario(name, seed));
            for (auto alg : {Algorithm::FCM, Algorithm::GK, Algorithm::GGK, Algorithm::GG}) {
                FitConfig cfg;
                cfg.algorithm = alg;
                cfg.clusters = name == "two-ellipse" ? 2 : 3;
                cfg.seed = seed;
                auto check = [&](std::size_t, const Centers&, const FuzzyPartition& w) {
                    row_err = std::max(row_err, w.max_row_defect());
                    ++partitions;
                };
                const auto r = fit(d, cfg, init_partition(d, cfg), check);
                check(0, r.model.centers, r.partition);
                double total = 0.0;
                for (double f : r.model.sizes) total += f;
                f_err = std::max(f_err, std::abs(total - 1.0));

                const auto again = fit(d, cfg);
                const auto ma = ModelFile::from_report(r), mb = ModelFile::from_report(again);
                identical = identical && format_model(ma) == format_model(mb) && render_svg(d, ma) == render_svg(d, mb);
            }
        }
    // Random data as well, including higher dimension and c up to 4.
    std::mt19937_64 g(1007);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_state(g, 40, 120);
        FitConfig cfg;
        cfg.clusters = s.c;
        cfg.alpha = s.alpha;
        cfg.seed = trial;
        const auto r = fit(s.data, cfg, init_partition(s.data, cfg), [&](std::size_t, const Centers&,
                                                                          const FuzzyPartition& w) {
            row_err = std::max(row_err, w.max_row_defect());
            ++partitions;
        });
        double total = 0.0;
        for (double f : r.model.sizes) total += f;
        f_err = std::max(f_err, std::abs(total - 1.0));
        identical = identical && format_model(ModelFile::from_report(r)) ==
                                     format_model(ModelFile::from_report(fit(s.data, cfg)));
    }
    report(7, "partition and size constraints, determinism", row_err <= 1e-9 && f_err <= 1e-12 && identical,
           fmt("max row defect %.3g (<= 1e-9) over %g partitions, max |sum f - 1| %.3g (<= 1e-12), ", row_err,
               static_cast<double>(partitions), f_err) +
               (identical ? "outputs byte-identical" : "outputs differ"));
}

void matrix_kernel() {
    std::mt19937_64 g(1008);
    double recon = 0.0, det = 0.0, resid = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = 1 + trial % 8;
        const auto m = ts::random_spd(g, k);
        const auto f = cholesky(m);
        double scale = 0.0;
        for (double v : m.dense().values()) scale = std::max(scale, std::abs(v));
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) {
                double s = 0.0;
                for (std::size_t p = 0; p < k; ++p) s += f(r, p) * f(c, p);
                recon = std::max(recon, std::abs(s - m(r, c)) / scale);
            }
        if (k <= 3) det = std::max(det, ts::relative_error(determinant(f), ts::cofactor_determinant(m.dense())));
        std::vector<double> b(k);
        for (double& v : b) v = ts::uniform(g, -10, 10);
        const auto back = m.multiply(solve(f, b));
        double num = 0.0, den = 0.0;
        for (std::size_t a = 0; a < k; ++a) {
            num += (back[a] - b[a]) * (back[a] - b[a]);
            den += b[a] * b[a];
        }
        resid = std::max(resid, std::sqrt(num / den));
    }
    report(8, "matrix kernel oracles", recon < 1e-10 && det < 1e-10 && resid < 1e-10,
           fmt("reconstruction %.3g, determinant %.3g, solve residual %.3g (all < 1e-10)", recon, det, resid));
}

template <class F>
void guarded(int id, const char* name, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        report(id, name, false, std::string("threw: ") + e.what());
    }
}

}  // namespace

int main() {
    guarded(1, "weighted distance identity", weighted_distance_identity);
    guarded(2, "equivalent forms", equivalences);
    guarded(3, "pinned sizes reduce to GK", reduction);
    guarded(4, "optimal sizes minimize the objective", minimizer);
    guarded(5, "two-ellipse reproduction", two_ellipse);
    guarded(6, "three-ellipse reproduction", three_ellipse);
    guarded(7, "partition and size constraints, determinism", constraints);
    guarded(8, "matrix kernel oracles", matrix_kernel);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
