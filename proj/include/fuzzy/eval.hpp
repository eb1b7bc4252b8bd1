#ifndef FUZZY_EVAL_HPP
#define FUZZY_EVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "fit.hpp"
#include "types.hpp"

namespace fuzzy {

/// Per-row argmax; ties go to the lowest cluster index.
inline std::vector<int> harden(const FuzzyPartition& w) {
    std::vector<int> labels(w.points());
    for (std::size_t i = 0; i < w.points(); ++i) {
        const auto r = w.row(i);
        labels[i] = static_cast<int>(std::max_element(r.begin(), r.end()) - r.begin());
    }
    return labels;
}

namespace detail {

inline double choose2(double n) { return n * (n - 1.0) / 2.0; }

/// Dense contingency table after compacting both label sets to 0..r-1.
struct Contingency {
    std::vector<std::vector<double>> table;
    std::vector<double> row_sums;
    std::vector<double> col_sums;
};

inline std::vector<std::size_t> compact(std::span<const int> labels, std::size_t& distinct) {
    std::map<int, std::size_t> ids;
    for (int l : labels) ids.emplace(l, 0);
    std::size_t next = 0;
    for (auto& [label, id] : ids) id = next++;
    distinct = next;
    std::vector<std::size_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids[labels[i]];
    return out;
}

inline Contingency contingency(std::span<const int> a, std::span<const int> b) {
    std::size_t ra = 0;
    std::size_t rb = 0;
    const auto ca = compact(a, ra);
    const auto cb = compact(b, rb);
    Contingency t;
    t.table.assign(ra, std::vector<double>(rb, 0.0));
    t.row_sums.assign(ra, 0.0);
    t.col_sums.assign(rb, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        t.table[ca[i]][cb[i]] += 1.0;
        t.row_sums[ca[i]] += 1.0;
        t.col_sums[cb[i]] += 1.0;
    }
    return t;
}

}  // namespace detail

/// Adjusted Rand index (Hubert & Arabie). Two trivial single-cluster
/// labelings score 1; a trivial labeling against a non-trivial one scores 0.
inline double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw LengthMismatch("adjusted_rand_index: label vectors differ in length");
    const double n = static_cast<double>(a.size());
    if (a.size() < 2) return 1.0;
    const auto t = detail::contingency(a, b);
    double index = 0.0;
    for (const auto& row : t.table)
        for (double v : row) index += detail::choose2(v);
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (double v : t.row_sums) sum_a += detail::choose2(v);
    for (double v : t.col_sums) sum_b += detail::choose2(v);
    const double expected = sum_a * sum_b / detail::choose2(n);
    const double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) return index == expected ? 1.0 : 0.0;
    return (index - expected) / (max_index - expected);
}

/// Best agreement fraction over bijections of cluster indices in [0, c).
/// Exhaustive for c <= 8, greedy on the largest remaining cell above that.
inline double matched_accuracy(std::span<const int> a, std::span<const int> b, std::size_t c) {
    if (a.size() != b.size()) throw LengthMismatch("matched_accuracy: label vectors differ in length");
    if (a.empty()) return 1.0;
    std::vector<std::vector<double>> table(c, std::vector<double>(c, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 0 || b[i] < 0 || static_cast<std::size_t>(a[i]) >= c || static_cast<std::size_t>(b[i]) >= c)
            throw InvalidData("matched_accuracy: label outside [0, c)");
        table[a[i]][b[i]] += 1.0;
    }
    double best = 0.0;
    if (c <= 8) {
        std::vector<std::size_t> perm(c);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            double hits = 0.0;
            for (std::size_t p = 0; p < c; ++p) hits += table[p][perm[p]];
            best = std::max(best, hits);
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        std::vector<bool> row_used(c, false);
        std::vector<bool> col_used(c, false);
        for (std::size_t step = 0; step < c; ++step) {
            double top = -1.0;
            std::size_t bi = 0;
            std::size_t bj = 0;
            for (std::size_t p = 0; p < c; ++p)
                for (std::size_t q = 0; q < c; ++q)
                    if (!row_used[p] && !col_used[q] && table[p][q] > top) {
                        top = table[p][q];
                        bi = p;
                        bj = q;
                    }
            row_used[bi] = col_used[bj] = true;
            best += top;
        }
    }
    return best / static_cast<double>(a.size());
}

struct ComparisonEntry {
    Algorithm algorithm = Algorithm::GGK;
    bool ok = false;
    std::string error;
    double ari = 0.0;
    double matched_accuracy = 0.0;
    double final_objective = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

struct ComparisonReport {
    std::vector<ComparisonEntry> entries;

    const ComparisonEntry* find(Algorithm a) const {
        for (const auto& e : entries)
            if (e.algorithm == a) return &e;
        return nullptr;
    }
};

inline ComparisonEntry evaluate(const Dataset& data, const FitReport& report) {
    const auto& truth = *data.labels();
    const auto hard = harden(report.partition);
    int top = 0;
    for (int l : truth) top = std::max(top, l);
    const std::size_t c = std::max<std::size_t>(report.partition.clusters(), static_cast<std::size_t>(top) + 1);
    ComparisonEntry e;
    e.algorithm = report.algorithm;
    e.ok = true;
    e.ari = adjusted_rand_index(hard, truth);
    e.matched_accuracy = matched_accuracy(hard, truth, c);
    e.final_objective = report.objective_trace.empty() ? 0.0 : report.objective_trace.back();
    e.iterations = report.iterations;
    e.converged = report.converged;
    return e;
}

/// Fits every algorithm with the same config and seed and scores it against
/// the ground-truth labels. A failing fit yields an entry with ok = false.
inline ComparisonReport compare(const Dataset& data, std::span<const Algorithm> algorithms, const FitConfig& cfg) {
    if (!data.labels()) throw InvalidData("compare requires ground-truth labels");
    ComparisonReport out;
    for (Algorithm a : algorithms) {
        FitConfig run = cfg;
        run.algorithm = a;
        if (a != Algorithm::GK) run.lambda.clear();
        try {
            out.entries.push_back(evaluate(data, fit(data, run)));
        } catch (const Error& err) {
            ComparisonEntry e;
            e.algorithm = a;
            e.error = err.what();
            out.entries.push_back(std::move(e));
        }
    }
    return out;
}

}  // namespace fuzzy

#endif  // FUZZY_EVAL_HPP
