#ifndef FUZZY_IO_HPP
#define FUZZY_IO_HPP

// File formats used by the command-line tool:
//
//   points CSV      k numeric columns, optional trailing "label" column when a
//                   header row names it; ',' delimiter, '.' decimal point
//   memberships CSV N rows of c membership values under a w0..w{c-1} header
//   model JSON      fitted prototypes, sizes and run metadata
//   scenario JSON   ellipse list for the generator
//   report JSON     algorithm comparison

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "datagen.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "types.hpp"

namespace fuzzy {

using json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to exactly `v`.
inline std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

inline bool parse_number(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

inline bool parse_int(std::string_view s, int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << content;
    if (!out) throw ParseError("failed writing '" + path + "'");
}

}  // namespace detail

inline Dataset parse_points_csv(std::string_view text) {
    std::vector<std::vector<std::string_view>> rows;
    std::size_t line_no = 0;
    std::vector<std::size_t> line_of;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = detail::trim(text.substr(pos, nl - pos));
        ++line_no;
        if (!line.empty()) {
            rows.push_back(detail::split(line));
            line_of.push_back(line_no);
        }
        pos = nl + 1;
    }
    if (rows.empty()) throw ParseError("points file is empty");

    bool header = false;
    double probe = 0.0;
    for (auto cell : rows.front())
        if (!detail::parse_number(cell, probe)) header = true;
    const bool labelled = header && rows.front().back() == "label";
    const std::size_t first = header ? 1 : 0;
    const std::size_t width = rows.front().size();
    if (rows.size() <= first) throw ParseError("points file has no data rows");
    const std::size_t k = labelled ? width - 1 : width;
    if (k == 0) throw ParseError("points file has no coordinate columns");

    Matrix points(rows.size() - first, k);
    std::vector<int> labels;
    for (std::size_t r = first; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        const std::string where = "line " + std::to_string(line_of[r]);
        if (cells.size() != width)
            throw ParseError(where + ": expected " + std::to_string(width) + " columns, got " +
                             std::to_string(cells.size()));
        for (std::size_t a = 0; a < k; ++a)
            if (!detail::parse_number(cells[a], points(r - first, a)))
                throw ParseError(where + ": '" + std::string(cells[a]) + "' is not a finite number");
        if (labelled) {
            int l = 0;
            if (!detail::parse_int(cells[k], l))
                throw ParseError(where + ": label '" + std::string(cells[k]) + "' is not an integer");
            labels.push_back(l);
        }
    }
    if (labelled) return Dataset(std::move(points), std::move(labels));
    return Dataset(std::move(points));
}

inline std::string format_points_csv(const Dataset& data) {
    std::string out;
    for (std::size_t a = 0; a < data.dim(); ++a) out += (a ? ",x" : "x") + std::to_string(a);
    if (data.labels()) out += ",label";
    out += '\n';
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t a = 0; a < data.dim(); ++a) {
            if (a) out += ',';
            out += format_double(data.point(i)[a]);
        }
        if (data.labels()) out += ',' + std::to_string((*data.labels())[i]);
        out += '\n';
    }
    return out;
}

inline std::string format_memberships_csv(const FuzzyPartition& w) {
    std::string out;
    for (std::size_t j = 0; j < w.clusters(); ++j) out += (j ? ",w" : "w") + std::to_string(j);
    out += '\n';
    for (std::size_t i = 0; i < w.points(); ++i) {
        for (std::size_t j = 0; j < w.clusters(); ++j) {
            if (j) out += ',';
            out += format_double(w(i, j));
        }
        out += '\n';
    }
    return out;
}

inline Dataset read_points_csv(const std::string& path) { return parse_points_csv(detail::read_file(path)); }

inline void write_points_csv(const std::string& path, const Dataset& data) {
    detail::write_file(path, format_points_csv(data));
}

/// Everything needed to reproduce assignments and drawings from a fit.
struct ModelFile {
    Algorithm algorithm = Algorithm::GGK;
    double alpha = 2.0;
    std::vector<double> lambda;
    std::uint64_t seed = 0;
    ClusterModel model;
    std::vector<double> objective_trace;
    std::size_t iterations = 0;
    bool converged = false;

    static ModelFile from_report(const FitReport& r) {
        return {r.algorithm, r.alpha, r.lambda, r.seed, r.model, r.objective_trace, r.iterations, r.converged};
    }

    std::size_t clusters() const { return model.clusters(); }
    std::size_t dim() const { return model.dim(); }
    friend bool operator==(const ModelFile&, const ModelFile&) = default;
};

namespace detail {

// JSON has no encoding for inf/nan; they are written as null.
inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline double number_from(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace detail

inline json to_json(const ModelFile& m) {
    json j;
    j["algorithm"] = std::string(to_string(m.algorithm));
    j["c"] = m.clusters();
    j["k"] = m.dim();
    j["alpha"] = m.alpha;
    if (!m.lambda.empty()) j["lambda"] = m.lambda;
    j["seed"] = m.seed;
    j["iterations"] = m.iterations;
    j["converged"] = m.converged;
    json trace = json::array();
    for (double v : m.objective_trace) trace.push_back(detail::number_or_null(v));
    j["objective_trace"] = std::move(trace);
    json clusters = json::array();
    for (std::size_t t = 0; t < m.clusters(); ++t) {
        json c;
        c["center"] = m.model.centers[t];
        const auto cov = m.model.covariances[t].dense().values();
        c["covariance"] = std::vector<double>(cov.begin(), cov.end());
        c["f"] = m.model.sizes[t];
        c["n"] = m.model.stats[t].cardinality;
        c["V"] = m.model.stats[t].volume;
        clusters.push_back(std::move(c));
    }
    j["clusters"] = std::move(clusters);
    return j;
}

inline ModelFile model_from_json(const json& j) {
    try {
        ModelFile m;
        m.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
        m.alpha = j.at("alpha").get<double>();
        if (j.contains("lambda")) m.lambda = j.at("lambda").get<std::vector<double>>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.iterations = j.at("iterations").get<std::size_t>();
        m.converged = j.at("converged").get<bool>();
        for (const auto& v : j.at("objective_trace")) m.objective_trace.push_back(detail::number_from(v));
        const auto c = j.at("c").get<std::size_t>();
        const auto k = j.at("k").get<std::size_t>();
        const auto& clusters = j.at("clusters");
        if (clusters.size() != c) throw ParseError("model file: cluster count does not match 'c'");
        for (const auto& cl : clusters) {
            auto center = cl.at("center").get<std::vector<double>>();
            auto cov = cl.at("covariance").get<std::vector<double>>();
            if (center.size() != k || cov.size() != k * k)
                throw ParseError("model file: center or covariance has the wrong size");
            Matrix dense(k, k);
            std::copy(cov.begin(), cov.end(), dense.values().begin());
            m.model.centers.push_back(std::move(center));
            m.model.covariances.emplace_back(dense);
            m.model.sizes.push_back(cl.at("f").get<double>());
            m.model.stats.push_back(ClusterStats::from(cl.at("n").get<double>(), cl.at("V").get<double>()));
        }
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("model file: ") + e.what());
    } catch (const InvalidConfig& e) {
        throw ParseError(std::string("model file: ") + e.what());
    }
}

inline std::string format_model(const ModelFile& m) { return to_json(m).dump(2) + "\n"; }

inline ModelFile parse_model(std::string_view text) {
    try {
        return model_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw ParseError(std::string("model file: ") + e.what());
    }
}

inline ModelFile read_model(const std::string& path) { return parse_model(detail::read_file(path)); }

inline void write_model(const std::string& path, const ModelFile& m) { detail::write_file(path, format_model(m)); }

inline json to_json(const ScenarioSpec& s) {
    json j;
    j["seed"] = s.seed;
    json list = json::array();
    for (const auto& e : s.ellipses) {
        json je;
        je["center"] = {e.center[0], e.center[1]};
        je["semi_axes"] = {e.major, e.minor};
        je["rotation"] = e.rotation;
        je["count"] = e.count;
        list.push_back(std::move(je));
    }
    j["ellipses"] = std::move(list);
    return j;
}

inline ScenarioSpec scenario_from_json(const json& j) {
    try {
        ScenarioSpec s;
        if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& je : j.at("ellipses")) {
            EllipseSpec e;
            const auto center = je.at("center").get<std::vector<double>>();
            const auto axes = je.at("semi_axes").get<std::vector<double>>();
            if (center.size() != 2 || axes.size() != 2)
                throw ParseError("scenario: center and semi_axes need two entries");
            e.center = {center[0], center[1]};
            e.major = axes[0];
            e.minor = axes[1];
            e.rotation = je.value("rotation", 0.0);
            e.count = je.at("count").get<std::size_t>();
            e.validate();
            s.ellipses.push_back(e);
        }
        if (s.ellipses.empty()) throw ParseError("scenario: no ellipses");
        return s;
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    } catch (const InvalidConfig& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
}

inline ScenarioSpec read_scenario(const std::string& path) {
    try {
        return scenario_from_json(json::parse(detail::read_file(path)));
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
}

inline json to_json(const ComparisonReport& r) {
    json j;
    json results = json::array();
    for (const auto& e : r.entries) {
        json je;
        je["algorithm"] = std::string(to_string(e.algorithm));
        je["ok"] = e.ok;
        if (e.ok) {
            je["ari"] = e.ari;
            je["matched_accuracy"] = e.matched_accuracy;
            je["final_objective"] = detail::number_or_null(e.final_objective);
            je["iterations"] = e.iterations;
            je["converged"] = e.converged;
        } else {
            je["error"] = e.error;
        }
        results.push_back(std::move(je));
    }
    j["results"] = std::move(results);
    return j;
}

}  // namespace fuzzy

#endif  // FUZZY_IO_HPP
