#ifndef FUZZY_DATAGEN_HPP
#define FUZZY_DATAGEN_HPP

// Seeded 2-D test sets: points drawn uniformly inside rotated ellipses.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "fit.hpp"
#include "matrix.hpp"
#include "types.hpp"

namespace fuzzy {

struct EllipseSpec {
    std::array<double, 2> center{0.0, 0.0};
    double major = 1.0;     // semi-axis a, along the rotated x axis
    double minor = 1.0;     // semi-axis b
    double rotation = 0.0;  // radians, counter-clockwise
    std::size_t count = 1;

    void validate() const {
        if (!(minor > 0.0) || !(major >= minor)) throw InvalidConfig("ellipse semi-axes need a >= b > 0");
        if (count < 1) throw InvalidConfig("ellipse count must be at least 1");
    }

    /// Implicit value ((u/a)^2 + (v/b)^2) of p in the ellipse frame; <= 1 inside.
    double implicit(std::span<const double> p) const {
        const double dx = p[0] - center[0];
        const double dy = p[1] - center[1];
        const double cs = std::cos(rotation);
        const double sn = std::sin(rotation);
        const double u = cs * dx + sn * dy;
        const double v = -sn * dx + cs * dy;
        return (u / major) * (u / major) + (v / minor) * (v / minor);
    }
};

struct ScenarioSpec {
    std::vector<EllipseSpec> ellipses;
    std::uint64_t seed = 0;

    std::size_t total() const {
        std::size_t n = 0;
        for (const auto& e : ellipses) n += e.count;
        return n;
    }
};

/// Rejection-samples every ellipse in order; labels are ellipse indices.
inline Dataset sample_scenario(const ScenarioSpec& spec) {
    if (spec.ellipses.empty()) throw InvalidConfig("scenario needs at least one ellipse");
    for (const auto& e : spec.ellipses) e.validate();
    Rng rng(spec.seed);
    Matrix points(spec.total(), 2);
    std::vector<int> labels;
    labels.reserve(spec.total());
    std::size_t row = 0;
    for (std::size_t l = 0; l < spec.ellipses.size(); ++l) {
        const auto& e = spec.ellipses[l];
        const double cs = std::cos(e.rotation);
        const double sn = std::sin(e.rotation);
        for (std::size_t drawn = 0; drawn < e.count;) {
            const double u = (2.0 * rng.uniform() - 1.0) * e.major;
            const double v = (2.0 * rng.uniform() - 1.0) * e.minor;
            if ((u / e.major) * (u / e.major) + (v / e.minor) * (v / e.minor) > 1.0) continue;
            points(row, 0) = e.center[0] + cs * u - sn * v;
            points(row, 1) = e.center[1] + sn * u + cs * v;
            labels.push_back(static_cast<int>(l));
            ++row;
            ++drawn;
        }
    }
    return Dataset(std::move(points), std::move(labels));
}

inline std::vector<std::string> builtin_scenario_names() { return {"two-ellipse", "three-ellipse"}; }

/// Reconstructions of the two- and three-ellipse test sets. Both place
/// strongly unequal volumes next to each other.
inline ScenarioSpec builtin_scenario(std::string_view name, std::uint64_t seed = 0) {
    constexpr double pi = 3.14159265358979323846;
    ScenarioSpec s;
    s.seed = seed;
    if (name == "two-ellipse") {
        s.ellipses = {
            {{0.0, 0.0}, 8.0, 3.0, 0.0, 400},
            {{13.0, 0.0}, 2.0, 0.75, pi / 2.0, 100},
        };
    } else if (name == "three-ellipse") {
        s.ellipses = {
            {{0.0, 0.0}, 6.0, 2.0, pi / 12.0, 300},
            {{8.5, 3.0}, 3.0, 1.5, -pi / 6.0, 150},
            {{4.0, -4.0}, 1.5, 0.75, pi / 3.0, 60},
        };
    } else {
        throw UnknownScenario("unknown scenario '" + std::string(name) + "'");
    }
    return s;
}

}  // namespace fuzzy

#endif  // FUZZY_DATAGEN_HPP
