#ifndef FUZZY_SVG_HPP
#define FUZZY_SVG_HPP

// SVG scatter plot of a 2-D partition: points colored by hardened
// membership, a cross at every center, and a 2-sigma covariance ellipse per
// cluster. Output bytes depend only on the inputs.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "error.hpp"
#include "eval.hpp"
#include "fit.hpp"
#include "io.hpp"

namespace fuzzy {

struct EllipseAxes {
    double major_radius;
    double minor_radius;
    double angle;  // radians, counter-clockwise from +x to the major axis
};

/// Axes of the `sigmas`-sigma contour of a 2 x 2 covariance, from the
/// closed-form eigenvalues (half-trace +- sqrt(half-difference^2 + b^2)).
inline EllipseAxes covariance_ellipse(const SymMatrix& cov, double sigmas = 2.0) {
    if (cov.dim() != 2) throw DimensionUnsupported("covariance ellipses are 2-D only");
    const double a = cov(0, 0);
    const double b = cov(0, 1);
    const double d = cov(1, 1);
    const double half_trace = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), b);
    const double l1 = half_trace + radius;
    const double l2 = std::max(half_trace - radius, 0.0);
    return {sigmas * std::sqrt(l1), sigmas * std::sqrt(l2), 0.5 * std::atan2(2.0 * b, a - d)};
}

namespace detail {

inline constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

inline std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s(buf);
    if (s == "-0.00") s = "0.00";
    return s;
}

}  // namespace detail

inline std::string render_svg(const Dataset& data, const ModelFile& m) {
    if (data.dim() != 2 || m.dim() != 2) throw DimensionUnsupported("render supports 2-D data only");
    const auto labels = harden(predict_memberships(data, m.algorithm, m.model, m.alpha, m.lambda));
    const std::size_t c = m.clusters();

    std::vector<EllipseAxes> axes;
    double lo_x = data.point(0)[0], hi_x = lo_x;
    double lo_y = data.point(0)[1], hi_y = lo_y;
    for (std::size_t i = 0; i < data.size(); ++i) {
        lo_x = std::min(lo_x, data.point(i)[0]);
        hi_x = std::max(hi_x, data.point(i)[0]);
        lo_y = std::min(lo_y, data.point(i)[1]);
        hi_y = std::max(hi_y, data.point(i)[1]);
    }
    for (std::size_t j = 0; j < c; ++j) {
        axes.push_back(covariance_ellipse(m.model.covariances[j]));
        const auto& center = m.model.centers[j];
        const double ex = 2.0 * std::sqrt(m.model.covariances[j](0, 0));
        const double ey = 2.0 * std::sqrt(m.model.covariances[j](1, 1));
        lo_x = std::min(lo_x, center[0] - ex);
        hi_x = std::max(hi_x, center[0] + ex);
        lo_y = std::min(lo_y, center[1] - ey);
        hi_y = std::max(hi_y, center[1] + ey);
    }

    constexpr double width = 800.0, height = 600.0, margin = 30.0;
    const double span_x = std::max(hi_x - lo_x, 1e-9);
    const double span_y = std::max(hi_y - lo_y, 1e-9);
    const double scale = std::min((width - 2 * margin) / span_x, (height - 2 * margin) / span_y);
    const double off_x = 0.5 * (width - scale * span_x);
    const double off_y = 0.5 * (height - scale * span_y);
    auto sx = [&](double x) { return off_x + scale * (x - lo_x); };
    auto sy = [&](double y) { return height - off_y - scale * (y - lo_y); };
    auto color = [](std::size_t j) { return detail::kPalette[j % detail::kPalette.size()]; };
    using detail::fixed;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    out += "<title>" + std::string(to_string(m.algorithm)) + " partition, c=" + std::to_string(c) + "</title>\n";
    out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    out += "<g id=\"points\">\n";
    for (std::size_t i = 0; i < data.size(); ++i)
        out += "<circle cx=\"" + fixed(sx(data.point(i)[0])) + "\" cy=\"" + fixed(sy(data.point(i)[1])) +
               "\" r=\"2.5\" fill=\"" + color(labels[i]) + "\" fill-opacity=\"0.75\"/>\n";
    out += "</g>\n<g id=\"ellipses\">\n";
    for (std::size_t j = 0; j < c; ++j) {
        const double cx = sx(m.model.centers[j][0]);
        const double cy = sy(m.model.centers[j][1]);
        const double deg = -axes[j].angle * 180.0 / 3.14159265358979323846;
        out += "<ellipse cx=\"" + fixed(cx) + "\" cy=\"" + fixed(cy) + "\" rx=\"" +
               fixed(scale * axes[j].major_radius) + "\" ry=\"" + fixed(scale * axes[j].minor_radius) +
               "\" transform=\"rotate(" + fixed(deg) + " " + fixed(cx) + " " + fixed(cy) +
               ")\" fill=\"none\" stroke=\"" + color(j) + "\" stroke-width=\"2\"/>\n";
    }
    out += "</g>\n<g id=\"centers\">\n";
    for (std::size_t j = 0; j < c; ++j) {
        const double cx = sx(m.model.centers[j][0]);
        const double cy = sy(m.model.centers[j][1]);
        out += "<path d=\"M " + fixed(cx - 6) + " " + fixed(cy) + " L " + fixed(cx + 6) + " " + fixed(cy) +
               " M " + fixed(cx) + " " + fixed(cy - 6) + " L " + fixed(cx) + " " + fixed(cy + 6) +
               "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace fuzzy

#endif  // FUZZY_SVG_HPP
