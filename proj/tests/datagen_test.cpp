#include <gtest/gtest.h>

#include <cmath>

#include "fuzzy/datagen.hpp"

namespace fuzzy {
namespace {

TEST(SampleScenario, PointsLieInsideTheirEllipse) {
    for (const auto& name : builtin_scenario_names())
        for (std::uint64_t seed : {0u, 1u, 2u}) {
            const auto spec = builtin_scenario(name, seed);
            const auto d = sample_scenario(spec);
            ASSERT_TRUE(d.labels().has_value());
            for (std::size_t i = 0; i < d.size(); ++i) {
                const auto& e = spec.ellipses[(*d.labels())[i]];
                EXPECT_LE(e.implicit(d.point(i)), 1.0 + 1e-12);
            }
        }
}

TEST(SampleScenario, LabelsFollowEllipseOrder) {
    const auto spec = builtin_scenario("three-ellipse", 4);
    const auto d = sample_scenario(spec);
    std::size_t row = 0;
    for (std::size_t l = 0; l < spec.ellipses.size(); ++l)
        for (std::size_t n = 0; n < spec.ellipses[l].count; ++n) EXPECT_EQ((*d.labels())[row++], static_cast<int>(l));
    EXPECT_EQ(row, d.size());
}

TEST(SampleScenario, UnitDiskMeanNearOrigin) {
    // Per-axis std of a uniform unit-disk coordinate is 1/2, so the sample
    // mean over 1e4 points has std 0.005; 0.05 is far outside 3 sigma.
    ScenarioSpec spec;
    spec.seed = 123;
    spec.ellipses = {{{0.0, 0.0}, 1.0, 1.0, 0.0, 10000}};
    const auto d = sample_scenario(spec);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        mx += d.point(i)[0];
        my += d.point(i)[1];
    }
    EXPECT_LT(std::abs(mx / 1e4), 0.05);
    EXPECT_LT(std::abs(my / 1e4), 0.05);
}

TEST(SampleScenario, DeterministicPerSeed) {
    const auto a = sample_scenario(builtin_scenario("two-ellipse", 9));
    const auto b = sample_scenario(builtin_scenario("two-ellipse", 9));
    const auto c = sample_scenario(builtin_scenario("two-ellipse", 10));
    EXPECT_EQ(a.points(), b.points());
    EXPECT_EQ(a.labels(), b.labels());
    EXPECT_NE(a.points(), c.points());
}

TEST(SampleScenario, CovarianceEigenRatioTracksAxisRatio) {
    // Uniform ellipse: variances along the axes are a^2/4 and b^2/4.
    ScenarioSpec spec;
    spec.seed = 5;
    spec.ellipses = {{{3.0, -2.0}, 4.0, 1.5, 0.7, 4000}};
    const auto d = sample_scenario(spec);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        mx += d.point(i)[0] / d.size();
        my += d.point(i)[1] / d.size();
    }
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double dx = d.point(i)[0] - mx, dy = d.point(i)[1] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double ht = 0.5 * (sxx + syy);
    const double r = std::hypot(0.5 * (sxx - syy), sxy);
    const double ratio = (ht + r) / (ht - r);
    const double want = (4.0 / 1.5) * (4.0 / 1.5);
    EXPECT_LT(std::abs(ratio - want) / want, 0.2);
}

TEST(BuiltinScenario, TwoEllipse) {
    const auto s = builtin_scenario("two-ellipse");
    ASSERT_EQ(s.ellipses.size(), 2u);
    EXPECT_EQ(s.total(), 500u);
    EXPECT_EQ(sample_scenario(s).size(), 500u);
    // area ratio a1 b1 / (a2 b2) = 24 / 1.5
    const double ratio = s.ellipses[0].major * s.ellipses[0].minor / (s.ellipses[1].major * s.ellipses[1].minor);
    EXPECT_DOUBLE_EQ(ratio, 16.0);
    EXPECT_NE(s.ellipses[0].rotation, s.ellipses[1].rotation);
}

TEST(BuiltinScenario, ThreeEllipse) {
    const auto s = builtin_scenario("three-ellipse");
    ASSERT_EQ(s.ellipses.size(), 3u);
    EXPECT_EQ(s.ellipses[0].count, 300u);
    EXPECT_EQ(s.ellipses[1].count, 150u);
    EXPECT_EQ(s.ellipses[2].count, 60u);
}

TEST(BuiltinScenario, EllipsesAreDisjoint) {
    // No sampled point of one ellipse falls inside another.
    for (const auto& name : builtin_scenario_names()) {
        auto s = builtin_scenario(name, 77);
        for (auto& e : s.ellipses) e.count = 5000;
        const auto d = sample_scenario(s);
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t l = 0; l < s.ellipses.size(); ++l)
                if (static_cast<int>(l) != (*d.labels())[i]) {
                    EXPECT_GT(s.ellipses[l].implicit(d.point(i)), 1.0);
                }
    }
}

TEST(BuiltinScenario, UnknownNameThrows) {
    EXPECT_THROW(builtin_scenario("four-ellipse"), UnknownScenario);
}

TEST(EllipseSpec, Validation) {
    ScenarioSpec spec;
    spec.ellipses = {{{0.0, 0.0}, 1.0, 2.0, 0.0, 10}};
    EXPECT_THROW(sample_scenario(spec), InvalidConfig);
    spec.ellipses = {{{0.0, 0.0}, 2.0, 1.0, 0.0, 0}};
    EXPECT_THROW(sample_scenario(spec), InvalidConfig);
    EXPECT_THROW(sample_scenario(ScenarioSpec{}), InvalidConfig);
}

}  // namespace
}  // namespace fuzzy
