#include "eqrand/errors.hpp"
#include "eqrand/power.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace eqrand;

namespace {

std::vector<double> unit_grid() {
    std::vector<double> t;
    for (int i = 1; i < 100; ++i) t.push_back(i / 100.0);
    return t;
}

bool nondecreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1] - 1e-12) return false;
    return true;
}

}  // namespace

TEST(Power, MonotoneAtCentre) {
    const CurveSeries s = power_vs_n({0.25, 0.75}, 0.5, 0.5, 0.05, 20, 200);
    EXPECT_EQ(s.size(), 181u);
    EXPECT_TRUE(nondecreasing(s.ump));
    EXPECT_TRUE(nondecreasing(s.rand2));
    EXPECT_TRUE(detect_nonmonotone(s).empty());
    check_series(s);
}

TEST(Power, ParadoxOffCentre) {
    const auto wide = detect_nonmonotone(power_vs_n({0.25, 0.75}, 0.4, 0.5, 0.05, 1, 60));
    EXPECT_GT(count_steps(wide, Method::ump), 0u);
    EXPECT_GT(count_steps(wide, Method::rand2), 0u);
    const auto narrow = detect_nonmonotone(power_vs_n({0.35, 0.75}, 0.4, 0.5, 0.05, 1, 60));
    EXPECT_LT(count_steps(narrow, Method::ump), count_steps(wide, Method::ump));
}

TEST(Power, DetectNonmonotoneTrivial) {
    CurveSeries s;
    s.x = {1, 2, 3, 4};
    s.ump = {0.1, 0.1, 0.1, 0.1};
    s.rand2 = {0.1, 0.2, 0.3, 0.4};
    EXPECT_TRUE(detect_nonmonotone(s).empty());
    s.rand2 = {0.1, 0.3, 0.2, 0.4};
    const auto steps = detect_nonmonotone(s);
    ASSERT_EQ(steps.size(), 1u);
    EXPECT_EQ(steps[0].method, Method::rand2);
    EXPECT_EQ(steps[0].x_from, 2);
    EXPECT_NEAR(steps[0].drop, 0.1, 1e-15);
}

TEST(Power, PowerVsNErrors) {
    EXPECT_THROW(power_vs_n({0.25, 0.75}, 0.2, 0.5, 0.05, 1, 10), DomainError);
    EXPECT_THROW(power_vs_n({0.25, 0.75}, 0.5, 0.5, 0.05, 10, 5), DomainError);
}

TEST(Power, ConservativityUnderNull) {
    const auto t = unit_grid();
    const CurveSeries s = cdf_curve({50, 0.25, 0.75}, 0.2, 0.5, t);
    for (std::size_t i = 0; i < t.size(); ++i) {
        EXPECT_GE(s.rand2[i], s.ump[i] - 1e-15);
        EXPECT_LE(s.ump[i], t[i] + 1e-12);
        EXPECT_LE(s.rand2[i], t[i] + 1e-12);
    }
}

TEST(Power, GapMovesWithSampleSize) {
    const auto t = unit_grid();
    auto sup_gap = [&](std::int64_t n, bool rand2) {
        const CurveSeries s = cdf_curve({n, 0.25, 0.75}, 0.2, 0.5, t);
        double g = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) g = std::max(g, t[i] - (rand2 ? s.rand2[i] : s.ump[i]));
        return g;
    };
    EXPECT_GT(sup_gap(100, false), sup_gap(50, false));
    EXPECT_LT(sup_gap(100, true), sup_gap(50, true));
}

TEST(Power, SinglePointCurve) {
    const std::vector<double> t{0.5};
    const CurveSeries s = cdf_curve({10, 0.25, 0.75}, 0.6, 0.5, t);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_GE(s.ump[0], 0.0);
    EXPECT_LE(s.rand2[0], 1.0);
}

TEST(Power, CheckSeriesRejectsBadCurves) {
    CurveSeries s;
    s.x = {0.1, 0.1};
    s.ump = {0.1, 0.2};
    s.rand2 = {0.1, 0.2};
    EXPECT_THROW(check_series(s), DomainError);
    s.x = {0.1, 0.2};
    s.ump = {0.1, 1.2};
    EXPECT_THROW(check_series(s), DomainError);
    EXPECT_NO_THROW(check_series(s, false));
    s.ump = {0.1};
    EXPECT_THROW(check_series(s, false), DomainError);
}

TEST(Power, SymmetricProblemHasSymmetricPower) {
    const EquivProblem p(40, 0.25, 0.75);
    for (double h : {0.01, 0.05, 0.1, 0.2}) {
        EXPECT_NEAR(ump_cdf(p, 0.5 - h, 0.05), ump_cdf(p, 0.5 + h, 0.05), 1e-9);
        EXPECT_NEAR(rand2_cdf(p, 0.5 - h, 0.05, 0.5), rand2_cdf(p, 0.5 + h, 0.05, 0.5), 1e-9);
    }
    const MaxPowerPair m = argmax_power_theta(p, 0.5, 0.05, 0.005);
    EXPECT_NEAR(m.ump.argmax_theta, 0.5, 0.005 + 1e-12);
}

TEST(Power, ArgmaxNarrowInterval) {
    // At t = 0.05 the UMP test has no power anywhere, so the tie rule picks the first grid point.
    const MaxPowerPair flat = argmax_power_theta({50, 0.25, 0.45}, 0.5, 0.05, 0.005);
    EXPECT_EQ(flat.ump.max_power, 0.0);
    EXPECT_EQ(flat.ump.argmax_theta, flat.curve.x.front());
    EXPECT_EQ(flat.curve.x.front(), 0.25 + 0.005);

    const MaxPowerPair m = argmax_power_theta({50, 0.25, 0.45}, 0.5, 0.1, 0.005);
    EXPECT_NEAR(m.ump.argmax_theta, 0.35, 0.005 + 1e-12);
    EXPECT_GT(m.rand2.argmax_theta, 0.43);  // pushed against theta2
    EXPECT_EQ(m.ump.method, Method::ump);
    EXPECT_EQ(m.rand2.method, Method::rand2);
}

TEST(Power, ArgmaxTracksArcsineMidpoint) {
    // Exact power peaks near sin^2 of the mean of arcsin(sqrt(theta_i)).
    const MaxPowerPair m = argmax_power_theta({50, 0.15, 0.45}, 0.5, 0.05, 0.005);
    const double a = std::asin(std::sqrt(0.15));
    const double b = std::asin(std::sqrt(0.45));
    const double centre = std::pow(std::sin((a + b) / 2), 2);
    EXPECT_NEAR(m.ump.argmax_theta, centre, 0.005);
}

TEST(Power, ArgmaxErrors) {
    EXPECT_THROW(argmax_power_theta({50, 0.25, 0.45}, 0.5, 0.05, 0.0), DomainError);
    EXPECT_THROW(argmax_power_theta({50, 0.25, 0.45}, 0.5, 0.05, 0.3), DomainError);
}

TEST(Power, DeltaSweepSymmetric) {
    std::vector<double> grid;
    for (int i = 5; i <= 95; ++i) grid.push_back(i / 100.0);
    const CurveSeries s = power_vs_delta(0.3, 0.5, 0.05, 50, grid, centering_rule("symmetric"));
    ASSERT_EQ(s.null_side.size(), grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_EQ(s.null_side[i], 0.3 <= (1 - grid[i]) / 2 + 1e-15) << grid[i];
    }
    // power grows with the width once theta is inside
    std::vector<double> inside(s.ump.begin() + 45, s.ump.end());
    EXPECT_TRUE(nondecreasing(inside));
}

TEST(Power, DeltaSweepInteriorMaximum) {
    std::vector<double> grid;
    for (int i = 21; i < 80; ++i) grid.push_back(i / 100.0);
    const CurveSeries s = power_vs_delta(0.2, 0.5, 0.05, 50, grid, centering_rule("sweep"));
    for (const auto* v : {&s.ump, &s.rand2}) {
        const auto best = std::max_element(v->begin(), v->end()) - v->begin();
        EXPECT_GT(best, 0);
        EXPECT_LT(best, static_cast<long>(v->size()) - 1);
        // single peak: increasing before, decreasing after
        for (long i = 1; i <= best; ++i) EXPECT_GE((*v)[i], (*v)[i - 1] - 1e-12);
        for (long i = best + 1; i < static_cast<long>(v->size()); ++i) EXPECT_LE((*v)[i], (*v)[i - 1] + 1e-12);
    }
    for (bool flag : s.null_side) EXPECT_FALSE(flag);
}

TEST(Power, SweepRuleKeepsThetaInside) {
    const CenteringRule rule = centering_rule("sweep");
    for (double theta : {0.2, 0.48, 0.7}) {
        for (double delta : {0.3, 0.5, 0.6}) {
            if (delta <= std::min(theta, 1 - theta) || delta >= std::max(theta, 1 - theta)) continue;
            const EquivBounds b = rule.bounds(delta, theta);
            EXPECT_NEAR(b.theta2 - b.theta1, delta, 1e-14);
            EXPECT_GT(theta, b.theta1);
            EXPECT_LT(theta, b.theta2);
        }
    }
}

TEST(Power, CenteringErrors) {
    EXPECT_THROW(centering_rule("left"), ConfigError);
    const std::vector<double> one{0.5};
    const CurveSeries s = power_vs_delta(0.5, 0.5, 0.05, 20, one, centering_rule("symmetric"));
    EXPECT_EQ(s.size(), 1u);
}
