#include "wgrate/verify.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace wgrate;

TEST(Verify, AngularAndRadialFactors) {
    const auto a = verify::angular_factor();
    EXPECT_TRUE(a.passed());
    EXPECT_NEAR(a.computed, 0.375, 1e-10);

    const auto r = verify::radial_factor();
    EXPECT_TRUE(r.passed());
    EXPECT_NEAR(r.computed, 2.0 * oracle::zeta_series(4), 1e-8);
}

TEST(Verify, FactorsMultiplyToTarget) {
    const double pi = std::numbers::pi;
    EXPECT_NEAR(pi * 0.375 * std::pow(pi, 4) / 45.0, verify::octant_value, 1e-13);
    EXPECT_NEAR(verify::octant_value, std::pow(pi, 5) / 120.0, 1e-13);
    const auto red = verify::octant_integral_reduced();
    EXPECT_TRUE(red.passed());
    EXPECT_LE(red.abs_error, 1e-9);
}

TEST(Verify, ThreeDimensionalRoute) {
    const auto three = verify::octant_integral_3d();
    EXPECT_TRUE(three.passed()) << three.computed;
    EXPECT_LE(three.abs_error, 1e-5);
    const auto both = verify::octant_routes_agree(three, verify::octant_integral_reduced());
    EXPECT_TRUE(both.passed());
}

TEST(Verify, TighterToleranceDoesNotDrift) {
    const auto loose = verify::octant_integral_3d(1e-8);
    const auto tight = verify::octant_integral_3d(1e-11);
    EXPECT_LE(tight.abs_error, 1e-5);
    EXPECT_LE(std::abs(loose.computed - tight.computed), 1e-6);
}

TEST(Verify, ContinuumLimitFromBelowAndShrinking) {
    const double grid[] = {0.5, 0.1, 0.05};
    const auto reps = verify::continuum_limit_check(grid);
    ASSERT_EQ(reps.size(), 3u);
    for (const auto& r : reps) {
        EXPECT_TRUE(r.passed()) << r.name;
        EXPECT_LT(r.computed, r.expected);
        EXPECT_TRUE(r.require_below);
    }
    EXPECT_LT(reps[2].abs_error, reps[1].abs_error);
    EXPECT_LT(reps[1].abs_error, reps[0].abs_error);
}

TEST(Verify, SingleDirectionConstant) {
    const auto s = verify::single_direction_constant();
    EXPECT_TRUE(s.passed());
    EXPECT_NEAR(s.computed, oracle::zeta_series(2), 1e-10);
    EXPECT_NEAR(s.expected / (2.0 * std::numbers::pi), std::numbers::pi / 12.0, 1e-15);
}

TEST(Verify, PassedChecksBothBoundAndSide) {
    OracleReport r{"x", 1.0, 1.0 + 1e-6, 0.0, 1e-5, "m"};
    EXPECT_TRUE(r.passed());
    r.bound = 1e-7;
    EXPECT_FALSE(r.passed());
    r = {"y", 2.0, 1.0, 0.0, 10.0, "m", true};
    EXPECT_FALSE(r.passed());
}

TEST(Verify, DefaultSuitePasses) {
    const auto suite = verify::default_suite();
    EXPECT_EQ(suite.size(), 10u);
    for (const auto& r : suite) EXPECT_TRUE(r.passed()) << r.name << ' ' << r.computed << ' ' << r.expected;
    EXPECT_TRUE(verify::all_passed(suite));
}
