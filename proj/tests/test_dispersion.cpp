#include "wgrate/dispersion.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using wgrate::WaveTriple;
namespace disp = wgrate::dispersion;

namespace {

// The printed ratio form in 50-digit arithmetic.
double printed_form_hp(double x1, double x2, double x3) {
    using hp = boost::multiprecision::cpp_bin_float_50;
    const hp k2 = hp(x1) * x1 + hp(x2) * x2;
    const hp den = -hp(x3) + sqrt(hp(x3) * x3 + 4 * k2);
    return static_cast<double>(2 * k2 / den);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Dispersion, Examples) {
    EXPECT_DOUBLE_EQ(disp::freq_ratio({1, 0, 0}), 1.0);
    EXPECT_DOUBLE_EQ(disp::freq_ratio({3, 4, 0}), 5.0);
    EXPECT_DOUBLE_EQ(disp::freq_ratio({2, 0, 0}), 2.0);
    EXPECT_NEAR(disp::freq_ratio({1, 0, 2}), 1.0 + std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(printed_form_hp(1, 0, 2), 1.0 + std::sqrt(2.0), 1e-15);
}

TEST(Dispersion, ZeroTransverseIsDomainError) {
    EXPECT_THROW(disp::freq_ratio({0, 0, 1}), std::domain_error);
    EXPECT_THROW(disp::freq_ratio({0, 0, 0}), std::domain_error);
    EXPECT_THROW(disp::freq_ratio_unrationalized({0, 0, 3}), std::domain_error);
    EXPECT_THROW(disp::freq_ratio({-1, 0, 1}), std::domain_error);
    EXPECT_THROW(disp::freq_ratio({1, 0, -1}), std::domain_error);
}

TEST(Dispersion, HomogeneityAndRadialDependence) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> comp(0.0, 10.0);
    std::uniform_real_distribution<double> logscale(-6.0, 6.0);
    for (int i = 0; i < 2000; ++i) {
        const WaveTriple w{comp(rng) + 1e-3, comp(rng), comp(rng)};
        const double s = std::pow(10.0, logscale(rng));
        const double f = disp::freq_ratio(w);
        EXPECT_LE(rel(disp::freq_ratio({s * w.x1, s * w.x2, s * w.x3}), s * f), 1e-13);
        EXPECT_LE(rel(disp::freq_ratio({std::hypot(w.x1, w.x2), 0.0, w.x3}), f), 1e-13);
    }
}

TEST(Dispersion, RationalizedMatchesPrintedFormAcrossRange) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lk(-6.0, 6.0), lx(-3.0, 9.0), ang(0.0, 1.5707963267948966);
    for (int i = 0; i < 500; ++i) {
        const double kappa = std::pow(10.0, lk(rng));
        const double x3 = (i % 10 == 0) ? 0.0 : std::pow(10.0, lx(rng));
        const double a = ang(rng);
        const double x1 = kappa * std::cos(a), x2 = kappa * std::sin(a);
        EXPECT_LE(rel(disp::freq_ratio({x1, x2, x3}), printed_form_hp(x1, x2, x3)), 1e-10)
            << "kappa=" << kappa << " x3=" << x3;
    }
}

TEST(Dispersion, PrintedFormCancelsInDoublePrecision) {
    // x3 >> kappa: the double-precision printed form has lost all digits.
    const WaveTriple w{1e-6, 0.0, 1e9};
    const double good = disp::freq_ratio(w);
    EXPECT_LE(rel(good, printed_form_hp(w.x1, w.x2, w.x3)), 1e-15);
    const double bad = disp::freq_ratio_unrationalized(w);
    EXPECT_FALSE(std::isfinite(bad) && rel(bad, good) < 1e-3);
}

TEST(Dispersion, MonotoneAndBoundedBelow) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.01, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const double k = u(rng), x3 = u(rng), d = u(rng) * 1e-3;
        const double f = disp::freq_ratio_radial(k, x3);
        EXPECT_LT(f, disp::freq_ratio_radial(k, x3 + d));
        EXPECT_LT(f, disp::freq_ratio_radial(k + d, x3));
        EXPECT_GE(f, k);
        EXPECT_GE(f, x3);
        EXPECT_GT(f, 0.0);
    }
}

TEST(Dispersion, ReducedFormAndInverse) {
    for (double u : {0.0, 0.3, 1.0, 7.5, 1e4}) {
        EXPECT_NEAR(disp::reduced(u), disp::freq_ratio_radial(1.0, u), 1e-15 * disp::reduced(u));
        EXPECT_NEAR(disp::reduced_inverse(disp::reduced(u)), u, 1e-12 * (1.0 + u));
    }
    // f(kappa, x3) = kappa g(x3 / kappa)
    EXPECT_NEAR(disp::freq_ratio_radial(5.0, 3.0), 5.0 * disp::reduced(0.6), 1e-14);
}
