#pragma once

// Numerical oracles for the closed-form constants behind the rate formulas.
// Each oracle recomputes a constant from its defining integral and reports the
// discrepancy against the exact value together with the bound it must meet.

#include "wgrate/dispersion.hpp"
#include "wgrate/quadrature.hpp"
#include "wgrate/spectral.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace wgrate {

struct OracleReport {
    std::string name;
    double computed = 0.0;
    double expected = 0.0;
    double abs_error = 0.0;
    double bound = 0.0;
    std::string method;
    /// Continuum checks also require the discrete value to sit below the target.
    bool require_below = false;

    bool passed() const noexcept {
        const double err = std::abs(computed - expected);
        return err <= bound && (!require_below || computed < expected);
    }
};

namespace verify {

inline constexpr double octant_value = std::numbers::pi * std::numbers::pi * std::numbers::pi *
                                         std::numbers::pi * std::numbers::pi / 120.0;

namespace detail {

inline OracleReport make(std::string name, double computed, double expected, double bound, std::string method) {
    return {std::move(name), computed, expected, std::abs(computed - expected), bound, std::move(method)};
}

inline std::vector<double> geometric_breaks(double first, double last) {
    std::vector<double> br{0.0};
    for (double x = first; x < last; x *= 4.0) br.push_back(x);
    br.push_back(last);
    return br;
}

}  // namespace detail

/// Triple integral of ln 1/(1 - exp(-f(y))) over the positive octant. The
/// transverse plane is done in polar form (quarter turn, factor pi/2); the
/// remaining (rho, y3) integral is nested adaptive quadrature truncated where
/// f exceeds its in-slice minimum by 46.
inline OracleReport octant_integral_3d(double rel_tol = 1e-10) {
    constexpr double extra = 46.0;
    const quad::QuadOptions inner_opt{.rel_tol = rel_tol, .abs_tol = 1e-300};
    auto slice = [&](double rho) {
        if (rho == 0.0) rho = 1e-300;
        // f(rho, 0, y3) = rho + extra at y3 = F - rho^2/F with F = rho + extra.
        const double f_top = rho + extra;
        const double y_top = f_top - rho * rho / f_top;
        const auto br = detail::geometric_breaks(std::min(0.5, 0.5 * y_top), y_top);
        auto r = quad::integrate_checked(
            [rho](double y3) { return spectral::bose_log(dispersion::freq_ratio({rho, 0.0, y3})); }, br, inner_opt);
        return rho * r.value;
    };
    const auto outer_br = detail::geometric_breaks(0.25, 60.0);
    auto outer = quad::integrate_checked(slice, outer_br, {.rel_tol = rel_tol});
    const double value = 0.5 * std::numbers::pi * outer.value;
    return detail::make("octant_integral_3d", value, octant_value, 1e-5,
                        "nested adaptive Gauss-Kronrod over (rho, y3), polar transverse plane");
}

/// Angular factor integral_0^{pi/2} cos(phi) / (1 + sin(phi))^3 dphi = 3/8.
inline OracleReport angular_factor(double rel_tol = 1e-12) {
    auto r = quad::integrate_checked(
        [](double p) {
            const double s = 1.0 + std::sin(p);
            return std::cos(p) / (s * s * s);
        },
        0.0, 0.5 * std::numbers::pi, {.rel_tol = rel_tol});
    return detail::make("angular_factor", r.value, 0.375, 1e-10, "adaptive Gauss-Kronrod on [0, pi/2]");
}

/// Radial factor integral_0^inf r^2 ln 1/(1 - e^{-r}) dr = 2 zeta(4) = pi^4 / 45.
inline OracleReport radial_factor(double rel_tol = 1e-12) {
    const auto br = detail::geometric_breaks(0.5, 80.0);
    auto r = quad::integrate_checked([](double x) { return x * x * spectral::bose_log(x); }, br, {.rel_tol = rel_tol});
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return detail::make("radial_factor", r.value, pi2 * pi2 / 45.0, 1e-8, "adaptive Gauss-Kronrod on [0, 80]");
}

/// pi * angular * radial, compared against pi^5 / 120.
inline OracleReport octant_integral_reduced(double rel_tol = 1e-12) {
    const auto a = angular_factor(rel_tol);
    const auto r = radial_factor(rel_tol);
    return detail::make("octant_integral_reduced", std::numbers::pi * a.computed * r.computed, octant_value, 1e-5,
                        "product of the angular and radial factors times pi");
}

/// The two routes to the octant integral against each other.
inline OracleReport octant_routes_agree(const OracleReport& three_d, const OracleReport& reduced) {
    return detail::make("octant_routes_agree", three_d.computed, reduced.computed, 1e-5,
                        "3D route versus factored route");
}

/// beta^3 W(beta) against pi^5 / 120 for each beta. The lattice sum misses
/// the corner term at kappa = 0, so it sits below the continuum by about
/// 5 beta^2 / pi^3 relative; the bound allows 0.2 beta^2.
inline std::vector<OracleReport> continuum_limit_check(std::span<const double> beta_grid,
                                                       const ToleranceConfig& tol = {}) {
    std::vector<OracleReport> out;
    for (double beta : beta_grid) {
        const double w = spectral::capacity_sum(beta, tol).value;
        auto rep = detail::make("continuum_limit(beta=" + std::to_string(beta) + ")", w * beta * beta * beta,
                                octant_value, 0.2 * beta * beta * octant_value,
                                "discrete mode sum W(beta) times beta^3");
        rep.require_below = true;
        out.push_back(std::move(rep));
    }
    return out;
}

/// integral_0^inf ln 1/(1 - e^{-x}) dx = pi^2 / 6, the constant behind the
/// single-direction partition function.
inline OracleReport single_direction_constant(double rel_tol = 1e-12) {
    const auto br = detail::geometric_breaks(0.5, 60.0);
    auto r = quad::integrate_checked([](double x) { return spectral::bose_log(x); }, br, {.rel_tol = rel_tol});
    return detail::make("single_direction_constant", r.value, std::numbers::pi * std::numbers::pi / 6.0, 1e-10,
                        "adaptive Gauss-Kronrod on [0, 60]");
}

/// The full oracle table, in the order the CLI prints it.
inline std::vector<OracleReport> default_suite(const ToleranceConfig& tol = {}) {
    std::vector<OracleReport> out;
    auto three_d = octant_integral_3d();
    auto reduced = octant_integral_reduced();
    out.push_back(angular_factor());
    out.push_back(radial_factor());
    out.push_back(three_d);
    out.push_back(reduced);
    out.push_back(octant_routes_agree(three_d, reduced));
    out.push_back(single_direction_constant());
    const double grid[] = {0.5, 0.2, 0.1, 0.05};
    for (auto& r : continuum_limit_check(grid, tol)) out.push_back(std::move(r));
    return out;
}

inline bool all_passed(std::span<const OracleReport> reports) noexcept {
    for (const auto& r : reports)
        if (!r.passed()) return false;
    return true;
}

}  // namespace verify
}  // namespace wgrate
