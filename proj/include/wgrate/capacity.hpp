#pragma once

// Capacity of the lossless guide under an average-power budget.
//
// The optimal input is the thermal state at multiplier lambda0, which in
// scaled units beta = pi lambda hbar c / sqrt(A) solves
//     (g/2) W'(beta0) = -gamma / pi,    gamma = A P / (c^2 hbar),
// and the rate is R sqrt(A) / c = [gamma beta0 / pi + (g/2) W(beta0)] / ln 2.

#include "wgrate/modes.hpp"
#include "wgrate/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wgrate {

struct PhysicalConstants {
    double c = 299792458.0;         // m/s
    double hbar = 1.054571817e-34;  // J s
};

struct PhysicalChannelSpec {
    ChannelGeometry geometry = ChannelGeometry::square(1.0);
    double power = 1.0;  // W
    int species = 2;
    PhysicalConstants constants{};
};

/// One propagation direction: polar angle theta in [0, pi/2), azimuth phi in [0, pi/2].
struct DirectionSpec {
    double theta = 0.0;
    double phi = 0.0;
    int species = 1;
};

struct DimensionlessPoint {
    double gamma = 0.0;
    double beta = 0.0;
};

struct RateSolution {
    double gamma = 0.0;
    double beta0 = 0.0;
    double w_at_beta0 = 0.0;
    double rate_dimensionless = 0.0;  ///< R sqrt(A) / c
    double rate_asymptotic = 0.0;
    double ratio = 0.0;
    double residual = 0.0;  ///< |(g/2) W'(beta0) + gamma / pi|
    int iterations = 0;
};

enum class RateMethod { exact, asymptotic };
enum class RootMethod { hybrid, bisection };

class solver_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace capacity {

namespace detail {

inline void check_species(int g) {
    if (g != 1 && g != 2) throw std::invalid_argument("species count must be 1 or 2");
}

inline void check_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::domain_error("gamma must be positive and finite");
}

inline void check_spec(const PhysicalChannelSpec& s) {
    if (!(s.power > 0.0) || !std::isfinite(s.power)) throw std::domain_error("power must be positive and finite");
    if (!(s.constants.c > 0.0) || !(s.constants.hbar > 0.0))
        throw std::domain_error("physical constants must be positive");
    check_species(s.species);
}

// (4 / (3 ln 2)) (g pi^2 / denom)^{1/4}
inline double asymptotic_prefactor(int g, double denom) {
    return 4.0 / (3.0 * std::numbers::ln2) * std::pow(g * std::numbers::pi * std::numbers::pi / denom, 0.25);
}

}  // namespace detail

/// gamma = A P / (c^2 hbar).
inline double gamma_of(const PhysicalChannelSpec& spec) {
    detail::check_spec(spec);
    const auto& k = spec.constants;
    return spec.geometry.area() * spec.power / (k.c * k.c * k.hbar);
}

/// Continuum-limit multiplier (g pi^6 / (80 gamma))^{1/4}; the solver's
/// starting point.
inline double beta_asymptotic(double gamma, int species = 2) {
    detail::check_gamma(gamma);
    detail::check_species(species);
    return std::pow(species * std::pow(std::numbers::pi, 6) / (80.0 * gamma), 0.25);
}

/// R sqrt(A) / c -> (4 / (3 ln 2)) (g pi^2 / 80)^{1/4} gamma^{3/4}.
inline double rate_asymptotic_dimensionless(double gamma, int species = 2) {
    detail::check_gamma(gamma);
    detail::check_species(species);
    return detail::asymptotic_prefactor(species, 80.0) * std::pow(gamma, 0.75);
}

struct SolveOptions {
    int species = 2;
    double aspect = 1.0;
    RootMethod method = RootMethod::hybrid;
    int max_iterations = 200;
};

/// Finds beta0 with (g/2) W'(beta0) = -gamma / pi. The left side increases
/// strictly in beta, so the root is unique.
inline RateSolution solve_beta0(double gamma, const ToleranceConfig& tol = {}, const SolveOptions& opt = {}) {
    detail::check_gamma(gamma);
    detail::check_species(opt.species);
    const double half_g = 0.5 * opt.species;
    const double target = gamma / std::numbers::pi;
    int evals = 0;
    auto h = [&](double beta) {
        ++evals;
        const double v = half_g * spectral::capacity_sum_deriv(beta, tol, opt.aspect).value + target;
        if (!std::isfinite(v)) throw solver_failure("non-finite W' during multiplier solve");
        return v;
    };
    const double accept = tol.root_rel_tol * target;

    // Bracket: walk geometrically from the continuum guess until h changes sign.
    double lo = beta_asymptotic(gamma, opt.species);
    double hlo = h(lo);
    double hi = lo, hhi = hlo;
    double step = 1.5;
    for (int k = 0; (hlo > 0.0) == (hhi > 0.0) && hlo != 0.0; ++k) {
        if (k > 60) throw solver_failure("could not bracket the multiplier root");
        if (hlo > 0.0) {  // root lies below
            hi = lo, hhi = hlo;
            lo /= step, hlo = h(lo);
        } else {
            lo = hi, hlo = hhi;
            hi *= step, hhi = h(hi);
        }
        step *= 1.5;
    }
    if (hlo == 0.0) hi = lo, hhi = hlo;

    const bool polish = opt.method == RootMethod::hybrid;
    auto update = [&](double beta, double hb) {
        if (hb > 0.0)
            hi = beta, hhi = hb;
        else
            lo = beta, hlo = hb;
    };
    auto budget = [&] {
        if (evals > opt.max_iterations) throw solver_failure("multiplier solve did not converge");
    };

    // Geometric bisection, to a coarse bracket when a Newton polish follows.
    const double coarse = polish ? 1e-2 : 1e-14;
    while (hlo != 0.0 && hi / lo - 1.0 > coarse) {
        budget();
        const double mid = std::sqrt(lo * hi);
        update(mid, h(mid));
    }

    double beta = 0.0, hb = 0.0;
    if (hlo == 0.0) {
        beta = lo;
    } else if (!polish) {
        beta = std::sqrt(lo * hi);
        hb = h(beta);
    } else {
        // Newton with a one-sided difference slope, kept inside the bracket.
        const bool lo_closer = std::abs(hlo) < std::abs(hhi);
        beta = lo_closer ? lo : hi;
        hb = lo_closer ? hlo : hhi;
        while (std::abs(hb) > accept && hi / lo - 1.0 > 1e-15) {
            budget();
            const double delta = 1e-6 * beta;
            const double slope = (h(beta + delta) - hb) / delta;
            double next = beta - hb / slope;
            if (!(slope > 0.0) || !(next > lo && next < hi)) next = std::sqrt(lo * hi);
            beta = next;
            hb = h(beta);
            update(beta, hb);
        }
    }

    RateSolution s;
    s.gamma = gamma;
    s.beta0 = beta;
    s.residual = std::abs(hb);
    s.iterations = evals;
    return s;
}

/// Exact dimensionless rate R sqrt(A) / c with diagnostics.
inline RateSolution rate_dimensionless(double gamma, const ToleranceConfig& tol = {}, const SolveOptions& opt = {}) {
    auto s = solve_beta0(gamma, tol, opt);
    s.w_at_beta0 = 0.5 * opt.species * spectral::capacity_sum(s.beta0, tol, opt.aspect).value;
    s.rate_dimensionless = (gamma * s.beta0 / std::numbers::pi + s.w_at_beta0) / std::numbers::ln2;
    s.rate_asymptotic = rate_asymptotic_dimensionless(gamma, opt.species);
    s.ratio = s.rate_dimensionless / s.rate_asymptotic;
    return s;
}

/// Rate in bits per second for all forward modes.
inline double rate_multimode_physical(const PhysicalChannelSpec& spec, const ToleranceConfig& tol = {},
                                      RateMethod method = RateMethod::exact) {
    const double gamma = gamma_of(spec);
    const auto& k = spec.constants;
    const double area = spec.geometry.area();
    if (method == RateMethod::asymptotic) {
        return detail::asymptotic_prefactor(spec.species, 80.0) * std::pow(area / (k.c * k.c), 0.25) *
               std::pow(spec.power / k.hbar, 0.75);
    }
    SolveOptions opt{.species = spec.species, .aspect = spec.geometry.aspect()};
    return k.c / std::sqrt(area) * rate_dimensionless(gamma, tol, opt).rate_dimensionless;
}

/// Continuum-limit multiplier lambda0 = (g pi^2 A / (80 P hbar^3 c^2))^{1/4}, in 1/J.
inline double lambda0_asymptotic(const PhysicalChannelSpec& spec) {
    detail::check_spec(spec);
    const auto& k = spec.constants;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return std::pow(spec.species * pi2 * spec.geometry.area() /
                        (80.0 * spec.power * k.hbar * k.hbar * k.hbar * k.c * k.c),
                    0.25);
}

/// Asymptotic rate when entropy and power are both weighted per mode by the
/// longitudinal speed factor cos(theta); smaller by (3/2)^{1/4}.
inline double rate_speed_weighted_physical(const PhysicalChannelSpec& spec) {
    detail::check_spec(spec);
    const auto& k = spec.constants;
    return detail::asymptotic_prefactor(spec.species, 120.0) *
           std::pow(spec.geometry.area() / (k.c * k.c), 0.25) * std::pow(spec.power / k.hbar, 0.75);
}

/// Rate for a single propagation direction: (cos theta / ln 2) sqrt(pi (P/hbar) / 3),
/// times sqrt(2) when both species are used. Independent of phi and of A.
inline double rate_single_direction(double power_over_hbar, const DirectionSpec& dir) {
    if (!(power_over_hbar > 0.0) || !std::isfinite(power_over_hbar))
        throw std::domain_error("P / hbar must be positive and finite");
    if (!(dir.theta >= 0.0 && dir.theta < 0.5 * std::numbers::pi))
        throw std::domain_error("theta must lie in [0, pi/2)");
    if (!(dir.phi >= 0.0 && dir.phi <= 0.5 * std::numbers::pi)) throw std::domain_error("phi must lie in [0, pi/2]");
    detail::check_species(dir.species);
    const double r = std::cos(dir.theta) / std::numbers::ln2 * std::sqrt(std::numbers::pi * power_over_hbar / 3.0);
    return dir.species == 2 ? std::numbers::sqrt2 * r : r;
}

}  // namespace capacity
}  // namespace wgrate
