#pragma once

// Per-mode spectral integrals and the transverse mode sum
//
//   W(beta) = 1/2 * sum over transverse pairs of degeneracy * F(kappa, beta),
//   F(kappa, beta) = integral_0^inf dx ln 1/(1 - exp(-beta f(kappa, x)))
//                  = kappa * phi(beta * kappa).
//
// Everything radial collapses onto the single function
//   phi(t) = integral_0^inf du ln 1/(1 - exp(-t g(u))),  g(u) = (u + sqrt(u^2 + 4)) / 2.

#include "wgrate/dispersion.hpp"
#include "wgrate/modes.hpp"
#include "wgrate/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace wgrate {

struct ToleranceConfig {
    double quad_rel_tol = 1e-10;
    /// Mode-sum truncation stops once the analytic tail bound is below
    /// sum_tail_rel times the partial sum.
    double sum_tail_rel = 1e-10;
    double max_transverse_cutoff = 1e6;
    /// Multiplier solve stops when |W'(beta) + gamma/pi| <= root_rel_tol * gamma/pi.
    double root_rel_tol = 1e-10;
    /// Mode sums read phi and phi' from a fixed Chebyshev table instead of
    /// running one quadrature per shell.
    bool use_phi_table = false;
};

struct SpectralValue {
    double value = 0.0;
    double est_error = 0.0;
    long long terms_used = 0;
};

class cutoff_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace spectral {

/// ln 1/(1 - exp(-z)) for z > 0.
inline double bose_log(double z) noexcept {
    return z < std::numbers::ln2 ? -std::log(-std::expm1(-z)) : -std::log1p(-std::exp(-z));
}

/// Mean occupation 1/(e^z - 1).
inline double occupation(double z) noexcept { return 1.0 / std::expm1(z); }

namespace detail {

// The integrand has decayed by exp(-kDecay) relative to its value at u = 0
// at the upper limit; the remainder is bounded analytically.
inline constexpr double kDecay = 46.0;

inline std::vector<double> phi_breaks(double t) {
    const double g_max = 1.0 + kDecay / t;
    const double u_max = dispersion::reduced_inverse(g_max);
    std::vector<double> br{0.0};
    double u = std::min(1.0, 0.5 * u_max);
    while (u < u_max) {
        br.push_back(u);
        u *= 4.0;
    }
    br.push_back(u_max);
    return br;
}

// integral_{g_max}^inf (1 + 1/g^2) ln 1/(1 - e^{-tg}) dg, bounded above.
inline double phi_remainder_bound(double t) {
    const double g_max = 1.0 + kDecay / t;
    return 2.0 * std::exp(-t * g_max) / (t * -std::expm1(-t));
}

inline double phi_deriv_remainder_bound(double t) {
    const double g_max = 1.0 + kDecay / t;
    return 2.0 * std::exp(-t * g_max) * (g_max / t + 1.0 / (t * t)) / -std::expm1(-t);
}

inline void check_t(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("phi: argument must be positive and finite");
}

}  // namespace detail

/// phi(t) by adaptive quadrature.
inline SpectralValue phi(double t, const ToleranceConfig& tol = {}) {
    detail::check_t(t);
    const auto br = detail::phi_breaks(t);
    auto r = quad::integrate_checked([t](double u) { return bose_log(t * dispersion::reduced(u)); }, br,
                                     {.rel_tol = tol.quad_rel_tol});
    return {r.value, r.error + detail::phi_remainder_bound(t), r.evaluations};
}

/// phi'(t) = -integral_0^inf du g(u) / (exp(t g(u)) - 1); always negative.
inline SpectralValue phi_deriv(double t, const ToleranceConfig& tol = {}) {
    detail::check_t(t);
    const auto br = detail::phi_breaks(t);
    auto r = quad::integrate_checked(
        [t](double u) {
            const double g = dispersion::reduced(u);
            return g * occupation(t * g);
        },
        br, {.rel_tol = tol.quad_rel_tol});
    return {-r.value, r.error + detail::phi_deriv_remainder_bound(t), r.evaluations};
}

/// Piecewise Chebyshev interpolant of ln phi(t) and ln(-phi'(t)) in s = ln t.
/// Built once on a fixed grid; read-only afterwards.
class PhiTable {
public:
    static constexpr double t_min = 1e-4;
    static constexpr double t_max = 80.0;
    static constexpr int segments = 256;
    static constexpr int order = 17;  // nodes per segment
    /// Relative accuracy the table is built and tested to.
    static constexpr double nominal_rel_error = 1e-12;

    static const PhiTable& instance() {
        static const PhiTable table;
        return table;
    }

    static bool covers(double t) noexcept { return t >= t_min && t <= t_max; }

    double phi(double t) const { return std::exp(eval(log_phi_, t)); }
    double phi_deriv(double t) const { return -std::exp(eval(log_dphi_, t)); }

private:
    using Coeffs = std::array<double, order>;

    PhiTable() : log_phi_(segments), log_dphi_(segments) {
        const ToleranceConfig build{.quad_rel_tol = 1e-13, .use_phi_table = false};
        for (int seg = 0; seg < segments; ++seg) {
            std::array<double, order> vp{}, vd{};
            for (int k = 0; k < order; ++k) {
                const double x = std::cos(std::numbers::pi * (k + 0.5) / order);
                const double t = std::exp(s_lo + (seg + 0.5 * (x + 1.0)) * ds);
                vp[k] = std::log(spectral::phi(t, build).value);
                vd[k] = std::log(-spectral::phi_deriv(t, build).value);
            }
            log_phi_[seg] = fit(vp);
            log_dphi_[seg] = fit(vd);
        }
    }

    static Coeffs fit(const std::array<double, order>& v) {
        Coeffs c{};
        for (int j = 0; j < order; ++j) {
            double s = 0.0;
            for (int k = 0; k < order; ++k) s += v[k] * std::cos(std::numbers::pi * j * (k + 0.5) / order);
            c[j] = (j == 0 ? 1.0 : 2.0) * s / order;
        }
        return c;
    }

    double eval(const std::vector<Coeffs>& table, double t) const {
        const double pos = (std::log(t) - s_lo) / ds;
        const int seg = std::clamp(static_cast<int>(pos), 0, segments - 1);
        const double x = 2.0 * (pos - seg) - 1.0;
        const auto& c = table[seg];
        double b1 = 0.0, b2 = 0.0;
        for (int j = order - 1; j >= 1; --j) {
            const double b0 = 2.0 * x * b1 - b2 + c[j];
            b2 = b1;
            b1 = b0;
        }
        return x * b1 - b2 + c[0];
    }

    inline static const double s_lo = std::log(t_min);
    inline static const double ds = (std::log(t_max) - std::log(t_min)) / segments;

    std::vector<Coeffs> log_phi_;
    std::vector<Coeffs> log_dphi_;
};

namespace detail {

inline void check_beta(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::domain_error("beta must be positive and finite");
}

inline double checked_kappa(int n1, int n2) {
    if (species_count(n1, n2) == 0) throw std::domain_error("transverse pair (0, 0) or negative index is not a mode");
    return std::hypot(double(n1), double(n2));
}

}  // namespace detail

/// F_{n1,n2}(beta) = kappa * phi(beta * kappa).
inline SpectralValue mode_spectral_term(int n1, int n2, double beta, const ToleranceConfig& tol = {}) {
    detail::check_beta(beta);
    const double kappa = detail::checked_kappa(n1, n2);
    auto p = phi(beta * kappa, tol);
    return {kappa * p.value, kappa * p.est_error, 1};
}

/// dF_{n1,n2}/dbeta = kappa^2 * phi'(beta * kappa).
inline SpectralValue mode_spectral_term_deriv(int n1, int n2, double beta, const ToleranceConfig& tol = {}) {
    detail::check_beta(beta);
    const double kappa = detail::checked_kappa(n1, n2);
    auto p = phi_deriv(beta * kappa, tol);
    return {kappa * kappa * p.value, kappa * kappa * p.est_error, 1};
}

/// Upper envelope of F at magnitude kappa: 2 e^{-beta kappa} / (beta (1 - e^{-beta kappa})).
inline double term_bound(double kappa, double beta) noexcept {
    const double t = beta * kappa;
    return 2.0 * std::exp(-t) / (beta * -std::expm1(-t));
}

/// Upper envelope of |dF/dbeta|: 2 e^{-beta kappa} (kappa/beta + 1/beta^2) / (1 - e^{-beta kappa}).
inline double term_deriv_bound(double kappa, double beta) noexcept {
    const double t = beta * kappa;
    return 2.0 * std::exp(-t) * (kappa / beta + 1.0 / (beta * beta)) / -std::expm1(-t);
}

namespace detail {

enum class SumKind { value, derivative };

// integral_a^inf rho^k e^{-beta rho} drho for k = 0, 1, 2.
inline double exp_moment(int k, double a, double beta) {
    const double e = std::exp(-beta * a);
    switch (k) {
        case 0: return e / beta;
        case 1: return e * (a / beta + 1.0 / (beta * beta));
        default: return e * (a * a / beta + 2.0 * a / (beta * beta) + 2.0 / (beta * beta * beta));
    }
}

// Bound on the half-weighted sum over all pairs with kappa > radius. Needs
// the envelope to be decreasing beyond radius - diag, which holds once
// beta * (radius - diag) >= 2.
inline double tail_bound(SumKind kind, double radius, double beta, double aspect) {
    const double diag = std::hypot(aspect, 1.0 / aspect);
    const double a = radius - diag;
    if (!(beta * a >= 2.0)) return std::numeric_limits<double>::infinity();
    const double c = 1.0 / -std::expm1(-beta * a);
    // Envelope B(rho) = 2 c e^{-beta rho} * poly(rho).
    auto area_integral = [&] {
        // (pi/2) integral_a^inf rho B(rho) drho
        if (kind == SumKind::value) return std::numbers::pi * c * exp_moment(1, a, beta) / beta;
        return std::numbers::pi * c * (exp_moment(2, a, beta) / beta + exp_moment(1, a, beta) / (beta * beta));
    };
    auto envelope = [&](double rho) {
        return kind == SumKind::value ? term_bound(rho, beta) : term_deriv_bound(rho, beta);
    };
    auto line_integral = [&](double from) {
        if (kind == SumKind::value) return 2.0 * c * exp_moment(0, from, beta) / beta;
        return 2.0 * c * (exp_moment(1, from, beta) / beta + exp_moment(0, from, beta) / (beta * beta));
    };
    // Edge pairs (n, 0) and (0, n) carry weight 1/2; sum h(n) <= h(n0) + integral.
    double edges = 0.0;
    for (double step : {aspect, 1.0 / aspect}) {
        const double n0 = std::max(1.0, std::ceil(radius / step));
        const double first = n0 * step;
        edges += 0.5 * (envelope(first) + line_integral(first) / step);
    }
    return area_integral() + edges;
}

// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) noexcept {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const noexcept { return sum + comp; }
};

class ShellCache {
public:
    static ShellCache& instance() {
        static ShellCache cache;
        return cache;
    }

    std::shared_ptr<const std::vector<modes::KappaShell>> get(double radius, double aspect) {
        std::lock_guard lock(mutex_);
        if (!shells_ || aspect_ != aspect || radius_ < radius) {
            const double r = std::max(radius, aspect_ == aspect ? 1.25 * radius_ : radius);
            shells_ = std::make_shared<const std::vector<modes::KappaShell>>(modes::rectangular_shells(r, aspect));
            radius_ = r;
            aspect_ = aspect;
        }
        return shells_;
    }

private:
    std::mutex mutex_;
    std::shared_ptr<const std::vector<modes::KappaShell>> shells_;
    double radius_ = 0.0;
    double aspect_ = 0.0;
};

inline SpectralValue mode_sum(SumKind kind, double beta, const ToleranceConfig& tol, double aspect) {
    check_beta(beta);
    if (!(aspect > 0.0) || !std::isfinite(aspect)) throw std::domain_error("aspect ratio must be positive");
    const double diag = std::hypot(aspect, 1.0 / aspect);
    double radius = diag + std::max(8.0, 36.0 / beta);

    CompensatedSum sum;
    double quad_err = 0.0;
    long long terms = 0;
    std::size_t next = 0;
    std::shared_ptr<const std::vector<modes::KappaShell>> shells;
    for (;;) {
        if (radius > tol.max_transverse_cutoff)
            throw cutoff_exceeded("mode sum: transverse cutoff cap reached before the tail bound was met");
        shells = ShellCache::instance().get(radius, aspect);
        for (; next < shells->size() && (*shells)[next].kappa <= radius; ++next) {
            const auto& sh = (*shells)[next];
            const double t = beta * sh.kappa;
            double term = 0.0;
            if (tol.use_phi_table && PhiTable::covers(t)) {
                term = kind == SumKind::value ? sh.kappa * PhiTable::instance().phi(t)
                                              : sh.kappa * sh.kappa * PhiTable::instance().phi_deriv(t);
                quad_err += std::abs(term) * double(sh.degeneracy) * PhiTable::nominal_rel_error;
            } else {
                const auto p = kind == SumKind::value ? phi(t, tol) : phi_deriv(t, tol);
                const double scale = kind == SumKind::value ? sh.kappa : sh.kappa * sh.kappa;
                term = scale * p.value;
                quad_err += scale * p.est_error * double(sh.degeneracy);
            }
            sum.add(0.5 * double(sh.degeneracy) * term);
            ++terms;
        }
        const double tail = tail_bound(kind, radius, beta, aspect);
        if (tail <= tol.sum_tail_rel * std::abs(sum.value())) {
            return {sum.value(), 0.5 * quad_err + tail, terms};
        }
        radius *= 1.3;
    }
}

}  // namespace detail

/// W(beta) for a square guide (aspect = 1) or the rectangular generalization.
inline SpectralValue capacity_sum(double beta, const ToleranceConfig& tol = {}, double aspect = 1.0) {
    return detail::mode_sum(detail::SumKind::value, beta, tol, aspect);
}

/// dW/dbeta, summed termwise.
inline SpectralValue capacity_sum_deriv(double beta, const ToleranceConfig& tol = {}, double aspect = 1.0) {
    return detail::mode_sum(detail::SumKind::derivative, beta, tol, aspect);
}

/// Bound on the truncation error of capacity_sum when every shell with
/// kappa <= radius is included.
inline double capacity_sum_tail_bound(double radius, double beta, double aspect = 1.0) {
    return detail::tail_bound(detail::SumKind::value, radius, beta, aspect);
}

inline double capacity_sum_deriv_tail_bound(double radius, double beta, double aspect = 1.0) {
    return detail::tail_bound(detail::SumKind::derivative, radius, beta, aspect);
}

/// Continuum value of W for a square guide: pi^5 / (120 beta^3).
inline double capacity_sum_continuum(double beta) noexcept {
    return std::pow(std::numbers::pi, 5) / (120.0 * beta * beta * beta);
}

}  // namespace spectral
}  // namespace wgrate
