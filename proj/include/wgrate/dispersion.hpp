#pragma once

#include <cmath>
#include <stdexcept>

namespace wgrate {

/// Scaled wave vector of a guided mode: two transverse components and the
/// longitudinal discretization parameter. All components live in the
/// positive octant.
struct WaveTriple {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
};

namespace dispersion {

/// Transverse magnitude sqrt(x1^2 + x2^2).
inline double transverse_norm(const WaveTriple& w) noexcept {
    return std::hypot(w.x1, w.x2);
}

/// Frequency ratio at transverse magnitude kappa > 0 and longitudinal x3 >= 0.
///
/// Evaluated as (x3 + sqrt(x3^2 + 4 kappa^2)) / 2, which is the conjugate of
/// 2 kappa^2 / (-x3 + sqrt(x3^2 + 4 kappa^2)) and stays accurate for x3 >> kappa.
inline double freq_ratio_radial(double kappa, double x3) {
    if (!(kappa > 0.0))
        throw std::domain_error("freq_ratio: zero transverse wavenumber is not a guided mode");
    if (x3 < 0.0) throw std::domain_error("freq_ratio: negative longitudinal parameter");
    return 0.5 * (x3 + std::hypot(x3, 2.0 * kappa));
}

/// Mode frequency omega/c for a scaled wave vector.
inline double freq_ratio(const WaveTriple& w) {
    if (w.x1 < 0.0 || w.x2 < 0.0) throw std::domain_error("freq_ratio: negative transverse component");
    return freq_ratio_radial(transverse_norm(w), w.x3);
}

/// The printed ratio form 2 kappa^2 / (-x3 + sqrt(x3^2 + 4 kappa^2)). Loses
/// precision when x3 >> kappa; kept for cross-checks only.
inline double freq_ratio_unrationalized(const WaveTriple& w) {
    const double k2 = w.x1 * w.x1 + w.x2 * w.x2;
    if (!(k2 > 0.0))
        throw std::domain_error("freq_ratio: zero transverse wavenumber is not a guided mode");
    return 2.0 * k2 / (-w.x3 + std::sqrt(w.x3 * w.x3 + 4.0 * k2));
}

/// Reduced dispersion g(u) = f(1, 0, u) = (u + sqrt(u^2 + 4)) / 2, so that
/// f(x) = kappa * g(x3 / kappa).
inline double reduced(double u) noexcept { return 0.5 * (u + std::hypot(u, 2.0)); }

/// Inverse of reduced(): u = g - 1/g for g >= 1.
inline double reduced_inverse(double g) noexcept { return g - 1.0 / g; }

}  // namespace dispersion
}  // namespace wgrate
