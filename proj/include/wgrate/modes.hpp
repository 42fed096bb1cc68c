#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace wgrate {

enum class Species { TE, TM };

/// One transverse mode. TE needs both indices >= 1; TM allows one of them to
/// be zero. (0, 0) is never a mode.
struct ModeIndex {
    int n1 = 0;
    int n2 = 0;
    Species species = Species::TM;

    bool valid() const noexcept {
        if (n1 < 0 || n2 < 0 || (n1 == 0 && n2 == 0)) return false;
        return species == Species::TM || (n1 >= 1 && n2 >= 1);
    }
};

/// A transverse index pair together with the number of species sharing it.
struct WeightedTransversePair {
    int n1 = 0;
    int n2 = 0;
    int degeneracy = 0;

    double kappa() const noexcept { return std::hypot(double(n1), double(n2)); }
    friend bool operator==(const WeightedTransversePair&, const WeightedTransversePair&) = default;
};

/// Number of species supported by a transverse pair: 2 in the interior of the
/// lattice, 1 on the edges, 0 at the origin.
constexpr int species_count(int n1, int n2) noexcept {
    if (n1 < 0 || n2 < 0 || (n1 == 0 && n2 == 0)) return 0;
    return (n1 >= 1 && n2 >= 1) ? 2 : 1;
}

/// Transverse dimensions of the guide in meters.
class ChannelGeometry {
public:
    ChannelGeometry(double l1, double l2) : l1_(l1), l2_(l2) {
        if (!(l1 > 0.0) || !(l2 > 0.0) || !std::isfinite(l1) || !std::isfinite(l2))
            throw std::invalid_argument("ChannelGeometry: side lengths must be positive and finite");
    }
    static ChannelGeometry square(double side) { return {side, side}; }
    static ChannelGeometry square_of_area(double area) {
        if (!(area > 0.0)) throw std::invalid_argument("ChannelGeometry: area must be positive");
        return square(std::sqrt(area));
    }

    double l1() const noexcept { return l1_; }
    double l2() const noexcept { return l2_; }
    double area() const noexcept { return l1_ * l2_; }
    /// r = sqrt(L2 / L1); scaled transverse wavenumbers are (n1 r, n2 / r).
    double aspect() const noexcept { return std::sqrt(l2_ / l1_); }
    bool is_square() const noexcept { return l1_ == l2_; }

private:
    double l1_;
    double l2_;
};

namespace modes {

/// All pairs with max(n1, n2) <= cutoff except (0, 0), row-major in (n1, n2).
inline std::vector<WeightedTransversePair> enumerate_transverse(int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("enumerate_transverse: cutoff must be >= 1");
    std::vector<WeightedTransversePair> out;
    out.reserve(std::size_t(cutoff + 1) * std::size_t(cutoff + 1) - 1);
    for (int n1 = 0; n1 <= cutoff; ++n1)
        for (int n2 = 0; n2 <= cutoff; ++n2)
            if (int d = species_count(n1, n2); d > 0) out.push_back({n1, n2, d});
    return out;
}

/// Expands weighted pairs into individual (pair, species) modes.
inline std::vector<ModeIndex> expand_species(const std::vector<WeightedTransversePair>& pairs) {
    std::vector<ModeIndex> out;
    for (const auto& p : pairs) {
        if (p.degeneracy == 2) out.push_back({p.n1, p.n2, Species::TE});
        out.push_back({p.n1, p.n2, Species::TM});
    }
    return out;
}

inline long long weighted_count(const std::vector<WeightedTransversePair>& pairs) noexcept {
    long long s = 0;
    for (const auto& p : pairs) s += p.degeneracy;
    return s;
}

/// Stable ascending order in kappa; equal kappa falls back to (n1, n2).
inline std::vector<WeightedTransversePair> sorted_by_kappa(std::vector<WeightedTransversePair> pairs) {
    if (pairs.empty()) throw std::invalid_argument("sorted_by_kappa: empty list");
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        const long long na = 1LL * a.n1 * a.n1 + 1LL * a.n2 * a.n2;
        const long long nb = 1LL * b.n1 * b.n1 + 1LL * b.n2 * b.n2;
        return std::tie(na, a.n1, a.n2) < std::tie(nb, b.n1, b.n2);
    });
    return pairs;
}

/// All pairs sharing one scaled transverse magnitude, with their summed
/// degeneracy.
struct KappaShell {
    double kappa = 0.0;
    long long degeneracy = 0;
};

/// Shells of the square lattice with kappa <= radius, ascending. Pairs are
/// grouped by the exact integer n1^2 + n2^2.
inline std::vector<KappaShell> square_shells(double radius) {
    if (!(radius >= 1.0)) throw std::invalid_argument("square_shells: radius must be >= 1");
    const auto r2 = static_cast<long long>(std::floor(radius * radius));
    // (norm, degeneracy) over the half lattice n1 <= n2, mirrored by weight.
    std::vector<std::pair<long long, int>> raw;
    raw.reserve(static_cast<std::size_t>(0.4 * double(r2)) + 16);
    for (long long a = 0; 2 * a * a <= r2; ++a) {
        for (long long b = std::max(a, 1LL); a * a + b * b <= r2; ++b) {
            const int d = species_count(int(a), int(b));
            raw.emplace_back(a * a + b * b, a == b ? d : 2 * d);
        }
    }
    std::sort(raw.begin(), raw.end());
    std::vector<KappaShell> shells;
    for (std::size_t i = 0; i < raw.size();) {
        const long long norm = raw[i].first;
        long long deg = 0;
        for (; i < raw.size() && raw[i].first == norm; ++i) deg += raw[i].second;
        shells.push_back({std::sqrt(double(norm)), deg});
    }
    return shells;
}

/// Shells for an L1 x L2 guide: scaled magnitude sqrt((n1 r)^2 + (n2 / r)^2)
/// with r = sqrt(L2 / L1). Every pair is its own shell unless magnitudes
/// coincide exactly.
inline std::vector<KappaShell> rectangular_shells(double radius, double aspect) {
    if (!(radius >= 1.0)) throw std::invalid_argument("rectangular_shells: radius must be >= 1");
    if (!(aspect > 0.0)) throw std::invalid_argument("rectangular_shells: aspect must be positive");
    if (aspect == 1.0) return square_shells(radius);
    const double a2 = aspect * aspect;
    const double ia2 = 1.0 / a2;
    std::vector<KappaShell> out;
    for (int n1 = 0; n1 * aspect <= radius; ++n1) {
        for (int n2 = 0;; ++n2) {
            const double k2 = n1 * double(n1) * a2 + n2 * double(n2) * ia2;
            if (k2 > radius * radius) break;
            if (int d = species_count(n1, n2); d > 0) out.push_back({std::sqrt(k2), d});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return std::tie(x.kappa, x.degeneracy) < std::tie(y.kappa, y.degeneracy);
    });
    return out;
}

}  // namespace modes
}  // namespace wgrate
