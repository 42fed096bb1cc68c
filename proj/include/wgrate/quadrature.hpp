#pragma once

// Globally adaptive Gauss-Kronrod (10/21) integration over a finite interval
// split at caller-supplied breakpoints. Node and weight tables come from
// Boost.Math; the panel bookkeeping lives here.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace wgrate::quad {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  ///< sum of |K21 - G10| over the final panels
    int evaluations = 0;
    bool converged = false;
};

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_panels = 4000;
};

class non_convergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk21(const F& f, double a, double b) {
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using gauss = boost::math::quadrature::gauss<double, 10>;
    static const auto& xk = kronrod::abscissa();
    static const auto& wk = kronrod::weights();
    static const auto& wg = gauss::weights();

    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = wk[0] * fc;
    double g = 0.0;
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double dx = h * xk[i];
        const double pair = f(c - dx) + f(c + dx);
        k += wk[i] * pair;
        if (i % 2 == 1) g += wg[(i - 1) / 2] * pair;
    }
    k *= h;
    g *= h;
    return {a, b, k, std::abs(k - g)};
}

}  // namespace detail

/// Integrate f over [breaks.front(), breaks.back()], starting from one panel
/// per breakpoint interval and bisecting the worst panel until the summed
/// error estimate meets max(abs_tol, rel_tol * |value|).
template <class F>
QuadResult integrate(const F& f, std::span<const double> breaks, const QuadOptions& opt = {}) {
    if (breaks.size() < 2) throw std::invalid_argument("integrate: need at least two breakpoints");
    std::priority_queue<detail::Panel> heap;
    QuadResult r;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i] < breaks[i + 1])) throw std::invalid_argument("integrate: breakpoints must increase");
        auto p = detail::gk21(f, breaks[i], breaks[i + 1]);
        r.value += p.value;
        r.error += p.error;
        heap.push(p);
    }
    r.evaluations = 21 * static_cast<int>(heap.size());

    auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(r.value)); };
    while (r.error > target()) {
        if (static_cast<int>(heap.size()) >= opt.max_panels) return r;
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) return r;  // interval exhausted
        const auto left = detail::gk21(f, worst.a, mid);
        const auto right = detail::gk21(f, mid, worst.b);
        r.evaluations += 42;
        r.value += left.value + right.value - worst.value;
        r.error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of incremental updates.
    double v = 0.0, e = 0.0;
    while (!heap.empty()) {
        v += heap.top().value;
        e += heap.top().error;
        heap.pop();
    }
    r.value = v;
    r.error = e;
    r.converged = true;
    return r;
}

template <class F>
QuadResult integrate(const F& f, double a, double b, const QuadOptions& opt = {}) {
    const double br[2] = {a, b};
    return integrate(f, std::span<const double>(br, 2), opt);
}

/// As integrate(), but throws non_convergence when the tolerance is missed.
template <class F>
QuadResult integrate_checked(const F& f, std::span<const double> breaks, const QuadOptions& opt = {}) {
    auto r = integrate(f, breaks, opt);
    if (!r.converged) throw non_convergence("quadrature did not reach the requested tolerance");
    return r;
}

template <class F>
QuadResult integrate_checked(const F& f, double a, double b, const QuadOptions& opt = {}) {
    const double br[2] = {a, b};
    return integrate_checked(f, std::span<const double>(br, 2), opt);
}

}  // namespace wgrate::quad
