#pragma once

// Adaptive 1-D and iterated 2-D quadrature on finite, semi-infinite and
// doubly infinite intervals.  The engine is a globally adaptive
// Gauss-Kronrod 7/15 rule: the segment with the largest error estimate is
// bisected until the accumulated error drops below
// max(abs_tol, rel_tol*|result|) or the subdivision budget is exhausted.
//
// Semi-infinite domains are folded onto (0,1) by either
//   exp:      t = a - ln(1-u),   dt = du/(1-u)      (exponential tails)
//   rational: t = a + u/(1-u),   dt = du/(1-u)^2    (power-law tails)
// Kronrod nodes are strictly interior, so integrands are never evaluated
// at the endpoints; integrable endpoint singularities are acceptable.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "accelrad/errors.hpp"

namespace accelrad::numerics {

enum class SemiInfiniteMap { exp_map, rational_map };

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 4000;
    SemiInfiniteMap semi_infinite_map = SemiInfiniteMap::exp_map;

    void validate() const {
        if (!(rel_tol > 0.0)) throw std::domain_error("QuadratureConfig: rel_tol must be > 0");
        if (!(abs_tol > 0.0)) throw std::domain_error("QuadratureConfig: abs_tol must be > 0");
        if (max_subdivisions < 1)
            throw std::domain_error("QuadratureConfig: max_subdivisions must be >= 1");
    }

    QuadratureConfig tightened(double factor) const {
        QuadratureConfig c = *this;
        c.rel_tol *= factor;
        c.abs_tol *= factor;
        return c;
    }
};

// Integration domain: [lower, upper], upper may be +inf, or the whole
// real line (both infinite).
struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    static Interval finite(double a, double b) {
        if (!(a < b)) throw std::domain_error("Interval: need lower < upper");
        if (!std::isfinite(a) || !std::isfinite(b))
            throw std::domain_error("Interval::finite: bounds must be finite");
        return {a, b};
    }
    static Interval from(double a) {
        if (!std::isfinite(a)) throw std::domain_error("Interval::from: lower bound must be finite");
        return {a, std::numeric_limits<double>::infinity()};
    }
    static Interval real_line() {
        return {-std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
    }

    bool lower_infinite() const { return std::isinf(lower); }
    bool upper_infinite() const { return std::isinf(upper); }
};

namespace detail {

// QUADPACK 15-point Kronrod / 7-point Gauss pair on [-1,1].
inline constexpr double kronrod_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kronrod_w[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gauss_w[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct SegmentEstimate {
    double integral;
    double error;
};

// One Gauss-Kronrod pass over [a,b]; error = |K15 - G7|.
template <typename F>
SegmentEstimate gk15(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    const double fc = f(mid);
    double result_k = kronrod_w[7] * fc;
    double result_g = gauss_w[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kronrod_x[j];
        const double f1 = f(mid - dx);
        const double f2 = f(mid + dx);
        result_k += kronrod_w[j] * (f1 + f2);
        if (j % 2 == 1) result_g += gauss_w[j / 2] * (f1 + f2);
    }
    result_k *= half;
    result_g *= half;
    return {result_k, std::abs(result_k - result_g)};
}

struct Segment {
    double a, b, integral, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

// Globally adaptive driver over a list of seed segments.
template <typename F>
double adaptive(F&& f, const std::vector<std::pair<double, double>>& seeds,
                const QuadratureConfig& cfg) {
    std::priority_queue<Segment> heap;
    double total = 0.0, err = 0.0;
    for (const auto& [a, b] : seeds) {
        auto e = gk15(f, a, b);
        heap.push({a, b, e.integral, e.error});
        total += e.integral;
        err += e.error;
    }
    int splits = 0;
    while (err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
        if (splits >= cfg.max_subdivisions || heap.empty()) {
            throw convergence_error(
                "integrate_1d: no convergence after max_subdivisions", total, err);
        }
        Segment s = heap.top();
        heap.pop();
        const double m = 0.5 * (s.a + s.b);
        if (!(m > s.a && m < s.b)) {
            // worst segment is at rounding resolution and cannot be split
            throw convergence_error(
                "integrate_1d: interval shrunk to rounding resolution", total, err);
        }
        auto l = gk15(f, s.a, m);
        auto r = gk15(f, m, s.b);
        total += l.integral + r.integral - s.integral;
        err += l.error + r.error - s.error;
        heap.push({s.a, m, l.integral, l.error});
        heap.push({m, s.b, r.integral, r.error});
        ++splits;
    }
    if (!std::isfinite(total))
        throw convergence_error("integrate_1d: non-finite result", total, err);
    return total;
}

}  // namespace detail

// Integral of f over a finite interval [a,b].
template <typename F>
double integrate_finite(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
    cfg.validate();
    if (!(a < b)) throw std::domain_error("integrate_finite: need a < b");
    return detail::adaptive(f, {{a, b}}, cfg);
}

// Integral of f over [a, +inf).
template <typename F>
double integrate_semi_infinite(F&& f, double a, const QuadratureConfig& cfg = {}) {
    cfg.validate();
    if (cfg.semi_infinite_map == SemiInfiniteMap::exp_map) {
        auto g = [&f, a](double u) {
            const double one_minus = 1.0 - u;
            if (one_minus <= 0.0) return 0.0;  // u rounded onto the endpoint
            const double t = a - std::log(one_minus);
            return f(t) / one_minus;
        };
        return detail::adaptive(g, {{0.0, 1.0}}, cfg);
    }
    auto g = [&f, a](double u) {
        const double one_minus = 1.0 - u;
        if (one_minus <= 0.0) return 0.0;
        const double t = a + u / one_minus;
        return f(t) / (one_minus * one_minus);
    };
    return detail::adaptive(g, {{0.0, 1.0}}, cfg);
}

// Integral of f over the whole real line, split at zero.
template <typename F>
double integrate_real_line(F&& f, const QuadratureConfig& cfg = {}) {
    auto half = cfg.tightened(0.5);
    const double right = integrate_semi_infinite(f, 0.0, half);
    const double left = integrate_semi_infinite([&f](double t) { return f(-t); }, 0.0, half);
    return left + right;
}

// General 1-D entry point over an Interval.
template <typename F>
double integrate_1d(F&& f, const Interval& domain, const QuadratureConfig& cfg = {}) {
    if (domain.lower_infinite() && domain.upper_infinite())
        return integrate_real_line(std::forward<F>(f), cfg);
    if (domain.upper_infinite())
        return integrate_semi_infinite(std::forward<F>(f), domain.lower, cfg);
    if (domain.lower_infinite()) {
        const double b = domain.upper;
        return integrate_semi_infinite([&f, b](double t) { return f(b - t); }, 0.0, cfg);
    }
    return integrate_finite(std::forward<F>(f), domain.lower, domain.upper, cfg);
}

// Iterated 2-D integral: outer over x, inner over y.  The inner integral
// is evaluated 10x tighter than the outer so that inner noise does not
// masquerade as outer structure.
template <typename F>
double integrate_2d_iterated(F&& f, const Interval& outer, const Interval& inner,
                             const QuadratureConfig& cfg = {}) {
    cfg.validate();
    const QuadratureConfig inner_cfg = cfg.tightened(0.1);
    auto outer_f = [&](double x) {
        return integrate_1d([&f, x](double y) { return f(x, y); }, inner, inner_cfg);
    };
    return integrate_1d(outer_f, outer, cfg);
}

}  // namespace accelrad::numerics
