#pragma once

// Special-function kernels: squared moduli of Gamma/Beta at purely
// imaginary argument, the exponential integral Gamma(0,x), and the
// modified Bessel function of the second kind at complex order via its
// cosh-kernel integral representation
//
//     K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt ,   x > 0.
//
// Everything here is a pure function of its inputs.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "accelrad/errors.hpp"
#include "accelrad/quadrature.hpp"

namespace accelrad::numerics {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

using ComplexValue = std::complex<double>;

// log(sinh x) for x > 0, safe against overflow.
inline double log_sinh(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_sinh: x must be > 0");
    if (x < 350.0) return std::log(std::sinh(x));
    return x - 0.6931471805599453094172321214581766;  // x - ln 2
}

// sinh(x)/x, even, equals 1 at x = 0.
inline double sinhc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0);
    }
    return std::sinh(x) / x;
}

// log(sinh(x)/x), even in x, 0 at x = 0.
inline double log_sinhc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = ax * ax;
        return std::log1p(x2 / 6.0 * (1.0 + x2 / 20.0));
    }
    if (ax < 350.0) return std::log(std::sinh(ax) / ax);
    return ax - 0.6931471805599453094172321214581766 - std::log(ax);
}

// log(cosh X - cosh Y) = ln 2 + log sinh((X+|Y|)/2) + log sinh((X-|Y|)/2),
// valid for X > |Y| >= 0 and safe against overflow.
inline double log_cosh_diff(double X, double Y) {
    const double aY = std::abs(Y);
    if (!(X > aY)) throw std::domain_error("log_cosh_diff: need X > |Y|");
    return 0.6931471805599453094172321214581766 + log_sinh(0.5 * (X + aY)) +
           log_sinh(0.5 * (X - aY));
}

// log |Gamma(i x)|^2 = log pi - log|x| - log sinh(pi |x|), even in x.
inline double log_abs_gamma_imag_sq(double x) {
    const double ax = std::abs(x);
    if (ax == 0.0) throw std::domain_error("log_abs_gamma_imag_sq: pole at x = 0");
    return std::log(pi) - std::log(ax) - log_sinh(pi * ax);
}

// |Gamma(i x)|^2 = pi / (x sinh(pi x)).  Even and positive; grows like
// 1/x^2 towards the pole at x = 0, decays like 2 pi e^{-pi|x|}/|x|.
inline double abs_gamma_imag_sq(double x) {
    const double ax = std::abs(x);
    if (ax == 0.0) throw std::domain_error("abs_gamma_imag_sq: pole at x = 0");
    if (ax < 30.0) return pi / (ax * std::sinh(pi * ax));
    return std::exp(log_abs_gamma_imag_sq(ax));
}

// log |B(i a, i b)|^2 through the reflection identity,
// |B(ia,ib)|^2 = |Gamma(ia)|^2 |Gamma(ib)|^2 / |Gamma(i(a+b))|^2.
inline double log_abs_beta_imag_sq(double a, double b) {
    if (a == 0.0 || b == 0.0 || a + b == 0.0)
        throw std::domain_error("log_abs_beta_imag_sq: pole argument");
    return log_abs_gamma_imag_sq(a) + log_abs_gamma_imag_sq(b) -
           log_abs_gamma_imag_sq(a + b);
}

inline double abs_beta_imag_sq(double a, double b) {
    return std::exp(log_abs_beta_imag_sq(a, b));
}

// Gamma(0, x) = E_1(x) = int_x^inf e^{-t}/t dt for x > 0.
// Power series below x = 1, modified Lentz continued fraction above.
inline double incomplete_gamma_zero(double x) {
    if (!(x > 0.0)) throw std::domain_error("incomplete_gamma_zero: need x > 0");
    if (x <= 1.0) {
        double sum = 0.0, term = 1.0;
        for (int k = 1; k <= 40; ++k) {
            term *= -x / k;
            const double add = -term / k;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        }
        return -euler_gamma - std::log(x) + sum;
    }
    const double fpmin = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

// Modified Bessel K of real order through the standard library.
inline double bessel_k_real(double nu, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k_real: need x > 0");
    return std::cyl_bessel_k(std::abs(nu), x);  // K_{-nu} = K_nu
}

inline double bessel_k1(double x) { return bessel_k_real(1.0, x); }

namespace detail {

// t beyond which exp(-x(cosh t - 1)) cosh(nu_re t) < e^{-L}.
inline double bessel_k_cutoff(double nu_re, double x, double L) {
    double t = std::acosh(1.0 + L / x);
    for (int it = 0; it < 4; ++it)
        t = std::acosh(1.0 + (L + std::abs(nu_re) * t) / x);
    return t;
}

}  // namespace detail

// e^{x} K_nu(x) for nu = nu_re + i nu_im, evaluated from
//   e^{x} K_nu(x) = int_0^inf exp(-2 x sinh^2(t/2)) cosh(nu t) dt.
// The scaling keeps the integrand O(1) even when K itself underflows.
inline ComplexValue bessel_k_complex_order_scaled(double nu_re, double nu_im, double x,
                                                  const QuadratureConfig& cfg = {}) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k_complex_order: need x > 0");
    if (std::abs(nu_im) > 300.0)
        throw std::domain_error("bessel_k_complex_order: |Im nu| too large for the "
                                "cosh-kernel representation");
    cfg.validate();

    const double t_max = detail::bessel_k_cutoff(nu_re, x, 45.0);

    // Pre-split so each seed covers at most ~half an oscillation of
    // cos(nu_im t); the adaptive pass then refines cheaply.
    std::vector<std::pair<double, double>> seeds;
    const double abs_im = std::abs(nu_im);
    int n_seeds = 1;
    if (abs_im * t_max > 3.0)
        n_seeds = static_cast<int>(std::ceil(abs_im * t_max / 1.5));
    n_seeds = std::min(n_seeds, 4096);
    seeds.reserve(n_seeds);
    for (int i = 0; i < n_seeds; ++i)
        seeds.emplace_back(t_max * i / n_seeds, t_max * (i + 1) / n_seeds);

    QuadratureConfig c = cfg;
    c.abs_tol = std::numeric_limits<double>::min();  // pure relative control

    auto kernel = [x](double t) {
        const double sh = std::sinh(0.5 * t);
        return std::exp(-2.0 * x * sh * sh);
    };
    const double re = detail::adaptive(
        [&](double t) { return kernel(t) * std::cosh(nu_re * t) * std::cos(nu_im * t); },
        seeds, c);
    double im = 0.0;
    if (nu_im != 0.0) {
        // The imaginary part can be orders of magnitude below the real
        // part; an absolute floor tied to |re| avoids chasing pure noise.
        c.abs_tol = std::max(c.abs_tol, 0.5 * cfg.rel_tol * std::abs(re));
        im = detail::adaptive(
            [&](double t) { return kernel(t) * std::sinh(nu_re * t) * std::sin(nu_im * t); },
            seeds, c);
    }
    return {re, im};
}

// K_nu(x) itself; may underflow to zero for x large, as the true value does.
inline ComplexValue bessel_k_complex_order(double nu_re, double nu_im, double x,
                                           const QuadratureConfig& cfg = {}) {
    const ComplexValue scaled = bessel_k_complex_order_scaled(nu_re, nu_im, x, cfg);
    const double damp = std::exp(-x);
    ComplexValue out = {scaled.real() * damp, scaled.imag() * damp};
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag()))
        throw convergence_error("bessel_k_complex_order: non-finite result",
                                std::abs(out), 0.0);
    return out;
}

// |K_nu(x)|^2 e^{2x}: squared modulus of the scaled function.
inline double bessel_k_complex_order_abs_sq_scaled(double nu_re, double nu_im, double x,
                                                   const QuadratureConfig& cfg = {}) {
    const ComplexValue k = bessel_k_complex_order_scaled(nu_re, nu_im, x, cfg);
    return k.real() * k.real() + k.imag() * k.imag();
}

}  // namespace accelrad::numerics
