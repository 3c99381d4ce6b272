#pragma once

// Scalar Bogolubov spectra |beta^R_pq|^2 for a 1+1D mirror on each
// worldline, per-frequency particle densities and counts, and the
// mirror-side total energy  E/hbar = int int p |beta_pq|^2 dp dq.
//
// Davies-Fulling right side, with g+- = s(p-q) +- (p+q):
//   |beta^R_pq|^2 = pq / (4 pi^2 kappa^2 (p-q)^2) |B(i g_-/2k, i g_+/2k)|^2
// which simplifies (and is evaluated near the p = q diagonal) as
//   |beta^R_pq|^2 = s^2 pq sinhc(Y) / (kappa^2 a b) * 1/(cosh X - cosh Y),
//   a = p(1+s)+q(1-s),  b = p(1-s)+q(1+s),
//   X = pi(p+q)/kappa,  Y = pi s(p-q)/kappa,
// the double-sided sum being exactly twice this.  All cosh/sinh ratios
// are evaluated in log space via cosh X - cosh Y =
// 2 sinh((X+Y)/2) sinh((X-Y)/2).
//
// Walker-Davies right side:
//   |beta^R_pq|^2 = (2AB/pi^2) q/(p+q) sinh(pi p B) |K_{-1/2 + i p B}(A(p+q))|^2
//
// Uniform acceleration:
//   |beta^R_pq|^2 = (1/pi^2 kappa^2) K_1(2 sqrt(pq)/kappa)^2

#include <cmath>
#include <vector>

#include "accelrad/errors.hpp"
#include "accelrad/quadrature.hpp"
#include "accelrad/special_functions.hpp"
#include "accelrad/trajectory.hpp"

namespace accelrad::mirror {

using numerics::pi;
using numerics::QuadratureConfig;

struct ModePair {
    double p;  // out-mode frequency
    double q;  // in-mode frequency
};

// Frequency combinations of the Davies-Fulling spectrum:
//   g+- = s(p-q) +- (p+q),  a = p(1+s) + q(1-s) = g+,  b = p(1-s) + q(1+s) = -g-.
// For 0 < s < 1 and positive frequencies a, b > 0 and g+ - g- = 2(p+q).
struct DfBetaTerms {
    double g_plus, g_minus, a, b;

    static DfBetaTerms from(double s, const ModePair& pair) {
        DfBetaTerms t;
        t.g_plus = s * (pair.p - pair.q) + (pair.p + pair.q);
        t.g_minus = s * (pair.p - pair.q) - (pair.p + pair.q);
        t.a = pair.p * (1.0 + s) + pair.q * (1.0 - s);
        t.b = pair.p * (1.0 - s) + pair.q * (1.0 + s);
        return t;
    }
};

namespace detail {

inline void require_positive_pair(const ModePair& pair, const char* who) {
    if (!(pair.p > 0.0) || !(pair.q > 0.0))
        throw std::domain_error(std::string(who) + ": need p > 0 and q > 0");
}

}  // namespace detail

// Light-speed Davies-Fulling double-sided spectrum,
//   |beta_pq|^2 = 1/(pi kappa (p-q)) [ n(q) - n(p) ],  n(x) = 1/(e^{2 pi x/kappa}-1),
// with the analytic p -> q limit  1/(2 kappa^2 sinh^2(pi p / kappa)).
inline double beta_sq_df_lightspeed(double kappa, const ModePair& pair) {
    if (!(kappa > 0.0)) throw std::domain_error("beta_sq_df_lightspeed: need kappa > 0");
    detail::require_positive_pair(pair, "beta_sq_df_lightspeed");
    const double p = pair.p, q = pair.q;
    if (std::abs(p - q) <= 1e-6 * (p + q)) {
        const double m = 0.5 * (p + q);
        return std::exp(-std::log(2.0 * kappa * kappa) -
                        2.0 * numerics::log_sinh(pi * m / kappa));
    }
    auto planck = [kappa](double x) { return 1.0 / std::expm1(2.0 * pi * x / kappa); };
    return (planck(q) - planck(p)) / (pi * kappa * (p - q));
}

// Davies-Fulling right-side spectrum through the Beta-modulus composition;
// near the diagonal the grouped sinhc form takes over.
inline double beta_sq_df_right(double s, double kappa, const ModePair& pair) {
    if (!(kappa > 0.0)) throw std::domain_error("beta_sq_df_right: need kappa > 0");
    if (!(s > 0.0) || !(s <= 1.0)) throw std::domain_error("beta_sq_df_right: need 0 < s <= 1");
    detail::require_positive_pair(pair, "beta_sq_df_right");
    if (s == 1.0) return 0.5 * beta_sq_df_lightspeed(kappa, pair);

    const double p = pair.p, q = pair.q;
    const DfBetaTerms terms = DfBetaTerms::from(s, pair);
    if (std::abs(p - q) > 1e-6 * (p + q)) {
        const double lB = numerics::log_abs_beta_imag_sq(terms.g_minus / (2.0 * kappa),
                                                         terms.g_plus / (2.0 * kappa));
        const double dpq = p - q;
        return p * q / (4.0 * pi * pi * kappa * kappa * dpq * dpq) * std::exp(lB);
    }
    const double X = pi * (p + q) / kappa;
    const double Y = pi * s * (p - q) / kappa;
    const double ln_val =
        std::log(2.0 * s * s * p * q / (kappa * kappa * terms.a * terms.b)) +
        numerics::log_sinhc(Y) - numerics::log_cosh_diff(X, Y);
    return std::exp(ln_val);
}

// Double-sided Davies-Fulling spectrum in its closed form; dispatches to
// the light-speed formula at s = 1.
inline double beta_sq_df_double(double s, double kappa, const ModePair& pair) {
    if (!(kappa > 0.0)) throw std::domain_error("beta_sq_df_double: need kappa > 0");
    if (!(s > 0.0) || !(s <= 1.0)) throw std::domain_error("beta_sq_df_double: need 0 < s <= 1");
    detail::require_positive_pair(pair, "beta_sq_df_double");
    if (s == 1.0) return beta_sq_df_lightspeed(kappa, pair);

    const double p = pair.p, q = pair.q;
    const DfBetaTerms terms = DfBetaTerms::from(s, pair);
    const double X = pi * (p + q) / kappa;
    const double Y = pi * s * (p - q) / kappa;
    const double ln_val =
        std::log(4.0 * s * s * p * q / (kappa * kappa * terms.a * terms.b)) +
        numerics::log_sinhc(Y) - numerics::log_cosh_diff(X, Y);
    return std::exp(ln_val);
}

// Walker-Davies right-side spectrum.  sinh(pi p B) |K|^2 is assembled from
// the e^{x}-scaled Bessel modulus so that neither factor overflows.
inline double beta_sq_wd_right(double A, double B, const ModePair& pair,
                               const QuadratureConfig& cfg = {}) {
    if (!(B > 0.0) || !(A > B)) throw std::domain_error("beta_sq_wd_right: need A > B > 0");
    detail::require_positive_pair(pair, "beta_sq_wd_right");
    const double p = pair.p, q = pair.q;
    const double x = A * (p + q);
    const double nu_im = p * B;
    const double k_sq_scaled =
        numerics::bessel_k_complex_order_abs_sq_scaled(-0.5, nu_im, x, cfg);
    const double pref = 2.0 * A * B / (pi * pi) * q / (p + q) * k_sq_scaled;

    // sinh(pi nu_im) e^{-2x}, organized so large arguments cannot overflow
    const double u = pi * nu_im;
    double damped_sinh;
    if (u < 30.0)
        damped_sinh = std::sinh(u) * std::exp(-2.0 * x);
    else
        damped_sinh = 0.5 * std::exp(u - 2.0 * x) * (-std::expm1(-2.0 * u));
    return pref * damped_sinh;
}

// Uniform-acceleration spectrum; depends on (p,q) only through the product pq.
inline double beta_sq_uniform_right(double kappa, const ModePair& pair) {
    if (!(kappa > 0.0)) throw std::domain_error("beta_sq_uniform_right: need kappa > 0");
    detail::require_positive_pair(pair, "beta_sq_uniform_right");
    const double k1 = numerics::bessel_k1(2.0 * std::sqrt(pair.p * pair.q) / kappa);
    return k1 * k1 / (pi * pi * kappa * kappa);
}

// --- Walker-Davies particle content ----------------------------------------

// N_p^R = int_0^inf |beta^R_pq|^2 dq, numerically.
inline double wd_particle_density(double A, double B, double p,
                                  const QuadratureConfig& cfg = {}) {
    if (!(p > 0.0)) throw std::domain_error("wd_particle_density: need p > 0");
    return numerics::integrate_semi_infinite(
        [&](double q) { return q > 0.0 ? beta_sq_wd_right(A, B, {p, q}, cfg) : 0.0; }, 0.0,
        cfg);
}

// Small-B/A closed form  B^2 p [(1 + 2Ap) Gamma(0, 2Ap) - e^{-2Ap}].
inline double wd_particle_density_closed(double A, double B, double p) {
    if (!(p > 0.0)) throw std::domain_error("wd_particle_density_closed: need p > 0");
    const double x = 2.0 * A * p;
    return B * B * p * ((1.0 + x) * numerics::incomplete_gamma_zero(x) - std::exp(-x));
}

// Total right-side particle count by outer quadrature over p.
inline double wd_total_particles(double A, double B, const QuadratureConfig& cfg = {}) {
    const QuadratureConfig inner = cfg.tightened(0.1);
    return numerics::integrate_semi_infinite(
        [&](double p) { return p > 0.0 ? wd_particle_density(A, B, p, inner) : 0.0; }, 0.0,
        cfg);
}

struct ParticleSpectrum {
    std::vector<double> p_grid;
    std::vector<double> n_p;         // numerically integrated density
    std::vector<double> n_p_closed;  // incomplete-gamma approximation
    double n_tot = 0.0;              // numerically integrated total
    double n_tot_closed = 0.0;       // B^2 / (24 A^2)
};

inline ParticleSpectrum particle_spectrum_wd(double A, double B,
                                             const std::vector<double>& p_grid,
                                             const QuadratureConfig& cfg = {}) {
    if (!(B > 0.0) || !(A > B)) throw std::domain_error("particle_spectrum_wd: need A > B > 0");
    ParticleSpectrum out;
    out.p_grid = p_grid;
    out.n_p.reserve(p_grid.size());
    out.n_p_closed.reserve(p_grid.size());
    for (double p : p_grid) {
        out.n_p.push_back(wd_particle_density(A, B, p, cfg));
        out.n_p_closed.push_back(wd_particle_density_closed(A, B, p));
    }
    out.n_tot = wd_total_particles(A, B, cfg);
    out.n_tot_closed = B * B / (24.0 * A * A);
    return out;
}

// --- mirror-side total energy ------------------------------------------------

// First term of the Walker-Davies electron energy: the exact energy
// radiated to the right of the mirror.
inline double wd_right_side_energy_closed(double A, double B) {
    if (!(B > 0.0) || !(A > B))
        throw std::domain_error("wd_right_side_energy_closed: need A > B > 0");
    const double d2 = A * A - B * B;
    return B * B / (48.0 * d2 * std::sqrt(d2));
}

// E/hbar = int int p |beta_pq|^2 dp dq.  Davies-Fulling uses the
// double-sided spectrum (equals the electron's total energy per e^2);
// Walker-Davies uses the right side only (equals the first closed-form term).
inline double mirror_total_energy(const kinematics::Trajectory& traj,
                                  const QuadratureConfig& cfg = {}) {
    using namespace kinematics;
    if (std::holds_alternative<UniformAcceleration>(traj))
        throw infinite_quantity_error("mirror_total_energy: infinite for uniform acceleration");
    if (auto* df = std::get_if<DaviesFulling>(&traj)) {
        if (df->at_light_speed())
            throw infinite_quantity_error("mirror_total_energy: diverges at s = 1");
        const double s = df->s, kappa = df->kappa;
        auto f = [&](double p, double q) {
            if (p <= 0.0 || q <= 0.0) return 0.0;
            return p * beta_sq_df_double(s, kappa, {p, q});
        };
        return numerics::integrate_2d_iterated(f, numerics::Interval::from(0.0),
                                               numerics::Interval::from(0.0), cfg);
    }
    if (auto* wd = std::get_if<WalkerDavies>(&traj)) {
        const double A = wd->A, B = wd->B;
        const QuadratureConfig bessel_cfg = cfg.tightened(0.01);
        auto f = [&](double p, double q) {
            if (p <= 0.0 || q <= 0.0) return 0.0;
            return p * beta_sq_wd_right(A, B, {p, q}, bessel_cfg);
        };
        return numerics::integrate_2d_iterated(f, numerics::Interval::from(0.0),
                                               numerics::Interval::from(0.0), cfg);
    }
    throw unsupported_error("mirror_total_energy: unsupported trajectory");
}

}  // namespace accelrad::mirror
