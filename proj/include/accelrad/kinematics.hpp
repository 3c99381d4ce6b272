#pragma once

// Motion-derived quantities along the four worldlines: velocity, rapidity,
// Lorentz factor, proper acceleration and its proper-time derivative, the
// peel 2 alpha e^eta, the proper jerk modulus alpha^4 - alpha_dot^2, the
// Larmor power alpha^2/(6 pi), the radiation-reaction self-force
// alpha_dot/(6 pi), and total radiated energy by quadrature and in closed
// form.
//
// Units: energies, powers and forces are per unit e^2 throughout.
//
// Parametrization convention: Davies-Fulling, Walker-Davies and uniform
// acceleration are sampled by coordinate time t; Carlitz-Willey is defined
// through its proper-time form and is sampled by tau > 0.

#include <cmath>
#include <optional>
#include <variant>

#include "accelrad/errors.hpp"
#include "accelrad/quadrature.hpp"
#include "accelrad/special_functions.hpp"
#include "accelrad/trajectory.hpp"

namespace accelrad::kinematics {

using numerics::pi;

struct KinematicState {
    double t = 0.0;                     // coordinate time
    std::optional<double> tau;          // proper time where a closed form exists
    double z = 0.0;                     // position
    double v = 0.0;                     // velocity, |v| < 1
    double eta = 0.0;                   // rapidity atanh(v)
    double gamma = 1.0;                 // cosh(eta)
    double w = 0.0;                     // celerity gamma*v = sinh(eta)
    double alpha = 0.0;                 // proper acceleration
    double alpha_dot = 0.0;             // d alpha / d tau
    double peel = 0.0;                  // 2 alpha e^eta
    double jerk_sq = 0.0;               // alpha^4 - alpha_dot^2
};

inline double jerk_modulus_sq(double alpha, double alpha_dot) {
    return alpha * alpha * alpha * alpha - alpha_dot * alpha_dot;
}

// Lightcone coordinates of an event: retarded time U = t - z, advanced
// time V = t + z.  On the Walker-Davies worldline these satisfy
// U = V + B ln(V^2/A^2 + 1).
struct LightconePoint {
    double U;
    double V;
};

inline LightconePoint lightcone_point(const KinematicState& st) {
    return {st.t - st.z, st.t + st.z};
}

namespace detail {

inline double ln_cosh(double x) {
    const double ax = std::abs(x);
    if (ax < 350.0) return std::log(std::cosh(ax));
    return ax - 0.6931471805599453094172321214581766;
}

inline double sech_sq(double x) {
    const double e = std::exp(-std::abs(x));
    const double c = 2.0 * e / (1.0 + e * e);  // sech(x)
    return c * c;
}

inline void fill_common(KinematicState& st) {
    st.gamma = 1.0 / std::sqrt((1.0 - st.v) * (1.0 + st.v));
    st.eta = std::atanh(st.v);
    st.w = st.gamma * st.v;
    st.peel = 2.0 * st.alpha * std::exp(st.eta);
    st.jerk_sq = jerk_modulus_sq(st.alpha, st.alpha_dot);
}

// --- Davies-Fulling -------------------------------------------------------
//
// Evaluated through q = e^{-2 kappa |t|}.  The combinations
//   r+ = (1+s) + (1-s) q = e^{-|x|} 2 cosh(x) (1 + s tanh|x|)
//   r- = (1-s) + (1+s) q = e^{-|x|} 2 cosh(x) (1 - s tanh|x|)
// keep 1 -/+ s tanh(kappa t) fully accurate as s -> 1 and |t| -> inf,
// where the naive forms lose all digits.

inline KinematicState state_df(const DaviesFulling& df, double t) {
    const double s = df.s, k = df.kappa;
    const double x = std::abs(k * t);
    const double sign = (t >= 0.0) ? 1.0 : -1.0;
    const double q = std::exp(-2.0 * x);
    const double rp = (1.0 + s) + (1.0 - s) * q;
    const double rm = (1.0 - s) + (1.0 + s) * q;
    const double rr = rp * rm;
    const double sqrr = std::sqrt(rr);
    const double T = (1.0 - q) / (1.0 + q);  // tanh|x|

    KinematicState st;
    st.t = t;
    // ln cosh x = x - ln 2 + ln(1+q)
    st.z = -(s / k) * (x - 0.6931471805599453094172321214581766 + std::log1p(q));
    st.v = -sign * s * T;
    st.eta = -sign * 0.5 * std::log(rp / rm);
    st.gamma = (1.0 + q) / sqrr;
    st.w = -sign * s * (1.0 - q) / sqrr;
    st.alpha = -4.0 * s * k * q * (1.0 + q) / (rr * sqrr);
    // peel = 2 alpha e^eta with e^eta = sqrt(rm/rp) for t >= 0
    st.peel = (t >= 0.0) ? -8.0 * s * k * q * (1.0 + q) / (rp * rp * rm)
                         : -8.0 * s * k * q * (1.0 + q) / (rm * rm * rp);
    const double dalpha_dt = sign * 4.0 * s * k * k * q * (1.0 - q) *
                             (2.0 * rr - 12.0 * s * s * q) / (rr * rr * sqrr);
    st.alpha_dot = st.gamma * dalpha_dt;
    st.jerk_sq = jerk_modulus_sq(st.alpha, st.alpha_dot);
    if (df.at_light_speed()) {
        // tau(t) = (2/kappa) atan(tanh(kappa t / 2)); tau_0 = pi/(2 kappa)
        st.tau = 2.0 / k * std::atan(std::tanh(0.5 * k * t));
    }
    return st;
}

// --- uniform acceleration --------------------------------------------------

inline KinematicState state_uniform(const UniformAcceleration& ua, double t) {
    const double k = ua.kappa;
    const double r = std::sqrt(1.0 + k * k * t * t);

    KinematicState st;
    st.t = t;
    st.z = (1.0 - r) / k;
    st.v = -k * t / r;
    st.alpha = -k;
    st.alpha_dot = 0.0;
    fill_common(st);
    st.tau = std::asinh(k * t) / k;
    return st;
}

// --- Carlitz-Willey (proper-time form) -------------------------------------

inline KinematicState state_cw(const CarlitzWilley& cw, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("CarlitzWilley: need tau > 0");
    const double k = cw.kappa;
    const double u = 0.5 * k * tau;  // e^eta

    KinematicState st;
    st.tau = tau;
    st.eta = std::log(u);
    st.gamma = 0.5 * (u + 1.0 / u);
    st.w = 0.5 * (u - 1.0 / u);
    st.v = st.w / st.gamma;
    st.alpha = 1.0 / tau;
    st.alpha_dot = -1.0 / (tau * tau);
    // integrate gamma and w with t = z = 0 at tau0 = 2/kappa (eta = 0)
    st.t = k * tau * tau / 8.0 - 0.5 / k + std::log(u) / k;
    st.z = k * tau * tau / 8.0 - 0.5 / k - std::log(u) / k;
    st.peel = 2.0 * st.alpha * u;  // identically kappa
    st.jerk_sq = jerk_modulus_sq(st.alpha, st.alpha_dot);
    return st;
}

// --- Walker-Davies via the advanced-time parametrization --------------------
//
// With V = t + z the worldline is
//   t(V) = V + (B/2) ln(1 + V^2/A^2),   z(V) = -(B/2) ln(1 + V^2/A^2),
// and t(V) is strictly increasing (dt/dV >= 1 - B/(2A) > 1/2), so states
// at coordinate time t come from one monotone inversion.  V <= 0
// corresponds to t <= 0 (the approach branch), V >= 0 to the return.

struct WdGeometry {
    double A, B;

    double log_term(double V) const { return 0.5 * B * std::log1p(V * V / (A * A)); }
    double t_of(double V) const { return V + log_term(V); }
    double z_of(double V) const { return -log_term(V); }
    double dt_dV(double V) const { return 1.0 + B * V / (A * A + V * V); }
    double v_of(double V) const {
        const double D = A * A + V * V + B * V;
        return -B * V / D;
    }
    double dv_dt(double V) const {
        const double D = A * A + V * V + B * V;
        return -B * (A * A - V * V) * (A * A + V * V) / (D * D * D);
    }
    double alpha_of(double V) const {
        const double v = v_of(V);
        const double g = 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
        return g * g * g * dv_dt(V);
    }
    // d alpha / dV in closed form:
    //   alpha = gamma^3 f,  f = -B (A^4 - V^4) / D^3,  D = A^2 + V^2 + B V,
    //   d gamma/dV = gamma^3 v dv/dV,
    //   f' = B [4 V^3 D + 3 (A^4 - V^4)(2V + B)] / D^4.
    double dalpha_dV(double V) const {
        const double D = A * A + V * V + B * V;
        const double quart = (A * A - V * V) * (A * A + V * V);
        const double v = v_of(V);
        const double g2 = 1.0 / ((1.0 - v) * (1.0 + v));
        const double g = std::sqrt(g2);
        const double dv = -B * (A * A - V * V) / (D * D);
        const double f = -B * quart / (D * D * D);
        const double fp = B * (4.0 * V * V * V * D + 3.0 * quart * (2.0 * V + B)) /
                          (D * D * D * D);
        return 3.0 * g2 * g2 * g * v * dv * f + g2 * g * fp;
    }

    // Invert t(V) = t by bracketed Newton.  t(V) >= V with equality only
    // at V = 0, so the root always lies in some [t - step, t].
    double advanced_time(double t) const {
        if (t == 0.0) return 0.0;
        double b = t;
        double step = std::max(1.0, B);
        double a = t - step;
        while (t_of(a) > t) {
            step *= 2.0;
            a = t - step;
            if (!std::isfinite(a))
                throw convergence_error("WalkerDavies: advanced-time bracket failed", t, step);
        }
        double V = 0.5 * (a + b);
        for (int it = 0; it < 120; ++it) {
            const double err = t_of(V) - t;
            if (err > 0.0) b = V; else a = V;
            double next = V - err / dt_dV(V);
            if (!(next > a && next < b)) next = 0.5 * (a + b);
            const double scale = std::max({1.0, std::abs(V), std::abs(t)});
            if (std::abs(next - V) <= 4e-16 * scale) return next;
            V = next;
        }
        return V;
    }
};

inline KinematicState state_wd_from_V(const WalkerDavies& wd, double V) {
    const WdGeometry g{wd.A, wd.B};
    KinematicState st;
    st.t = g.t_of(V);
    st.z = g.z_of(V);
    st.v = g.v_of(V);
    st.alpha = g.alpha_of(V);
    fill_common(st);
    st.alpha_dot = st.gamma * g.dalpha_dV(V) / g.dt_dV(V);
    st.jerk_sq = jerk_modulus_sq(st.alpha, st.alpha_dot);
    return st;
}

inline KinematicState state_wd(const WalkerDavies& wd, double t) {
    const WdGeometry g{wd.A, wd.B};
    KinematicState st = state_wd_from_V(wd, g.advanced_time(t));
    st.t = t;  // the inversion residual sits below double resolution
    return st;
}

}  // namespace detail

// State at coordinate time t (Davies-Fulling, Walker-Davies, uniform).
// Carlitz-Willey is defined by proper time; use state_at_proper_time.
inline KinematicState state_at_time(const Trajectory& traj, double t) {
    if (!std::isfinite(t)) throw std::domain_error("state_at_time: t must be finite");
    if (auto* df = std::get_if<DaviesFulling>(&traj)) return detail::state_df(*df, t);
    if (auto* wd = std::get_if<WalkerDavies>(&traj)) return detail::state_wd(*wd, t);
    if (auto* ua = std::get_if<UniformAcceleration>(&traj)) return detail::state_uniform(*ua, t);
    throw unsupported_error("state_at_time: Carlitz-Willey is parametrized by proper time");
}

inline KinematicState state_at_proper_time(const CarlitzWilley& cw, double tau) {
    return detail::state_cw(cw, tau);
}

// Uniform sampling entry point: the parameter is proper time for
// Carlitz-Willey and coordinate time otherwise.
inline KinematicState sample_state(const Trajectory& traj, double x) {
    if (auto* cw = std::get_if<CarlitzWilley>(&traj)) return detail::state_cw(*cw, x);
    return state_at_time(traj, x);
}

// Larmor power P = alpha^2 / (6 pi), per e^2.
inline double larmor_power(const Trajectory& traj, double x) {
    const KinematicState st = sample_state(traj, x);
    return st.alpha * st.alpha / (6.0 * pi);
}

// Radiation-reaction self-force F = alpha'(tau) / (6 pi), per e^2.
inline double self_force(const Trajectory& traj, double x) {
    return sample_state(traj, x).alpha_dot / (6.0 * pi);
}

// d(peel)/d tau by a five-point stencil along the worldline.  This is an
// independent numerical derivative; it equals 2 e^eta (alpha^2 + alpha_dot)
// identically and vanishes exactly where the motion is jerk-free.
inline double peel_derivative(const Trajectory& traj, double x) {
    if (auto* cw = std::get_if<CarlitzWilley>(&traj)) {
        const double h = std::min(7e-4 * std::max(1.0, x), 0.2 * x);
        auto peel = [&](double tau) { return detail::state_cw(*cw, tau).peel; };
        return (-peel(x + 2.0 * h) + 8.0 * peel(x + h) - 8.0 * peel(x - h) +
                peel(x - 2.0 * h)) /
               (12.0 * h);
    }
    if (auto* wd = std::get_if<WalkerDavies>(&traj)) {
        const detail::WdGeometry g{wd->A, wd->B};
        const double V = g.advanced_time(x);
        const double h = 7e-4 * std::max(wd->A, std::abs(V));
        auto peel = [&](double Vp) { return detail::state_wd_from_V(*wd, Vp).peel; };
        const double dP_dV = (-peel(V + 2.0 * h) + 8.0 * peel(V + h) -
                              8.0 * peel(V - h) + peel(V - 2.0 * h)) /
                             (12.0 * h);
        const KinematicState st = detail::state_wd_from_V(*wd, V);
        return st.gamma * dP_dV / g.dt_dV(V);
    }
    // coordinate-time trajectories: dP/dtau = gamma dP/dt
    const KinematicState st = state_at_time(traj, x);
    double scale = 1.0;
    if (auto* df = std::get_if<DaviesFulling>(&traj)) scale = 1.0 / df->kappa;
    if (auto* ua = std::get_if<UniformAcceleration>(&traj)) scale = 1.0 / ua->kappa;
    const double h = 7e-4 * std::max(scale, std::abs(x));
    auto peel = [&](double t) { return state_at_time(traj, t).peel; };
    const double dP_dt = (-peel(x + 2.0 * h) + 8.0 * peel(x + h) - 8.0 * peel(x - h) +
                          peel(x - 2.0 * h)) /
                         (12.0 * h);
    return st.gamma * dP_dt;
}

// --- total radiated energy ---------------------------------------------------

// Closed forms, per e^2.
inline double total_energy_closed_form(const Trajectory& traj) {
    if (auto* df = std::get_if<DaviesFulling>(&traj)) {
        if (df->at_light_speed())
            throw infinite_quantity_error(
                "total_energy_closed_form: diverges in the light-speed limit");
        const double s = df->s;
        const double eta_s = std::atanh(s);
        const double gamma_s2 = 1.0 / ((1.0 - s) * (1.0 + s));
        return df->kappa / (24.0 * pi) *
               (2.0 * gamma_s2 - 3.0 + (4.0 - 3.0 / gamma_s2) * eta_s / s);
    }
    if (auto* wd = std::get_if<WalkerDavies>(&traj)) {
        const double A = wd->A, B = wd->B;
        const double d2 = A * A - B * B;
        return B * B / (48.0 * d2 * std::sqrt(d2)) + 1.0 / (24.0 * std::sqrt(d2)) -
               1.0 / (24.0 * A);
    }
    if (std::holds_alternative<UniformAcceleration>(traj))
        throw infinite_quantity_error(
            "total_energy_closed_form: eternal uniform acceleration radiates forever");
    throw unsupported_error("total_energy_closed_form: no closed form for Carlitz-Willey");
}

namespace detail {

inline double energy_power_route(const Trajectory& traj, const numerics::QuadratureConfig& cfg) {
    using numerics::QuadratureConfig;
    if (std::holds_alternative<DaviesFulling>(traj)) {
        auto P = [&](double t) { return larmor_power(traj, t); };
        return 2.0 * numerics::integrate_semi_infinite(P, 0.0, cfg);  // P is even in t
    }
    const auto* wd = std::get_if<WalkerDavies>(&traj);
    if (!wd) throw unsupported_error("energy_power_route: unsupported trajectory");
    const WdGeometry g{wd->A, wd->B};
    auto integrand = [&](double V) {
        const double a = g.alpha_of(V);
        return a * a / (6.0 * pi) * g.dt_dV(V);  // power-law tail ~ V^-4
    };
    QuadratureConfig c = cfg;
    c.semi_infinite_map = numerics::SemiInfiniteMap::rational_map;
    return numerics::integrate_real_line(integrand, c);
}

inline double energy_force_route(const Trajectory& traj, const numerics::QuadratureConfig& cfg) {
    using numerics::QuadratureConfig;
    if (std::holds_alternative<DaviesFulling>(traj)) {
        auto fv = [&](double t) {
            const KinematicState st = state_at_time(traj, t);
            return -st.alpha_dot / (6.0 * pi) * st.v;  // even in t
        };
        return 2.0 * numerics::integrate_semi_infinite(fv, 0.0, cfg);
    }
    const auto* wd = std::get_if<WalkerDavies>(&traj);
    if (!wd) throw unsupported_error("energy_force_route: unsupported trajectory");
    const WdGeometry g{wd->A, wd->B};
    auto integrand = [&](double V) {
        const KinematicState st = state_wd_from_V(*wd, V);
        return -st.alpha_dot / (6.0 * pi) * st.v * g.dt_dV(V);
    };
    QuadratureConfig c = cfg;
    c.semi_infinite_map = numerics::SemiInfiniteMap::rational_map;
    return numerics::integrate_real_line(integrand, c);
}

inline void require_finite_energy(const Trajectory& traj) {
    if (std::holds_alternative<UniformAcceleration>(traj))
        throw infinite_quantity_error(
            "total radiated energy is infinite for eternal uniform acceleration");
    if (std::holds_alternative<CarlitzWilley>(traj))
        throw unsupported_error("time-domain energy is not defined for the "
                                "proper-time Carlitz-Willey form");
}

}  // namespace detail

// E = int P dt, per e^2 (Davies-Fulling with s < 1, or Walker-Davies).
inline double total_energy_power_route(const Trajectory& traj,
                                       const numerics::QuadratureConfig& cfg = {}) {
    detail::require_finite_energy(traj);
    if (auto* df = std::get_if<DaviesFulling>(&traj); df && df->at_light_speed())
        throw infinite_quantity_error("total energy diverges in the light-speed limit");
    return detail::energy_power_route(traj, cfg);
}

// E = -int F v dt, per e^2.
inline double total_energy_force_route(const Trajectory& traj,
                                       const numerics::QuadratureConfig& cfg = {}) {
    detail::require_finite_energy(traj);
    if (auto* df = std::get_if<DaviesFulling>(&traj); df && df->at_light_speed())
        throw infinite_quantity_error("total energy diverges in the light-speed limit");
    return detail::energy_force_route(traj, cfg);
}

// Computes both time-domain routes, checks they agree within quadrature
// tolerance, and returns the power-route value.
inline double total_energy_time_domain(const Trajectory& traj,
                                       const numerics::QuadratureConfig& cfg = {}) {
    const double e_power = total_energy_power_route(traj, cfg);
    const double e_force = total_energy_force_route(traj, cfg);
    const double tol = 1e3 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(e_power));
    if (std::abs(e_power - e_force) > tol)
        throw convergence_error("total_energy_time_domain: power and force routes disagree",
                                e_power, std::abs(e_power - e_force));
    return e_power;
}

}  // namespace accelrad::kinematics
