#pragma once

// Temperature extraction and thermality verdicts.
//
// A sampled spectral cut f(omega) = (dI/dOmega)/sin^2 th is fit to the
// 1+1D Planck form  f = C omega / (e^{omega/T} - 1)  by least squares on
// log residuals.  Two one-sided estimates probe self-consistency:
//   T_ir: from the omega -> 0 plateau  f -> C T,
//   T_uv: from the Wien slope  d ln(f/omega)/d omega = -1/T  over the
//         top decade of the window.
// A fit is called thermal when T_ir and T_uv agree to 10%.  A spectrum
// whose Planck fit fails but whose Wien temperature is stable under a
// change of observation angle is wien_only; an angle-dependent Wien
// temperature (the uniform-acceleration 1/sin th law) leaves the
// temperature undefined: not_thermal.
//
// Temperatures follow the sampled side: electron-side fits are per e^2
// (classical, Stoney scale), mirror-side references per hbar (Kelvin).

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "accelrad/electron.hpp"
#include "accelrad/errors.hpp"
#include "accelrad/kinematics.hpp"

namespace accelrad::thermal {

using numerics::pi;
using numerics::QuadratureConfig;

enum class Verdict { thermal, wien_only, not_thermal };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::thermal: return "thermal";
        case Verdict::wien_only: return "wien_only";
        case Verdict::not_thermal: return "not_thermal";
    }
    return "?";
}

enum class TemperatureScale { stoney_per_e2, kelvin_per_hbar };

inline std::string scale_name(TemperatureScale s) {
    return s == TemperatureScale::stoney_per_e2 ? "stoney_per_e2" : "kelvin_per_hbar";
}

struct Sample {
    double omega;
    double value;
};

struct ThermalFit {
    std::string trajectory;
    double theta = 0.0;
    double omega_min = 0.0, omega_max = 0.0;  // fit window
    double t_fit = 0.0;                       // Planck temperature
    double c_fit = 0.0;                       // Planck amplitude
    double residual = 0.0;                    // rms log residual
    double t_ir = 0.0;                        // plateau estimate
    double t_uv = 0.0;                        // Wien-slope estimate
    double omega_ir = 0.0;                    // IR validity cutoff (0 if none)
    Verdict verdict = Verdict::not_thermal;
    TemperatureScale scale = TemperatureScale::stoney_per_e2;
};

// Consistency tolerance between the IR and UV temperature estimates.
inline constexpr double ir_uv_consistency_tol = 0.10;

namespace detail {

inline double log_planck(double omega, double T) {
    const double x = omega / T;
    // ln[omega/(e^x - 1)]
    if (x > 700.0) return std::log(omega) - x;
    return std::log(omega) - std::log(std::expm1(x));
}

struct PlanckObjective {
    const std::vector<Sample>& s;

    // profile out ln C at fixed T, return (sse, lnC)
    std::pair<double, double> operator()(double T) const {
        double lnC = 0.0;
        for (const auto& smp : s) lnC += std::log(smp.value) - log_planck(smp.omega, T);
        lnC /= static_cast<double>(s.size());
        double sse = 0.0;
        for (const auto& smp : s) {
            const double r = std::log(smp.value) - lnC - log_planck(smp.omega, T);
            sse += r * r;
        }
        return {sse, lnC};
    }
};

// profile-C Planck fit over a sample subset: coarse ln T scan plus
// golden-section refinement; returns (T, C, rms residual)
struct PlanckFitResult {
    double T, C, rms;
};

inline PlanckFitResult planck_least_squares(const std::vector<Sample>& samples) {
    const PlanckObjective sse{samples};
    const double w_lo = samples.front().omega, w_hi = samples.back().omega;
    const double lnT_lo = std::log(w_lo / 30.0), lnT_hi = std::log(w_hi * 30.0);
    double best_lnT = lnT_lo, best_sse = std::numeric_limits<double>::infinity();
    const int n_scan = 96;
    for (int i = 0; i <= n_scan; ++i) {
        const double lnT = lnT_lo + (lnT_hi - lnT_lo) * i / n_scan;
        const double val = sse(std::exp(lnT)).first;
        if (val < best_sse) { best_sse = val; best_lnT = lnT; }
    }
    const double step = (lnT_hi - lnT_lo) / n_scan;
    double a = best_lnT - step, b = best_lnT + step;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    double f1 = sse(std::exp(c1)).first, f2 = sse(std::exp(c2)).first;
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
        if (f1 < f2) {
            b = c2; c2 = c1; f2 = f1;
            c1 = b - gr * (b - a);
            f1 = sse(std::exp(c1)).first;
        } else {
            a = c1; c1 = c2; f1 = f2;
            c2 = a + gr * (b - a);
            f2 = sse(std::exp(c2)).first;
        }
    }
    PlanckFitResult out;
    out.T = std::exp(0.5 * (a + b));
    const auto [final_sse, lnC] = sse(out.T);
    out.C = std::exp(lnC);
    out.rms = std::sqrt(final_sse / static_cast<double>(samples.size()));
    return out;
}

// least-squares slope of y against x
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= n; my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw fit_error("ls_slope: degenerate abscissae");
    return sxy / sxx;
}

inline void validate_samples(const std::vector<Sample>& samples, const char* who) {
    if (samples.size() < 8)
        throw std::domain_error(std::string(who) + ": need at least 8 samples");
    for (const auto& s : samples)
        if (!(s.value > 0.0) || !(s.omega > 0.0))
            throw std::domain_error(std::string(who) + ": samples must be positive");
}

}  // namespace detail

// Wien-slope temperature from tail samples: fit ln(f/omega) linearly in
// omega and return -1/slope.  The caller supplies samples already in the
// exponential-decay regime.
inline double uv_temperature(std::vector<Sample> samples) {
    detail::validate_samples(samples, "uv_temperature");
    std::sort(samples.begin(), samples.end(),
              [](const Sample& a, const Sample& b) { return a.omega < b.omega; });
    std::vector<double> x, y;
    x.reserve(samples.size());
    y.reserve(samples.size());
    for (const auto& s : samples) {
        x.push_back(s.omega);
        y.push_back(std::log(s.value / s.omega));
    }
    const double slope = detail::ls_slope(x, y);
    if (!(slope < 0.0)) throw fit_error("uv_temperature: tail does not decay");
    return -1.0 / slope;
}

// Least-squares Planck fit with IR/UV self-consistency verdict.  The UV
// estimate (C_uv, T_uv) is a Planck fit restricted to the top decade; the
// IR estimate inverts the bottom half-decade samples through the model
// with the tail-anchored amplitude,
//   T_i = omega_i / log(1 + C_uv omega_i / f_i),
// which is exact on true Planck data.  A spectrum that is Planck-like in
// both limits but with incompatible constants fails the 10% consistency
// test, exactly the pathology of the eternally uniform case.
inline ThermalFit fit_planck_1p1(std::vector<Sample> samples) {
    detail::validate_samples(samples, "fit_planck_1p1");
    std::sort(samples.begin(), samples.end(),
              [](const Sample& a, const Sample& b) { return a.omega < b.omega; });
    const double w_lo = samples.front().omega, w_hi = samples.back().omega;
    if (!(w_hi >= 10.0 * w_lo))
        throw std::domain_error("fit_planck_1p1: samples must span at least a decade");

    ThermalFit fit;
    fit.omega_min = w_lo;
    fit.omega_max = w_hi;
    const auto global = detail::planck_least_squares(samples);
    fit.t_fit = global.T;
    fit.c_fit = global.C;
    fit.residual = global.rms;

    // tail-anchored UV estimate over the top decade
    std::vector<Sample> tail;
    for (const auto& s : samples)
        if (s.omega >= w_hi / 10.0) tail.push_back(s);
    if (tail.size() < 8)
        throw fit_error("fit_planck_1p1: too few samples in the top decade");
    const auto uv = detail::planck_least_squares(tail);
    fit.t_uv = uv.T;

    // plateau inversion over the bottom half-decade with the UV amplitude
    {
        double acc = 0.0;
        int n = 0;
        for (const auto& s : samples) {
            if (s.omega > w_lo * 3.1622776601683795) break;
            acc += std::log(s.omega / std::log1p(uv.C * s.omega / s.value));
            ++n;
        }
        if (n == 0) throw fit_error("fit_planck_1p1: empty plateau window");
        fit.t_ir = std::exp(acc / n);
    }
    fit.verdict = (std::abs(fit.t_ir - fit.t_uv) <= ir_uv_consistency_tol * fit.t_uv)
                      ? Verdict::thermal
                      : Verdict::not_thermal;
    return fit;
}

// --- closed-form temperature references -----------------------------------------

enum class ReferenceKind {
    df_electron,   // kappa/(pi (1-s)) per e^2
    df_mirror,     // kappa/(2 pi) per hbar
    wd_wien,       // kappa/(2 pi) per e^2, Wien sense only
    uniform_uv,    // kappa/(2 sin th) per e^2, angle dependent
    cw_mirror,     // kappa/(2 pi) per hbar
};

struct TemperatureReference {
    ReferenceKind kind;
    double value;
    TemperatureScale scale;
};

// The df_electron form requires s > 0; s = 0 is reported as the limit
// value kappa/pi.  The uniform_uv reference follows the implemented
// spectral distribution: its Wien tail e^{-2 omega sin th/kappa} gives
// T = kappa/(2 sin th), divergent on the axis.
inline TemperatureReference reference_temperature(ReferenceKind kind, double kappa,
                                                  double aux = 0.0) {
    if (!(kappa > 0.0)) throw std::domain_error("reference_temperature: need kappa > 0");
    switch (kind) {
        case ReferenceKind::df_electron: {
            const double s = aux;
            if (!(s >= 0.0) || !(s < 1.0))
                throw std::domain_error("reference_temperature: need 0 <= s < 1");
            return {kind, kappa / (pi * (1.0 - s)), TemperatureScale::stoney_per_e2};
        }
        case ReferenceKind::df_mirror:
            return {kind, kappa / (2.0 * pi), TemperatureScale::kelvin_per_hbar};
        case ReferenceKind::wd_wien:
            return {kind, kappa / (2.0 * pi), TemperatureScale::stoney_per_e2};
        case ReferenceKind::uniform_uv: {
            const double theta = aux;
            if (!(theta > 0.0) || !(theta < pi))
                throw std::domain_error("reference_temperature: need theta in (0, pi)");
            return {kind, kappa / (2.0 * std::sin(theta)), TemperatureScale::stoney_per_e2};
        }
        case ReferenceKind::cw_mirror:
            return {kind, kappa / (2.0 * pi), TemperatureScale::kelvin_per_hbar};
    }
    throw unsupported_error("reference_temperature: unknown kind");
}

// --- sampling and the full verdict ------------------------------------------------

namespace detail {

// geometric sample of f(omega) = dI/dOmega / sin^2 th over [w_lo, w_hi]
inline std::vector<Sample> sample_cut(const kinematics::Trajectory& traj, double theta,
                                      double w_lo, double w_hi, int n,
                                      const QuadratureConfig& cfg) {
    const double c = std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    std::vector<Sample> out;
    out.reserve(n);
    const double ratio = std::log(w_hi / w_lo);
    for (int i = 0; i < n; ++i) {
        const double w = w_lo * std::exp(ratio * i / (n - 1));
        const double f =
            electron::spectral_distribution_closed(traj, {w, c}, cfg) / s2;
        out.push_back({w, f});
    }
    return out;
}

// characteristic UV temperature scale used only to place the window
inline double window_scale(const kinematics::Trajectory& traj, double theta) {
    using namespace kinematics;
    if (auto* df = std::get_if<DaviesFulling>(&traj))
        return df->kappa / (pi * std::max(1.0 - df->s * std::cos(theta), 1e-12));
    if (auto* wd = std::get_if<WalkerDavies>(&traj)) return 0.5 / wd->A;
    if (auto* ua = std::get_if<UniformAcceleration>(&traj))
        return ua->kappa / (2.0 * std::sin(theta));
    throw unsupported_error("thermality_verdict: no spectra for Carlitz-Willey");
}

}  // namespace detail

// Deep-tail Wien temperature at angle theta: the raw slope estimator on
// samples from [8, 80] times the characteristic UV scale, where the
// power-law prefactor bias of d ln(f/omega)/d omega is a few percent.
inline double wien_tail_temperature(const kinematics::Trajectory& traj, double theta,
                                    const QuadratureConfig& cfg = {}) {
    if (!(theta > 0.0) || !(theta < pi))
        throw std::domain_error("wien_tail_temperature: need theta in (0, pi)");
    const double t_hat = detail::window_scale(traj, theta);
    const QuadratureConfig point_cfg = cfg.tightened(0.01);
    return uv_temperature(
        detail::sample_cut(traj, theta, 8.0 * t_hat, 80.0 * t_hat, 24, point_cfg));
}

// Fit window, default sampling and the three-way verdict at angle theta
// (sensible default: the redshift-receding side, theta ~ 0.01).
inline ThermalFit thermality_verdict(const kinematics::Trajectory& traj, double theta,
                                     const QuadratureConfig& cfg = {}) {
    using namespace kinematics;
    if (!(theta > 0.0) || !(theta < pi))
        throw std::domain_error("thermality_verdict: need theta in (0, pi)");

    const double t_hat = detail::window_scale(traj, theta);
    double omega_ir = 0.0;
    if (auto* df = std::get_if<DaviesFulling>(&traj)) omega_ir = df->kappa / (1.0 + df->s);

    double w_lo = t_hat / 50.0;
    if (omega_ir > 0.0) w_lo = std::max(w_lo, 1.25 * omega_ir);
    const double w_hi = 15.0 * t_hat;
    if (!(w_hi > 10.0 * w_lo))
        throw fit_error("thermality_verdict: IR cutoff leaves no Planck window; "
                        "the spectrum has no thermal regime at this angle");

    const QuadratureConfig point_cfg = cfg.tightened(0.01);
    ThermalFit fit = fit_planck_1p1(detail::sample_cut(traj, theta, w_lo, w_hi, 64, point_cfg));
    fit.trajectory = trajectory_name(traj);
    fit.theta = theta;
    fit.omega_ir = omega_ir;
    fit.scale = TemperatureScale::stoney_per_e2;
    if (fit.verdict == Verdict::thermal) return fit;

    // Planck fit failed: decide between a stable Wien temperature and an
    // angle-dependent (hence undefined) one by halving the angle.
    const double t_uv_here = wien_tail_temperature(traj, theta, cfg);
    const double t_uv_half = wien_tail_temperature(traj, 0.5 * theta, cfg);
    const double variation = std::abs(t_uv_here / t_uv_half - 1.0);
    if (variation < 0.25) {
        fit.verdict = Verdict::wien_only;
        fit.t_uv = t_uv_here;  // report the stable Wien-sense temperature
    } else {
        fit.verdict = Verdict::not_thermal;
    }
    return fit;
}

}  // namespace accelrad::thermal
