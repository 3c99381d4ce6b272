#pragma once

// Photon spectral distributions dI/dOmega for a point charge on each
// worldline, per unit e^2, built two ways:
//
//  (i)  the frequency map  p = omega(1+cos th)/2, q = omega(1-cos th)/2
//       applied to the mirror spectra:  dI/dOmega = (omega^2/4pi) |beta^R_pq|^2,
//  (ii) closed forms, checked independently by the regulated Fourier
//       transform of the current,
//         dI/dOmega = omega^2 sin^2 th / (16 pi^3) |j_z(omega, k_z)|^2,
//         j_z = int v(t) e^{-i(omega t - k_z z(t))} dt,  k_z = omega cos th.
//
// The time integral does not converge absolutely for asymptotically
// inertial motion, so the oracle applies an adiabatic regulator e^{-eps|t|}
// and extrapolates eps -> 0 from a fixed ladder of regulator strengths.

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "accelrad/errors.hpp"
#include "accelrad/kinematics.hpp"
#include "accelrad/mirror.hpp"
#include "accelrad/quadrature.hpp"
#include "accelrad/special_functions.hpp"

namespace accelrad::electron {

using numerics::pi;
using numerics::QuadratureConfig;

struct PhotonMode {
    double omega;      // photon frequency > 0
    double cos_theta;  // observation angle cosine in [-1, 1]

    double k_z() const { return omega * cos_theta; }
    double sin_theta() const {
        return std::sqrt((1.0 - cos_theta) * (1.0 + cos_theta));
    }
    // at the axis one scalar frequency vanishes and the mirror spectra
    // may be singular
    bool on_boundary() const { return std::abs(cos_theta) == 1.0; }
};

inline void validate_mode(const PhotonMode& mode, const char* who) {
    if (!(mode.omega > 0.0))
        throw std::domain_error(std::string(who) + ": need omega > 0");
    if (!(std::abs(mode.cos_theta) <= 1.0))
        throw std::domain_error(std::string(who) + ": need |cos_theta| <= 1");
}

// p = omega (1 + cos th)/2,  q = omega (1 - cos th)/2, so that
// p + q = omega and p - q = omega cos th.
inline mirror::ModePair mode_map(const PhotonMode& mode) {
    validate_mode(mode, "mode_map");
    return {0.5 * mode.omega * (1.0 + mode.cos_theta),
            0.5 * mode.omega * (1.0 - mode.cos_theta)};
}

// --- closed-form distributions -----------------------------------------------

// Davies-Fulling, organized as
//   dI/dOmega = s^2 omega^2 (1-c^2) sinhc(Y) / (8 pi kappa^2 (1-s^2c^2) (cosh X - cosh Y))
// with X = pi omega/kappa, Y = pi s omega c / kappa; finite at c = 0 and
// even in c.  Admits s = 1, where the distribution develops axis poles.
inline double spectral_distribution_df(double s, double kappa, const PhotonMode& mode) {
    if (!(kappa > 0.0)) throw std::domain_error("spectral_distribution_df: need kappa > 0");
    if (!(s > 0.0) || !(s <= 1.0))
        throw std::domain_error("spectral_distribution_df: need 0 < s <= 1");
    validate_mode(mode, "spectral_distribution_df");
    const double c = mode.cos_theta, w = mode.omega;
    const double angular = (s == 1.0)
                               ? 1.0
                               : (1.0 - c) * (1.0 + c) / ((1.0 - s * c) * (1.0 + s * c));
    if (s == 1.0 && mode.on_boundary())
        throw std::domain_error("spectral_distribution_df: axis pole at s = 1");
    const double X = pi * w / kappa;
    const double Y = pi * s * w * c / kappa;
    const double ln_rest = numerics::log_sinhc(Y) - numerics::log_cosh_diff(X, Y);
    return s * s * w * w * angular / (8.0 * pi * kappa * kappa) * std::exp(ln_rest);
}

// Walker-Davies:
//   dI/dOmega = omega^2 A B (1-c)/(4 pi^3) sinh(pi nu) |K_{-1/2 + i nu}(omega A)|^2,
//   nu = omega (1+c) B / 2,
// assembled from the e^{x}-scaled Bessel modulus.
inline double spectral_distribution_wd(double A, double B, const PhotonMode& mode,
                                       const QuadratureConfig& cfg = {}) {
    if (!(B > 0.0) || !(A > B))
        throw std::domain_error("spectral_distribution_wd: need A > B > 0");
    validate_mode(mode, "spectral_distribution_wd");
    const double c = mode.cos_theta, w = mode.omega;
    if (c == 1.0 || c == -1.0) return 0.0;  // (1-c) and sinh prefactors vanish
    const double nu = 0.5 * w * (1.0 + c) * B;
    const double x = w * A;
    const double k_sq_scaled = numerics::bessel_k_complex_order_abs_sq_scaled(-0.5, nu, x, cfg);
    const double u = pi * nu;
    double damped_sinh;
    if (u < 30.0)
        damped_sinh = std::sinh(u) * std::exp(-2.0 * x);
    else
        damped_sinh = 0.5 * std::exp(u - 2.0 * x) * (-std::expm1(-2.0 * u));
    return w * w * A * B * (1.0 - c) / (4.0 * pi * pi * pi) * k_sq_scaled * damped_sinh;
}

// Uniform proper acceleration:
//   dI/dOmega = omega^2/(4 pi^3 kappa^2) K_1(omega sin th / kappa)^2,
// with poles on the axis th = 0, pi.
inline double spectral_distribution_uniform(double kappa, const PhotonMode& mode) {
    if (!(kappa > 0.0))
        throw std::domain_error("spectral_distribution_uniform: need kappa > 0");
    validate_mode(mode, "spectral_distribution_uniform");
    if (mode.on_boundary())
        throw std::domain_error("spectral_distribution_uniform: pole at theta = 0 or pi");
    const double sth = mode.sin_theta();
    const double k1 = numerics::bessel_k1(mode.omega * sth / kappa);
    return mode.omega * mode.omega / (4.0 * pi * pi * pi * kappa * kappa) * k1 * k1;
}

// --- duality route -------------------------------------------------------------

// dI/dOmega = (omega^2/4 pi) |beta^R_pq|^2 under the frequency map.
inline double spectral_distribution_recipe(const kinematics::Trajectory& traj,
                                           const PhotonMode& mode,
                                           const QuadratureConfig& cfg = {}) {
    using namespace kinematics;
    validate_mode(mode, "spectral_distribution_recipe");
    const mirror::ModePair pair = mode_map(mode);
    const double pref = mode.omega * mode.omega / (4.0 * pi);

    if (auto* df = std::get_if<DaviesFulling>(&traj)) {
        if (mode.on_boundary()) {
            if (df->at_light_speed())
                throw std::domain_error("spectral_distribution_recipe: axis pole at s = 1");
            return 0.0;  // pq prefactor of the mirror spectrum vanishes
        }
        return pref * mirror::beta_sq_df_right(df->s, df->kappa, pair);
    }
    if (auto* wd = std::get_if<WalkerDavies>(&traj)) {
        if (mode.on_boundary()) return 0.0;
        return pref * mirror::beta_sq_wd_right(wd->A, wd->B, pair, cfg);
    }
    if (auto* ua = std::get_if<UniformAcceleration>(&traj)) {
        if (mode.on_boundary())
            throw std::domain_error("spectral_distribution_recipe: pole at theta = 0 or pi");
        return pref * mirror::beta_sq_uniform_right(ua->kappa, pair);
    }
    throw unsupported_error("spectral_distribution_recipe: no spectra for Carlitz-Willey");
}

// Closed form matching the recipe, for cross-checks and fast evaluation.
inline double spectral_distribution_closed(const kinematics::Trajectory& traj,
                                           const PhotonMode& mode,
                                           const QuadratureConfig& cfg = {}) {
    using namespace kinematics;
    if (auto* df = std::get_if<DaviesFulling>(&traj))
        return spectral_distribution_df(df->s, df->kappa, mode);
    if (auto* wd = std::get_if<WalkerDavies>(&traj))
        return spectral_distribution_wd(wd->A, wd->B, mode, cfg);
    if (auto* ua = std::get_if<UniformAcceleration>(&traj))
        return spectral_distribution_uniform(ua->kappa, mode);
    throw unsupported_error("spectral_distribution_closed: no spectra for Carlitz-Willey");
}

// --- Fourier-current oracle ----------------------------------------------------

// |j_z|^2 per e^2 from the Euler-Beta closed form of the Davies-Fulling
// current,  j_z = (omega 2^{i s k_z/kappa} / (2 kappa k_z)) B(-i(omega - s k_z)/2kappa,
// i(omega + s k_z)/2kappa).
inline double fourier_current_df_closed_sq(double s, double kappa, const PhotonMode& mode) {
    if (!(s > 0.0) || !(s < 1.0))
        throw std::domain_error("fourier_current_df_closed_sq: need 0 < s < 1");
    validate_mode(mode, "fourier_current_df_closed_sq");
    const double kz = mode.k_z();
    if (kz == 0.0)
        throw std::domain_error("fourier_current_df_closed_sq: k_z = 0 is a removable "
                                "point; evaluate off the equator");
    const double a = -(mode.omega - s * kz) / (2.0 * kappa);
    const double b = (mode.omega + s * kz) / (2.0 * kappa);
    const double pref = mode.omega / (2.0 * kappa * kz);
    return pref * pref * numerics::abs_beta_imag_sq(a, b);
}

// |j_z|^2 per e^2 for uniform acceleration,
//   j_z = (2 i / (kappa sin th)) e^{i omega cos th / kappa} K_1(omega sin th / kappa)
// in the z(0) = 0 convention (the phase never enters dI/dOmega).
inline double fourier_current_uniform_closed_sq(double kappa, const PhotonMode& mode) {
    validate_mode(mode, "fourier_current_uniform_closed_sq");
    if (mode.on_boundary())
        throw std::domain_error("fourier_current_uniform_closed_sq: pole on the axis");
    const double sth = mode.sin_theta();
    const double k1 = numerics::bessel_k1(mode.omega * sth / kappa);
    return 4.0 * k1 * k1 / (kappa * kappa * sth * sth);
}

namespace detail {

// One regulated pass: int v(t) e^{-i(omega t - k_z z(t))} e^{-eps|t|} dt,
// summed over fixed Gauss-Kronrod panels of about a half oscillation each.
template <typename Vel, typename Pos>
std::complex<double> regulated_current(const Vel& v_of, const Pos& z_of, double omega,
                                       double k_z, double eps, double v_asym_mag) {
    const double freq = omega + std::abs(k_z) * v_asym_mag + eps;
    const double panel = 0.5 * pi / freq;
    const double t_end = 30.0 / eps;
    const long n_panels = static_cast<long>(std::ceil(t_end / panel));

    std::complex<double> acc{0.0, 0.0};
    for (long side = 0; side < 2; ++side) {
        const double sign = side == 0 ? 1.0 : -1.0;
        for (long i = 0; i < n_panels; ++i) {
            const double a = i * panel, b = (i + 1) * panel;
            const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
            std::complex<double> sum{0.0, 0.0};
            auto eval = [&](double t_abs) {
                const double t = sign * t_abs;
                const double phase = -(omega * t - k_z * z_of(t));
                return v_of(t) * std::exp(-eps * t_abs) *
                       std::complex<double>{std::cos(phase), std::sin(phase)};
            };
            sum += numerics::detail::kronrod_w[7] * eval(mid);
            for (int j = 0; j < 7; ++j) {
                const double dx = half * numerics::detail::kronrod_x[j];
                sum += numerics::detail::kronrod_w[j] * (eval(mid - dx) + eval(mid + dx));
            }
            acc += half * sum;
        }
    }
    return acc;
}

}  // namespace detail

// Regulated numerical Fourier transform of the current, per e, with
// polynomial extrapolation of the regulator ladder to eps = 0.  The
// extrapolation converges once the smallest regulators sit well inside
// the analyticity radius ~ omega (1 - |v_inf cos th|); the default ladder
// holds down to radii of a few times 1e-2.
inline std::complex<double> fourier_current(const kinematics::Trajectory& traj,
                                            const PhotonMode& mode,
                                            const std::vector<double>& regulators = {
                                                1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4}) {
    using namespace kinematics;
    validate_mode(mode, "fourier_current");
    if (regulators.empty())
        throw std::domain_error("fourier_current: need at least one regulator");

    const double w = mode.omega, kz = mode.k_z();
    std::vector<std::complex<double>> values;
    values.reserve(regulators.size());

    if (auto* df = std::get_if<DaviesFulling>(&traj)) {
        const double s = df->s, kappa = df->kappa;
        auto vel = [s, kappa](double t) { return -s * std::tanh(kappa * t); };
        auto pos = [s, kappa](double t) {
            const double x = std::abs(kappa * t);
            return -(s / kappa) *
                   (x - 0.6931471805599453094172321214581766 + std::log1p(std::exp(-2.0 * x)));
        };
        for (double eps : regulators)
            values.push_back(detail::regulated_current(vel, pos, w, kz, eps, s));
    } else if (auto* ua = std::get_if<UniformAcceleration>(&traj)) {
        const double kappa = ua->kappa;
        auto vel = [kappa](double t) {
            return -kappa * t / std::sqrt(1.0 + kappa * kappa * t * t);
        };
        auto pos = [kappa](double t) {
            return (1.0 - std::sqrt(1.0 + kappa * kappa * t * t)) / kappa;
        };
        for (double eps : regulators)
            values.push_back(detail::regulated_current(vel, pos, w, kz, eps, 1.0));
    } else {
        throw unsupported_error("fourier_current: closed-form targets exist only for "
                                "Davies-Fulling and uniform acceleration");
    }

    // Neville extrapolation to eps = 0
    std::vector<std::complex<double>> tab = values;
    const size_t n = regulators.size();
    for (size_t level = 1; level < n; ++level) {
        for (size_t i = 0; i + level < n; ++i) {
            const double e0 = regulators[i], e1 = regulators[i + level];
            tab[i] = (e0 * tab[i + 1] - e1 * tab[i]) / (e0 - e1);
        }
    }
    const std::complex<double> out = tab[0];
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag()))
        throw convergence_error("fourier_current: extrapolation failed", std::abs(out), 0.0);
    return out;
}

// --- angular and frequency integrals -------------------------------------------

// E(Omega)(theta) = int_0^inf dI/dOmega d omega at fixed angle.
inline double angular_energy(const kinematics::Trajectory& traj, double theta,
                             const QuadratureConfig& cfg = {}) {
    if (!(theta >= 0.0) || !(theta <= pi))
        throw std::domain_error("angular_energy: need theta in [0, pi]");
    const double c = std::cos(theta);
    const QuadratureConfig point_cfg = cfg.tightened(0.01);
    auto f = [&](double w) {
        if (w <= 0.0) return 0.0;
        return spectral_distribution_closed(traj, {w, c}, point_cfg);
    };
    return numerics::integrate_semi_infinite(f, 0.0, cfg);
}

// I(omega) = int dI/dOmega dOmega = 2 pi int_{-1}^{1} dI/dOmega dcos th.
// Diverges for uniform acceleration (axis poles) and at s = 1.
inline double frequency_spectrum(const kinematics::Trajectory& traj, double omega,
                                 const QuadratureConfig& cfg = {}) {
    using namespace kinematics;
    if (!(omega > 0.0)) throw std::domain_error("frequency_spectrum: need omega > 0");
    if (std::holds_alternative<UniformAcceleration>(traj))
        throw infinite_quantity_error(
            "frequency_spectrum: diverges for uniform acceleration");
    if (auto* df = std::get_if<DaviesFulling>(&traj); df && df->at_light_speed())
        throw infinite_quantity_error("frequency_spectrum: diverges at s = 1");
    const QuadratureConfig point_cfg = cfg.tightened(0.01);
    auto f = [&](double c) {
        if (std::abs(c) >= 1.0) return 0.0;
        return spectral_distribution_closed(traj, {omega, c}, point_cfg);
    };
    return 2.0 * pi * numerics::integrate_finite(f, -1.0, 1.0, cfg);
}

// Total radiated energy from the spectral distribution,
//   E = 2 pi int_0^inf domega int_{-1}^{1} dcos th dI/dOmega.
inline double total_energy_spectral(const kinematics::Trajectory& traj,
                                    const QuadratureConfig& cfg = {}) {
    using namespace kinematics;
    if (std::holds_alternative<UniformAcceleration>(traj))
        throw infinite_quantity_error("total_energy_spectral: infinite for uniform "
                                      "acceleration");
    if (auto* df = std::get_if<DaviesFulling>(&traj); df && df->at_light_speed())
        throw infinite_quantity_error("total_energy_spectral: diverges at s = 1");
    const QuadratureConfig point_cfg = cfg.tightened(0.001);
    auto f = [&](double w, double c) {
        if (w <= 0.0 || std::abs(c) >= 1.0) return 0.0;
        return spectral_distribution_closed(traj, {w, c}, point_cfg);
    };
    return 2.0 * pi *
           numerics::integrate_2d_iterated(f, numerics::Interval::from(0.0),
                                           numerics::Interval::finite(-1.0, 1.0), cfg);
}

// --- sampled grids ---------------------------------------------------------------

enum class SpectralMethod { recipe, closed_form, fourier_oracle };

inline std::string method_name(SpectralMethod m) {
    switch (m) {
        case SpectralMethod::recipe: return "recipe";
        case SpectralMethod::closed_form: return "closed_form";
        case SpectralMethod::fourier_oracle: return "fourier_oracle";
    }
    return "?";
}

// Rectangular dI/dOmega grid; per-point failures are stored as empty
// cells, never as zeros.
struct SpectralGrid {
    std::string trajectory;
    std::vector<double> omega;      // strictly increasing
    std::vector<double> cos_theta;  // strictly increasing
    SpectralMethod method = SpectralMethod::closed_form;
    std::vector<std::optional<double>> values;  // row-major over (omega, cos_theta)
    long error_cells = 0;

    std::optional<double> at(size_t i, size_t j) const {
        return values[i * cos_theta.size() + j];
    }
};

inline SpectralGrid build_spectral_grid(const kinematics::Trajectory& traj,
                                        std::vector<double> omegas,
                                        std::vector<double> cos_thetas,
                                        SpectralMethod method,
                                        const QuadratureConfig& cfg = {}) {
    for (size_t i = 1; i < omegas.size(); ++i)
        if (!(omegas[i] > omegas[i - 1]))
            throw std::domain_error("build_spectral_grid: omega grid must increase");
    for (size_t j = 1; j < cos_thetas.size(); ++j)
        if (!(cos_thetas[j] > cos_thetas[j - 1]))
            throw std::domain_error("build_spectral_grid: cos_theta grid must increase");

    SpectralGrid grid;
    grid.trajectory = kinematics::trajectory_name(traj);
    grid.omega = std::move(omegas);
    grid.cos_theta = std::move(cos_thetas);
    grid.method = method;
    grid.values.reserve(grid.omega.size() * grid.cos_theta.size());
    for (double w : grid.omega) {
        for (double c : grid.cos_theta) {
            const PhotonMode mode{w, c};
            try {
                double val = 0.0;
                switch (method) {
                    case SpectralMethod::recipe:
                        val = spectral_distribution_recipe(traj, mode, cfg);
                        break;
                    case SpectralMethod::closed_form:
                        val = spectral_distribution_closed(traj, mode, cfg);
                        break;
                    case SpectralMethod::fourier_oracle: {
                        const auto j = fourier_current(traj, mode);
                        val = w * w * (1.0 - c * c) / (16.0 * pi * pi * pi) * std::norm(j);
                        break;
                    }
                }
                grid.values.emplace_back(val);
            } catch (const std::exception&) {
                grid.values.emplace_back(std::nullopt);
                ++grid.error_cells;
            }
        }
    }
    return grid;
}

}  // namespace accelrad::electron
