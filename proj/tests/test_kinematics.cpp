#include <cmath>

#include "accelrad/kinematics.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace accelrad;
using namespace accelrad::kinematics;

namespace {
using accelrad::numerics::pi;

void check_state_consistency(const KinematicState& st) {
    CHECK(std::abs(st.v) < 1.0);
    CHECK(st.gamma * st.gamma - st.w * st.w == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(st.gamma == doctest::Approx(std::cosh(st.eta)).epsilon(1e-12));
    CHECK(st.peel ==
          doctest::Approx(2.0 * st.alpha * std::exp(st.eta)).epsilon(1e-12));
    CHECK(st.jerk_sq == doctest::Approx(jerk_modulus_sq(st.alpha, st.alpha_dot)));
}
}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(DaviesFulling(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(DaviesFulling(1.2, 1.0), std::domain_error);
    CHECK_THROWS_AS(DaviesFulling(0.5, -1.0), std::domain_error);
    CHECK_NOTHROW(DaviesFulling(1.0, 2.0));  // light-speed limit form allowed
    CHECK_THROWS_AS(WalkerDavies(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(WalkerDavies(1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(UniformAcceleration(0.0), std::domain_error);
    CHECK_THROWS_AS(CarlitzWilley(-2.0), std::domain_error);
}

TEST_CASE("WdParametrization round-trips") {
    const WdParametrization par(0.8, 0.37);
    const WalkerDavies wd = par.to_walker_davies();
    CHECK(wd.A == doctest::Approx(pi / 0.8).epsilon(1e-15));
    const auto back = WdParametrization::from_walker_davies(wd);
    CHECK(back.kappa == doctest::Approx(par.kappa).epsilon(1e-15));
    CHECK(back.v_max == doctest::Approx(par.v_max).epsilon(1e-15));
    // v_max is the actual speed maximum, attained at V = -A
    double vmax_seen = 0.0;
    const KinematicState turning = detail::state_wd_from_V(wd, -wd.A);
    for (double V = -3.0 * wd.A; V <= 0.0; V += wd.A / 64.0)
        vmax_seen = std::max(vmax_seen, std::abs(detail::state_wd_from_V(wd, V).v));
    CHECK(std::abs(turning.v) == doctest::Approx(par.v_max).epsilon(1e-12));
    CHECK(vmax_seen <= par.v_max * (1.0 + 1e-12));
}

TEST_CASE("Davies-Fulling states") {
    const DaviesFulling df(0.66, 1.0);
    const Trajectory traj{df};

    const KinematicState at0 = state_at_time(traj, 0.0);
    CHECK(at0.v == 0.0);
    CHECK(at0.z == 0.0);
    CHECK(at0.alpha == doctest::Approx(-0.66).epsilon(1e-15));

    for (double t : {-7.0, -2.0, -0.3, 0.0, 0.4, 1.7, 6.0, 30.0})
        check_state_consistency(state_at_time(traj, t));

    // time reversal: alpha even, v odd
    for (double t : {0.3, 1.1, 4.0}) {
        const auto plus = state_at_time(traj, t);
        const auto minus = state_at_time(traj, -t);
        CHECK(plus.alpha == doctest::Approx(minus.alpha).epsilon(1e-13));
        CHECK(plus.v == doctest::Approx(-minus.v).epsilon(1e-13));
    }

    // analytic alpha_dot against a numerical derivative of alpha(tau)
    for (double t : {-1.2, 0.0, 0.7, 2.5}) {
        const double h = 1e-5;
        const auto sp = state_at_time(traj, t + h);
        const auto sm = state_at_time(traj, t - h);
        const auto s0 = state_at_time(traj, t);
        const double dalpha_dtau_fd = (sp.alpha - sm.alpha) / (2.0 * h) * s0.gamma;
        CHECK(s0.alpha_dot == doctest::Approx(dalpha_dtau_fd).epsilon(1e-8));
    }
}

TEST_CASE("Davies-Fulling light-speed peel") {
    // at s = 1 the peel is exactly -(1 + e^{-2 kappa t}) kappa
    const double kappa = 1.3;
    const Trajectory traj{DaviesFulling(1.0, kappa)};
    for (double t : {0.0, 0.5, 2.0, 5.0}) {
        const auto st = state_at_time(traj, t);
        CHECK(st.peel ==
              doctest::Approx(-(1.0 + std::exp(-2.0 * kappa * t)) * kappa).epsilon(1e-12));
    }
    // late times: peel -> -kappa
    CHECK(state_at_time(traj, 8.0).peel == doctest::Approx(-kappa).epsilon(1e-6));
    // for s slightly below 1 the limit form holds while (1-s) << e^{-2 kappa t}
    const Trajectory near{DaviesFulling(0.999999, kappa)};
    const double t_mid = 4.0 / kappa;
    const double limit_form = -(1.0 + std::exp(-2.0 * kappa * t_mid)) * kappa;
    CHECK(state_at_time(near, t_mid).peel == doctest::Approx(limit_form).epsilon(1e-2));

    // light-speed proper time approaches tau_0 = pi/(2 kappa)
    const auto late = state_at_time(traj, 40.0 / kappa);
    REQUIRE(late.tau.has_value());
    CHECK(*late.tau == doctest::Approx(0.5 * pi / kappa).epsilon(1e-12));
}

TEST_CASE("Walker-Davies states") {
    const WalkerDavies wd(2.0, 1.0);
    const Trajectory traj{wd};

    const auto at0 = state_at_time(traj, 0.0);
    CHECK(at0.z == 0.0);
    CHECK(at0.v == 0.0);

    for (double t : {-40.0, -3.0, -0.5, 0.0, 0.8, 5.0, 60.0}) {
        const auto st = state_at_time(traj, t);
        check_state_consistency(st);
        CHECK(st.t == doctest::Approx(t).epsilon(1e-12));
        // trajectory relation t = -z +/- A sqrt(e^{-2z/B} - 1)
        const double root = std::sqrt(std::max(0.0, std::expm1(-2.0 * st.z / wd.B)));
        const double expect = -st.z + (t >= 0.0 ? 1.0 : -1.0) * wd.A * root;
        CHECK(st.t == doctest::Approx(expect).epsilon(1e-10));
    }

    // lightcone form: U = V + B ln(V^2/A^2 + 1) at sampled states
    for (double t : {-4.0, 1.3, 9.0}) {
        const auto lc = lightcone_point(state_at_time(traj, t));
        CHECK(lc.U ==
              doctest::Approx(lc.V + wd.B * std::log1p(lc.V * lc.V / (wd.A * wd.A)))
                  .epsilon(1e-10));
    }

    // alpha_dot from the stencil agrees with a direct difference of alpha(tau)
    for (double t : {-1.0, 0.4, 3.0}) {
        const double h = 1e-5;
        const auto sp = state_at_time(traj, t + h);
        const auto sm = state_at_time(traj, t - h);
        const auto s0 = state_at_time(traj, t);
        const double fd = (sp.alpha - sm.alpha) / (2.0 * h) * s0.gamma;
        CHECK(s0.alpha_dot == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("uniform acceleration states") {
    const double kappa = 0.7;
    const Trajectory traj{UniformAcceleration(kappa)};
    for (double t : {-10.0, -1.0, 0.0, 2.0, 50.0}) {
        const auto st = state_at_time(traj, t);
        check_state_consistency(st);
        CHECK(st.alpha == doctest::Approx(-kappa));
        CHECK(st.alpha_dot == 0.0);
        CHECK(st.jerk_sq == doctest::Approx(kappa * kappa * kappa * kappa));
        REQUIRE(st.tau.has_value());
        CHECK(std::sinh(kappa * *st.tau) == doctest::Approx(kappa * t).epsilon(1e-12));
    }
    CHECK(larmor_power(traj, 3.0) ==
          doctest::Approx(kappa * kappa / (6.0 * pi)).epsilon(1e-14));
    CHECK(self_force(traj, 3.0) == 0.0);
}

TEST_CASE("Larmor power along the Davies-Fulling worldline") {
    const double s = 0.66, kappa = 1.3;
    const Trajectory traj{DaviesFulling(s, kappa)};
    // peak value s^2 kappa^2 / (6 pi) at t = 0
    CHECK(larmor_power(traj, 0.0) / (s * s * kappa * kappa / (6.0 * pi)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // asymptotic inertia: the power dies off at large |t|
    CHECK(larmor_power(traj, 40.0 / kappa) < 1e-25);
    CHECK(larmor_power(traj, -40.0 / kappa) < 1e-25);
}

TEST_CASE("Carlitz-Willey zero-jerk worldline") {
    const double kappa = 2.2;
    const Trajectory traj{CarlitzWilley(kappa)};
    for (int i = 0; i < 100; ++i) {
        const double tau = 0.1 * std::pow(1000.0, i / 99.0);  // 0.1 .. 100
        const auto st = sample_state(traj, tau);
        CHECK(st.peel == doctest::Approx(kappa).epsilon(1e-13));
        CHECK(std::abs(st.alpha * st.alpha + st.alpha_dot) < 1e-12);
        CHECK(st.gamma * st.gamma - st.w * st.w == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(sample_state(traj, -1.0), std::domain_error);
    CHECK_THROWS_AS(state_at_time(traj, 1.0), unsupported_error);
    // alpha'(tau) at tau = 1 is -1
    CHECK(sample_state(traj, 1.0).alpha_dot == doctest::Approx(-1.0));
}

TEST_CASE("jerk modulus examples") {
    CHECK(jerk_modulus_sq(2.0, 0.0) == 16.0);
    CHECK(jerk_modulus_sq(0.5, -0.25) == doctest::Approx(0.0));
    CHECK(jerk_modulus_sq(0.0, 0.0) == 0.0);
}

TEST_CASE("peel derivative identity across trajectories") {
    // dP/dtau (numerical stencil) == 2 e^eta (alpha^2 + alpha_dot)
    auto check_identity = [](const Trajectory& traj, double x) {
        const auto st = sample_state(traj, x);
        const double algebraic =
            2.0 * std::exp(st.eta) * (st.alpha * st.alpha + st.alpha_dot);
        const double numeric = peel_derivative(traj, x);
        if (std::abs(algebraic) > 1e-8)
            CHECK(numeric == doctest::Approx(algebraic).epsilon(1e-10));
        else
            CHECK(std::abs(numeric - algebraic) < 1e-10);
    };
    const Trajectory df{DaviesFulling(0.6, 1.0)};
    const Trajectory wd{WalkerDavies(2.0, 1.0)};
    const Trajectory ua{UniformAcceleration(1.5)};
    const Trajectory cw{CarlitzWilley(1.1)};
    for (double x : {0.3, 1.0, 2.7}) {
        check_identity(df, x);
        check_identity(df, -x);
        check_identity(wd, x);
        check_identity(wd, -x);
        check_identity(ua, x);
        check_identity(cw, x);
    }

    // Carlitz-Willey: dP/dtau vanishes for all tau
    for (double tau : {0.2, 1.0, 10.0, 80.0})
        CHECK(std::abs(peel_derivative(cw, tau)) < 1e-11);

    // uniform acceleration: never zero
    for (double t : {0.0, 1.0, 5.0})
        CHECK(std::abs(peel_derivative(ua, t)) > 1e-3);

    // light-speed Davies-Fulling: dP/dtau -> 0 at late times
    const Trajectory dfl{DaviesFulling(1.0, 1.0)};
    CHECK(std::abs(peel_derivative(dfl, 12.0)) < 1e-4);
}

TEST_CASE("Davies-Fulling closed-form energy vs time domain") {
    for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const Trajectory traj{DaviesFulling(s, 1.0)};
        const double closed = total_energy_closed_form(traj);
        const double timedom = total_energy_time_domain(traj);
        CHECK(timedom / closed == doctest::Approx(1.0).epsilon(1e-8));
    }
    // closed form at s = 0.5 against the independent Simpson oracle
    const Trajectory traj{DaviesFulling(0.5, 1.0)};
    const double oracle_E = 2.0 * oracle::integrate_semi_inf(
        [&](double t) { return larmor_power(traj, t); }, 1e-13);
    CHECK(total_energy_closed_form(traj) / oracle_E == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Davies-Fulling non-relativistic energy") {
    // E -> (2 kappa / 9 pi) s^2 for small s
    const double s = 0.02, kappa = 1.0;
    const Trajectory traj{DaviesFulling(s, kappa)};
    const double expected = 2.0 * kappa * s * s / (9.0 * pi);
    CHECK(total_energy_closed_form(traj) / expected == doctest::Approx(1.0).epsilon(0.01));
    CHECK(total_energy_time_domain(traj) / expected == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("Walker-Davies closed-form energy vs time domain") {
    const std::pair<double, double> cases[] = {{2.0, 1.0}, {3.0, 1.0}, {5.0, 4.0}};
    for (const auto& [A, B] : cases) {
        const Trajectory traj{WalkerDavies(A, B)};
        const double closed = total_energy_closed_form(traj);
        const double timedom = total_energy_time_domain(traj);
        CHECK(timedom / closed == doctest::Approx(1.0).epsilon(1e-8));
    }
    // spot value for (2,1): 1/(48*3^{3/2}) + 1/(24 sqrt 3) - 1/48
    const double expect =
        1.0 / (48.0 * std::pow(3.0, 1.5)) + 1.0 / (24.0 * std::sqrt(3.0)) - 1.0 / 48.0;
    CHECK(total_energy_closed_form(Trajectory{WalkerDavies(2.0, 1.0)}) / expect ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Walker-Davies limiting energies") {
    // non-relativistic: E ~ (kappa/6 pi) v_max^2
    {
        const WdParametrization par(1.0, 0.01);
        const Trajectory traj{par.to_walker_davies()};
        const double expected = par.kappa / (6.0 * pi) * par.v_max * par.v_max;
        CHECK(total_energy_closed_form(traj) / expected == doctest::Approx(1.0).epsilon(0.02));
    }
    // relativistic: E -> kappa gamma_max^3 / (12 sqrt 2 pi)
    {
        const WdParametrization par(1.0, 0.999);
        const Trajectory traj{par.to_walker_davies()};
        const double g = 1.0 / std::sqrt(1.0 - par.v_max * par.v_max);
        const double expected = par.kappa * g * g * g / (12.0 * std::sqrt(2.0) * pi);
        const double ratio = total_energy_closed_form(traj) / expected;
        CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("infinite and unsupported energies") {
    CHECK_THROWS_AS(total_energy_time_domain(Trajectory{UniformAcceleration(1.0)}),
                    infinite_quantity_error);
    CHECK_THROWS_AS(total_energy_closed_form(Trajectory{UniformAcceleration(1.0)}),
                    infinite_quantity_error);
    CHECK_THROWS_AS(total_energy_closed_form(Trajectory{CarlitzWilley(1.0)}),
                    unsupported_error);
    CHECK_THROWS_AS(total_energy_closed_form(Trajectory{DaviesFulling(1.0, 1.0)}),
                    infinite_quantity_error);
}

TEST_CASE("self-force light-speed closed form") {
    // at s -> 1: F = -(kappa^2/12 pi) sinh(2 kappa t), zero at t = 0
    const double kappa = 1.0;
    const Trajectory traj{DaviesFulling(1.0, kappa)};
    CHECK(self_force(traj, 0.0) == doctest::Approx(0.0));
    for (double t : {0.4, 1.0}) {
        const double expected = -kappa * kappa / (12.0 * pi) * std::sinh(2.0 * kappa * t);
        CHECK(self_force(traj, t) == doctest::Approx(expected).epsilon(1e-10));
    }
}
