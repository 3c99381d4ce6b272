#include <cmath>
#include <random>

#include "accelrad/quadrature.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace accelrad::numerics;

namespace {
constexpr double pi = 3.141592653589793238462643383279;
}

TEST_CASE("finite interval basics") {
    CHECK(integrate_finite([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(integrate_finite([](double x) { return std::sin(x); }, 0.0, pi) ==
          doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("semi-infinite exponentials") {
    // int_0^inf e^{-t} dt = 1
    CHECK(integrate_semi_infinite([](double t) { return std::exp(-t); }, 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // int_0^inf t e^{-2At} dt = 1/(2A)^2, A = 1
    CHECK(integrate_semi_infinite([](double t) { return t * std::exp(-2.0 * t); }, 0.0) ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("real line sech^4") {
    // antiderivative tanh - tanh^3/3 gives 4/3 over the real line
    auto f = [](double t) {
        const double s = 1.0 / std::cosh(t);
        return s * s * s * s;
    };
    CHECK(integrate_real_line(f) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("rational map handles power-law tails") {
    QuadratureConfig cfg;
    cfg.semi_infinite_map = SemiInfiniteMap::rational_map;
    // int_0^inf dt/(1+t)^2 = 1
    CHECK(integrate_semi_infinite([](double t) { return 1.0 / ((1.0 + t) * (1.0 + t)); },
                                  0.0, cfg) == doctest::Approx(1.0).epsilon(1e-12));
    // int_0^inf dt/(1+t^2) = pi/2
    CHECK(integrate_semi_infinite([](double t) { return 1.0 / (1.0 + t * t); }, 0.0, cfg) ==
          doctest::Approx(pi / 2.0).epsilon(1e-12));
}

TEST_CASE("interval dispatch") {
    CHECK(integrate_1d([](double t) { return std::exp(t); }, Interval::finite(-1.0, 0.0)) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
    CHECK(integrate_1d([](double t) { return std::exp(-t * t); }, Interval::real_line()) ==
          doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
    CHECK_THROWS_AS(Interval::finite(1.0, 1.0), std::domain_error);
}

TEST_CASE("config validation and convergence failure") {
    QuadratureConfig bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate_finite([](double x) { return x; }, 0.0, 1.0, bad),
                    std::domain_error);

    QuadratureConfig starved;
    starved.max_subdivisions = 2;
    starved.rel_tol = 1e-14;
    starved.abs_tol = 1e-300;
    try {
        integrate_finite([](double x) { return std::sin(50.0 * x) * std::sin(51.3 * x); },
                         0.0, 20.0, starved);
        FAIL("expected convergence_error");
    } catch (const accelrad::convergence_error& e) {
        CHECK(std::isfinite(e.best_estimate()));
        CHECK(e.achieved_error() > 0.0);
    }
}

TEST_CASE("randomized polynomial-times-Gaussian integrands match closed forms") {
    // int_{-inf}^{inf} x^{2k} e^{-a x^2} dx = (2k-1)!! / (2a)^k * sqrt(pi/a)
    auto rng = oracle::seeded_rng(913157u);
    std::uniform_real_distribution<double> adist(0.3, 3.0);
    std::uniform_int_distribution<int> kdist(0, 4);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = adist(rng);
        const int k = kdist(rng);
        double dfact = 1.0;
        for (int j = 2 * k - 1; j >= 1; j -= 2) dfact *= j;
        const double expected = dfact / std::pow(2.0 * a, k) * std::sqrt(pi / a);
        const double got = integrate_real_line(
            [a, k](double x) { return std::pow(x, 2 * k) * std::exp(-a * x * x); });
        CHECK(got == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("iterated 2-D integrals") {
    // exp(-p-q) over the first quadrant
    CHECK(integrate_2d_iterated([](double p, double q) { return std::exp(-p - q); },
                                Interval::from(0.0), Interval::from(0.0)) ==
          doctest::Approx(1.0).epsilon(1e-10));

    // p exp(-(p+q)^2) over the first quadrant; collapsing onto u = p+q
    // gives (1/2) int u^2 e^{-u^2} du = sqrt(pi)/8, confirmed by the
    // independent Simpson oracle below.
    const double by_oracle = oracle::integrate_semi_inf([](double p) {
        return oracle::integrate_semi_inf(
            [p](double q) { return p * std::exp(-(p + q) * (p + q)); }, 1e-13);
    });
    const double expected = std::sqrt(pi) / 8.0;
    CHECK(by_oracle == doctest::Approx(expected).epsilon(1e-8));

    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    CHECK(integrate_2d_iterated(
              [](double p, double q) { return p * std::exp(-(p + q) * (p + q)); },
              Interval::from(0.0), Interval::from(0.0), cfg) ==
          doctest::Approx(expected).epsilon(1e-8));

    // constant over the unit square
    CHECK(integrate_2d_iterated([](double, double) { return 0.7; },
                                Interval::finite(0.0, 1.0), Interval::finite(0.0, 1.0)) ==
          doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("reported tolerance is honoured on a hard integrand") {
    // lorentzian spike off-centre
    auto f = [](double x) { return 1.0 / (1e-4 + (x - 0.3) * (x - 0.3)); };
    const double exact = (std::atan(0.7 / 1e-2) + std::atan(0.3 / 1e-2)) / 1e-2;
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-11;
    CHECK(integrate_finite(f, 0.0, 1.0, cfg) == doctest::Approx(exact).epsilon(1e-10));
}
