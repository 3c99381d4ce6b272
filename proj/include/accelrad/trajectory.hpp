#pragma once

// The four rectilinear worldlines of the toolkit.
//
//   Davies-Fulling        z(t) = -(s/kappa) ln cosh(kappa t)
//   Walker-Davies         t(z) = -z +/- A sqrt(e^{-2z/B} - 1),  A > B > 0
//   uniform acceleration  z(t) = (1/kappa)(1 - sqrt(1 + kappa^2 t^2))
//   Carlitz-Willey        proper-time form alpha(tau) = 1/tau, peel = kappa
//
// All parameters are validated on construction.

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>

namespace accelrad::kinematics {

struct DaviesFulling {
    double s;      // asymptotic speed, 0 < s <= 1 (s = 1 is the light-speed limit form)
    double kappa;  // acceleration scale, > 0

    DaviesFulling(double s_, double kappa_) : s(s_), kappa(kappa_) {
        if (!(s > 0.0) || !(s <= 1.0))
            throw std::domain_error("DaviesFulling: need 0 < s <= 1");
        if (!(kappa > 0.0)) throw std::domain_error("DaviesFulling: need kappa > 0");
    }
    bool at_light_speed() const { return s == 1.0; }
};

struct WalkerDavies {
    double A;  // time scale, A > B
    double B;  // time scale, > 0

    WalkerDavies(double A_, double B_) : A(A_), B(B_) {
        if (!(B > 0.0) || !(A > B))
            throw std::domain_error("WalkerDavies: need A > B > 0");
    }
};

struct UniformAcceleration {
    double kappa;  // proper acceleration magnitude, > 0

    explicit UniformAcceleration(double kappa_) : kappa(kappa_) {
        if (!(kappa > 0.0)) throw std::domain_error("UniformAcceleration: need kappa > 0");
    }
};

struct CarlitzWilley {
    double kappa;  // constant peel, > 0

    explicit CarlitzWilley(double kappa_) : kappa(kappa_) {
        if (!(kappa > 0.0)) throw std::domain_error("CarlitzWilley: need kappa > 0");
    }
};

using Trajectory = std::variant<DaviesFulling, WalkerDavies, UniformAcceleration, CarlitzWilley>;

inline std::string trajectory_name(const Trajectory& traj) {
    struct Visitor {
        std::string operator()(const DaviesFulling&) const { return "davies-fulling"; }
        std::string operator()(const WalkerDavies&) const { return "walker-davies"; }
        std::string operator()(const UniformAcceleration&) const { return "uniform"; }
        std::string operator()(const CarlitzWilley&) const { return "carlitz-willey"; }
    };
    return std::visit(Visitor{}, traj);
}

// (kappa, v_max) parametrization of the Walker-Davies pair:
//   A = pi/kappa,  B = 2 pi v_max / (kappa (1 + v_max)).
// The inverse is kappa = pi/A, v_max = B/(2A - B); the map round-trips.
struct WdParametrization {
    double kappa;
    double v_max;

    WdParametrization(double kappa_, double v_max_) : kappa(kappa_), v_max(v_max_) {
        if (!(kappa > 0.0)) throw std::domain_error("WdParametrization: need kappa > 0");
        if (!(v_max > 0.0) || !(v_max < 1.0))
            throw std::domain_error("WdParametrization: need 0 < v_max < 1");
    }

    WalkerDavies to_walker_davies() const {
        const double pi = 3.141592653589793238462643383279502884;
        return WalkerDavies(pi / kappa, 2.0 * pi * v_max / (kappa * (1.0 + v_max)));
    }

    static WdParametrization from_walker_davies(const WalkerDavies& wd) {
        const double pi = 3.141592653589793238462643383279502884;
        return WdParametrization(pi / wd.A, wd.B / (2.0 * wd.A - wd.B));
    }
};

}  // namespace accelrad::kinematics
