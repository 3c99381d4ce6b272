#pragma once

#include <stdexcept>
#include <string>

namespace accelrad {

// Quadrature or root finding failed to reach the requested tolerance.
// Carries the best available estimate so callers can decide what to do.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double best_estimate,
                      double achieved_error)
        : std::runtime_error(what),
          best_estimate_(best_estimate),
          achieved_error_(achieved_error) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double best_estimate_;
    double achieved_error_;
};

// The requested quantity is infinite for this trajectory (e.g. total
// radiated energy of eternal uniform acceleration).
class infinite_quantity_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Operation not defined for this trajectory variant.
class unsupported_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A data fit could not be performed (degenerate samples, non-monotone
// tail, ...).
class fit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace accelrad
