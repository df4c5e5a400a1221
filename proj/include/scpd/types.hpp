#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace scpd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Raised when a computation produces a non-finite value it cannot recover from.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an object is used in a state that does not admit the call.
class InvalidState : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when an input violates a documented precondition of a check.
class PreconditionFailure : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(sum(exp(values))) with max-shift; returns -inf for an empty or all -inf input.
inline double log_sum_exp(std::span<const double> values) {
    double top = kNegInf;
    for (double v : values) {
        if (std::isnan(v)) return std::numeric_limits<double>::quiet_NaN();
        if (v > top) top = v;
    }
    if (!std::isfinite(top)) return top;
    double acc = 0.0;
    for (double v : values) acc += std::exp(v - top);
    return top + std::log(acc);
}

/// k * log_x with the convention 0 * log(0) = 0.
inline double times_log(double k, double log_x) {
    return k == 0.0 ? 0.0 : k * log_x;
}

}  // namespace scpd
