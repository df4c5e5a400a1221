#pragma once

#include "scpd/forecasters.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace scpd {

struct RegretValue {
    double regret = 0.0;
    /// false when some comparator segment has an infimum of -inf; the regret is
    /// then measured against the minimum-norm stationary point.
    bool bounded = true;
};

/// sum_t l_t(pred_t) - inf_theta L_{1:T}(theta).
RegretValue static_regret(std::span<const QuadraticLoss> losses,
                          std::span<const Vector> predictions);

/// sum_t l_t(pred_t) - sum_k L_{tau_k+1:tau_{k+1}}(theta*_k) for 0 = tau_0 < ... < tau_m = T.
RegretValue dynamic_regret(std::span<const QuadraticLoss> losses,
                           std::span<const Vector> predictions,
                           std::span<const std::size_t> switch_points);

struct BoundTerm {
    std::string name;
    double value = 0.0;
};

struct RegretBreakdown {
    double empirical_regret = 0.0;
    bool bounded = true;
    std::vector<BoundTerm> terms;
    /// Sum of `terms`.
    double bound_total = 0.0;
    /// EW only: the bound with the residual term replaced by sum eta_t ||b_t^perp||^2 / lambda.
    double loose_total = 0.0;
    /// EW only: per-round residual contributions of both forms.
    std::vector<double> omega_residuals;
    std::vector<double> loose_residuals;
    bool conditions_ok = true;
    std::size_t condition_violations = 0;
};

/// Runs the EW forecaster on `losses` and evaluates its static-regret bound
///   lambda ||theta*||^2 / (2 eta_T) + log det(I + eta_T/lambda sum A_t) / (2 eta_T)
///   + sum_t eta_t ||Omega_t^{-1/2} b_t^perp||^2,   Omega_t = lambda I + eta_t sum_{j<t} A_j,
/// together with the learning-rate condition
///   ||A_t^{1/2}(theta_hat_{1:t-1}(eta_t) - A_t^+ b_t)||^2 <= 1 / (2 eta_t) for all t.
RegretBreakdown ew_bound(std::span<const QuadraticLoss> losses, const PriorParams& prior,
                         const EtaSchedule& schedule);

/// Runs the fixed-share forecaster and evaluates its dynamic-regret bound against
/// the comparator switching at `switch_points`, with the condition
///   max(||A_t^{1/2} theta_hat_{s:t-1}(eta_t)||^2, ||(A_t^+)^{1/2} b_t||^2) <= 1 / (4 eta_t).
RegretBreakdown fs_bound(std::span<const QuadraticLoss> losses, const PriorParams& prior,
                         const EtaSchedule& schedule, double alpha,
                         std::span<const std::size_t> switch_points);

}  // namespace scpd
