#pragma once

// Verification engines that compute the forecasters' quantities by routes
// independent of the closed forms: 1-D quadrature of the defining integrals,
// enumeration of every contiguous segmentation for the fixed-share normaliser,
// Monte-Carlo estimates of the mixability and score-matching expectations, and
// randomized checks of the matrix identities the regret analysis relies on.

#include "scpd/quadloss.hpp"

#include <cstddef>
#include <cstdint>
#include <span>

namespace scpd::oracle {

/// Composite Simpson rule on [lower, upper] with an odd number of nodes.
struct QuadratureSpec {
    double lower = -1.0;
    double upper = 1.0;
    std::size_t points = 4001;
};

void validate(const QuadratureSpec& quad);

/// Range centred on the posterior mean of the 1-D segment [s, t], `width` posterior
/// standard deviations to each side.
QuadratureSpec auto_quadrature(std::span<const QuadraticLoss> losses, std::size_t s,
                               std::size_t t, double lambda, double eta,
                               std::size_t points = 4001, double width = 10.0);

/// log of int exp(-eta L_{s:t}(theta)) pi(theta) dtheta for 1-D losses, where
/// L_{s:t} sums the individual losses at each node. Segments are 1-based inclusive;
/// s > t gives the bare prior.
double quad_logZ_1d(std::span<const QuadraticLoss> losses, std::size_t s, std::size_t t,
                    double lambda, double eta, const QuadratureSpec& quad);

/// Ratio of the Simpson estimates of int theta e^{-eta L} pi and int e^{-eta L} pi.
double quad_posterior_mean_1d(std::span<const QuadraticLoss> losses, std::size_t s,
                              std::size_t t, double lambda, double eta,
                              const QuadratureSpec& quad);

struct BruteForceFs {
    /// log V_t: log-sum-exp over all 2^{t-1} segmentations of [1, t].
    double log_v = 0.0;
    /// The fixed-share prediction for round t + 1.
    Vector prediction;
};

inline constexpr std::size_t kMaxBruteForceRounds = 14;

/// Unrolls the fixed-share recursion: each segmentation of [1, t] into m blocks has
/// weight alpha^{m-1} (1-alpha)^{t-m} prod Z_block(eta); the next prediction keeps
/// the last block's posterior mean with probability 1 - alpha and falls back to the
/// prior mean 0 otherwise. Throws std::invalid_argument for t > 14.
BruteForceFs brute_force_fs(std::span<const QuadraticLoss> losses, std::size_t t, double lambda,
                            double eta, double alpha);

struct MixabilityReport {
    // Both sides are scaled by exp(eta l(mu)).
    double lhs = 0.0;  // exp(eta^2 ||Omega^{-1/2} b_perp||^2)
    double rhs = 0.0;  // Monte-Carlo estimate of E exp(-eta (l(theta) - l(mu))), theta ~ N(mu, Omega^{-1})
    double std_error = 0.0;
    bool pass = false;
};

/// ||A^{1/2}(mu - A^+ b)||^2, the quantity that must not exceed 1 / (2 eta).
double mixability_condition(const QuadraticLoss& loss, const Vector& mu);

/// Throws PreconditionFailure when the learning-rate condition fails (the
/// inequality would be vacuous). Passes iff lhs >= rhs - 4 * std_error.
MixabilityReport mc_mixability_check(const QuadraticLoss& loss, const Vector& mu,
                                     const Matrix& omega, double eta, std::size_t samples,
                                     std::uint64_t seed);

struct GreenReport {
    double mc_mean = 0.0;     // sample mean of l(theta) over X ~ N(mu, sigma^2)
    double target = 0.0;      // F(p, p_theta) - 0.5 E (d/dx log p(X))^2, analytic
    double std_error = 0.0;
    double fisher_estimate = 0.0;  // mc_mean + 0.5 E (d/dx log p)^2
    double fisher_exact = 0.0;
    bool pass = false;
};

/// Analytic Fisher divergence between N(mu, sigma^2) and the model whose score is
/// theta_1 + 2 theta_2 x.
double gaussian_fisher_divergence(double mu, double sigma, const Vector& theta);

/// Checks that the degree-2 score-matching loss is an unbiased estimate of the
/// Fisher divergence up to the theta-free constant. Passes iff |diff| <= 4 std_error.
GreenReport mc_green_check(double mu, double sigma, const Vector& theta, std::size_t samples,
                           std::uint64_t seed);

struct IdentityReport {
    std::size_t trials = 0;
    std::size_t squared_norm_violations = 0;
    std::size_t inverse_difference_violations = 0;
    std::size_t log_det_violations = 0;
    double squared_norm_max_err = 0.0;
    double inverse_difference_max_err = 0.0;
    double log_det_min_slack = std::numeric_limits<double>::infinity();

    std::size_t violations() const {
        return squared_norm_violations + inverse_difference_violations + log_det_violations;
    }
};

/// Squared-norm identity
///   ||(eta A + O)^{-1/2}(eta b + O mu)||^2 - mu'O mu + eta mu'A mu - 2 eta b'mu
///     = eta^2 ||(O + eta A)^{-1/2}(A mu - b)||^2,
/// inverse difference O^{-1} - (O+B)^{-1} = (O+B)^{-1} B O^{-1} = O^{-1} B (O+B)^{-1},
/// and ||B^{1/2}(O+B)^{-1}B^{1/2}|| <= log det(I + O^{-1/2} B O^{-1/2}),
/// on random PD O, PSD A/B and vectors in dimensions 1..6.
IdentityReport identity_checks(std::uint64_t seed, std::size_t trials);

/// Residuals of the three identities for one fixed instance.
struct IdentityResiduals {
    double squared_norm_lhs = 0.0;
    double squared_norm_rhs = 0.0;
    double squared_norm_scale = 0.0;
    double inverse_difference_err = 0.0;
    double log_det_lhs = 0.0;
    double log_det_rhs = 0.0;
};

IdentityResiduals identity_residuals(const Matrix& omega, const Matrix& a, const Matrix& b_mat,
                                     const Vector& b, const Vector& mu, double eta);

}  // namespace scpd::oracle
