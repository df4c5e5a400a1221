#pragma once

// Randomized comparisons of the closed forms against the oracles, shared by the
// selfcheck command and the acceptance harness.

#include <cstddef>
#include <cstdint>
#include <string>

namespace scpd::checks {

struct CheckResult {
    bool pass = false;
    std::string detail;
};

/// Random 1-D segments (t <= 20, lambda and eta in [0.1, 2]): log Z and the posterior
/// mean against Simpson quadrature. Tolerance 1e-6, relative to max(1, |quadrature|).
CheckResult closed_form_vs_quadrature(std::uint64_t seed, std::size_t instances);

/// Random 1-D streams with t in 10..12 and alpha cycling over {0.001, 0.1, 0.5}:
/// log V_t and the next fixed-share prediction against exhaustive enumeration,
/// relative error <= 1e-8.
CheckResult recursion_vs_enumeration(std::uint64_t seed, std::size_t streams);

/// alpha = 0 on 2-D Gaussian streams with the degree-2 basis (d = 5): fixed share
/// must coincide with EW to 1e-9 and the statistic must stay exactly 0.
CheckResult alpha_zero_degeneracy(std::uint64_t seed, std::size_t streams, std::size_t length);

/// Random instances satisfying the learning-rate condition; the Monte-Carlo
/// expectation must not exceed the closed-form bound beyond 4 standard errors.
CheckResult mixability(std::uint64_t seed, std::size_t instances, std::size_t samples);

/// Random (mu, sigma, theta) plus the matching Gaussian score parameters, where the
/// estimated Fisher divergence must vanish within 4 standard errors.
CheckResult green_identity(std::uint64_t seed, std::size_t configs, std::size_t samples);

CheckResult matrix_identities(std::uint64_t seed, std::size_t trials);

}  // namespace scpd::checks
