#pragma once

#include "scpd/quadloss.hpp"

#include <string>
#include <vector>

namespace scpd {

/// Polynomial feature map Psi(x) = (psi_1(x), ..., psi_d(x)) given by monomial
/// exponent multi-indices over `input_dim` variables. The constant monomial is
/// excluded: its gradient and Laplacian vanish identically.
struct BasisSpec {
    Index input_dim = 0;
    std::vector<std::vector<int>> monomials;

    Index param_dim() const { return static_cast<Index>(monomials.size()); }
    /// "poly1" / "poly2" for the stock bases, "custom" otherwise.
    std::string name() const;
};

void validate(const BasisSpec& spec);

/// Degree 1: [x_1..x_n]. Degree 2: [x_1..x_n, x_1^2..x_n^2, x_i x_j (i < j, lexicographic)].
BasisSpec poly_basis(Index n, int degree);

/// Parses "poly1" or "poly2" for an `n`-dimensional input.
BasisSpec basis_from_name(const std::string& name, Index n);

struct FeatureDerivatives {
    Matrix grad;       // d x n, row i is the gradient of psi_i
    Vector laplacian;  // d
};

FeatureDerivatives eval_derivatives(const BasisSpec& spec, const Vector& x);

/// Green's-identity score-matching loss of one observation:
/// A = grad Psi(x) grad Psi(x)', b = -Laplacian Psi(x).
QuadraticLoss build_loss(const BasisSpec& spec, const Vector& x);

}  // namespace scpd
