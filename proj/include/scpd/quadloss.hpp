#pragma once

#include "scpd/types.hpp"

#include <cstddef>
#include <vector>

namespace scpd {

/// Eigenvalues at or below this fraction of the largest one are treated as zero.
inline constexpr double kDefaultRankTol = 1e-10;

/// One round's outcome: l(theta) = 0.5 theta' A theta - b' theta with A symmetric PSD.
struct QuadraticLoss {
    Matrix a;
    Vector b;

    Index dim() const { return b.size(); }

    static QuadraticLoss zero(Index dim) {
        return {Matrix::Zero(dim, dim), Vector::Zero(dim)};
    }
};

/// Throws std::invalid_argument unless `loss` is square, symmetric and PSD within
/// floating-point tolerance.
void validate(const QuadraticLoss& loss);

double loss_eval(const QuadraticLoss& loss, const Vector& theta);

/// Precision of the N(0, lambda^{-1} I) prior.
struct PriorParams {
    double lambda = 1.0;
};

void validate(const PriorParams& prior);

/// Eigen-decomposition of a symmetric PSD matrix with a relative rank cutoff.
/// Gives access to the range projector, the pseudo-inverse and the
/// square-root norms used by the regret conditions.
class PsdSpectrum {
public:
    explicit PsdSpectrum(const Matrix& a, double rank_tol = kDefaultRankTol);

    Index rank() const { return rank_; }
    double max_eigenvalue() const { return max_eig_; }

    /// Orthogonal projection onto Im(A).
    Vector project_range(const Vector& v) const;
    /// v - P_{Im(A)} v.
    Vector residual(const Vector& v) const { return v - project_range(v); }
    /// A^+ v.
    Vector pinv_apply(const Vector& v) const;
    /// ||A^{1/2} v||^2.
    double sqrt_norm2(const Vector& v) const;
    /// ||(A^+)^{1/2} v||^2.
    double pinv_sqrt_norm2(const Vector& v) const;

private:
    Matrix basis_;   // retained eigenvectors, one per column
    Vector values_;  // retained eigenvalues
    Index rank_ = 0;
    double max_eig_ = 0.0;
};

/// b^perp: component of b orthogonal to Im(A).
Vector orthogonal_residual(const QuadraticLoss& loss, double rank_tol = kDefaultRankTol);

/// Prefix sums of A_t and b_t; segment [s, t] (1-based, inclusive) is
/// prefix[t] - prefix[s - 1]. Segments with s > t are empty.
class SegmentStats {
public:
    explicit SegmentStats(Index dim);

    void push(const QuadraticLoss& loss);

    Index dim() const { return dim_; }
    std::size_t count() const { return prefix_b_.size() - 1; }

    const Matrix& prefix_a(std::size_t t) const { return prefix_a_.at(t); }
    const Vector& prefix_b(std::size_t t) const { return prefix_b_.at(t); }

    Matrix segment_a(std::size_t s, std::size_t t) const;
    Vector segment_b(std::size_t s, std::size_t t) const;

    /// L_{s:t}(theta); zero for an empty segment.
    double segment_loss(std::size_t s, std::size_t t, const Vector& theta) const;

private:
    void check_range(std::size_t s, std::size_t t) const;

    Index dim_;
    std::vector<Matrix> prefix_a_;
    std::vector<Vector> prefix_b_;
};

/// Reusable Cholesky workspace for the Gaussian-prior posterior of one segment.
///
/// Given segment sums SA, Sb it factors M = SA + (lambda / eta) I and returns
///   mean  = M^{-1} Sb
///   log Z = (d/2) log(lambda/eta) - 0.5 log det M + (eta/2) Sb' M^{-1} Sb
/// without ever exponentiating the quadratic term.
class PosteriorSolver {
public:
    explicit PosteriorSolver(Index dim);

    /// Writes the posterior mean into `mean` and returns log Z.
    double solve(const Matrix& sum_a, const Vector& sum_b, double lambda, double eta,
                 Vector& mean);

private:
    Matrix work_;
    Vector rhs_;
};

/// theta_hat_{s:t}(eta); the zero vector when s > t.
Vector posterior_mean(const SegmentStats& stats, std::size_t s, std::size_t t,
                      const PriorParams& prior, double eta);

/// log Z_{s:t}(eta); zero when s > t. Throws NumericFailure on a non-finite result.
double log_partition(const SegmentStats& stats, std::size_t s, std::size_t t,
                     const PriorParams& prior, double eta);

struct ArgminResult {
    Vector theta;
    /// false when Sb has a component outside Im(SA): the infimum of L_{s:t} is -inf.
    bool bounded = true;
};

/// Minimum-norm stationary point (SA)^+ Sb of the segment loss.
ArgminResult min_norm_argmin(const Matrix& sum_a, const Vector& sum_b,
                             double rank_tol = kDefaultRankTol);
ArgminResult min_norm_argmin(const SegmentStats& stats, std::size_t s, std::size_t t,
                             double rank_tol = kDefaultRankTol);

}  // namespace scpd
