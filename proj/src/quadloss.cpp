#include "scpd/quadloss.hpp"

#include <algorithm>
#include <string>

namespace scpd {
namespace {

// Relative size of Sb outside Im(SA) above which a segment loss is unbounded below.
constexpr double kBoundedTol = 1e-8;

void require_dim(Index expected, Index got, const char* what) {
    if (expected != got) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (expected " +
                                    std::to_string(expected) + ", got " +
                                    std::to_string(got) + ")");
    }
}

}  // namespace

void validate(const QuadraticLoss& loss) {
    const Index d = loss.b.size();
    if (loss.a.rows() != d || loss.a.cols() != d) {
        throw std::invalid_argument("QuadraticLoss: A must be d x d with d = dim(b)");
    }
    if (!loss.a.allFinite() || !loss.b.allFinite()) {
        throw std::invalid_argument("QuadraticLoss: non-finite entries");
    }
    if (d == 0) return;
    const double scale = loss.a.cwiseAbs().maxCoeff();
    const double asym = (loss.a - loss.a.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * (1.0 + scale)) {
        throw std::invalid_argument("QuadraticLoss: A is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(loss.a, Eigen::EigenvaluesOnly);
    const double norm = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (eig.eigenvalues().minCoeff() < -1e-10 * norm) {
        throw std::invalid_argument("QuadraticLoss: A is not positive semidefinite");
    }
}

double loss_eval(const QuadraticLoss& loss, const Vector& theta) {
    require_dim(loss.dim(), theta.size(), "loss_eval");
    return 0.5 * theta.dot(loss.a * theta) - loss.b.dot(theta);
}

void validate(const PriorParams& prior) {
    if (!(prior.lambda > 0.0) || !std::isfinite(prior.lambda)) {
        throw std::invalid_argument("PriorParams: lambda must be positive and finite");
    }
}

PsdSpectrum::PsdSpectrum(const Matrix& a, double rank_tol) {
    const Index d = a.rows();
    if (a.cols() != d) throw std::invalid_argument("PsdSpectrum: matrix must be square");
    if (d == 0) return;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (a + a.transpose()));
    const Vector& ev = eig.eigenvalues();
    max_eig_ = std::max(ev.maxCoeff(), 0.0);
    const double cutoff = rank_tol * max_eig_;
    std::vector<Index> keep;
    for (Index i = 0; i < d; ++i) {
        if (ev(i) > cutoff && ev(i) > 0.0) keep.push_back(i);
    }
    rank_ = static_cast<Index>(keep.size());
    basis_.resize(d, rank_);
    values_.resize(rank_);
    for (Index j = 0; j < rank_; ++j) {
        basis_.col(j) = eig.eigenvectors().col(keep[j]);
        values_(j) = ev(keep[j]);
    }
}

Vector PsdSpectrum::project_range(const Vector& v) const {
    if (rank_ == 0) return Vector::Zero(v.size());
    return basis_ * (basis_.transpose() * v);
}

Vector PsdSpectrum::pinv_apply(const Vector& v) const {
    if (rank_ == 0) return Vector::Zero(v.size());
    return basis_ * (basis_.transpose() * v).cwiseQuotient(values_);
}

double PsdSpectrum::sqrt_norm2(const Vector& v) const {
    if (rank_ == 0) return 0.0;
    const Vector c = basis_.transpose() * v;
    return c.cwiseProduct(c).dot(values_);
}

double PsdSpectrum::pinv_sqrt_norm2(const Vector& v) const {
    if (rank_ == 0) return 0.0;
    const Vector c = basis_.transpose() * v;
    return c.cwiseProduct(c).cwiseQuotient(values_).sum();
}

Vector orthogonal_residual(const QuadraticLoss& loss, double rank_tol) {
    return PsdSpectrum(loss.a, rank_tol).residual(loss.b);
}

SegmentStats::SegmentStats(Index dim) : dim_(dim) {
    if (dim <= 0) throw std::invalid_argument("SegmentStats: dimension must be positive");
    prefix_a_.push_back(Matrix::Zero(dim, dim));
    prefix_b_.push_back(Vector::Zero(dim));
}

void SegmentStats::push(const QuadraticLoss& loss) {
    require_dim(dim_, loss.dim(), "SegmentStats::push");
    require_dim(dim_, loss.a.rows(), "SegmentStats::push");
    prefix_a_.push_back(prefix_a_.back() + loss.a);
    prefix_b_.push_back(prefix_b_.back() + loss.b);
}

void SegmentStats::check_range(std::size_t s, std::size_t t) const {
    if (s < 1 || t > count()) {
        throw std::out_of_range("SegmentStats: segment [" + std::to_string(s) + ", " +
                                std::to_string(t) + "] outside [1, " +
                                std::to_string(count()) + "]");
    }
}

Matrix SegmentStats::segment_a(std::size_t s, std::size_t t) const {
    check_range(s, t);
    if (s > t) return Matrix::Zero(dim_, dim_);
    return prefix_a_[t] - prefix_a_[s - 1];
}

Vector SegmentStats::segment_b(std::size_t s, std::size_t t) const {
    check_range(s, t);
    if (s > t) return Vector::Zero(dim_);
    return prefix_b_[t] - prefix_b_[s - 1];
}

double SegmentStats::segment_loss(std::size_t s, std::size_t t, const Vector& theta) const {
    require_dim(dim_, theta.size(), "segment_loss");
    if (s > t) {
        check_range(s, t);
        return 0.0;
    }
    return loss_eval({segment_a(s, t), segment_b(s, t)}, theta);
}

PosteriorSolver::PosteriorSolver(Index dim) : work_(dim, dim), rhs_(dim) {}

double PosteriorSolver::solve(const Matrix& sum_a, const Vector& sum_b, double lambda,
                              double eta, Vector& mean) {
    const Index d = sum_b.size();
    const double ridge = lambda / eta;
    work_ = sum_a;
    work_.diagonal().array() += ridge;
    Eigen::LLT<Eigen::Ref<Matrix>> llt(work_);
    if (llt.info() != Eigen::Success) {
        throw NumericFailure("PosteriorSolver: Cholesky factorization failed");
    }
    mean.resize(d);
    mean = llt.solve(sum_b);
    double log_det = 0.0;
    for (Index i = 0; i < d; ++i) log_det += std::log(work_(i, i));
    log_det *= 2.0;
    const double log_z = 0.5 * static_cast<double>(d) * std::log(ridge) - 0.5 * log_det +
                         0.5 * eta * sum_b.dot(mean);
    if (!std::isfinite(log_z)) throw NumericFailure("PosteriorSolver: non-finite log Z");
    return log_z;
}

Vector posterior_mean(const SegmentStats& stats, std::size_t s, std::size_t t,
                      const PriorParams& prior, double eta) {
    validate(prior);
    if (!(eta > 0.0)) throw std::invalid_argument("posterior_mean: eta must be positive");
    if (s > t) {
        if (s < 1 || t > stats.count()) throw std::out_of_range("posterior_mean: bad segment");
        return Vector::Zero(stats.dim());
    }
    PosteriorSolver solver(stats.dim());
    Vector mean;
    solver.solve(stats.segment_a(s, t), stats.segment_b(s, t), prior.lambda, eta, mean);
    return mean;
}

double log_partition(const SegmentStats& stats, std::size_t s, std::size_t t,
                     const PriorParams& prior, double eta) {
    validate(prior);
    if (!(eta > 0.0)) throw std::invalid_argument("log_partition: eta must be positive");
    if (s > t) {
        if (s < 1 || t > stats.count()) throw std::out_of_range("log_partition: bad segment");
        return 0.0;
    }
    PosteriorSolver solver(stats.dim());
    Vector mean;
    return solver.solve(stats.segment_a(s, t), stats.segment_b(s, t), prior.lambda, eta, mean);
}

ArgminResult min_norm_argmin(const Matrix& sum_a, const Vector& sum_b, double rank_tol) {
    require_dim(sum_a.rows(), sum_b.size(), "min_norm_argmin");
    const PsdSpectrum spec(sum_a, rank_tol);
    ArgminResult out;
    out.theta = spec.pinv_apply(sum_b);
    out.bounded = spec.residual(sum_b).norm() <= kBoundedTol * (1.0 + sum_b.norm());
    return out;
}

ArgminResult min_norm_argmin(const SegmentStats& stats, std::size_t s, std::size_t t,
                             double rank_tol) {
    if (s > t) throw std::out_of_range("min_norm_argmin: empty segment");
    return min_norm_argmin(stats.segment_a(s, t), stats.segment_b(s, t), rank_tol);
}

}  // namespace scpd
