#include "scpd/oracle.hpp"

#include "scpd/scoreloss.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <vector>

namespace scpd::oracle {
namespace {

struct Scalar1d {
    double a = 0.0;
    double b = 0.0;
};

std::vector<Scalar1d> segment_1d(std::span<const QuadraticLoss> losses, std::size_t s,
                                 std::size_t t) {
    if (s < 1 || t > losses.size()) throw std::out_of_range("oracle: segment outside loss list");
    std::vector<Scalar1d> out;
    for (std::size_t j = s; j <= t; ++j) {
        const QuadraticLoss& l = losses[j - 1];
        if (l.dim() != 1 || l.a.rows() != 1) {
            throw std::invalid_argument("oracle: quadrature requires 1-D losses");
        }
        out.push_back({l.a(0, 0), l.b(0)});
    }
    return out;
}

// log of exp(-eta sum_j l_j(theta)) pi(theta), each loss evaluated separately.
double log_integrand(const std::vector<Scalar1d>& seg, double lambda, double eta,
                     double theta) {
    double total = 0.0;
    for (const auto& l : seg) total += 0.5 * l.a * theta * theta - l.b * theta;
    return -eta * total + 0.5 * std::log(lambda / (2.0 * std::numbers::pi)) -
           0.5 * lambda * theta * theta;
}

struct SimpsonSums {
    double shift = 0.0;  // max log integrand over the nodes
    double mass = 0.0;   // int e^{g - shift}
    double first = 0.0;  // int theta e^{g - shift}
};

SimpsonSums simpson(const std::vector<Scalar1d>& seg, double lambda, double eta,
                    const QuadratureSpec& quad) {
    validate(quad);
    const std::size_t n = quad.points;
    const double h = (quad.upper - quad.lower) / static_cast<double>(n - 1);
    std::vector<double> g(n);
    std::vector<double> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i] = quad.lower + h * static_cast<double>(i);
        g[i] = log_integrand(seg, lambda, eta, nodes[i]);
        if (!std::isfinite(g[i])) throw NumericFailure("oracle: non-finite integrand");
    }
    SimpsonSums out;
    out.shift = *std::max_element(g.begin(), g.end());
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        const double f = std::exp(g[i] - out.shift);
        out.mass += w * f;
        out.first += w * nodes[i] * f;
    }
    out.mass *= h / 3.0;
    out.first *= h / 3.0;
    return out;
}

Matrix random_pd(std::mt19937_64& rng, Index d) {
    std::normal_distribution<double> normal;
    Matrix g(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) g(i, j) = normal(rng);
    Matrix out = g * g.transpose() / static_cast<double>(d);
    out.diagonal().array() += 0.1;
    return 0.5 * (out + out.transpose());
}

Matrix random_psd(std::mt19937_64& rng, Index d, Index rank) {
    std::normal_distribution<double> normal;
    Matrix h(d, rank);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < rank; ++j) h(i, j) = normal(rng);
    Matrix out = h * h.transpose();
    return 0.5 * (out + out.transpose());
}

Vector random_vector(std::mt19937_64& rng, Index d) {
    std::normal_distribution<double> normal;
    Vector v(d);
    for (Index i = 0; i < d; ++i) v(i) = normal(rng);
    return v;
}

// Symmetric PSD square root (and inverse square root) by eigen-decomposition.
Matrix sym_pow(const Matrix& m, double power) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.transpose()));
    Vector ev = eig.eigenvalues().cwiseMax(0.0);
    for (Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) > 0.0 ? std::pow(ev(i), power) : 0.0;
    return eig.eigenvectors() * ev.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

void validate(const QuadratureSpec& quad) {
    if (!(quad.upper > quad.lower) || !std::isfinite(quad.lower) || !std::isfinite(quad.upper)) {
        throw std::invalid_argument("QuadratureSpec: need finite lower < upper");
    }
    if (quad.points < 3 || quad.points % 2 == 0) {
        throw std::invalid_argument("QuadratureSpec: points must be odd and >= 3");
    }
}

QuadratureSpec auto_quadrature(std::span<const QuadraticLoss> losses, std::size_t s,
                               std::size_t t, double lambda, double eta, std::size_t points,
                               double width) {
    double sum_a = 0.0;
    double sum_b = 0.0;
    if (s <= t) {
        for (const auto& l : segment_1d(losses, s, t)) {
            sum_a += l.a;
            sum_b += l.b;
        }
    }
    const double precision = eta * sum_a + lambda;
    const double centre = eta * sum_b / precision;
    const double sd = 1.0 / std::sqrt(precision);
    return {centre - width * sd, centre + width * sd, points};
}

double quad_logZ_1d(std::span<const QuadraticLoss> losses, std::size_t s, std::size_t t,
                    double lambda, double eta, const QuadratureSpec& quad) {
    const std::vector<Scalar1d> seg = s <= t ? segment_1d(losses, s, t) : std::vector<Scalar1d>{};
    const SimpsonSums sums = simpson(seg, lambda, eta, quad);
    const double out = sums.shift + std::log(sums.mass);
    if (!std::isfinite(out)) throw NumericFailure("quad_logZ_1d: non-finite result");
    return out;
}

double quad_posterior_mean_1d(std::span<const QuadraticLoss> losses, std::size_t s,
                              std::size_t t, double lambda, double eta,
                              const QuadratureSpec& quad) {
    const std::vector<Scalar1d> seg = s <= t ? segment_1d(losses, s, t) : std::vector<Scalar1d>{};
    const SimpsonSums sums = simpson(seg, lambda, eta, quad);
    return sums.first / sums.mass;
}

BruteForceFs brute_force_fs(std::span<const QuadraticLoss> losses, std::size_t t, double lambda,
                            double eta, double alpha) {
    if (t < 1 || t > kMaxBruteForceRounds) {
        throw std::invalid_argument("brute_force_fs: t must lie in [1, 14]");
    }
    if (losses.size() < t) throw std::invalid_argument("brute_force_fs: too few losses");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("brute_force_fs: bad alpha");

    SegmentStats stats(losses.front().dim());
    for (std::size_t j = 0; j < t; ++j) stats.push(losses[j]);
    const PriorParams prior{lambda};

    // log Z of every block [i, j], 1-based, stored at (i-1) * t + (j-1).
    std::vector<double> log_z(t * t, 0.0);
    for (std::size_t i = 1; i <= t; ++i)
        for (std::size_t j = i; j <= t; ++j)
            log_z[(i - 1) * t + (j - 1)] = log_partition(stats, i, j, prior, eta);
    std::vector<Vector> last_mean(t);
    for (std::size_t i = 1; i <= t; ++i) last_mean[i - 1] = posterior_mean(stats, i, t, prior, eta);

    const double log_alpha = std::log(alpha);
    const double log_stay = std::log1p(-alpha);
    const std::size_t patterns = std::size_t{1} << (t - 1);
    std::vector<double> log_w(patterns);
    std::vector<std::size_t> last_start(patterns);
    // Bit k of the mask set: a block boundary between rounds k+1 and k+2.
    for (std::size_t mask = 0; mask < patterns; ++mask) {
        double w = 0.0;
        std::size_t start = 1;
        std::size_t blocks = 0;
        for (std::size_t pos = 1; pos <= t; ++pos) {
            const bool ends = pos == t || ((mask >> (pos - 1)) & 1U);
            if (ends) {
                w += log_z[(start - 1) * t + (pos - 1)];
                ++blocks;
                if (pos < t) start = pos + 1;
            }
        }
        w += times_log(static_cast<double>(blocks - 1), log_alpha) +
             times_log(static_cast<double>(t - blocks), log_stay);
        log_w[mask] = w;
        last_start[mask] = start;
    }

    BruteForceFs out;
    out.log_v = log_sum_exp(log_w);
    out.prediction = Vector::Zero(stats.dim());
    if (alpha < 1.0) {
        for (std::size_t mask = 0; mask < patterns; ++mask) {
            const double w = std::exp(log_stay + log_w[mask] - out.log_v);
            out.prediction += w * last_mean[last_start[mask] - 1];
        }
    }
    return out;
}

double mixability_condition(const QuadraticLoss& loss, const Vector& mu) {
    const PsdSpectrum spec(loss.a);
    return spec.sqrt_norm2(mu - spec.pinv_apply(loss.b));
}

MixabilityReport mc_mixability_check(const QuadraticLoss& loss, const Vector& mu,
                                     const Matrix& omega, double eta, std::size_t samples,
                                     std::uint64_t seed) {
    const Index d = loss.dim();
    if (mu.size() != d || omega.rows() != d || omega.cols() != d) {
        throw std::invalid_argument("mc_mixability_check: dimension mismatch");
    }
    if (!(eta > 0.0) || samples < 2) {
        throw std::invalid_argument("mc_mixability_check: need eta > 0 and >= 2 samples");
    }
    if (mixability_condition(loss, mu) > 1.0 / (2.0 * eta)) {
        throw PreconditionFailure("mc_mixability_check: learning-rate condition violated");
    }
    Eigen::LLT<Matrix> llt(omega);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("mc_mixability_check: omega is not positive definite");
    }
    // theta = mu + u, u = L^{-T} z has covariance (L L')^{-1} = omega^{-1}.
    const Matrix transform =
        llt.matrixU().solve(Matrix::Identity(d, d));  // U = L', so this is L^{-T}

    const Vector perp = orthogonal_residual(loss);
    MixabilityReport out;
    out.lhs = std::exp(eta * eta * perp.dot(llt.solve(perp)));
    const Vector slope = loss.a * mu - loss.b;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Vector z(d);
    Vector u(d);
    Vector a_u(d);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        for (Index k = 0; k < d; ++k) z(k) = normal(rng);
        // l(mu + u) - l(mu) = u'A u / 2 + (A mu - b)'u
        u.noalias() = transform * z;
        a_u.noalias() = loss.a * u;
        const double value = std::exp(-eta * (0.5 * u.dot(a_u) + slope.dot(u)));
        const double delta = value - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (value - mean);
    }
    const auto n = static_cast<double>(samples);
    out.rhs = mean;
    out.std_error = std::sqrt(m2 / (n - 1.0) / n);
    out.pass = out.lhs >= out.rhs - 4.0 * out.std_error;
    return out;
}

double gaussian_fisher_divergence(double mu, double sigma, const Vector& theta) {
    if (theta.size() != 2) throw std::invalid_argument("gaussian_fisher_divergence: theta is 2-D");
    // Score difference u(x) = -(x - mu)/sigma^2 - theta_1 - 2 theta_2 x = c0 + c1 x.
    const double s2 = sigma * sigma;
    const double c1 = -1.0 / s2 - 2.0 * theta(1);
    const double c0 = mu / s2 - theta(0);
    const double mean_u = c0 + c1 * mu;
    return 0.5 * (mean_u * mean_u + c1 * c1 * s2);
}

GreenReport mc_green_check(double mu, double sigma, const Vector& theta, std::size_t samples,
                           std::uint64_t seed) {
    if (!(sigma > 0.0)) throw std::invalid_argument("mc_green_check: sigma must be positive");
    if (samples < 2) throw std::invalid_argument("mc_green_check: need >= 2 samples");
    const BasisSpec basis = poly_basis(1, 2);
    const double score_energy = 0.5 / (sigma * sigma);  // 0.5 E (d/dx log p)^2

    GreenReport out;
    out.fisher_exact = gaussian_fisher_divergence(mu, sigma, theta);
    out.target = out.fisher_exact - score_energy;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(mu, sigma);
    Vector x(1);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        x(0) = normal(rng);
        const double value = loss_eval(build_loss(basis, x), theta);
        const double delta = value - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (value - mean);
    }
    const auto n = static_cast<double>(samples);
    out.mc_mean = mean;
    out.std_error = std::sqrt(m2 / (n - 1.0) / n);
    out.fisher_estimate = mean + score_energy;
    out.pass = std::abs(out.mc_mean - out.target) <=
               4.0 * out.std_error + 1e-12 * (1.0 + std::abs(out.target));
    return out;
}

IdentityResiduals identity_residuals(const Matrix& omega, const Matrix& a, const Matrix& b_mat,
                                     const Vector& b, const Vector& mu, double eta) {
    const Index d = omega.rows();
    IdentityResiduals r;

    const Matrix m = eta * a + omega;
    Eigen::LLT<Matrix> m_llt(m);
    const Vector v = eta * b + omega * mu;
    const double t1 = v.dot(m_llt.solve(v));
    const double t2 = mu.dot(omega * mu);
    const double t3 = eta * mu.dot(a * mu);
    const double t4 = 2.0 * eta * b.dot(mu);
    r.squared_norm_lhs = t1 - t2 + t3 - t4;
    const Vector w = a * mu - b;
    r.squared_norm_rhs = eta * eta * w.dot(m_llt.solve(w));
    r.squared_norm_scale = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4);

    const Matrix id = Matrix::Identity(d, d);
    const Matrix omega_inv = Eigen::LLT<Matrix>(omega).solve(id);
    const Matrix sum_inv = Eigen::LLT<Matrix>(omega + b_mat).solve(id);
    const Matrix x = omega_inv - sum_inv;
    const Matrix y = sum_inv * b_mat * omega_inv;
    const Matrix z = omega_inv * b_mat * sum_inv;
    const double scale = 1.0 + omega_inv.cwiseAbs().maxCoeff();
    r.inverse_difference_err =
        std::max((x - y).cwiseAbs().maxCoeff(), (x - z).cwiseAbs().maxCoeff()) / scale;

    const Matrix b_half = sym_pow(b_mat, 0.5);
    const Matrix inner = b_half * sum_inv * b_half;
    r.log_det_lhs =
        Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (inner + inner.transpose()), Eigen::EigenvaluesOnly)
            .eigenvalues()
            .cwiseAbs()
            .maxCoeff();
    const Matrix o_inv_half = sym_pow(omega, -0.5);
    const Matrix whitened = id + o_inv_half * b_mat * o_inv_half;
    Eigen::LLT<Matrix> w_llt(0.5 * (whitened + whitened.transpose()));
    double ld = 0.0;
    for (Index i = 0; i < d; ++i) ld += std::log(w_llt.matrixL()(i, i));
    r.log_det_rhs = 2.0 * ld;
    return r;
}

IdentityReport identity_checks(std::uint64_t seed, std::size_t trials) {
    if (trials < 1) throw std::invalid_argument("identity_checks: trials must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim_dist(1, 6);
    std::uniform_real_distribution<double> eta_dist(0.1, 2.0);
    IdentityReport rep;
    rep.trials = trials;
    for (std::size_t k = 0; k < trials; ++k) {
        const Index d = dim_dist(rng);
        std::uniform_int_distribution<Index> rank_dist(0, d);
        const Matrix omega = random_pd(rng, d);
        const Matrix a = random_psd(rng, d, rank_dist(rng));
        const Matrix b_mat = random_psd(rng, d, rank_dist(rng));
        const Vector b = random_vector(rng, d);
        const Vector mu = random_vector(rng, d);
        const double eta = eta_dist(rng);

        const IdentityResiduals r = identity_residuals(omega, a, b_mat, b, mu, eta);
        const double e1 = std::abs(r.squared_norm_lhs - r.squared_norm_rhs) / (1.0 + r.squared_norm_scale);
        rep.squared_norm_max_err = std::max(rep.squared_norm_max_err, e1);
        if (e1 > 1e-8) ++rep.squared_norm_violations;
        rep.inverse_difference_max_err = std::max(rep.inverse_difference_max_err, r.inverse_difference_err);
        if (r.inverse_difference_err > 1e-8) ++rep.inverse_difference_violations;
        const double slack = r.log_det_rhs - r.log_det_lhs;
        rep.log_det_min_slack = std::min(rep.log_det_min_slack, slack);
        if (slack < -1e-10) ++rep.log_det_violations;
    }
    return rep;
}

}  // namespace scpd::oracle
