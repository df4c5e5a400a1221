#include "scpd/regret.hpp"

#include <numeric>

namespace scpd {
namespace {

void check_lengths(std::span<const QuadraticLoss> losses, std::span<const Vector> predictions) {
    if (losses.size() != predictions.size()) {
        throw std::invalid_argument("regret: losses and predictions differ in length");
    }
    if (losses.empty()) throw std::invalid_argument("regret: empty loss sequence");
}

void check_partition(std::span<const std::size_t> tau, std::size_t T) {
    if (tau.size() < 2 || tau.front() != 0 || tau.back() != T) {
        throw std::invalid_argument("regret: switch points must run from 0 to T");
    }
    for (std::size_t k = 1; k < tau.size(); ++k) {
        if (tau[k] <= tau[k - 1]) {
            throw std::invalid_argument("regret: switch points must be strictly increasing");
        }
    }
}

struct SegmentSums {
    Matrix a;
    Vector b;
};

// Sums over the 0-based half-open range [from, to).
SegmentSums sum_range(std::span<const QuadraticLoss> losses, std::size_t from, std::size_t to) {
    const Index d = losses.front().dim();
    SegmentSums s{Matrix::Zero(d, d), Vector::Zero(d)};
    for (std::size_t j = from; j < to; ++j) {
        s.a += losses[j].a;
        s.b += losses[j].b;
    }
    return s;
}

double log_det_term(const Matrix& sum_a, double lambda, double eta) {
    const Index d = sum_a.rows();
    Matrix m = Matrix::Identity(d, d) + (eta / lambda) * sum_a;
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) throw NumericFailure("regret: log-det factorization failed");
    double ld = 0.0;
    for (Index i = 0; i < d; ++i) ld += std::log(llt.matrixL()(i, i));
    return 2.0 * ld / (2.0 * eta);
}

double sum_terms(const std::vector<BoundTerm>& terms) {
    double total = 0.0;
    for (const auto& t : terms) total += t.value;
    return total;
}

}  // namespace

RegretValue static_regret(std::span<const QuadraticLoss> losses,
                          std::span<const Vector> predictions) {
    const std::size_t T = losses.size();
    const std::size_t tau[2] = {0, T};
    return dynamic_regret(losses, predictions, tau);
}

RegretValue dynamic_regret(std::span<const QuadraticLoss> losses,
                           std::span<const Vector> predictions,
                           std::span<const std::size_t> switch_points) {
    check_lengths(losses, predictions);
    check_partition(switch_points, losses.size());
    RegretValue out;
    double suffered = 0.0;
    for (std::size_t t = 0; t < losses.size(); ++t) suffered += loss_eval(losses[t], predictions[t]);
    double comparator = 0.0;
    for (std::size_t k = 0; k + 1 < switch_points.size(); ++k) {
        const SegmentSums s = sum_range(losses, switch_points[k], switch_points[k + 1]);
        const ArgminResult best = min_norm_argmin(s.a, s.b);
        out.bounded = out.bounded && best.bounded;
        comparator += loss_eval({s.a, s.b}, best.theta);
    }
    out.regret = suffered - comparator;
    return out;
}

RegretBreakdown ew_bound(std::span<const QuadraticLoss> losses, const PriorParams& prior,
                         const EtaSchedule& schedule) {
    validate(prior);
    if (losses.empty()) throw std::invalid_argument("ew_bound: empty loss sequence");
    const std::size_t T = losses.size();
    const Index d = losses.front().dim();
    const double lambda = prior.lambda;
    const double eta_T = schedule.at(T);

    RegretBreakdown out;
    EwForecaster ew(d, prior, schedule);
    std::vector<Vector> predictions;
    predictions.reserve(T);
    Matrix past_a = Matrix::Zero(d, d);
    double residual_omega = 0.0;
    double residual_loose = 0.0;
    for (std::size_t t = 1; t <= T; ++t) {
        const QuadraticLoss& loss = losses[t - 1];
        const double eta = schedule.at(t);
        const PsdSpectrum spec(loss.a);
        const Vector prediction = ew.predict();

        const double lhs = spec.sqrt_norm2(prediction - spec.pinv_apply(loss.b));
        if (lhs > 1.0 / (2.0 * eta) * (1.0 + 1e-12)) ++out.condition_violations;

        const Vector perp = spec.residual(loss.b);
        Matrix omega = eta * past_a;
        omega.diagonal().array() += lambda;
        const double w = eta * perp.dot(Eigen::LLT<Matrix>(omega).solve(perp));
        const double l = eta * perp.squaredNorm() / lambda;
        out.omega_residuals.push_back(w);
        out.loose_residuals.push_back(l);
        residual_omega += w;
        residual_loose += l;

        predictions.push_back(ew.update(loss).prediction);
        past_a += loss.a;
    }
    out.conditions_ok = out.condition_violations == 0;

    const RegretValue r = static_regret(losses, predictions);
    out.empirical_regret = r.regret;
    out.bounded = r.bounded;

    const ArgminResult best = min_norm_argmin(past_a, sum_range(losses, 0, T).b);
    const double prior_term = lambda * best.theta.squaredNorm() / (2.0 * eta_T);
    const double ld = log_det_term(past_a, lambda, eta_T);
    out.terms = {{"prior", prior_term}, {"log_det", ld}, {"residual", residual_omega}};
    out.bound_total = sum_terms(out.terms);
    out.loose_total = prior_term + ld + residual_loose;
    return out;
}

RegretBreakdown fs_bound(std::span<const QuadraticLoss> losses, const PriorParams& prior,
                         const EtaSchedule& schedule, double alpha,
                         std::span<const std::size_t> switch_points) {
    validate(prior);
    if (losses.empty()) throw std::invalid_argument("fs_bound: empty loss sequence");
    const std::size_t T = losses.size();
    check_partition(switch_points, T);
    const Index d = losses.front().dim();
    const double lambda = prior.lambda;
    const double eta_T = schedule.at(T);
    const std::size_t m = switch_points.size() - 1;

    RegretBreakdown out;
    FsForecaster fs(d, prior, schedule, alpha);
    std::vector<Vector> predictions;
    predictions.reserve(T);
    for (const auto& loss : losses) predictions.push_back(fs.update(loss).prediction);
    const RegretValue r = dynamic_regret(losses, predictions, switch_points);
    out.empirical_regret = r.regret;
    out.bounded = r.bounded;

    // Condition over all pairs s < t; round 1 only carries the b_t part.
    PosteriorSolver solver(d);
    Matrix sum_a(d, d);
    Vector sum_b(d);
    Vector mean(d);
    double residual = 0.0;
    for (std::size_t t = 1; t <= T; ++t) {
        const QuadraticLoss& loss = losses[t - 1];
        const double eta = schedule.at(t);
        const double limit = 1.0 / (4.0 * eta) * (1.0 + 1e-12);
        const PsdSpectrum spec(loss.a);
        bool ok = spec.pinv_sqrt_norm2(loss.b) <= limit;
        sum_a.setZero();
        sum_b.setZero();
        for (std::size_t s = t - 1; ok && s >= 1; --s) {
            sum_a += losses[s - 1].a;
            sum_b += losses[s - 1].b;
            solver.solve(sum_a, sum_b, lambda, eta, mean);
            ok = spec.sqrt_norm2(mean) <= limit;
        }
        if (!ok) ++out.condition_violations;
        residual += eta * spec.residual(loss.b).squaredNorm() / lambda;
    }
    out.conditions_ok = out.condition_violations == 0;

    const double switches = times_log(static_cast<double>(m - 1), -std::log(alpha)) / eta_T;
    const double stays = times_log(static_cast<double>(T - m), -std::log1p(-alpha)) / eta_T;
    double seg_prior = 0.0;
    double seg_log_det = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const SegmentSums s = sum_range(losses, switch_points[k], switch_points[k + 1]);
        const ArgminResult best = min_norm_argmin(s.a, s.b);
        seg_prior += lambda * best.theta.squaredNorm() / (2.0 * eta_T);
        seg_log_det += log_det_term(s.a, lambda, eta_T);
    }
    out.terms = {{"switch", switches},        {"stay", stays},
                 {"residual", residual},      {"segment_prior", seg_prior},
                 {"segment_log_det", seg_log_det}};
    out.bound_total = sum_terms(out.terms);
    out.loose_total = out.bound_total;
    return out;
}

}  // namespace scpd
