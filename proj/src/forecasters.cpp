#include "scpd/forecasters.hpp"

#include <algorithm>
#include <sstream>

namespace scpd {
namespace {

void require_loss_dim(Index dim, const QuadraticLoss& loss) {
    if (loss.b.size() != dim || loss.a.rows() != dim || loss.a.cols() != dim) {
        throw std::invalid_argument("forecaster update: loss dimension mismatch");
    }
}

void require_positive_eta(double eta) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw std::invalid_argument("EtaSchedule: learning rates must be positive and finite");
    }
}

}  // namespace

EtaSchedule EtaSchedule::constant(double eta) {
    require_positive_eta(eta);
    EtaSchedule s;
    s.kind_ = Kind::Constant;
    s.value_ = eta;
    return s;
}

EtaSchedule EtaSchedule::inverse_sqrt() {
    EtaSchedule s;
    s.kind_ = Kind::InverseSqrt;
    return s;
}

EtaSchedule EtaSchedule::explicit_values(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("EtaSchedule: empty explicit list");
    for (std::size_t i = 0; i < values.size(); ++i) {
        require_positive_eta(values[i]);
        if (i > 0 && values[i] > values[i - 1]) {
            throw std::invalid_argument("EtaSchedule: explicit values must be non-increasing");
        }
    }
    EtaSchedule s;
    s.kind_ = Kind::Explicit;
    s.values_ = std::move(values);
    return s;
}

double EtaSchedule::at(std::size_t t) const {
    if (t == 0) throw std::out_of_range("EtaSchedule: rounds are 1-based");
    switch (kind_) {
        case Kind::Constant:
            return value_;
        case Kind::InverseSqrt:
            return 1.0 / std::sqrt(static_cast<double>(t));
        case Kind::Explicit:
            if (t > values_.size()) throw std::out_of_range("EtaSchedule: explicit list exhausted");
            return values_[t - 1];
    }
    return value_;
}

std::string EtaSchedule::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Constant:
            os.precision(17);
            os << value_;
            break;
        case Kind::InverseSqrt:
            os << "inv-sqrt";
            break;
        case Kind::Explicit:
            os << "explicit[" << values_.size() << "]";
            break;
    }
    return os.str();
}

EwForecaster::EwForecaster(Index dim, PriorParams prior, EtaSchedule schedule)
    : stats_(dim), prior_(prior), schedule_(std::move(schedule)) {
    validate(prior_);
}

Vector EwForecaster::predict() const {
    const std::size_t t = round();
    if (t == 1) return Vector::Zero(stats_.dim());
    return posterior_mean(stats_, 1, t - 1, prior_, schedule_.at(t));
}

Suffered EwForecaster::update(const QuadraticLoss& loss) {
    require_loss_dim(stats_.dim(), loss);
    Suffered out;
    out.prediction = predict();
    out.loss = loss_eval(loss, out.prediction);
    cumulative_loss_ += out.loss;
    stats_.push(loss);
    return out;
}

std::vector<double> fixed_share_terms(std::span<const double> log_z_ending,
                                      std::span<const double> log_v_prev, double log_alpha,
                                      double log_stay) {
    const std::size_t n = log_z_ending.size();
    if (n == 0 || log_v_prev.size() + 1 != n) {
        throw std::invalid_argument("fixed_share_terms: need n log Z values and n-1 log V values");
    }
    std::vector<double> terms(n);
    terms[0] = times_log(static_cast<double>(n - 1), log_stay) + log_z_ending[0];
    for (std::size_t j = 2; j <= n; ++j) {
        terms[j - 1] = log_alpha + times_log(static_cast<double>(n - j), log_stay) +
                       log_v_prev[j - 2] + log_z_ending[j - 1];
    }
    return terms;
}

FsForecaster::FsForecaster(Index dim, PriorParams prior, EtaSchedule schedule, double alpha)
    : dim_(dim),
      prior_(prior),
      schedule_(std::move(schedule)),
      alpha_(alpha),
      stats_(dim),
      solver_(dim) {
    validate(prior_);
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("FsForecaster: alpha must lie in [0, 1]");
    }
    log_alpha_ = std::log(alpha_);
    log_stay_ = std::log1p(-alpha_);
}

Vector FsForecaster::mixture(std::span<const Vector> means, std::span<const double> log_z,
                             std::span<const double> log_v) const {
    const std::size_t n = log_z.size();
    const std::vector<double> terms =
        fixed_share_terms(log_z, log_v.subspan(0, n - 1), log_alpha_, log_stay_);
    const double log_v_n = log_v[n - 1];
    if (!std::isfinite(log_v_n)) throw NumericFailure("FsForecaster: non-finite log V");

    Vector out = Vector::Zero(dim_);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double log_w = log_stay_ + terms[j] - log_v_n;
        if (std::isnan(log_w) || log_w > 1e-6) {
            throw NumericFailure("FsForecaster: invalid mixture weight");
        }
        const double w = std::exp(log_w);
        total += w;
        out.noalias() += w * means[j];
    }
    if (alpha_ < 1.0 && std::abs(total - (1.0 - alpha_)) > 1e-8) {
        throw NumericFailure("FsForecaster: mixture weights do not sum to 1 - alpha");
    }
    return out;
}

FsForecaster::Segments FsForecaster::recompute(double eta, std::size_t n) const {
    Segments seg;
    seg.log_v.reserve(n);
    PosteriorSolver solver(dim_);
    Matrix sum_a(dim_, dim_);
    Vector sum_b(dim_);
    Vector mean(dim_);
    std::vector<double> log_z_k;
    for (std::size_t k = 1; k <= n; ++k) {
        log_z_k.assign(k, 0.0);
        if (k == n) seg.means.assign(n, Vector());
        sum_a.setZero();
        sum_b.setZero();
        for (std::size_t j = k; j >= 1; --j) {
            sum_a += losses_[j - 1].a;
            sum_b += losses_[j - 1].b;
            log_z_k[j - 1] = solver.solve(sum_a, sum_b, prior_.lambda, eta, mean);
            if (k == n) seg.means[j - 1] = mean;
        }
        const std::vector<double> terms =
            fixed_share_terms(log_z_k, seg.log_v, log_alpha_, log_stay_);
        const double lv = log_sum_exp(terms);
        if (!std::isfinite(lv)) throw NumericFailure("FsForecaster: non-finite log V");
        seg.log_v.push_back(lv);
    }
    seg.log_z = std::move(log_z_k);
    return seg;
}

Vector FsForecaster::predict() const {
    const std::size_t t = round();
    if (t == 1) return Vector::Zero(dim_);
    const std::size_t n = t - 1;
    if (schedule_.is_constant()) return mixture(seg_mean_, seg_log_z_, log_v_);
    const Segments seg = recompute(schedule_.at(t), n);
    return mixture(seg.means, seg.log_z, seg.log_v);
}

std::vector<double> FsForecaster::log_v_at(double eta) const {
    if (!(eta > 0.0)) throw std::invalid_argument("log_v_at: eta must be positive");
    if (losses_.empty()) return {};
    return recompute(eta, losses_.size()).log_v;
}

Suffered FsForecaster::update(const QuadraticLoss& loss) {
    require_loss_dim(dim_, loss);
    Suffered out;
    out.prediction = predict();
    out.loss = loss_eval(loss, out.prediction);
    cumulative_loss_ += out.loss;
    stats_.push(loss);
    losses_.push_back(loss);

    if (schedule_.is_constant()) {
        const double eta = schedule_.at(1);
        for (auto& a : run_a_) a += loss.a;
        for (auto& b : run_b_) b += loss.b;
        run_a_.push_back(loss.a);
        run_b_.push_back(loss.b);
        const std::size_t n = run_a_.size();
        seg_mean_.resize(n);
        seg_log_z_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            seg_log_z_[j] = solver_.solve(run_a_[j], run_b_[j], prior_.lambda, eta, seg_mean_[j]);
        }
        const std::vector<double> terms =
            fixed_share_terms(seg_log_z_, log_v_, log_alpha_, log_stay_);
        const double lv = log_sum_exp(terms);
        if (!std::isfinite(lv)) throw NumericFailure("FsForecaster: non-finite log V");
        log_v_.push_back(lv);
    }
    return out;
}

std::pair<double, double> cumulative_losses(const EwForecaster& ew, const FsForecaster& fs) {
    if (ew.round() != fs.round()) {
        throw InvalidState("cumulative_losses: forecasters are at different rounds");
    }
    return {ew.cumulative_loss(), fs.cumulative_loss()};
}

}  // namespace scpd
