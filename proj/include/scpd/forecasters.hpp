#pragma once

#include "scpd/quadloss.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace scpd {

/// Positive, non-increasing learning-rate sequence eta_1 >= eta_2 >= ... (1-based).
class EtaSchedule {
public:
    enum class Kind { Constant, InverseSqrt, Explicit };

    static EtaSchedule constant(double eta);
    /// eta_t = 1 / sqrt(t).
    static EtaSchedule inverse_sqrt();
    static EtaSchedule explicit_values(std::vector<double> values);

    Kind kind() const { return kind_; }
    bool is_constant() const { return kind_ == Kind::Constant; }
    /// Throws std::out_of_range for t = 0 or past the end of an explicit list.
    double at(std::size_t t) const;
    std::string describe() const;

private:
    EtaSchedule() = default;

    Kind kind_ = Kind::Constant;
    double value_ = 1.0;
    std::vector<double> values_;
};

/// Prediction made at the start of a round and the loss suffered at it.
struct Suffered {
    Vector prediction;
    double loss = 0.0;
};

/// Exponentially weighted average forecaster with N(0, lambda^{-1} I) prior.
/// Round t predicts theta_hat_{1:t-1}(eta_t), then suffers l_t at that point.
class EwForecaster {
public:
    EwForecaster(Index dim, PriorParams prior, EtaSchedule schedule);

    Vector predict() const;
    Suffered update(const QuadraticLoss& loss);

    /// Index of the next round to be played (1 before any update).
    std::size_t round() const { return stats_.count() + 1; }
    double cumulative_loss() const { return cumulative_loss_; }
    const SegmentStats& stats() const { return stats_; }
    const PriorParams& prior() const { return prior_; }
    const EtaSchedule& schedule() const { return schedule_; }

private:
    SegmentStats stats_;
    PriorParams prior_;
    EtaSchedule schedule_;
    double cumulative_loss_ = 0.0;
};

/// Log-domain terms of the fixed-share normaliser
///   V_n = (1-a)^{n-1} Z_{1:n} + a * sum_{j=2}^{n} (1-a)^{n-j} V_{j-1} Z_{j:n}.
/// `log_z_ending[j-1]` is log Z_{j:n} for j = 1..n and `log_v_prev[k-1]` is log V_k
/// for k = 1..n-1. Entry j-1 of the result is the term contributed by the block
/// starting at j, so log V_n is their log-sum-exp.
std::vector<double> fixed_share_terms(std::span<const double> log_z_ending,
                                      std::span<const double> log_v_prev, double log_alpha,
                                      double log_stay);

/// Fixed share forecaster over the continuum of constant experts.
///
/// Constant eta: running segment sums for every start index are advanced by each
/// new loss and the per-start posterior (mean, log Z) plus the log V history are
/// cached, giving O(d^3 t) per round. A varying eta recomputes log V_k(eta_t) for
/// every k from the stored losses at each round.
class FsForecaster {
public:
    FsForecaster(Index dim, PriorParams prior, EtaSchedule schedule, double alpha);

    Vector predict() const;
    Suffered update(const QuadraticLoss& loss);

    std::size_t round() const { return stats_.count() + 1; }
    double cumulative_loss() const { return cumulative_loss_; }
    double alpha() const { return alpha_; }
    const SegmentStats& stats() const { return stats_; }

    /// Cached log V_1(eta), ..., log V_n(eta); populated only for a constant schedule.
    std::span<const double> log_v() const { return log_v_; }
    /// log V_1(eta), ..., log V_n(eta) recomputed from the stored losses.
    std::vector<double> log_v_at(double eta) const;

private:
    struct Segments {
        std::vector<Vector> means;    // theta_hat_{j:n}, j = 1..n
        std::vector<double> log_z;    // log Z_{j:n}
        std::vector<double> log_v;    // log V_1..log V_n
    };

    Segments recompute(double eta, std::size_t n) const;
    Vector mixture(std::span<const Vector> means, std::span<const double> log_z,
                   std::span<const double> log_v) const;

    Index dim_;
    PriorParams prior_;
    EtaSchedule schedule_;
    double alpha_;
    double log_alpha_;
    double log_stay_;

    SegmentStats stats_;
    std::vector<QuadraticLoss> losses_;
    double cumulative_loss_ = 0.0;

    // Constant-eta caches, indexed by start j - 1, for segments ending at count().
    std::vector<Matrix> run_a_;
    std::vector<Vector> run_b_;
    std::vector<Vector> seg_mean_;
    std::vector<double> seg_log_z_;
    std::vector<double> log_v_;
    PosteriorSolver solver_;
};

/// (EW, FS) cumulative losses; throws InvalidState when the rounds differ.
std::pair<double, double> cumulative_losses(const EwForecaster& ew, const FsForecaster& fs);

}  // namespace scpd
