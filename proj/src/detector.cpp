#include "scpd/detector.hpp"

#include <chrono>

namespace scpd {

void validate(const DetectorConfig& config) {
    validate(config.prior);
    validate(config.basis);
    if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
        throw std::invalid_argument("DetectorConfig: alpha must lie in [0, 1]");
    }
    if (std::isnan(config.threshold)) {
        throw std::invalid_argument("DetectorConfig: threshold is NaN");
    }
}

Detector::Detector(DetectorConfig config)
    : config_((validate(config), std::move(config))),
      ew_(config_.basis.param_dim(), config_.prior, config_.schedule),
      fs_(config_.basis.param_dim(), config_.prior, config_.schedule, config_.alpha) {}

StepOutcome Detector::step(const Vector& x) {
    if (alarm_time_ && config_.stop_on_alarm) {
        throw InvalidState("Detector: already alarmed at t = " + std::to_string(*alarm_time_));
    }
    const QuadraticLoss loss = build_loss(config_.basis, x);
    StepOutcome out;
    out.t = round();
    Suffered ew = ew_.update(loss);
    Suffered fs = fs_.update(loss);
    out.ew_prediction = std::move(ew.prediction);
    out.fs_prediction = std::move(fs.prediction);
    out.ew_loss = ew.loss;
    out.fs_loss = fs.loss;
    statistic_ += ew.loss - fs.loss;
    out.statistic = statistic_;
    out.alarm = statistic_ > config_.threshold;
    if (out.alarm && !alarm_time_) alarm_time_ = out.t;
    return out;
}

DetectionReport run_stream(const DetectorConfig& config, std::span<const Vector> data) {
    const auto start = std::chrono::steady_clock::now();
    DetectionReport report;
    report.config = config;
    Detector det(config);
    report.trace.reserve(data.size());
    for (const Vector& x : data) {
        report.trace.push_back(det.step(x));
        if (report.trace.back().alarm && config.stop_on_alarm) break;
    }
    report.alarm_time = det.alarm_time();
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

double max_statistic(const DetectorConfig& config, std::span<const Vector> data) {
    DetectorConfig quiet = config;
    quiet.threshold = std::numeric_limits<double>::infinity();
    quiet.stop_on_alarm = false;
    Detector det(std::move(quiet));
    double best = kNegInf;
    for (const Vector& x : data) best = std::max(best, det.step(x).statistic);
    return best;
}

MonitorReport monitor_stream(const DetectorConfig& config, std::span<const Vector> data) {
    const auto start = std::chrono::steady_clock::now();
    MonitorReport report;
    report.trace.reserve(data.size());
    DetectorConfig cfg = config;
    cfg.stop_on_alarm = true;
    std::size_t offset = 0;
    while (offset < data.size()) {
        Detector det(cfg);
        std::size_t i = offset;
        for (; i < data.size(); ++i) {
            StepOutcome o = det.step(data[i]);
            o.t = i + 1;
            const bool alarm = o.alarm;
            report.trace.push_back(std::move(o));
            if (alarm) {
                report.alarms.push_back(i + 1);
                break;
            }
        }
        offset = i + 1;
    }
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace scpd
