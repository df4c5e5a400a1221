#pragma once

#include "scpd/forecasters.hpp"
#include "scpd/scoreloss.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace scpd {

struct DetectorConfig {
    PriorParams prior;
    double alpha = 0.0;
    EtaSchedule schedule = EtaSchedule::constant(1.0);
    /// Alarm when the statistic strictly exceeds this value; +inf disables alarms.
    double threshold = std::numeric_limits<double>::infinity();
    BasisSpec basis;
    bool stop_on_alarm = true;
};

void validate(const DetectorConfig& config);

struct StepOutcome {
    std::size_t t = 0;
    Vector ew_prediction;
    Vector fs_prediction;
    double ew_loss = 0.0;
    double fs_loss = 0.0;
    /// S_t = cumulative EW loss - cumulative FS loss.
    double statistic = 0.0;
    bool alarm = false;
};

/// Runs the EW and fixed-share forecasters in lockstep on score-matching losses
/// and tracks the gap statistic S_t.
class Detector {
public:
    explicit Detector(DetectorConfig config);

    /// Consumes one observation. Throws InvalidState when called after an alarm
    /// with stop_on_alarm set.
    StepOutcome step(const Vector& x);

    std::size_t round() const { return ew_.round(); }
    double statistic() const { return statistic_; }
    std::optional<std::size_t> alarm_time() const { return alarm_time_; }
    const DetectorConfig& config() const { return config_; }
    const EwForecaster& ew() const { return ew_; }
    const FsForecaster& fs() const { return fs_; }

private:
    DetectorConfig config_;
    EwForecaster ew_;
    FsForecaster fs_;
    double statistic_ = 0.0;
    std::optional<std::size_t> alarm_time_;
};

struct DetectionReport {
    std::optional<std::size_t> alarm_time;
    std::vector<StepOutcome> trace;
    DetectorConfig config;
    double wall_time_seconds = 0.0;
};

DetectionReport run_stream(const DetectorConfig& config, std::span<const Vector> data);

/// max_t S_t over the whole stream with alarms disabled; -inf for empty input.
double max_statistic(const DetectorConfig& config, std::span<const Vector> data);

/// Monitoring over a stream with several change points: after every alarm the
/// detector restarts from fresh state at the next observation. Trace indices and
/// alarm times are global 1-based positions in `data`.
struct MonitorReport {
    std::vector<std::size_t> alarms;
    std::vector<StepOutcome> trace;
    double wall_time_seconds = 0.0;
};

MonitorReport monitor_stream(const DetectorConfig& config, std::span<const Vector> data);

}  // namespace scpd
