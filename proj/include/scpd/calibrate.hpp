#pragma once

#include "scpd/detector.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace scpd {

/// Threshold set to the largest statistic seen over J change-free runs; a fresh
/// change-free run then crosses it with probability 1 / (J + 1).
struct CalibrationResult {
    double threshold = kNegInf;
    std::size_t runs = 0;
    std::size_t horizon = 0;
    std::vector<double> run_maxima;
};

/// Produces the change-free stream for replica `j` (0-based). Must be a pure
/// function of `j` when calibration runs with several workers.
using NullSource = std::function<std::vector<Vector>(std::size_t replica)>;

/// Runs `runs` detector passes with alarms disabled on the first `horizon` rows of
/// each null stream. `workers` > 1 evaluates replicas concurrently.
CalibrationResult calibrate_threshold(const DetectorConfig& config, const NullSource& source,
                                      std::size_t runs, std::size_t horizon,
                                      std::size_t workers = 1);

struct EvalMetrics {
    std::size_t false_alarms = 0;
    std::size_t missed = 0;
    /// One entry per annotation, in annotation order.
    std::vector<double> delays;
    double mean_delay = 0.0;
    /// Sample standard deviation (n - 1 denominator); 0 for fewer than two delays.
    double delay_std = 0.0;
};

/// Scores alarm times against annotated change points.
///
/// Annotation k (at tau_k) owns the alarms a with tau_k - min_diff < a <= tau_{k+1} - min_diff
/// (the last one owns everything up to `horizon`). The earliest owned alarm detects
/// it with delay max(0, a - tau_k); later owned alarms are false alarms, as are
/// alarms with a <= tau_1 - min_diff. An annotation with no owned alarm is missed
/// and scored with delay tau_{k+1} - tau_k (horizon - tau_k for the last one).
/// Throws std::invalid_argument for unsorted input.
EvalMetrics evaluate(std::span<const std::size_t> alarms, std::span<const std::size_t> annotations,
                     std::size_t min_diff, std::size_t horizon);

}  // namespace scpd
