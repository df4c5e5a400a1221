#include "scpd/calibrate.hpp"

#include <algorithm>
#include <future>
#include <numeric>

namespace scpd {

CalibrationResult calibrate_threshold(const DetectorConfig& config, const NullSource& source,
                                      std::size_t runs, std::size_t horizon,
                                      std::size_t workers) {
    if (runs < 1 || horizon < 1) {
        throw std::invalid_argument("calibrate_threshold: runs and horizon must be >= 1");
    }
    validate(config);
    CalibrationResult result;
    result.runs = runs;
    result.horizon = horizon;
    result.run_maxima.assign(runs, kNegInf);

    auto one = [&](std::size_t j) {
        const std::vector<Vector> stream = source(j);
        if (stream.size() < horizon) {
            throw std::runtime_error("calibrate_threshold: null source yielded " +
                                     std::to_string(stream.size()) + " rows, need " +
                                     std::to_string(horizon));
        }
        return max_statistic(config, std::span<const Vector>(stream.data(), horizon));
    };

    workers = std::max<std::size_t>(1, std::min(workers, runs));
    if (workers == 1) {
        for (std::size_t j = 0; j < runs; ++j) result.run_maxima[j] = one(j);
    } else {
        std::vector<std::future<void>> tasks;
        for (std::size_t w = 0; w < workers; ++w) {
            tasks.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t j = w; j < runs; j += workers) result.run_maxima[j] = one(j);
            }));
        }
        for (auto& task : tasks) task.get();
    }
    result.threshold = *std::max_element(result.run_maxima.begin(), result.run_maxima.end());
    return result;
}

EvalMetrics evaluate(std::span<const std::size_t> alarms, std::span<const std::size_t> annotations,
                     std::size_t min_diff, std::size_t horizon) {
    if (!std::is_sorted(alarms.begin(), alarms.end()) ||
        !std::is_sorted(annotations.begin(), annotations.end())) {
        throw std::invalid_argument("evaluate: alarms and annotations must be sorted");
    }
    if (std::adjacent_find(annotations.begin(), annotations.end()) != annotations.end()) {
        throw std::invalid_argument("evaluate: duplicate annotation");
    }
    // Signed arithmetic: tau - min_diff may go below zero.
    auto lower = [&](std::size_t k) {
        return static_cast<long long>(annotations[k]) - static_cast<long long>(min_diff);
    };

    EvalMetrics m;
    std::size_t i = 0;
    const std::size_t n_alarms = alarms.size();
    const std::size_t K = annotations.size();
    if (K == 0) {
        m.false_alarms = n_alarms;
        return m;
    }
    while (i < n_alarms && static_cast<long long>(alarms[i]) <= lower(0)) {
        ++m.false_alarms;
        ++i;
    }
    for (std::size_t k = 0; k < K; ++k) {
        const long long upper = k + 1 < K ? lower(k + 1) : std::numeric_limits<long long>::max();
        bool detected = false;
        while (i < n_alarms && static_cast<long long>(alarms[i]) <= upper) {
            const auto a = static_cast<long long>(alarms[i]);
            const auto tau = static_cast<long long>(annotations[k]);
            if (!detected) {
                m.delays.push_back(static_cast<double>(std::max(0LL, a - tau)));
                detected = true;
            } else {
                ++m.false_alarms;
            }
            ++i;
        }
        if (!detected) {
            ++m.missed;
            const std::size_t next = k + 1 < K ? annotations[k + 1] : std::max(horizon, annotations[k]);
            m.delays.push_back(static_cast<double>(next - annotations[k]));
        }
    }
    if (!m.delays.empty()) {
        const double n = static_cast<double>(m.delays.size());
        m.mean_delay = std::accumulate(m.delays.begin(), m.delays.end(), 0.0) / n;
        if (m.delays.size() > 1) {
            double ss = 0.0;
            for (double d : m.delays) ss += (d - m.mean_delay) * (d - m.mean_delay);
            m.delay_std = std::sqrt(ss / (n - 1.0));
        }
    }
    return m;
}

}  // namespace scpd
