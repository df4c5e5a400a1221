// Acceptance harness: one PASS/FAIL line per criterion. Usage: acceptance [N ...]
#include "scpd/calibrate.hpp"
#include "scpd/checks.hpp"
#include "scpd/data.hpp"
#include "scpd/detector.hpp"
#include "scpd/regret.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace scpd;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome timed_check(const checks::CheckResult& r, double elapsed, double limit) {
    const bool fast = elapsed < limit;
    return {r.pass && fast, fmt("%s; %.2f s (limit %.0f s)", r.detail.c_str(), elapsed, limit)};
}

Outcome criterion1() {
    const auto start = Clock::now();
    const auto r = checks::closed_form_vs_quadrature(kSeed, 200);
    return timed_check(r, seconds_since(start), 10.0);
}

Outcome criterion2() {
    const auto start = Clock::now();
    const auto r = checks::recursion_vs_enumeration(kSeed, 50);
    return timed_check(r, seconds_since(start), 30.0);
}

Outcome criterion3() {
    const auto r = checks::alpha_zero_degeneracy(kSeed, 5, 300);
    return {r.pass, r.detail};
}

// Rank-deficient quadratic losses A = c u u', b = A v + beta w with w orthogonal to u.
std::vector<QuadraticLoss> random_losses(std::mt19937_64& rng, std::size_t T, Index d, double scale,
                                         double perp, const Vector& centre) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<QuadraticLoss> out;
    out.reserve(T);
    for (std::size_t t = 0; t < T; ++t) {
        Vector u(d), v(d), w(d);
        for (Index i = 0; i < d; ++i) {
            u(i) = g(rng);
            v(i) = centre(i) + 0.3 * g(rng);
            w(i) = g(rng);
        }
        const double c = scale * (0.2 + u01(rng));
        Matrix a = c * u * u.transpose();
        Vector b = a * v;
        if (d > 1 && perp > 0.0) {
            w -= u * (u.dot(w) / u.squaredNorm());
            b += perp * u01(rng) * w.normalized();
        }
        out.push_back({std::move(a), std::move(b)});
    }
    return out;
}

Vector random_centre(std::mt19937_64& rng, Index d) {
    std::normal_distribution<double> g;
    Vector c(d);
    for (Index i = 0; i < d; ++i) c(i) = g(rng);
    return c;
}

Outcome criterion4() {
    std::mt19937_64 rng(kSeed + 4);
    std::uniform_int_distribution<int> dim(1, 4);
    std::uniform_int_distribution<int> len(20, 120);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::size_t conforming = 0, held = 0, attempts = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    while (conforming < 100 && attempts < 5000) {
        ++attempts;
        const Index d = dim(rng);
        const std::size_t T = static_cast<std::size_t>(len(rng));
        const double lambda = 0.5 + 1.5 * u01(rng);
        const EtaSchedule eta = attempts % 2 ? EtaSchedule::constant(0.1 + 0.9 * u01(rng))
                                             : EtaSchedule::inverse_sqrt();
        const auto losses =
            random_losses(rng, T, d, 0.5 * u01(rng), 0.3 * u01(rng), random_centre(rng, d));
        const RegretBreakdown r = ew_bound(losses, {lambda}, eta);
        if (!r.conditions_ok) continue;
        ++conforming;
        if (r.empirical_regret <= r.bound_total) ++held;
        worst_margin = std::min(worst_margin, r.bound_total - r.empirical_regret);
    }
    return {conforming == 100 && held == 100,
            fmt("%zu/%zu conforming instances within the bound (%zu drawn), min slack %.4g", held,
                conforming, attempts, worst_margin)};
}

std::vector<QuadraticLoss> two_segments(std::mt19937_64& rng, std::size_t T, std::size_t tau,
                                        Index d, double scale) {
    auto losses = random_losses(rng, tau, d, scale, 0.0, random_centre(rng, d));
    const auto tail = random_losses(rng, T - tau, d, scale, 0.0, random_centre(rng, d));
    losses.insert(losses.end(), tail.begin(), tail.end());
    return losses;
}

Outcome criterion5() {
    std::mt19937_64 rng(kSeed + 5);
    std::uniform_int_distribution<int> dim(1, 3);
    std::uniform_int_distribution<int> len(40, 120);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::size_t conforming = 0, held = 0, attempts = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    while (conforming < 50 && attempts < 5000) {
        ++attempts;
        const Index d = dim(rng);
        const std::size_t T = static_cast<std::size_t>(len(rng));
        const std::size_t tau = T / 4 + static_cast<std::size_t>(u01(rng) * static_cast<double>(T / 2));
        const double lambda = 0.5 + 1.5 * u01(rng);
        const double eta = 0.1 + 0.4 * u01(rng);
        const double alpha = attempts % 2 ? 2.0 / static_cast<double>(T) : 0.01 + 0.1 * u01(rng);
        const auto losses = two_segments(rng, T, tau, d, 0.3 * u01(rng));
        const std::size_t sp[] = {0, tau, T};
        const RegretBreakdown r = fs_bound(losses, {lambda}, EtaSchedule::constant(eta), alpha, sp);
        if (!r.conditions_ok) continue;
        ++conforming;
        if (r.empirical_regret <= r.bound_total) ++held;
        worst_margin = std::min(worst_margin, r.bound_total - r.empirical_regret);
    }

    // Growth with b_perp = 0 and alpha = m / T, averaged over streams.
    const std::size_t horizons[] = {100, 200, 400};
    const std::size_t reps = 20;
    double mean_bound[3] = {0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t T = horizons[k];
        std::mt19937_64 g(kSeed + 50);
        for (std::size_t rep = 0; rep < reps; ++rep) {
            const auto losses = two_segments(g, T, T / 2, 2, 0.1);
            const std::size_t sp[] = {0, T / 2, T};
            const RegretBreakdown r =
                fs_bound(losses, {1.0}, EtaSchedule::constant(0.3), 2.0 / static_cast<double>(T), sp);
            mean_bound[k] += r.bound_total / static_cast<double>(reps);
        }
    }
    const double d1 = mean_bound[1] - mean_bound[0];
    const double d2 = mean_bound[2] - mean_bound[1];
    const bool shrinking = d2 < d1;
    return {conforming == 50 && held == 50 && shrinking,
            fmt("%zu/%zu conforming instances within the bound (%zu drawn), min slack %.4g; "
                "mean bound at T=100,200,400: %.3f, %.3f, %.3f, differences %.3f then %.3f",
                held, conforming, attempts, worst_margin, mean_bound[0], mean_bound[1],
                mean_bound[2], d1, d2)};
}

DetectorConfig example_config(int id) {
    const ExampleParams p = example_params(id);
    DetectorConfig c;
    c.prior = {p.lambda};
    c.alpha = p.alpha;
    c.schedule = EtaSchedule::constant(p.eta);
    c.threshold = p.threshold;
    c.basis = poly_basis(synthetic_example(id).dim(), 2);
    return c;
}

struct Reproduction {
    std::size_t false_alarms = 0;
    std::size_t missed = 0;
    double mean_delay = 0.0;
    double delay_std = 0.0;
};

// Each stream is monitored with restart after every alarm; min_diff = 0.
Reproduction reproduce(int id, std::size_t streams) {
    const DetectorConfig config = example_config(id);
    const SyntheticSpec spec = synthetic_example(id);
    const std::vector<std::size_t> ann{spec.tau};
    std::vector<double> delays;
    Reproduction out;
    for (std::size_t s = 1; s <= streams; ++s) {
        const auto data = generate(spec, s);
        const MonitorReport m = monitor_stream(config, data);
        const EvalMetrics e = evaluate(m.alarms, ann, 0, data.size());
        out.false_alarms += e.false_alarms;
        out.missed += e.missed;
        delays.insert(delays.end(), e.delays.begin(), e.delays.end());
    }
    double sum = 0.0;
    for (double x : delays) sum += x;
    out.mean_delay = sum / static_cast<double>(delays.size());
    double ss = 0.0;
    for (double x : delays) ss += (x - out.mean_delay) * (x - out.mean_delay);
    out.delay_std = delays.size() > 1 ? std::sqrt(ss / static_cast<double>(delays.size() - 1)) : 0.0;
    return out;
}

struct TargetRow {
    int id;
    double mean;
    double sd;
};

Outcome reproduction_check(const std::vector<TargetRow>& rows, double limit) {
    const auto start = Clock::now();
    bool pass = true;
    std::ostringstream os;
    for (const TargetRow& row : rows) {
        const Reproduction r = reproduce(row.id, 50);
        const double lo = std::max(0.0, row.mean - 2.0 * row.sd), hi = row.mean + 2.0 * row.sd;
        const bool ok = r.false_alarms == 0 && r.mean_delay >= lo && r.mean_delay <= hi;
        pass = pass && ok;
        os << fmt("example %d: FA %zu, missed %zu, DD %.2f +- %.2f (target FA 0, DD in [%.2f, %.2f]); ",
                  row.id, r.false_alarms, r.missed, r.mean_delay, r.delay_std, lo, hi);
    }
    const double elapsed = seconds_since(start);
    os << fmt("%.1f s (limit %.0f s)", elapsed, limit);
    return {pass && elapsed < limit, os.str()};
}

Outcome criterion6() { return reproduction_check({{1, 3.3, 1.8}}, 120.0); }

Outcome criterion7() { return reproduction_check({{2, 3.3, 1.7}, {3, 1.3, 0.5}, {4, 2.1, 1.7}}, 300.0); }

double binomial_log_pmf(std::size_t n, std::size_t k, double p) {
    const double nn = static_cast<double>(n), kk = static_cast<double>(k);
    return std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1) + kk * std::log(p) +
           (nn - kk) * std::log1p(-p);
}

// Smallest lo and largest hi with P(X < lo) <= tail and P(X > hi) <= tail.
std::pair<std::size_t, std::size_t> binomial_interval(std::size_t n, double p, double tail) {
    std::vector<double> pmf(n + 1);
    for (std::size_t k = 0; k <= n; ++k) pmf[k] = std::exp(binomial_log_pmf(n, k, p));
    std::size_t lo = 0;
    double below = 0.0;
    while (lo <= n && below + pmf[lo] <= tail) below += pmf[lo++];
    std::size_t hi = n;
    double above = 0.0;
    while (hi > 0 && above + pmf[hi] <= tail) above += pmf[hi--];
    return {lo, hi};
}

Outcome criterion8() {
    const auto start = Clock::now();
    const std::size_t trials = 2000, J = 19, T0 = 150;
    const DetectorConfig config = example_config(1);
    const SyntheticSpec spec = synthetic_example(1);
    const std::size_t total = trials * (J + 1);
    std::vector<double> maxima(total);
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < total; i += workers)
                maxima[i] = max_statistic(config, generate_null(spec, kSeed + 8 + i, T0));
        }));
    }
    for (auto& j : jobs) j.get();

    std::size_t crossings = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        const double* run = maxima.data() + k * (J + 1);
        const double z = *std::max_element(run, run + J);
        if (run[J] > z) ++crossings;
    }
    const auto [lo, hi] = binomial_interval(trials, 1.0 / (J + 1), 0.005);
    const double elapsed = seconds_since(start);
    const bool pass = crossings >= lo && crossings <= hi && elapsed < 300.0;
    return {pass, fmt("%zu/%zu fresh null runs crossed (rate %.4f), 99%% interval [%zu, %zu]; %.1f s "
                      "(limit 300 s)",
                      crossings, trials, static_cast<double>(crossings) / trials, lo, hi, elapsed)};
}

Outcome criterion9() {
    const auto r = checks::mixability(kSeed, 100, 1000000);
    return {r.pass, r.detail};
}

Outcome criterion10() {
    const auto r = checks::green_identity(kSeed, 20, 1000000);
    return {r.pass, r.detail};
}

Outcome criterion11() {
    const auto r = checks::matrix_identities(kSeed, 1000);
    return {r.pass, r.detail};
}

Outcome criterion12() {
    SyntheticSpec spec = synthetic_example(3);
    spec.length = 2000;
    spec.tau = 1000;
    const auto data = generate(spec, kSeed);
    DetectorConfig config = example_config(3);
    config.threshold = std::numeric_limits<double>::infinity();
    const auto start = Clock::now();
    const DetectionReport r = run_stream(config, data);
    const double elapsed = seconds_since(start);
    const bool pass = r.trace.size() == 2000 && config.basis.param_dim() == 9 && elapsed < 60.0;
    return {pass, fmt("T = %zu, d = %lld in %.2f s (limit 60 s)", r.trace.size(),
                      static_cast<long long>(config.basis.param_dim()), elapsed)};
}

const std::map<int, std::function<Outcome()>> kCriteria = {
    {1, criterion1},  {2, criterion2},  {3, criterion3},   {4, criterion4},
    {5, criterion5},  {6, criterion6},  {7, criterion7},   {8, criterion8},
    {9, criterion9},  {10, criterion10}, {11, criterion11}, {12, criterion12},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
    if (selected.empty())
        for (const auto& [n, _] : kCriteria) selected.push_back(n);

    int failures = 0;
    for (int n : selected) {
        const auto it = kCriteria.find(n);
        if (it == kCriteria.end()) {
            std::cerr << "unknown criterion " << n << '\n';
            return 2;
        }
        Outcome o;
        try {
            o = it->second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << o.detail << std::endl;
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
