#include "scpd/checks.hpp"

#include "scpd/data.hpp"
#include "scpd/detector.hpp"
#include "scpd/forecasters.hpp"
#include "scpd/oracle.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <sstream>
#include <vector>

namespace scpd::checks {
namespace {

std::vector<QuadraticLoss> random_1d_losses(std::mt19937_64& rng, std::size_t t) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;
    std::vector<QuadraticLoss> out;
    for (std::size_t j = 0; j < t; ++j) {
        const double a = unit(rng) < 0.2 ? 0.0 : std::pow(normal(rng), 2);
        out.push_back({Matrix::Constant(1, 1, a), Vector::Constant(1, normal(rng))});
    }
    return out;
}

double relative(double got, double want) {
    const double err = std::abs(got - want);
    return want == 0.0 ? err : err / std::abs(want);
}

std::string format(std::ostringstream& os) { return os.str(); }

}  // namespace

CheckResult closed_form_vs_quadrature(std::uint64_t seed, std::size_t instances) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> len(1, 20);
    std::uniform_real_distribution<double> param(0.1, 2.0);
    double worst_z = 0.0;
    double worst_mean = 0.0;
    std::size_t failures = 0;
    for (std::size_t k = 0; k < instances; ++k) {
        const std::size_t t = len(rng);
        const auto losses = random_1d_losses(rng, t);
        const std::size_t s = std::uniform_int_distribution<std::size_t>(1, t)(rng);
        const double lambda = param(rng);
        const double eta = param(rng);

        SegmentStats stats(1);
        for (const auto& l : losses) stats.push(l);
        const PriorParams prior{lambda};
        const double lz = log_partition(stats, s, t, prior, eta);
        const double mean = posterior_mean(stats, s, t, prior, eta)(0);
        const auto quad = oracle::auto_quadrature(losses, s, t, lambda, eta);
        const double qz = oracle::quad_logZ_1d(losses, s, t, lambda, eta, quad);
        const double qm = oracle::quad_posterior_mean_1d(losses, s, t, lambda, eta, quad);

        const double ez = std::abs(lz - qz) / std::max(1.0, std::abs(qz));
        const double em = std::abs(mean - qm) / std::max(1.0, std::abs(qm));
        worst_z = std::max(worst_z, ez);
        worst_mean = std::max(worst_mean, em);
        if (ez > 1e-6 || em > 1e-6) ++failures;
    }
    std::ostringstream os;
    os << instances << " instances, max logZ err " << worst_z << ", max mean err " << worst_mean
       << ", failures " << failures;
    return {failures == 0, format(os)};
}

CheckResult recursion_vs_enumeration(std::uint64_t seed, std::size_t streams) {
    constexpr std::array<double, 3> kAlphas = {0.001, 0.1, 0.5};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> len(10, 12);
    std::uniform_real_distribution<double> param(0.1, 2.0);
    double worst_v = 0.0;
    double worst_pred = 0.0;
    std::size_t failures = 0;
    for (std::size_t k = 0; k < streams; ++k) {
        const std::size_t t = len(rng);
        const auto losses = random_1d_losses(rng, t);
        const double lambda = param(rng);
        const double eta = param(rng);
        const double alpha = kAlphas[k % kAlphas.size()];

        FsForecaster fs(1, {lambda}, EtaSchedule::constant(eta), alpha);
        for (const auto& l : losses) fs.update(l);
        const double log_v = fs.log_v().back();
        const Vector pred = fs.predict();
        const oracle::BruteForceFs brute = oracle::brute_force_fs(losses, t, lambda, eta, alpha);

        const double ev = relative(log_v, brute.log_v);
        const double ep = relative(pred(0), brute.prediction(0));
        worst_v = std::max(worst_v, ev);
        worst_pred = std::max(worst_pred, ep);
        if (ev > 1e-8 || ep > 1e-8) ++failures;
    }
    std::ostringstream os;
    os << streams << " streams, max rel err log V " << worst_v << ", prediction " << worst_pred
       << ", failures " << failures;
    return {failures == 0, format(os)};
}

CheckResult alpha_zero_degeneracy(std::uint64_t seed, std::size_t streams, std::size_t length) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> param(0.1, 2.0);
    double worst_gap = 0.0;
    double worst_stat = 0.0;
    for (std::size_t k = 0; k < streams; ++k) {
        SyntheticSpec spec;
        spec.pre_mean = Vector::Zero(2);
        spec.pre_std = Vector{{param(rng) / 2.0, param(rng) / 2.0}};
        spec.post_mean = Vector{{1.0, -1.0}};
        spec.post_std = spec.pre_std * 2.0;
        spec.tau = length / 2;
        spec.length = length;
        const auto data = generate(spec, rng());

        DetectorConfig config;
        config.prior = {param(rng)};
        config.alpha = 0.0;
        config.schedule = EtaSchedule::constant(param(rng));
        config.basis = poly_basis(2, 2);
        const DetectionReport report = run_stream(config, data);
        for (const auto& step : report.trace) {
            worst_gap = std::max(worst_gap, (step.fs_prediction - step.ew_prediction).norm());
        }
        worst_stat = std::max(worst_stat, std::abs(report.trace.back().statistic));
    }
    std::ostringstream os;
    os << streams << " streams of T = " << length << ", d = 5: max |FS - EW| " << worst_gap
       << ", max |S_T| " << worst_stat;
    return {worst_gap <= 1e-9 && worst_stat == 0.0, format(os)};
}

CheckResult mixability(std::uint64_t seed, std::size_t instances, std::size_t samples) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;
    std::uniform_int_distribution<int> dim_dist(1, 4);
    std::uniform_real_distribution<double> eta_dist(0.1, 2.0);
    std::size_t failures = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < instances; ++k) {
        const Index d = dim_dist(rng);
        const Index rank = std::uniform_int_distribution<Index>(0, d)(rng);
        Matrix h(d, std::max<Index>(rank, 1));
        for (Index i = 0; i < h.size(); ++i) h.data()[i] = normal(rng);
        Matrix a = rank == 0 ? Matrix::Zero(d, d) : Matrix(h * h.transpose() / double(d));
        a = 0.5 * (a + a.transpose());
        Vector b(d);
        for (Index i = 0; i < d; ++i) b(i) = normal(rng);
        Matrix g(d, d);
        for (Index i = 0; i < g.size(); ++i) g.data()[i] = normal(rng);
        Matrix omega = g * g.transpose();
        omega.diagonal().array() += 0.5;
        const double eta = eta_dist(rng);

        // mu = A^+ b + delta with ||A^{1/2} delta||^2 a random fraction of 1 / (2 eta).
        const QuadraticLoss loss{a, b};
        const PsdSpectrum spec(a);
        Vector delta(d);
        for (Index i = 0; i < d; ++i) delta(i) = normal(rng);
        const double energy = spec.sqrt_norm2(delta);
        if (energy > 0.0) delta *= std::sqrt(unit(rng) / (2.0 * eta) / energy);
        const Vector mu = spec.pinv_apply(b) + delta;

        const auto r = oracle::mc_mixability_check(loss, mu, omega, eta, samples, rng());
        if (!r.pass) ++failures;
        if (r.std_error > 0.0) min_margin = std::min(min_margin, (r.lhs - r.rhs) / r.std_error);
    }
    std::ostringstream os;
    os << instances << " instances x " << samples << " samples, min (lhs - rhs)/se "
       << min_margin << ", failures " << failures;
    return {failures == 0, format(os)};
}

CheckResult green_identity(std::uint64_t seed, std::size_t configs, std::size_t samples) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mu_dist(-1.0, 1.0);
    std::uniform_real_distribution<double> sigma_dist(0.2, 2.0);
    std::normal_distribution<double> normal;
    std::size_t failures = 0;
    double worst = 0.0;
    for (std::size_t k = 0; k < configs; ++k) {
        const double mu = mu_dist(rng);
        const double sigma = sigma_dist(rng);
        const Vector theta{{normal(rng), normal(rng)}};
        const auto r = oracle::mc_green_check(mu, sigma, theta, samples, rng());
        if (!r.pass) ++failures;
        worst = std::max(worst, std::abs(r.mc_mean - r.target) / r.std_error);
    }
    std::size_t exact_failures = 0;
    for (std::size_t k = 0; k < configs; ++k) {
        const double mu = mu_dist(rng);
        const double sigma = sigma_dist(rng);
        const double s2 = sigma * sigma;
        const Vector theta{{mu / s2, -0.5 / s2}};
        const auto r = oracle::mc_green_check(mu, sigma, theta, samples, rng());
        const bool ok = r.pass && r.fisher_exact == 0.0 &&
                        std::abs(r.fisher_estimate) <= 4.0 * r.std_error + 1e-12;
        if (!ok) ++exact_failures;
    }
    std::ostringstream os;
    os << configs << " random configs x " << samples << " samples, max |diff|/se " << worst
       << ", failures " << failures << "; " << configs
       << " true-score configs, nonzero divergence " << exact_failures;
    return {failures == 0 && exact_failures == 0, format(os)};
}

CheckResult matrix_identities(std::uint64_t seed, std::size_t trials) {
    const auto rep = oracle::identity_checks(seed, trials);
    std::ostringstream os;
    os << trials << " trials, violations " << rep.squared_norm_violations << "/"
       << rep.inverse_difference_violations << "/" << rep.log_det_violations
       << ", max errs " << rep.squared_norm_max_err << " " << rep.inverse_difference_max_err
       << ", min log-det slack " << rep.log_det_min_slack;
    return {rep.violations() == 0, format(os)};
}

}  // namespace scpd::checks
