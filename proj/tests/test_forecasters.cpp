#include "scpd/forecasters.hpp"
#include "scpd/oracle.hpp"

#include <doctest.h>

#include <random>

using namespace scpd;

namespace {

std::vector<QuadraticLoss> random_losses(std::uint64_t seed, std::size_t n, Index d) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<QuadraticLoss> out;
    for (std::size_t k = 0; k < n; ++k) {
        Vector u(d), b(d);
        for (Index i = 0; i < d; ++i) {
            u(i) = g(rng);
            b(i) = g(rng);
        }
        out.push_back({u * u.transpose(), b});
    }
    return out;
}

}  // namespace

TEST_CASE("EtaSchedule") {
    CHECK(EtaSchedule::constant(0.3).at(7) == 0.3);
    CHECK(EtaSchedule::inverse_sqrt().at(4) == 0.5);
    CHECK(EtaSchedule::inverse_sqrt().describe() == "inv-sqrt");
    const auto e = EtaSchedule::explicit_values({1.0, 0.5, 0.5});
    CHECK(e.at(2) == 0.5);
    CHECK_THROWS_AS(e.at(4), std::out_of_range);
    CHECK_THROWS_AS(e.at(0), std::out_of_range);
    CHECK_THROWS_AS(EtaSchedule::explicit_values({0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(EtaSchedule::constant(0.0), std::invalid_argument);
    CHECK_THROWS_AS(EtaSchedule::constant(-1.0), std::invalid_argument);
}

TEST_CASE("EW forecaster") {
    EwForecaster ew(2, {1.0}, EtaSchedule::constant(1.0));
    CHECK(ew.round() == 1);
    CHECK(ew.predict().isZero());
    const Suffered first = ew.update({Matrix::Identity(2, 2), Vector{{1.0, 0.0}}});
    CHECK(first.loss == 0.0);
    const Vector p = ew.predict();
    CHECK(p(0) == doctest::Approx(0.5));
    CHECK(p(1) == 0.0);

    const double before = ew.cumulative_loss();
    ew.update({Matrix::Zero(2, 2), Vector::Zero(2)});
    CHECK(ew.cumulative_loss() == before);
    CHECK_THROWS_AS(ew.update({Matrix::Identity(3, 3), Vector::Zero(3)}), std::invalid_argument);
}

TEST_CASE("EW cumulative loss matches replay") {
    const auto losses = random_losses(4, 5, 3);
    EwForecaster ew(3, {0.8}, EtaSchedule::inverse_sqrt());
    double replay = 0.0;
    SegmentStats stats(3);
    for (std::size_t t = 1; t <= losses.size(); ++t) {
        const Vector pred = t == 1 ? Vector::Zero(3)
                                   : posterior_mean(stats, 1, t - 1, {0.8}, 1.0 / std::sqrt(double(t)));
        replay += loss_eval(losses[t - 1], pred);
        stats.push(losses[t - 1]);
        ew.update(losses[t - 1]);
    }
    CHECK(ew.cumulative_loss() == doctest::Approx(replay).epsilon(1e-10));
}

TEST_CASE("EW prediction matches quadrature") {
    const auto losses = random_losses(8, 10, 1);
    EwForecaster ew(1, {1.2}, EtaSchedule::constant(0.7));
    for (const auto& l : losses) ew.update(l);
    const auto quad = oracle::auto_quadrature(losses, 1, 10, 1.2, 0.7);
    CHECK(ew.predict()(0) ==
          doctest::Approx(oracle::quad_posterior_mean_1d(losses, 1, 10, 1.2, 0.7, quad)).epsilon(1e-6));
}

TEST_CASE("FS early rounds") {
    const double alpha = 0.2;
    FsForecaster fs(2, {1.0}, EtaSchedule::constant(1.0), alpha);
    CHECK(fs.predict().isZero());
    const QuadraticLoss l{Matrix::Identity(2, 2), Vector{{1.0, 0.0}}};
    fs.update(l);
    SegmentStats stats(2);
    stats.push(l);
    const Vector want = (1.0 - alpha) * posterior_mean(stats, 1, 1, {1.0}, 1.0);
    CHECK((fs.predict() - want).norm() < 1e-15);
    CHECK(fs.log_v().size() == 1);
    CHECK(fs.log_v()[0] == doctest::Approx(log_partition(stats, 1, 1, {1.0}, 1.0)));

    FsForecaster zero(1, {1.0}, EtaSchedule::constant(1.0), 0.3);
    zero.update({Matrix::Zero(1, 1), Vector::Zero(1)});
    CHECK(zero.log_v()[0] == 0.0);
}

TEST_CASE("FS with alpha = 0 coincides with EW") {
    const auto losses = random_losses(12, 60, 5);
    EwForecaster ew(5, {0.5}, EtaSchedule::constant(0.4));
    FsForecaster fs(5, {0.5}, EtaSchedule::constant(0.4), 0.0);
    SegmentStats stats(5);
    for (const auto& l : losses) {
        CHECK((ew.predict() - fs.predict()).norm() <= 1e-9);
        ew.update(l);
        fs.update(l);
        stats.push(l);
        CHECK(fs.log_v().back() ==
              doctest::Approx(log_partition(stats, 1, stats.count(), {0.5}, 0.4)).epsilon(1e-12));
    }
    const auto [lew, lfs] = cumulative_losses(ew, fs);
    CHECK(lew == lfs);
}

TEST_CASE("FS recursion matches enumeration") {
    for (double alpha : {0.0, 0.001, 0.1, 0.5, 1.0}) {
        const auto losses = random_losses(31, 9, 1);
        FsForecaster fs(1, {0.9}, EtaSchedule::constant(1.1), alpha);
        for (std::size_t t = 1; t <= losses.size(); ++t) {
            fs.update(losses[t - 1]);
            const auto brute = oracle::brute_force_fs(losses, t, 0.9, 1.1, alpha);
            CHECK(fs.log_v().back() == doctest::Approx(brute.log_v).epsilon(1e-10));
            CHECK(fs.predict()(0) == doctest::Approx(brute.prediction(0)).epsilon(1e-10));
        }
    }
}

TEST_CASE("FS variable eta recomputes at the current rate") {
    const auto losses = random_losses(17, 8, 1);
    FsForecaster fs(1, {1.0}, EtaSchedule::inverse_sqrt(), 0.05);
    for (std::size_t t = 1; t <= losses.size(); ++t) {
        const double eta = 1.0 / std::sqrt(double(t));
        if (t > 1) {
            const auto brute = oracle::brute_force_fs(losses, t - 1, 1.0, eta, 0.05);
            CHECK(fs.predict()(0) == doctest::Approx(brute.prediction(0)).epsilon(1e-10));
        }
        fs.update(losses[t - 1]);
    }
    CHECK(fs.log_v().empty());
    const auto lv = fs.log_v_at(0.3);
    REQUIRE(lv.size() == losses.size());
    CHECK(lv.back() ==
          doctest::Approx(oracle::brute_force_fs(losses, losses.size(), 1.0, 0.3, 0.05).log_v)
              .epsilon(1e-10));
}

TEST_CASE("fixed_share_terms") {
    const std::vector<double> z{0.5};
    const auto one = fixed_share_terms(z, {}, std::log(0.1), std::log(0.9));
    CHECK(one.size() == 1);
    CHECK(one[0] == 0.5);
    CHECK_THROWS_AS(fixed_share_terms(z, std::vector<double>{1.0}, 0.0, 0.0), std::invalid_argument);
    const std::vector<double> z2{0.1, 0.2};
    const std::vector<double> v1{0.3};
    const auto two = fixed_share_terms(z2, v1, std::log(0.1), std::log(0.9));
    CHECK(two[0] == doctest::Approx(std::log(0.9) + 0.1));
    CHECK(two[1] == doctest::Approx(std::log(0.1) + 0.3 + 0.2));
}

TEST_CASE("cumulative_losses") {
    EwForecaster ew(1, {1.0}, EtaSchedule::constant(1.0));
    FsForecaster fs(1, {1.0}, EtaSchedule::constant(1.0), 0.1);
    CHECK(cumulative_losses(ew, fs) == std::pair<double, double>{0.0, 0.0});
    ew.update({Matrix::Zero(1, 1), Vector::Zero(1)});
    CHECK_THROWS_AS(cumulative_losses(ew, fs), InvalidState);
    fs.update({Matrix::Zero(1, 1), Vector::Zero(1)});
    CHECK(cumulative_losses(ew, fs) == std::pair<double, double>{0.0, 0.0});
    CHECK_THROWS_AS(FsForecaster(1, {1.0}, EtaSchedule::constant(1.0), 1.5), std::invalid_argument);
}

TEST_CASE("FS mixture weights stay normalised on a long stream") {
    const auto losses = random_losses(2, 400, 2);
    FsForecaster fs(2, {1.0}, EtaSchedule::constant(0.5), 0.01);
    for (const auto& l : losses) CHECK_NOTHROW(fs.update(l));
    for (double lv : fs.log_v()) CHECK(std::isfinite(lv));
}
