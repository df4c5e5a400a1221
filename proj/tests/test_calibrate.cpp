#include "scpd/calibrate.hpp"
#include "scpd/data.hpp"

#include <doctest.h>

using namespace scpd;

namespace {

DetectorConfig example1() {
    const ExampleParams p = example_params(1);
    DetectorConfig c;
    c.prior = {p.lambda};
    c.alpha = p.alpha;
    c.schedule = EtaSchedule::constant(p.eta);
    c.basis = poly_basis(1, 2);
    return c;
}

NullSource nulls(std::size_t length) {
    return [length](std::size_t j) { return generate_null(synthetic_example(1), 100 + j, length); };
}

}  // namespace

TEST_CASE("single run threshold is that run's maximum") {
    const DetectorConfig c = example1();
    const CalibrationResult r = calibrate_threshold(c, nulls(150), 1, 150);
    CHECK(r.runs == 1);
    CHECK(r.horizon == 150);
    REQUIRE(r.run_maxima.size() == 1);
    CHECK(r.threshold == max_statistic(c, generate_null(synthetic_example(1), 100, 150)));
}

TEST_CASE("alpha = 0 calibrates to zero") {
    DetectorConfig c = example1();
    c.alpha = 0.0;
    CHECK(calibrate_threshold(c, nulls(80), 5, 80).threshold == 0.0);
}

TEST_CASE("threshold is the max of run maxima, monotone in J, and worker-independent") {
    const DetectorConfig c = example1();
    const CalibrationResult small = calibrate_threshold(c, nulls(100), 5, 100);
    const CalibrationResult large = calibrate_threshold(c, nulls(100), 12, 100);
    const CalibrationResult threaded = calibrate_threshold(c, nulls(100), 12, 100, 4);
    CHECK(small.threshold == *std::max_element(small.run_maxima.begin(), small.run_maxima.end()));
    CHECK(large.threshold >= small.threshold);
    CHECK(threaded.run_maxima == large.run_maxima);
    for (std::size_t j = 0; j < 5; ++j) CHECK(small.run_maxima[j] == large.run_maxima[j]);
}

TEST_CASE("calibration errors") {
    const DetectorConfig c = example1();
    CHECK_THROWS_AS(calibrate_threshold(c, nulls(10), 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_threshold(c, nulls(10), 2, 20), std::runtime_error);
    const NullSource broken = [](std::size_t) -> std::vector<Vector> {
        throw std::runtime_error("source failed");
    };
    CHECK_THROWS_AS(calibrate_threshold(c, broken, 3, 10, 2), std::runtime_error);
}

TEST_CASE("evaluate: delays, early credit and false alarms") {
    const std::vector<std::size_t> one{150};
    EvalMetrics m = evaluate(std::vector<std::size_t>{153}, one, 10, 300);
    CHECK(m.false_alarms == 0);
    CHECK(m.delays == std::vector<double>{3.0});
    CHECK(m.mean_delay == 3.0);

    m = evaluate(std::vector<std::size_t>{145}, one, 10, 300);
    CHECK(m.false_alarms == 0);
    CHECK(m.delays == std::vector<double>{0.0});

    m = evaluate(std::vector<std::size_t>{140}, one, 10, 300);
    CHECK(m.false_alarms == 1);
    CHECK(m.missed == 1);
    CHECK(m.delays == std::vector<double>{150.0});

    m = evaluate(std::vector<std::size_t>{150}, one, 0, 300);
    CHECK(m.false_alarms == 1);

    m = evaluate(std::vector<std::size_t>{20, 152, 160}, one, 10, 300);
    CHECK(m.false_alarms == 2);
    CHECK(m.delays == std::vector<double>{2.0});
}

TEST_CASE("evaluate: missed change points") {
    const std::vector<std::size_t> ann{100, 200, 260};
    const EvalMetrics m = evaluate(std::vector<std::size_t>{205}, ann, 10, 300);
    CHECK(m.false_alarms == 0);
    CHECK(m.missed == 2);
    CHECK(m.delays == std::vector<double>{100.0, 5.0, 40.0});
    CHECK(m.mean_delay == doctest::Approx(145.0 / 3.0));
    CHECK(m.delay_std == doctest::Approx(std::sqrt(((100 - 145.0 / 3) * (100 - 145.0 / 3) +
                                                    (5 - 145.0 / 3) * (5 - 145.0 / 3) +
                                                    (40 - 145.0 / 3) * (40 - 145.0 / 3)) /
                                                   2.0)));
}

TEST_CASE("evaluate: every alarm classified once, input checks") {
    const std::vector<std::size_t> ann{50, 120};
    const std::vector<std::size_t> alarms{10, 45, 48, 60, 115, 130, 140};
    const EvalMetrics m = evaluate(alarms, ann, 10, 200);
    CHECK(m.delays.size() == 2);
    CHECK(m.false_alarms + (m.delays.size() - m.missed) == alarms.size());
    CHECK(evaluate(alarms, ann, 10, 200).delays == m.delays);
    CHECK(evaluate(std::vector<std::size_t>{5}, std::vector<std::size_t>{}, 10, 20).false_alarms == 1);
    CHECK_THROWS_AS(evaluate(std::vector<std::size_t>{5, 3}, ann, 10, 200), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(alarms, std::vector<std::size_t>{5, 5}, 10, 200), std::invalid_argument);
}
