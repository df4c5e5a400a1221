#include "scpd/data.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace scpd;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / ("scpd_test_data_" + name);
    std::ofstream(path) << body;
    return path.string();
}

double column_std(const std::vector<Vector>& rows, std::size_t from, std::size_t to, Index c) {
    double m = 0.0, s = 0.0;
    for (std::size_t i = from; i < to; ++i) m += rows[i](c);
    m /= static_cast<double>(to - from);
    for (std::size_t i = from; i < to; ++i) s += (rows[i](c) - m) * (rows[i](c) - m);
    return std::sqrt(s / static_cast<double>(to - from - 1));
}

}  // namespace

TEST_CASE("synthetic examples") {
    const auto ex1 = generate(synthetic_example(1), 1);
    REQUIRE(ex1.size() == 300);
    CHECK(ex1.front().size() == 1);
    const double pre = column_std(ex1, 0, 150, 0);
    CHECK(pre >= 0.15);
    CHECK(pre <= 0.25);

    const auto ex3 = generate(synthetic_example(3), 1);
    CHECK(ex3.front().size() == 3);
    CHECK(synthetic_example(3).dim() == 3);
    CHECK(column_std(generate(synthetic_example(2), 5), 150, 300, 0) > 0.2);

    CHECK(generate(synthetic_example(4), 9) == generate(synthetic_example(4), 9));
    CHECK(generate(synthetic_example(4), 9) != generate(synthetic_example(4), 10));
    CHECK_THROWS_AS(synthetic_example(5), std::invalid_argument);
}

TEST_CASE("custom stream with a late change") {
    SyntheticSpec s;
    s.pre_mean = Vector::Zero(1);
    s.pre_std = Vector::Ones(1);
    s.post_mean = Vector::Constant(1, 1000.0);
    s.post_std = Vector::Constant(1, 1e-9);
    s.length = 20;
    s.tau = 19;
    const auto rows = generate(s, 3);
    REQUIRE(rows.size() == 20);
    CHECK(rows[19](0) == doctest::Approx(1000.0));
    for (std::size_t i = 0; i < 19; ++i) CHECK(std::abs(rows[i](0)) < 100.0);

    s.tau = 20;
    CHECK_THROWS_AS(validate(s), std::invalid_argument);
    s.tau = 5;
    s.pre_std(0) = 0.0;
    CHECK_THROWS_AS(validate(s), std::invalid_argument);
}

TEST_CASE("null streams") {
    const auto n = generate_null(synthetic_example(2), 4, 77);
    CHECK(n.size() == 77);
    CHECK(column_std(n, 0, 77, 0) < 0.2);
}

TEST_CASE("csv ingestion") {
    const auto header = ingest_csv(write_temp("header.csv", "x,y\n1,2\n\n3.5,-4e-1\n"));
    REQUIRE(header.size() == 2);
    CHECK(header[1] == Vector{{3.5, -0.4}});

    const auto plain = ingest_csv(write_temp("plain.csv", "1, 2\n3 ,4\n"));
    CHECK(plain.size() == 2);
    CHECK(plain[0] == Vector{{1.0, 2.0}});

    try {
        ingest_csv(write_temp("ragged.csv", "1,2\n3\n"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row() == 2);
    }
    try {
        ingest_csv(write_temp("bad.csv", "a,b\n1,2\n3,zz\n"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row() == 3);
        CHECK(e.column() == 2);
    }
    CHECK_THROWS_AS(ingest_csv("/nonexistent/scpd/file.csv"), std::runtime_error);

    const auto scaled = ingest_csv(write_temp("scale.csv", "2,0\n-4,0\n1,0\n"), Normalize::MaxAbs);
    CHECK(scaled[0] == Vector{{0.5, 0.0}});
    CHECK(scaled[1] == Vector{{-1.0, 0.0}});
}

TEST_CASE("annotation files") {
    CHECK(read_annotations(write_temp("ann1.txt", "150\n")) == std::vector<std::size_t>{150});
    CHECK(read_annotations(write_temp("ann2.txt", "10, 20\n30\n\n")) ==
          std::vector<std::size_t>{10, 20, 30});
    CHECK(read_annotations(write_temp("ann3.txt", "")).empty());
    CHECK_THROWS(read_annotations(write_temp("ann4.txt", "20\n10\n")));
    CHECK_THROWS(read_annotations(write_temp("ann5.txt", "x\n")));
    CHECK_THROWS(read_annotations(write_temp("ann6.txt", "0\n")));
}
