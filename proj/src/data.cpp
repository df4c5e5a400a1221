#include "scpd/data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace scpd {
namespace {

Vector filled(Index d, double v) { return Vector::Constant(d, v); }

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view cell) {
    cell = trim(cell);
    if (cell.empty()) return std::nullopt;
    if (cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<Vector> draw(const SyntheticSpec& spec, std::uint64_t seed, std::size_t length,
                         std::size_t tau) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const Index d = spec.dim();
    std::vector<Vector> out;
    out.reserve(length);
    for (std::size_t t = 0; t < length; ++t) {
        const bool post = t >= tau;
        const Vector& mean = post ? spec.post_mean : spec.pre_mean;
        const Vector& sd = post ? spec.post_std : spec.pre_std;
        Vector x(d);
        for (Index i = 0; i < d; ++i) x(i) = mean(i) + sd(i) * normal(rng);
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace

void validate(const SyntheticSpec& spec) {
    const Index d = spec.dim();
    if (d < 1) throw std::invalid_argument("SyntheticSpec: dimension must be positive");
    if (spec.pre_std.size() != d || spec.post_mean.size() != d || spec.post_std.size() != d) {
        throw std::invalid_argument("SyntheticSpec: mean/std vectors differ in length");
    }
    if (!(spec.pre_std.array() > 0.0).all() || !(spec.post_std.array() > 0.0).all()) {
        throw std::invalid_argument("SyntheticSpec: standard deviations must be positive");
    }
    if (!spec.pre_mean.allFinite() || !spec.post_mean.allFinite() ||
        !spec.pre_std.allFinite() || !spec.post_std.allFinite()) {
        throw std::invalid_argument("SyntheticSpec: non-finite parameters");
    }
    if (spec.tau < 1 || spec.tau >= spec.length) {
        throw std::invalid_argument("SyntheticSpec: need 1 <= tau < length");
    }
}

SyntheticSpec synthetic_example(int id) {
    SyntheticSpec s;
    s.example = id;
    s.tau = 150;
    s.length = 300;
    switch (id) {
        case 1:
            s.pre_mean = filled(1, 0.0);
            s.pre_std = filled(1, 0.2);
            s.post_mean = filled(1, 0.4);
            s.post_std = filled(1, 0.2);
            break;
        case 2:
            s.pre_mean = filled(1, 0.0);
            s.pre_std = filled(1, 0.1);
            s.post_mean = filled(1, 0.0);
            s.post_std = filled(1, 0.3);
            break;
        case 3:
            s.pre_mean = filled(3, 0.0);
            s.pre_std = Vector{{0.1, 0.2, 0.3}};
            s.post_mean = 3.0 * s.pre_std;
            s.post_std = s.pre_std;
            break;
        case 4:
            s.pre_mean = filled(3, 0.0);
            s.pre_std = Vector{{0.1, 0.2, 0.3}};
            s.post_mean = filled(3, 0.0);
            s.post_std = 3.0 * s.pre_std;
            break;
        default:
            throw std::invalid_argument("synthetic_example: id must be 1..4");
    }
    return s;
}

std::vector<Vector> generate(const SyntheticSpec& spec, std::uint64_t seed) {
    validate(spec);
    return draw(spec, seed, spec.length, spec.tau);
}

std::vector<Vector> generate_null(const SyntheticSpec& spec, std::uint64_t seed,
                                  std::size_t length) {
    validate(spec);
    return draw(spec, seed, length, length);
}

ExampleParams example_params(int id) {
    switch (id) {
        case 1: return {0.5, 8e-5, 0.2, 10.71};
        case 2: return {1.5, 1e-4, 0.2, 0.0};
        case 3: return {1.6, 1e-7, 0.8, 29.49};
        case 4: return {1.5, 1e-5, 0.3, 11.92};
        default: throw std::invalid_argument("example_params: id must be 1..4");
    }
}

std::vector<Vector> ingest_csv(const std::string& path, Normalize normalize) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<Vector> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line, ',');
        Vector row(static_cast<Index>(cells.size()));
        std::size_t bad = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto v = parse_double(cells[c]);
            if (!v) {
                bad = c + 1;
                break;
            }
            row(static_cast<Index>(c)) = *v;
        }
        if (bad != 0) {
            if (first) {
                first = false;
                width = cells.size();
                continue;
            }
            throw ParseError(path + ":" + std::to_string(line_no) + ":" + std::to_string(bad) +
                                 ": non-numeric cell",
                             line_no, bad);
        }
        if (width == 0) width = cells.size();
        if (cells.size() != width) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                                 std::to_string(width) + " columns, got " +
                                 std::to_string(cells.size()),
                             line_no, std::min(cells.size(), width) + 1);
        }
        first = false;
        rows.push_back(std::move(row));
    }
    if (in.bad()) throw std::runtime_error("read error on " + path);
    if (normalize == Normalize::MaxAbs) normalize_max_abs(rows);
    return rows;
}

void normalize_max_abs(std::vector<Vector>& rows) {
    if (rows.empty()) return;
    Vector scale = Vector::Zero(rows.front().size());
    for (const auto& r : rows) scale = scale.cwiseMax(r.cwiseAbs());
    for (Index i = 0; i < scale.size(); ++i)
        if (scale(i) == 0.0) scale(i) = 1.0;
    for (auto& r : rows) r = r.cwiseQuotient(scale);
}

std::vector<std::size_t> read_annotations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::size_t> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        std::string tok;
        std::size_t col = 0;
        while (ss >> tok) {
            ++col;
            std::size_t v = 0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0) {
                throw ParseError(path + ":" + std::to_string(line_no) +
                                     ": annotations must be positive integers",
                                 line_no, col);
            }
            out.push_back(v);
        }
    }
    if (!std::is_sorted(out.begin(), out.end())) {
        throw std::invalid_argument(path + ": annotations must be sorted");
    }
    return out;
}

}  // namespace scpd
