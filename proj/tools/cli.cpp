#include "cli.hpp"

#include "scpd/calibrate.hpp"
#include "scpd/checks.hpp"
#include "scpd/data.hpp"
#include "scpd/detector.hpp"
#include "scpd/regret.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

namespace scpd::cli {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::string generator;
    std::string basis = "poly2";
    std::optional<double> lambda;
    std::optional<double> alpha;
    std::string eta;
    std::optional<double> threshold;
    std::string calibrate;
    std::size_t min_diff = 10;
    std::uint64_t seed = 1;
    std::string normalize = "none";
    std::string trace;
    std::string report;
    std::string plot;
    std::string svg;
    std::string annotations;
    std::string output;
    bool diagnostics = false;
    bool continue_after_alarm = false;
    bool restart = false;
    std::size_t workers = 1;
    std::optional<std::size_t> horizon;
    bool min_diff_set = false;
};

struct Calibration {
    std::size_t runs = 0;
    std::size_t horizon = 0;
};

int example_id(const std::string& name) {
    for (int id = 1; id <= 4; ++id) {
        if (name == "example" + std::to_string(id)) return id;
    }
    throw UsageError("--generate expects example1..example4, got '" + name + "'");
}

Calibration parse_calibration(const std::string& text) {
    const auto comma = text.find(',');
    Calibration c;
    try {
        if (comma == std::string::npos) throw std::invalid_argument("missing comma");
        std::size_t used = 0;
        c.runs = std::stoul(text.substr(0, comma), &used);
        c.horizon = std::stoul(text.substr(comma + 1));
    } catch (const std::exception&) {
        throw UsageError("--calibrate expects J,T0, got '" + text + "'");
    }
    if (c.runs < 1 || c.horizon < 1) throw UsageError("--calibrate needs J >= 1 and T0 >= 1");
    return c;
}

EtaSchedule parse_eta(const std::string& text) {
    if (text == "inv-sqrt") return EtaSchedule::inverse_sqrt();
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return EtaSchedule::constant(v);
    } catch (const std::out_of_range&) {
        throw UsageError("--eta out of range: " + text);
    } catch (const std::invalid_argument&) {
        throw UsageError("--eta expects a positive number or inv-sqrt, got '" + text + "'");
    }
}

Normalize parse_normalize(const std::string& text) {
    if (text == "none") return Normalize::None;
    if (text == "max-abs") return Normalize::MaxAbs;
    throw UsageError("--normalize expects none or max-abs");
}

std::uint64_t replica_seed(std::uint64_t seed, std::size_t replica) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (replica + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path);
    return f;
}

json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vec_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json metrics_json(const EvalMetrics& m) {
    return {{"false_alarms", m.false_alarms}, {"missed", m.missed},   {"delays", m.delays},
            {"mean_delay", m.mean_delay},     {"delay_std", m.delay_std}};
}

json breakdown_json(const RegretBreakdown& b) {
    json terms = json::object();
    for (const auto& t : b.terms) terms[t.name] = t.value;
    return {{"empirical_regret", b.empirical_regret},
            {"comparator_bounded", b.bounded},
            {"terms", terms},
            {"bound_total", b.bound_total},
            {"loose_total", b.loose_total},
            {"conditions_ok", b.conditions_ok},
            {"condition_violations", b.condition_violations}};
}

json calibration_json(const CalibrationResult& c) {
    return {{"threshold", c.threshold},
            {"runs", c.runs},
            {"horizon", c.horizon},
            {"run_maxima", c.run_maxima}};
}

// Data source resolved from --input / --generate.
struct Source {
    std::vector<Vector> rows;
    std::optional<SyntheticSpec> spec;
    std::string description;
};

Source load_source(const Options& o) {
    if (o.input.empty() == o.generator.empty()) {
        throw UsageError("exactly one of --input and --generate is required");
    }
    Source src;
    if (!o.generator.empty()) {
        const int id = example_id(o.generator);
        src.spec = synthetic_example(id);
        src.rows = generate(*src.spec, o.seed);
        src.description = o.generator;
    } else {
        try {
            src.rows = ingest_csv(o.input, parse_normalize(o.normalize));
        } catch (const ParseError& e) {
            throw IoError(e.what());
        } catch (const UsageError&) {
            throw;
        } catch (const std::runtime_error& e) {
            throw IoError(e.what());
        }
        if (src.rows.empty()) throw IoError(o.input + ": no data rows");
        src.description = o.input;
    }
    return src;
}

DetectorConfig build_config(const Options& o, const Source& src) {
    DetectorConfig c;
    std::optional<ExampleParams> tuned;
    if (src.spec) tuned = example_params(src.spec->example);
    auto pick = [&](const std::optional<double>& v, double ExampleParams::*field,
                    const char* flag) {
        if (v) return *v;
        if (tuned) return (*tuned).*field;
        throw UsageError(std::string(flag) + " is required with --input");
    };
    c.prior = {pick(o.lambda, &ExampleParams::lambda, "--lambda")};
    c.alpha = pick(o.alpha, &ExampleParams::alpha, "--alpha");
    if (!o.eta.empty()) {
        c.schedule = parse_eta(o.eta);
    } else if (tuned) {
        c.schedule = EtaSchedule::constant(tuned->eta);
    } else {
        throw UsageError("--eta is required with --input");
    }
    if (o.basis != "poly1" && o.basis != "poly2") throw UsageError("--basis expects poly1 or poly2");
    c.basis = basis_from_name(o.basis, src.rows.front().size());
    c.stop_on_alarm = !o.continue_after_alarm;
    try {
        validate(c);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return c;
}

void write_trace(const std::string& path, const std::vector<StepOutcome>& trace) {
    std::ofstream f = open_out(path);
    for (const auto& s : trace) {
        const json line = {{"t", s.t},
                           {"statistic", s.statistic},
                           {"ew_loss", s.ew_loss},
                           {"fs_loss", s.fs_loss},
                           {"alarm", s.alarm},
                           {"ew_prediction", vec_json(s.ew_prediction)},
                           {"fs_prediction", vec_json(s.fs_prediction)}};
        f << line.dump() << '\n';
    }
    if (!f) throw IoError("write failed: " + path);
}

void write_plot(const std::string& path, const std::vector<StepOutcome>& trace, double threshold) {
    std::ofstream f = open_out(path);
    f.precision(17);
    f << "t,statistic,threshold\n";
    for (const auto& s : trace) f << s.t << ',' << s.statistic << ',' << threshold << '\n';
    if (!f) throw IoError("write failed: " + path);
}

void write_svg(const std::string& path, const std::vector<StepOutcome>& trace, double threshold) {
    constexpr double kW = 800.0, kH = 300.0, kPad = 30.0;
    double lo = 0.0, hi = 0.0;
    for (const auto& s : trace) {
        lo = std::min(lo, s.statistic);
        hi = std::max(hi, s.statistic);
    }
    if (std::isfinite(threshold)) {
        lo = std::min(lo, threshold);
        hi = std::max(hi, threshold);
    }
    if (hi <= lo) hi = lo + 1.0;
    const double n = std::max<double>(1.0, static_cast<double>(trace.size()));
    auto x = [&](double t) { return kPad + (kW - 2 * kPad) * (t - 1.0) / std::max(1.0, n - 1.0); };
    auto y = [&](double v) { return kH - kPad - (kH - 2 * kPad) * (v - lo) / (hi - lo); };

    std::ofstream f = open_out(path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    f << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (const auto& s : trace) f << x(static_cast<double>(s.t)) << ',' << y(s.statistic) << ' ';
    f << "\"/>\n";
    if (std::isfinite(threshold)) {
        f << "<line x1=\"" << kPad << "\" x2=\"" << kW - kPad << "\" y1=\"" << y(threshold)
          << "\" y2=\"" << y(threshold) << "\" stroke=\"darkorange\" stroke-dasharray=\"6,4\"/>\n";
    }
    f << "<text x=\"" << kPad << "\" y=\"" << kPad - 10 << "\" font-size=\"12\">S_t, t = 1.."
      << trace.size() << "</text>\n</svg>\n";
    if (!f) throw IoError("write failed: " + path);
}

std::vector<std::size_t> upward_crossings(const std::vector<StepOutcome>& trace) {
    std::vector<std::size_t> out;
    bool above = false;
    for (const auto& s : trace) {
        if (s.alarm && !above) out.push_back(s.t);
        above = s.alarm;
    }
    return out;
}

void emit(const Options& o, std::ostream& out, const json& j) {
    if (o.output.empty()) {
        out << j.dump(2) << '\n';
        return;
    }
    std::ofstream f = open_out(o.output);
    f << j.dump(2) << '\n';
    if (!f) throw IoError("write failed: " + o.output);
}

std::vector<std::size_t> load_annotations(const Options& o, const Source& src) {
    if (!o.annotations.empty()) {
        try {
            return read_annotations(o.annotations);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        } catch (const std::runtime_error& e) {
            throw IoError(e.what());
        }
    }
    if (src.spec) return {src.spec->tau};
    return {};
}

int cmd_run(const Options& o, std::ostream& out) {
    if (o.threshold.has_value() == !o.calibrate.empty()) {
        throw UsageError("exactly one of --threshold and --calibrate is required");
    }
    if (o.restart && o.continue_after_alarm) {
        throw UsageError("--restart and --continue-after-alarm are mutually exclusive");
    }
    Source src = load_source(o);
    DetectorConfig config = build_config(o, src);
    const auto annotations = load_annotations(o, src);

    std::optional<CalibrationResult> calibration;
    std::size_t offset = 0;
    if (!o.calibrate.empty()) {
        const Calibration cal = parse_calibration(o.calibrate);
        NullSource null;
        if (src.spec) {
            const SyntheticSpec spec = *src.spec;
            const std::uint64_t seed = o.seed;
            null = [spec, seed, h = cal.horizon](std::size_t j) {
                return generate_null(spec, replica_seed(seed, j), h);
            };
        } else {
            offset = cal.runs * cal.horizon;
            if (offset >= src.rows.size()) {
                throw UsageError("--calibrate J,T0 needs more than J*T0 rows in --input");
            }
            const auto* rows = &src.rows;
            null = [rows, h = cal.horizon](std::size_t j) {
                return std::vector<Vector>(rows->begin() + static_cast<long>(j * h),
                                           rows->begin() + static_cast<long>((j + 1) * h));
            };
        }
        calibration = calibrate_threshold(config, null, cal.runs, cal.horizon, o.workers);
        config.threshold = calibration->threshold;
    } else {
        config.threshold = *o.threshold;
    }

    const std::span<const Vector> stream(src.rows.data() + offset, src.rows.size() - offset);
    std::vector<StepOutcome> trace;
    std::vector<std::size_t> alarms;
    double wall = 0.0;
    if (o.restart) {
        MonitorReport r = monitor_stream(config, stream);
        trace = std::move(r.trace);
        alarms = std::move(r.alarms);
        wall = r.wall_time_seconds;
    } else {
        DetectionReport r = run_stream(config, stream);
        trace = std::move(r.trace);
        alarms = o.continue_after_alarm ? upward_crossings(trace)
                                        : (r.alarm_time ? std::vector<std::size_t>{*r.alarm_time}
                                                        : std::vector<std::size_t>{});
        wall = r.wall_time_seconds;
    }
    for (auto& s : trace) s.t += offset;
    for (auto& a : alarms) a += offset;
    const std::size_t horizon = src.rows.size();

    json report;
    report["alarm_time"] = alarms.empty() ? json(nullptr) : json(alarms.front());
    report["alarms"] = alarms;
    report["horizon"] = horizon;
    report["steps"] = trace.size();
    report["offset"] = offset;
    report["config"] = {{"source", src.description},
                        {"seed", o.seed},
                        {"normalize", o.normalize},
                        {"basis", config.basis.name()},
                        {"input_dim", config.basis.input_dim},
                        {"param_dim", config.basis.param_dim()},
                        {"lambda", config.prior.lambda},
                        {"alpha", config.alpha},
                        {"eta", config.schedule.is_constant() ? json(config.schedule.at(1)) : json(config.schedule.describe())},
                        {"threshold", number_or_null(config.threshold)},
                        {"stop_on_alarm", config.stop_on_alarm},
                        {"restart", o.restart},
                        {"min_diff", o.min_diff}};
    report["annotations"] = annotations;
    if (!annotations.empty()) {
        report["metrics"] = metrics_json(evaluate(alarms, annotations, o.min_diff, horizon));
    }
    if (calibration) report["calibration"] = calibration_json(*calibration);
    if (o.diagnostics) {
        std::vector<QuadraticLoss> losses;
        for (const auto& x : stream.first(trace.size())) losses.push_back(build_loss(config.basis, x));
        std::vector<std::size_t> tau{0};
        for (auto a : annotations) {
            if (a > offset && a - offset < losses.size()) tau.push_back(a - offset);
        }
        tau.push_back(losses.size());
        report["diagnostics"] = {
            {"ew", breakdown_json(ew_bound(losses, config.prior, config.schedule))},
            {"fs", breakdown_json(fs_bound(losses, config.prior, config.schedule, config.alpha, tau))},
            {"switch_points", tau}};
    }
    report["wall_time_seconds"] = wall;

    if (!o.trace.empty()) write_trace(o.trace, trace);
    if (!o.plot.empty()) write_plot(o.plot, trace, config.threshold);
    if (!o.svg.empty()) write_svg(o.svg, trace, config.threshold);
    if (!o.report.empty()) {
        std::ofstream f = open_out(o.report);
        f << report.dump(2) << '\n';
        if (!f) throw IoError("write failed: " + o.report);
    } else {
        out << report.dump(2) << '\n';
    }
    return kOk;
}

int cmd_calibrate(const Options& o, std::ostream& out) {
    if (o.calibrate.empty()) throw UsageError("calibrate requires --calibrate J,T0");
    const Calibration cal = parse_calibration(o.calibrate);
    Source src = load_source(o);
    const DetectorConfig config = build_config(o, src);
    NullSource null;
    if (src.spec) {
        const SyntheticSpec spec = *src.spec;
        const std::uint64_t seed = o.seed;
        null = [spec, seed, h = cal.horizon](std::size_t j) {
            return generate_null(spec, replica_seed(seed, j), h);
        };
    } else {
        if (cal.runs * cal.horizon > src.rows.size()) {
            throw UsageError("--calibrate J,T0 needs at least J*T0 rows in --input");
        }
        const auto* rows = &src.rows;
        null = [rows, h = cal.horizon](std::size_t j) {
            return std::vector<Vector>(rows->begin() + static_cast<long>(j * h),
                                       rows->begin() + static_cast<long>((j + 1) * h));
        };
    }
    const CalibrationResult r = calibrate_threshold(config, null, cal.runs, cal.horizon, o.workers);
    emit(o, out, calibration_json(r));
    return kOk;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
    if (o.report.empty() == o.trace.empty()) {
        throw UsageError("evaluate requires exactly one of --report and --trace");
    }
    std::vector<std::size_t> alarms;
    std::optional<std::size_t> horizon = o.horizon;
    std::vector<std::size_t> annotations;
    std::size_t min_diff = o.min_diff;
    if (!o.report.empty()) {
        const json r = read_json(o.report);
        try {
            alarms = r.at("alarms").get<std::vector<std::size_t>>();
            if (!horizon) horizon = r.at("horizon").get<std::size_t>();
            annotations = r.value("annotations", std::vector<std::size_t>{});
            if (r.contains("config")) min_diff = r["config"].value("min_diff", min_diff);
        } catch (const json::exception& e) {
            throw IoError(o.report + ": malformed report: " + e.what());
        }
    } else {
        std::ifstream f(o.trace);
        if (!f) throw IoError("cannot open " + o.trace);
        std::string line;
        std::size_t last_t = 0;
        bool above = false;
        try {
            while (std::getline(f, line)) {
                if (line.empty()) continue;
                const json s = json::parse(line);
                const auto t = s.at("t").get<std::size_t>();
                const bool alarm = s.at("alarm").get<bool>();
                if (alarm && !above) alarms.push_back(t);
                above = alarm;
                last_t = t;
            }
        } catch (const json::exception& e) {
            throw IoError(o.trace + ": malformed trace: " + e.what());
        }
        if (!horizon) horizon = last_t;
    }
    if (!o.annotations.empty()) {
        try {
            annotations = read_annotations(o.annotations);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        } catch (const std::runtime_error& e) {
            throw IoError(e.what());
        }
    }
    if (o.min_diff_set) min_diff = o.min_diff;
    emit(o, out, metrics_json(evaluate(alarms, annotations, min_diff, *horizon)));
    return kOk;
}

int cmd_generate(const Options& o, std::ostream& out) {
    if (o.generator.empty()) throw UsageError("generate requires --generate example1..4");
    const SyntheticSpec spec = synthetic_example(example_id(o.generator));
    const auto rows = generate(spec, o.seed);
    std::ostringstream csv;
    csv.precision(17);
    for (const auto& r : rows) {
        for (Index i = 0; i < r.size(); ++i) csv << (i ? "," : "") << r(i);
        csv << '\n';
    }
    if (o.output.empty()) {
        out << csv.str();
    } else {
        std::ofstream f = open_out(o.output);
        f << csv.str();
        if (!f) throw IoError("write failed: " + o.output);
    }
    if (!o.annotations.empty()) {
        std::ofstream f = open_out(o.annotations);
        f << spec.tau << '\n';
        if (!f) throw IoError("write failed: " + o.annotations);
    }
    return kOk;
}

int cmd_selfcheck(const Options& o, std::ostream& out) {
    const std::uint64_t s = o.seed;
    const std::vector<std::pair<std::string, checks::CheckResult>> results = {
        {"closed-form log Z and mean vs quadrature", checks::closed_form_vs_quadrature(s, 50)},
        {"fixed-share recursion vs enumeration", checks::recursion_vs_enumeration(s + 1, 10)},
        {"alpha = 0 reduces to EW", checks::alpha_zero_degeneracy(s + 2, 2, 100)},
        {"mixability inequality", checks::mixability(s + 3, 10, 100000)},
        {"score-matching loss unbiasedness", checks::green_identity(s + 4, 5, 100000)},
        {"matrix identities", checks::matrix_identities(s + 5, 200)},
    };
    bool all = true;
    for (const auto& [name, r] : results) {
        out << (r.pass ? "PASS " : "FAIL ") << name << ": " << r.detail << '\n';
        all = all && r.pass;
    }
    return all ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Score-based online change-point detection"};
    app.require_subcommand(1, 1);
    Options o;

    auto add_source = [&](CLI::App* c) {
        c->add_option("--input", o.input, "CSV file, one observation per row");
        c->add_option("--generate", o.generator, "Synthetic stream: example1..example4");
        c->add_option("--seed", o.seed, "Seed for generated data and null streams");
        c->add_option("--normalize", o.normalize, "none | max-abs")->check(CLI::IsMember({"none", "max-abs"}));
    };
    auto add_model = [&](CLI::App* c) {
        c->add_option("--basis", o.basis, "poly1 | poly2");
        c->add_option("--lambda", o.lambda, "Prior precision");
        c->add_option("--alpha", o.alpha, "Fixed-share switching rate");
        c->add_option("--eta", o.eta, "Learning rate: a positive value or inv-sqrt");
        c->add_option("--workers", o.workers, "Concurrent calibration runs")->check(CLI::PositiveNumber);
    };

    CLI::App* run_cmd = app.add_subcommand("run", "Run the detector on a stream");
    add_source(run_cmd);
    add_model(run_cmd);
    run_cmd->add_option("--threshold", o.threshold, "Alarm when the statistic exceeds this");
    run_cmd->add_option("--calibrate", o.calibrate, "Calibrate the threshold on J null runs of length T0: J,T0");
    run_cmd->add_option("--min-diff", o.min_diff, "Evaluation tolerance before a change point");
    run_cmd->add_option("--annotations", o.annotations, "Change points, one per line");
    run_cmd->add_option("--trace", o.trace, "NDJSON trace path");
    run_cmd->add_option("--report", o.report, "JSON report path (stdout otherwise)");
    run_cmd->add_option("--plot", o.plot, "CSV plot data path");
    run_cmd->add_option("--svg", o.svg, "SVG chart path");
    run_cmd->add_flag("--diagnostics", o.diagnostics, "Add regret bounds to the report");
    run_cmd->add_flag("--continue-after-alarm", o.continue_after_alarm, "Keep running after the first alarm");
    run_cmd->add_flag("--restart", o.restart, "Restart the detector after each alarm");

    CLI::App* cal_cmd = app.add_subcommand("calibrate", "Calibrate a threshold on null streams");
    add_source(cal_cmd);
    add_model(cal_cmd);
    cal_cmd->add_option("--calibrate", o.calibrate, "J,T0")->required();
    cal_cmd->add_option("--output", o.output, "JSON output path (stdout otherwise)");

    CLI::App* eval_cmd = app.add_subcommand("evaluate", "Score alarms against annotations");
    eval_cmd->add_option("--report", o.report, "Run report JSON");
    eval_cmd->add_option("--trace", o.trace, "NDJSON trace");
    eval_cmd->add_option("--annotations", o.annotations, "Change points, one per line");
    auto* md = eval_cmd->add_option("--min-diff", o.min_diff, "Evaluation tolerance");
    eval_cmd->add_option("--horizon", o.horizon, "Stream length (default: from report or trace)");
    eval_cmd->add_option("--output", o.output, "JSON output path (stdout otherwise)");

    CLI::App* gen_cmd = app.add_subcommand("generate", "Write a synthetic stream as CSV");
    gen_cmd->add_option("--generate", o.generator, "example1..example4")->required();
    gen_cmd->add_option("--seed", o.seed, "Seed");
    gen_cmd->add_option("--output", o.output, "CSV path (stdout otherwise)");
    gen_cmd->add_option("--annotations", o.annotations, "Write the change point here");

    CLI::App* self_cmd = app.add_subcommand("selfcheck", "Run the oracle suite");
    self_cmd->add_option("--seed", o.seed, "Seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    o.min_diff_set = md->count() > 0;

    try {
        if (run_cmd->parsed()) return cmd_run(o, out);
        if (cal_cmd->parsed()) return cmd_calibrate(o, out);
        if (eval_cmd->parsed()) return cmd_evaluate(o, out);
        if (gen_cmd->parsed()) return cmd_generate(o, out);
        return cmd_selfcheck(o, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const NumericFailure& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    }
}

}  // namespace scpd::cli
