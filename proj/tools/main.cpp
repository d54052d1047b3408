// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: bounds tables, saturating-setup construction, game
// simulation, detector-efficiency margin curves, closed-form ratio tables,
// and the library's property-check suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellvol/bellvol.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verification_failure = 1;
constexpr int exit_usage_error = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 17 significant digits: enough to round-trip any double exactly.
std::string fmt17(double v) {
    if (v == 0.0) v = 0.0; // fold -0 into 0
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

// Minimal JSON document builder with insertion-ordered keys and 17-digit
// number formatting (the vendored JSON library is used only for parsing).
class JsonDoc {
  public:
    JsonDoc& field(const std::string& key, const std::string& raw_value) {
        entries_.emplace_back(key, raw_value);
        return *this;
    }
    JsonDoc& number(const std::string& key, double v) { return field(key, fmt17(v)); }
    JsonDoc& integer(const std::string& key, long long v) { return field(key, std::to_string(v)); }
    JsonDoc& unsigned_integer(const std::string& key, unsigned long long v) {
        return field(key, std::to_string(v));
    }
    JsonDoc& text(const std::string& key, const std::string& v) {
        return field(key, "\"" + json_escape(v) + "\"");
    }
    JsonDoc& null(const std::string& key) { return field(key, "null"); }
    JsonDoc& maybe_number(const std::string& key, double v, bool defined) {
        return defined ? number(key, v) : null(key);
    }

    static std::string number_array(const std::vector<double>& values) {
        std::string out = "[";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out += ", ";
            out += fmt17(values[i]);
        }
        return out + "]";
    }

    static std::string vec3_array(const std::vector<bellvol::Vec3>& values) {
        std::string out = "[";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out += ", ";
            out += "[" + fmt17(values[i].x) + ", " + fmt17(values[i].y) + ", " + fmt17(values[i].z) + "]";
        }
        return out + "]";
    }

    static std::string string_array(const std::vector<std::string>& values) {
        std::string out = "[";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out += ", ";
            out += "\"" + json_escape(values[i]) + "\"";
        }
        return out + "]";
    }

    std::string render(int indent = 0) const {
        const std::string pad(static_cast<std::size_t>(indent), ' ');
        std::string out = "{\n";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            out += pad + "  \"" + json_escape(entries_[i].first) + "\": " + entries_[i].second;
            if (i + 1 < entries_.size()) out += ",";
            out += "\n";
        }
        out += pad + "}";
        return out;
    }

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot open output file: " + path);
    return out;
}

void write_manifest(const std::string& command, const std::map<std::string, std::string>& parameters,
                    unsigned long long seed, const std::vector<std::string>& outputs,
                    const std::string& primary_output) {
    JsonDoc params;
    for (const auto& [k, v] : parameters) params.text(k, v);
    JsonDoc doc;
    doc.text("command", command);
    doc.field("parameters", params.render(2));
    doc.unsigned_integer("seed", seed);
    doc.text("artifact_version", bellvol::version);
    doc.field("outputs", JsonDoc::string_array(outputs));
    auto out = open_output(primary_output + ".manifest.json");
    out << doc.render() << "\n";
}

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("cannot parse " + flag + " entry: '" + item + "'");
        }
    }
    if (values.empty()) throw UsageError(flag + " must not be empty");
    return values;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<int> values;
    for (double v : parse_double_list(text, flag)) {
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v) throw UsageError(flag + " entries must be integers");
        values.push_back(i);
    }
    return values;
}

bellvol::MeasurementSetup load_setup(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open setup file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw UsageError("cannot parse setup file: " + std::string(e.what()));
    }
    bellvol::MeasurementSetup setup;
    try {
        setup.n = doc.at("n").get<int>();
        for (const auto& row : doc.at("alice"))
            setup.alice.push_back({row.at(0).get<double>(), row.at(1).get<double>(), row.at(2).get<double>()});
        for (const auto& row : doc.at("bob"))
            setup.bob.push_back({row.at(0).get<double>(), row.at(1).get<double>(), row.at(2).get<double>()});
    } catch (const std::exception& e) {
        throw UsageError("setup file is missing fields: " + std::string(e.what()));
    }
    if (static_cast<int>(setup.alice.size()) != setup.n || static_cast<int>(setup.bob.size()) != setup.n)
        throw UsageError("setup file direction counts do not match n");
    if (!setup.directions_unit(1e-9)) throw UsageError("setup file directions are not unit vectors");
    return setup;
}

double exact_factorial_double(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// ---------------------------------------------------------------- bounds ----

struct BoundsOptions {
    int n = 2;
    int cap = 6;
};

int run_bounds(const BoundsOptions& opt) {
    if (opt.n < 1) throw UsageError("bounds: n must be positive");
    const bellvol::BigUint product_bound = bellvol::BigUint::factorial(static_cast<unsigned>(opt.n));
    const bellvol::BigUint deterministic = bellvol::fd_value(opt.n);

    double ratio;
    if (opt.n >= 4) {
        ratio = bellvol::ratio_fd_to_factorial(opt.n);
    } else {
        ratio = deterministic.to_double() / product_bound.to_double();
    }

    std::cout << "n                    " << opt.n << "\n";
    std::cout << "product_bound        " << product_bound.to_string() << "  (n!)\n";
    std::cout << "deterministic_value  " << deterministic.to_string() << "  (alternating-strategy value)\n";
    std::cout << "ratio_to_bound       " << fmt17(ratio) << "\n";
    std::cout << "ratio_limit          " << fmt17(bellvol::ratio_limit_reference()) << "  (large-n reference)\n";
    if (opt.n <= opt.cap) {
        const auto best = bellvol::maximize_P(opt.n, 11, 200, opt.cap);
        std::cout << "classical_max        " << fmt17(best.value) << "  (exhaustive search)\n";
        std::cout << "ordering             deterministic_value <= classical_max <= product_bound\n";
    } else {
        std::cout << "classical_max        skipped (n > cap " << opt.cap
                  << "; deterministic_value is a lower bound)\n";
    }
    return exit_ok;
}

// ------------------------------------------------------------- construct ----

struct ConstructOptions {
    int n = 2;
    std::string output = "setup.json";
};

int run_construct(const ConstructOptions& opt) {
    if (opt.n < 2) throw UsageError("construct: n must be at least 2");
    const auto basis = bellvol::build_basis(opt.n);
    const auto setup = bellvol::saturating_setup(opt.n);
    const auto correlators = bellvol::correlators_epr(setup);

    const double product_value = bellvol::bell_multiplicative(correlators, basis);
    const double additive_value = bellvol::bell_additive(correlators, basis);
    const double factorial = exact_factorial_double(opt.n);
    const double rel_error = std::abs(product_value - factorial) / factorial;

    const auto moments = bellvol::moment_matrix(setup.alice, bellvol::BlochState{});
    std::vector<double> gaps;
    for (int j = 1; j <= opt.n; ++j) gaps.push_back(bellvol::schur_gap(moments, correlators.column(j)));

    if (rel_error > 1e-9) {
        std::cerr << "construct: saturation check failed: value " << fmt17(product_value)
                  << " differs from " << fmt17(factorial) << " by relative " << fmt17(rel_error) << "\n";
        return exit_verification_failure;
    }

    std::vector<double> flat;
    for (int i = 1; i <= opt.n; ++i)
        for (int j = 1; j <= opt.n; ++j) flat.push_back(correlators.at(i, j));

    JsonDoc doc;
    doc.integer("n", opt.n);
    doc.number("product_bound", factorial);
    doc.field("alice", JsonDoc::vec3_array(setup.alice));
    doc.field("bob", JsonDoc::vec3_array(setup.bob));
    doc.field("correlators_row_major", JsonDoc::number_array(flat));
    doc.number("bell_multiplicative", product_value);
    doc.number("bell_additive", additive_value);
    doc.number("saturation_rel_error", rel_error);
    doc.field("schur_gaps", JsonDoc::number_array(gaps));
    auto out = open_output(opt.output);
    out << doc.render() << "\n";

    write_manifest("construct", {{"n", std::to_string(opt.n)}, {"output", opt.output}}, 0,
                   {opt.output}, opt.output);
    std::cout << "wrote " << opt.output << " (value " << fmt17(product_value) << ", bound "
              << fmt17(factorial) << ")\n";
    return exit_ok;
}

// -------------------------------------------------------------- simulate ----

struct SimulateOptions {
    int n = 2;
    long long rounds = 0;
    int trials = 1;
    unsigned long long seed = 0;
    std::string scheduling = "stratified";
    std::string strategy = "quantum";
    std::string mu_list;
    std::string sign_list;
    std::string setup_path;
    std::string summary = "summary.json";
    std::string paths;
};

int run_simulate(const SimulateOptions& opt) {
    bellvol::GameConfig config;
    config.n = opt.n;
    config.rounds = opt.rounds;
    config.trials = opt.trials;
    config.seed = opt.seed;

    if (opt.scheduling == "stratified") {
        config.scheduling = bellvol::Scheduling::stratified;
    } else if (opt.scheduling == "uniform-random" || opt.scheduling == "uniform") {
        config.scheduling = bellvol::Scheduling::uniform_random;
    } else {
        throw UsageError("simulate: unknown scheduling '" + opt.scheduling +
                         "' (expected stratified or uniform-random)");
    }

    if (opt.strategy == "quantum") {
        bellvol::QuantumStrategy q;
        if (!opt.setup_path.empty()) q.setup = load_setup(opt.setup_path);
        config.strategy = q;
    } else if (opt.strategy == "classical-fd") {
        config.strategy = bellvol::ClassicalFd{};
    } else if (opt.strategy == "classical-opt-n2") {
        config.strategy = bellvol::ClassicalOptN2{};
    } else if (opt.strategy == "classical-explicit") {
        if (opt.mu_list.empty() || opt.sign_list.empty())
            throw UsageError("simulate: classical-explicit requires --mu and --bob-signs");
        config.strategy = bellvol::ClassicalExplicit{parse_double_list(opt.mu_list, "--mu"),
                                                     parse_int_list(opt.sign_list, "--bob-signs")};
    } else {
        throw UsageError("simulate: unknown strategy '" + opt.strategy + "'");
    }

    std::ofstream path_file;
    std::optional<bellvol::RoundSink> sink;
    if (!opt.paths.empty()) {
        path_file = open_output(opt.paths);
        path_file << "trial,round,i,j,a,b";
        for (int l = 1; l <= opt.n; ++l) path_file << ",x" << l;
        path_file << "\n";
        sink = [&path_file](int trial, long long round, int i, int j, int a, int b,
                            const std::vector<double>& position) {
            path_file << trial << "," << round << "," << i << "," << j << "," << a << "," << b;
            for (double x : position) path_file << "," << fmt17(x);
            path_file << "\n";
        };
    }

    bellvol::GameRun run;
    try {
        run = sink ? bellvol::run_game(config, *sink) : bellvol::run_game(config);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("simulate: ") + e.what());
    }

    JsonDoc doc;
    doc.integer("n", opt.n);
    doc.text("strategy", opt.strategy);
    doc.text("scheduling", config.scheduling == bellvol::Scheduling::stratified ? "stratified"
                                                                                : "uniform-random");
    doc.integer("rounds", opt.rounds);
    doc.integer("trials", opt.trials);
    doc.unsigned_integer("seed", opt.seed);
    doc.maybe_number("estimate", run.estimate_mean, run.estimate_mean_defined);
    doc.maybe_number("stderr", run.estimate_stderr, run.estimate_stderr_defined);
    doc.number("analytic_target", run.analytic_target);
    if (config.n == 2) {
        doc.maybe_number("s_t_mean", run.s_t_mean, run.s_t_mean_defined);
        doc.maybe_number("s_t_stderr", run.s_t_stderr, run.s_t_stderr_defined);
    }
    doc.field("per_direction_mean", JsonDoc::number_array(run.per_direction_mean));
    doc.text("normalization",
             "estimate = prod_j (n^2/rounds) W_j per trial, averaged over trials; "
             "under stratified scheduling each direction receives rounds/n throws");
    auto out = open_output(opt.summary);
    out << doc.render() << "\n";

    std::map<std::string, std::string> params{
        {"n", std::to_string(opt.n)},           {"rounds", std::to_string(opt.rounds)},
        {"trials", std::to_string(opt.trials)}, {"seed", std::to_string(opt.seed)},
        {"scheduling", opt.scheduling},         {"strategy", opt.strategy},
        {"summary", opt.summary}};
    std::vector<std::string> outputs{opt.summary};
    if (!opt.paths.empty()) {
        params["paths"] = opt.paths;
        outputs.push_back(opt.paths);
    }
    if (!opt.setup_path.empty()) params["setup"] = opt.setup_path;
    if (!opt.mu_list.empty()) params["mu"] = opt.mu_list;
    if (!opt.sign_list.empty()) params["bob_signs"] = opt.sign_list;
    write_manifest("simulate", params, opt.seed, outputs, opt.summary);

    if (run.estimate_mean_defined) {
        std::cout << "estimate " << fmt17(run.estimate_mean);
        if (run.estimate_stderr_defined) std::cout << " +- " << fmt17(run.estimate_stderr);
        std::cout << " (analytic target " << fmt17(run.analytic_target) << ")\n";
    } else {
        std::cout << "no rounds played; analytic target " << fmt17(run.analytic_target) << "\n";
    }
    return exit_ok;
}

// ------------------------------------------------------------ robustness ----

struct RobustnessOptions {
    double eta_min = 0.75;
    double eta_max = 1.0;
    int steps = 251;
    std::string output = "robustness.csv";
};

int run_robustness(const RobustnessOptions& opt) {
    if (!(opt.eta_min > 0.0 && opt.eta_min <= opt.eta_max && opt.eta_max <= 1.0))
        throw UsageError("robustness: require 0 < eta-min <= eta-max <= 1");
    if (opt.steps < 1) throw UsageError("robustness: steps must be positive");

    auto out = open_output(opt.output);
    out << "eta,delta_additive,delta_multiplicative\n";
    for (int k = 0; k < opt.steps; ++k) {
        const double eta =
            opt.steps == 1
                ? opt.eta_min
                : opt.eta_min + (opt.eta_max - opt.eta_min) * static_cast<double>(k) /
                                    static_cast<double>(opt.steps - 1);
        out << fmt17(eta) << "," << fmt17(bellvol::delta_additive(eta)) << ","
            << fmt17(bellvol::delta_multiplicative(eta)) << "\n";
    }

    write_manifest("robustness",
                   {{"eta_min", fmt17(opt.eta_min)},
                    {"eta_max", fmt17(opt.eta_max)},
                    {"steps", std::to_string(opt.steps)},
                    {"output", opt.output}},
                   0, {opt.output}, opt.output);
    std::cout << "wrote " << opt.output << "; additive margin crosses zero at eta = "
              << fmt17(bellvol::additive_margin_root()) << "\n";
    return exit_ok;
}

// ----------------------------------------------------------------- ratio ----

struct RatioOptions {
    std::string n_list;
    int n_min = 0;
    int n_max = 0;
    std::string output = "ratio.csv";
};

int run_ratio(const RatioOptions& opt) {
    std::vector<int> ns;
    if (!opt.n_list.empty()) ns = parse_int_list(opt.n_list, "--n");
    if (opt.n_min != 0 || opt.n_max != 0) {
        if (opt.n_min < 1 || opt.n_max < opt.n_min)
            throw UsageError("ratio: require 1 <= n-min <= n-max");
        for (int n = opt.n_min; n <= opt.n_max; ++n) ns.push_back(n);
    }
    if (ns.empty()) throw UsageError("ratio: provide --n or --n-min/--n-max");
    for (int n : ns)
        if (n < 4) throw UsageError("ratio: all n must be at least 4 (the value is zero below that)");

    const double limit = bellvol::ratio_limit_reference();
    auto out = open_output(opt.output);
    out << "n,ratio,limit_reference\n";
    for (int n : ns)
        out << n << "," << fmt17(bellvol::ratio_fd_to_factorial(n)) << "," << fmt17(limit) << "\n";

    std::map<std::string, std::string> params{{"output", opt.output}};
    if (!opt.n_list.empty()) params["n"] = opt.n_list;
    if (opt.n_min != 0 || opt.n_max != 0) {
        params["n_min"] = std::to_string(opt.n_min);
        params["n_max"] = std::to_string(opt.n_max);
    }
    write_manifest("ratio", params, 0, {opt.output}, opt.output);
    std::cout << "wrote " << opt.output << " (" << ns.size() << " rows)\n";
    return exit_ok;
}

// ---------------------------------------------------------------- verify ----

struct VerifyOptions {
    int n_max = 8;
    int trials = 1000;
    unsigned long long seed = 1;
};

int run_verify(const VerifyOptions& opt) {
    if (opt.n_max < 2 || opt.trials < 1) throw UsageError("verify: require n-max >= 2 and trials >= 1");
    const auto results = bellvol::run_property_suite(opt.n_max, opt.trials, opt.seed);
    int passed = 0;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": observed " << fmt17(r.observed)
                  << " (tol " << fmt17(r.tolerance) << "); " << r.detail << "\n";
        if (r.pass) ++passed;
    }
    std::cout << "result: " << (passed == static_cast<int>(results.size()) ? "PASS" : "FAIL") << " ("
              << passed << "/" << results.size() << ")\n";
    return passed == static_cast<int>(results.size()) ? exit_ok : exit_verification_failure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"product-form Bell expression toolkit: bounds, constructions, games"};
    app.require_subcommand(1);

    BoundsOptions bounds_opt;
    auto* bounds = app.add_subcommand("bounds", "print the bound chain for one n");
    bounds->add_option("--n,-n,n", bounds_opt.n, "number of settings per party")->required();
    bounds->add_option("--cap", bounds_opt.cap, "largest n for the exhaustive classical search");

    ConstructOptions construct_opt;
    auto* construct = app.add_subcommand("construct", "build the saturating measurement setup");
    construct->add_option("--n,-n,n", construct_opt.n, "number of settings per party")->required();
    construct->add_option("--output,-o", construct_opt.output, "output JSON path");

    SimulateOptions simulate_opt;
    auto* simulate = app.add_subcommand("simulate", "run the random-walk game estimator");
    simulate->add_option("--n,-n", simulate_opt.n, "number of settings per party")->required();
    simulate->add_option("--rounds,-T", simulate_opt.rounds, "rounds per trial")->required();
    simulate->add_option("--trials", simulate_opt.trials, "independent trials");
    simulate->add_option("--seed", simulate_opt.seed, "RNG seed");
    simulate->add_option("--scheduling", simulate_opt.scheduling, "stratified | uniform-random");
    simulate->add_option("--strategy", simulate_opt.strategy,
                         "quantum | classical-fd | classical-opt-n2 | classical-explicit");
    simulate->add_option("--mu", simulate_opt.mu_list, "comma-separated biases for classical-explicit");
    simulate->add_option("--bob-signs", simulate_opt.sign_list,
                         "comma-separated +-1 answers for classical-explicit");
    simulate->add_option("--setup", simulate_opt.setup_path, "measurement setup JSON (from construct)");
    simulate->add_option("--summary", simulate_opt.summary, "summary JSON path");
    simulate->add_option("--paths", simulate_opt.paths, "per-round walker path CSV (omit to skip)");

    RobustnessOptions robustness_opt;
    auto* robustness = app.add_subcommand("robustness", "detector-efficiency margin curves");
    robustness->add_option("--eta-min", robustness_opt.eta_min, "lowest efficiency");
    robustness->add_option("--eta-max", robustness_opt.eta_max, "highest efficiency");
    robustness->add_option("--steps", robustness_opt.steps, "grid points (inclusive)");
    robustness->add_option("--output,-o", robustness_opt.output, "output CSV path");

    RatioOptions ratio_opt;
    auto* ratio = app.add_subcommand("ratio", "deterministic-value to bound ratio table");
    ratio->add_option("--n", ratio_opt.n_list, "comma-separated n values (each >= 4)");
    ratio->add_option("--n-min", ratio_opt.n_min, "range start");
    ratio->add_option("--n-max", ratio_opt.n_max, "range end");
    ratio->add_option("--output,-o", ratio_opt.output, "output CSV path");

    VerifyOptions verify_opt;
    auto* verify = app.add_subcommand("verify", "run the property-check suite");
    verify->add_option("--n-max", verify_opt.n_max, "largest n for saturation checks");
    verify->add_option("--trials", verify_opt.trials, "random trials per property");
    verify->add_option("--seed", verify_opt.seed, "RNG seed for the random families");

    // option defaults may come from a key=value file with one [section] per
    // subcommand; explicit flags take precedence over file entries. The flag
    // lives on the top-level app (the only place the parser reads config
    // files) and fallthrough lets it appear after the subcommand name.
    app.set_config("--config", "", "key=value defaults, one [section] per subcommand");
    for (auto* sub : {bounds, construct, simulate, robustness, ratio, verify})
        sub->fallthrough(true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage_error;
    }

    try {
        if (bounds->parsed()) return run_bounds(bounds_opt);
        if (construct->parsed()) return run_construct(construct_opt);
        if (simulate->parsed()) return run_simulate(simulate_opt);
        if (robustness->parsed()) return run_robustness(robustness_opt);
        if (ratio->parsed()) return run_ratio(ratio_opt);
        if (verify->parsed()) return run_verify(verify_opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage_error;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage_error;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return exit_verification_failure;
    }
    return exit_usage_error;
}
