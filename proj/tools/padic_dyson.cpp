// padic-dyson: Haar sampling, Smith forms, process simulation, exact generators and
// verification suites. Output goes to --output or stdout; errors go to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "padic/errors.hpp"
#include "padic/generator.hpp"
#include "padic/json_io.hpp"
#include "padic/parallel.hpp"
#include "padic/processes.hpp"
#include "padic/sampling.hpp"
#include "padic/verify.hpp"

using namespace padic;
using nlohmann::json;

namespace {

struct Config {
    std::int64_t p = 2;
    std::size_t n = 2;
    std::string t_text;
    int precision = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t samples = 1000;
    std::size_t count = 1;
    std::vector<double> times;
    int k = 6;
    double tau = 1.0;
    double alpha = kDefaultAlpha;
    double tv_bound = 0.02;
    double min_expected = kDefaultMinExpected;
    unsigned threads = 1;
    std::string output;
    std::string format = "json";
    std::string input;
    std::string measure_file;
    std::string rate_text = "1";
    bool oracle = false;
    bool timing = false;
    bool extra_factor = false;
};

void emit(const Config& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + cfg.output);
    f << text;
    if (!f) throw std::runtime_error("failed writing " + cfg.output);
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw InvalidInput("malformed JSON in " + path + ": " + e.what());
    }
}

std::uint64_t resolve_seed(const Config& cfg) {
    if (cfg.seed_given) return cfg.seed;
    if (const char* env = std::getenv("PADIC_DYSON_SEED")) {
        try {
            std::size_t used = 0;
            const std::string text(env);
            const auto value = std::stoull(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return value;
        } catch (const std::exception&) {
            throw InvalidInput(std::string("PADIC_DYSON_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

Rational resolve_t(const Config& cfg) {
    if (cfg.t_text.empty()) return Rational(1, static_cast<unsigned long>(cfg.p));
    const Rational t = parse_rational(cfg.t_text);
    if (t <= 0 || t >= 1) throw InvalidInput("t must lie strictly between 0 and 1");
    return t;
}

void require_times(const std::vector<double>& times) {
    if (times.empty()) throw InvalidInput("--times is required");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1])) {
            throw InvalidInput("--times must be nonnegative and sorted");
        }
    }
}

int cmd_haar(const Config& cfg) {
    require_prime(cfg.p);
    const std::uint64_t seed = resolve_seed(cfg);
    const int precision = cfg.precision > 0 ? cfg.precision : 20;
    json out = json::array();
    for (std::size_t i = 0; i < cfg.count; ++i) {
        out.push_back(matrix_to_json(haar_gln_zp(seed, static_cast<std::int64_t>(i), cfg.p, cfg.n, precision)));
    }
    emit(cfg, out.dump() + "\n");
    return 0;
}

// Accepts one matrix or an array of matrices (as written by haar); one block per matrix.
int cmd_snf(const Config& cfg) {
    const json input = read_json_file(cfg.input);
    std::vector<json> items;
    if (input.is_array()) {
        items.assign(input.begin(), input.end());
    } else {
        items.push_back(input);
    }
    std::ostringstream os;
    bool agree = true;
    for (const auto& item : items) {
        const PAdicMatrix a = matrix_from_json(item);
        const Signature fast = singular_numbers(a);
        if (!cfg.oracle) {
            os << fast.to_string() << "\n";
            continue;
        }
        const Signature slow = singular_numbers_minor_oracle(a);
        os << "smith " << fast.to_string() << "\n"
           << "oracle " << slow.to_string() << "\n"
           << "agree " << (fast == slow ? "true" : "false") << "\n";
        agree = agree && fast == slow;
    }
    emit(cfg, os.str());
    return agree ? 0 : 1;
}

int cmd_simulate(const Config& cfg, const std::string& which) {
    require_times(cfg.times);
    const std::uint64_t seed = resolve_seed(cfg);
    const bool matrix = which == "matrix";
    std::optional<SignatureMeasure> measure;
    Rational rate(1);
    Rational t;
    if (matrix) {
        require_prime(cfg.p);
        measure = cfg.measure_file.empty() ? SignatureMeasure::point_mass(Signature::single_box(cfg.n))
                                           : measure_from_json(read_json_file(cfg.measure_file));
        if (measure->length() != cfg.n) throw InvalidInput("measure signatures must have length N");
        rate = parse_rational(cfg.rate_text);
        if (rate < 0) throw InvalidInput("--rate must be nonnegative");
    } else {
        if (cfg.t_text.empty()) require_prime(cfg.p);
        t = resolve_t(cfg);
    }

    std::vector<WalkResult> runs;
    runs.reserve(cfg.samples);
    for (std::size_t s = 0; s < cfg.samples; ++s) runs.push_back({Trajectory(Signature::zeros(cfg.n)), {}, 0, {}, 0});
    MatrixWalkOptions opts;
    opts.precision = cfg.precision;
    parallel_for(cfg.samples, cfg.threads, [&](std::size_t s) {
        const std::uint64_t sample_seed = derive_seed(seed, s);
        runs[s] = matrix ? matrix_walk_simulate(cfg.n, cfg.p, *measure, rate, cfg.times, sample_seed, opts)
                         : reflected_walk_simulate(cfg.n, t, cfg.times, sample_seed);
    });

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "sample;time;sig\n";
        for (std::size_t s = 0; s < runs.size(); ++s) {
            for (std::size_t i = 0; i < cfg.times.size(); ++i) {
                os << s << ';' << json(cfg.times[i]).dump() << ';' << runs[s].records[i].to_string() << '\n';
            }
        }
        emit(cfg, os.str());
        return 0;
    }
    json params = {{"N", cfg.n}, {"seed", seed}, {"samples", cfg.samples}, {"times", cfg.times}};
    if (matrix) {
        params["p"] = cfg.p;
        params["rate"] = to_fraction_string(rate);
        params["measure"] = measure_to_json(*measure);
    } else {
        params["t"] = to_fraction_string(t);
    }
    json trajectories = json::array();
    for (const auto& r : runs) {
        json j = trajectory_to_json(r.trajectory);
        json records = json::array();
        for (const auto& s : r.records) records.push_back(signature_to_json(s));
        j["records"] = std::move(records);
        trajectories.push_back(std::move(j));
    }
    emit(cfg, json{{"process", which}, {"params", params}, {"trajectories", trajectories}}.dump() + "\n");
    return 0;
}

int cmd_generator(const Config& cfg, const std::string& which) {
    if (cfg.k < 1) throw InvalidInput("--k must be at least 1");
    std::optional<GeneratorMatrix> g;
    if (which == "A") {
        require_prime(cfg.p);
        g = generator_A(cfg.n, cfg.p, cfg.k);
    } else {
        if (cfg.t_text.empty()) require_prime(cfg.p);
        g = generator_B(cfg.n, resolve_t(cfg), cfg.k);
    }
    if (cfg.format == "json") {
        json rows = json::array();
        for (const auto& [kappa, nu, q] : g->entries()) {
            rows.push_back({{"kappa", signature_to_json(kappa)}, {"nu", signature_to_json(nu)}, {"rate", to_fraction_string(q)}});
        }
        emit(cfg, rows.dump() + "\n");
    } else {
        emit(cfg, generator_to_csv(*g));
    }
    return 0;
}

int cmd_verify(const Config& cfg, const std::string& suite) {
    require_prime(cfg.p);
    if (cfg.samples == 0) throw InvalidInput("--samples must be positive");
    const std::uint64_t seed = resolve_seed(cfg);
    const Rational t = resolve_t(cfg);
    const std::vector<double> times = cfg.times.empty() ? std::vector<double>{0.5, 1.0} : cfg.times;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0) || (i > 0 && times[i] < times[i - 1])) throw InvalidInput("--times must be positive and sorted");
    }
    StatOptions opts;
    opts.alpha = cfg.alpha;
    opts.tv_bound = cfg.tv_bound;
    opts.min_expected = cfg.min_expected;
    opts.threads = cfg.threads;
    const auto normalization = cfg.extra_factor ? OneJumpNormalization::ExtraOneMinusT : OneJumpNormalization::Conserving;

    std::vector<VerificationReport> reports;
    const bool all = suite == "all";
    if (all || suite == "generators") reports.push_back(verify_generators(cfg.n, cfg.p, cfg.k, normalization));
    if (all || suite == "lemma") {
        reports.push_back(verify_lemma(cfg.n, cfg.p, cfg.samples, derive_seed(seed, "suite-lemma"), 5, cfg.threads));
    }
    if (all || suite == "one-jump") {
        reports.push_back(verify_one_jump(cfg.n, cfg.p, cfg.k, cfg.samples, derive_seed(seed, "suite-one-jump"), 3.0,
                                          cfg.threads));
    }
    if (all || suite == "reflection") {
        reports.push_back(
            verify_reflection_equivalence(cfg.n, t, cfg.tau, cfg.samples, derive_seed(seed, "suite-reflection"), opts));
    }
    if (all || suite == "theorem") {
        reports.push_back(verify_theorem_multitime(cfg.n, cfg.p, times, cfg.samples, derive_seed(seed, "suite-theorem"), opts));
    }

    bool pass = true;
    json out = json::array();
    for (const auto& r : reports) {
        pass = pass && r.passed();
        out.push_back(r.to_json(cfg.timing));
    }
    emit(cfg, json{{"suites", out}, {"pass", pass}, {"seed", seed}}.dump(1) + "\n");
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic matrix-product jump processes and the reflected Poisson walk"};
    app.require_subcommand(1);
    Config cfg;

    auto prime_opt = [&](CLI::App* sub) { sub->add_option("--p", cfg.p, "Prime p"); };
    auto n_opt = [&](CLI::App* sub) { sub->add_option("--n", cfg.n, "Matrix size N")->check(CLI::PositiveNumber); };
    auto seed_opt = [&](CLI::App* sub) {
        sub->add_option_function<std::uint64_t>(
            "--seed",
            [&](const std::uint64_t& s) {
                cfg.seed = s;
                cfg.seed_given = true;
            },
            "Seed (falls back to PADIC_DYSON_SEED, then 0)");
    };
    auto output_opt = [&](CLI::App* sub) { sub->add_option("--output,-o", cfg.output, "Output file (default stdout)"); };
    auto threads_opt = [&](CLI::App* sub) {
        sub->add_option("--threads", cfg.threads, "Worker threads; output does not depend on it")
            ->check(CLI::PositiveNumber);
    };

    auto* haar = app.add_subcommand("haar", "Sample Haar matrices from GL_N(Z_p)");
    prime_opt(haar);
    n_opt(haar);
    seed_opt(haar);
    output_opt(haar);
    haar->add_option("--count", cfg.count, "Number of matrices")->check(CLI::PositiveNumber);
    haar->add_option("--precision", cfg.precision, "Digits per entry (default 20)")->check(CLI::PositiveNumber);

    auto* snf = app.add_subcommand("snf", "Singular numbers of matrices read from JSON");
    snf->add_option("input", cfg.input, "Matrix JSON file (one matrix or an array)")->required();
    snf->add_flag("--oracle", cfg.oracle, "Also run the minor oracle and report agreement");
    output_opt(snf);

    std::string which;
    auto* simulate = app.add_subcommand("simulate", "Simulate the matrix walk or the reflected walk");
    simulate->add_option("process", which, "matrix | reflected")->required()->check(CLI::IsMember({"matrix", "reflected"}));
    prime_opt(simulate);
    n_opt(simulate);
    seed_opt(simulate);
    output_opt(simulate);
    threads_opt(simulate);
    simulate->add_option("--t", cfg.t_text, "Reflected-walk parameter a/b (default 1/p)");
    simulate->add_option("--times", cfg.times, "Record times, comma separated")->delimiter(',')->required();
    simulate->add_option("--samples", cfg.samples, "Independent runs")->check(CLI::PositiveNumber);
    simulate->add_option("--precision", cfg.precision, "Matrix digits (default automatic)")->check(CLI::PositiveNumber);
    simulate->add_option("--measure", cfg.measure_file, "Jump measure JSON (default delta at (1,0,...,0))");
    simulate->add_option("--rate", cfg.rate_text, "Poisson rate a/b of the matrix walk");
    simulate->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    auto* generator = app.add_subcommand("generator", "Exact generator on |kappa| <= K as CSV");
    generator->add_option("which", which, "A | B")->required()->check(CLI::IsMember({"A", "B"}));
    prime_opt(generator);
    n_opt(generator);
    output_opt(generator);
    generator->add_option("--t", cfg.t_text, "Parameter a/b of B (default 1/p)");
    generator->add_option("--k", cfg.k, "Truncation weight K");
    generator->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"json", "csv"}));

    auto* verify = app.add_subcommand("verify", "Run verification suites; exit 0 iff all pass");
    verify->add_option("suite", which, "lemma | one-jump | generators | reflection | theorem | all")
        ->required()
        ->check(CLI::IsMember({"lemma", "one-jump", "generators", "reflection", "theorem", "all"}));
    prime_opt(verify);
    n_opt(verify);
    seed_opt(verify);
    output_opt(verify);
    threads_opt(verify);
    verify->add_option("--k", cfg.k, "Truncation weight K for exact suites")->check(CLI::NonNegativeNumber);
    verify->add_option("--samples", cfg.samples, "Samples per statistical suite")->check(CLI::PositiveNumber);
    verify->add_option("--times", cfg.times, "Times for the multi-time check")->delimiter(',');
    verify->add_option("--tau", cfg.tau, "Time for the reflection check")->check(CLI::PositiveNumber);
    verify->add_option("--t", cfg.t_text, "Reflected-walk parameter a/b (default 1/p)");
    verify->add_option("--alpha", cfg.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    verify->add_option("--tv-bound", cfg.tv_bound, "Total-variation bound")->check(CLI::Range(0.0, 1.0));
    verify->add_option("--min-expected", cfg.min_expected, "Cell pooling threshold")->check(CLI::PositiveNumber);
    verify->add_flag("--timing", cfg.timing, "Include wall time in reports (breaks byte determinism)");
    verify->add_flag("--inject-extra-factor", cfg.extra_factor, "Use the (1 - t) normalization in generator A")
        ->group("");

    CLI11_PARSE(app, argc, argv);

    try {
        if (haar->parsed()) return cmd_haar(cfg);
        if (snf->parsed()) return cmd_snf(cfg);
        if (simulate->parsed()) return cmd_simulate(cfg, which);
        if (generator->parsed()) {
            if (cfg.format == "json" && generator->count("--format") == 0) cfg.format = "csv";
            return cmd_generator(cfg, which);
        }
        if (verify->parsed()) return cmd_verify(cfg, which);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
