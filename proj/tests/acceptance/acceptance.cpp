// Acceptance gate: runs criteria 1-8 with the pinned parameters and prints one
// [PASS]/[FAIL] line per criterion. Exit status is nonzero if any criterion fails.
//
//   acceptance [--only 1,3] [--threads N] [--report FILE] [--seed S]

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "padic/generator.hpp"
#include "padic/rng.hpp"
#include "padic/verify.hpp"

using namespace padic;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
    nlohmann::json reports = nlohmann::json::array();
};

struct Context {
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

// Folds a suite report into the criterion outcome.
void absorb(Outcome& out, const VerificationReport& r) {
    out.pass = out.pass && r.passed();
    out.reports.push_back(r.to_json(true));
}

std::string failed_checks(const Outcome& out) {
    std::ostringstream os;
    for (const auto& r : out.reports) {
        for (const auto& [name, stat] : r["stats"].items()) {
            if (!stat["pass"].get<bool>()) os << " " << r["params"].dump() << ":" << name << "=" << stat["value"].dump();
        }
    }
    return os.str();
}

Outcome criterion_generators(const Context&) {
    Outcome out;
    int configs = 0;
    for (std::size_t n : {2, 3, 4, 5}) {
        for (std::int64_t p : {2, 3, 5}) {
            for (int k = 1; k <= 6; ++k) {
                absorb(out, verify_generators(n, p, k));
                ++configs;
            }
        }
    }
    out.summary = "A = c'B exactly, A = oracle, zero row sums on " + std::to_string(configs) + " (N,p,K) configurations";
    return out;
}

Outcome criterion_one_jump(const Context& ctx) {
    Outcome out;
    double worst = 0;
    std::size_t states = 0;
    for (std::size_t n : {1, 2, 3, 4}) {
        for (std::int64_t p : {2, 3}) {
            const auto r = verify_one_jump(n, p, 6, 100000, derive_seed(ctx.seed, n * 10 + static_cast<std::size_t>(p)),
                                           3.0, ctx.threads);
            for (const auto& c : r.checks) {
                if (c.name == "max_z") worst = std::max(worst, c.value);
            }
            states += r.details["rows"].size();
            absorb(out, r);
        }
    }
    out.summary = "closed form = oracle and row sums 1 on " + std::to_string(states) +
                  " states; 1e5-sample Monte Carlo max |z| = " + std::to_string(worst) + " (bound 3)";
    return out;
}

Outcome criterion_lemma(const Context& ctx) {
    Outcome out;
    for (std::size_t n : {2, 3, 4}) {
        for (std::int64_t p : {2, 3}) {
            absorb(out, verify_lemma(n, p, 10000, derive_seed(ctx.seed, n * 10 + static_cast<std::size_t>(p)), 5,
                                     ctx.threads));
        }
    }
    out.summary = "one-box lemma on 10^4 Haar instances per (N,p) in {2,3,4}x{2,3}";
    return out;
}

Outcome criterion_snf(const Context& ctx) {
    Outcome out;
    for (std::size_t n : {1, 2, 3, 4}) {
        for (std::int64_t p : {2, 3}) {
            absorb(out, verify_snf_oracle(n, p, 1000, derive_seed(ctx.seed, n * 10 + static_cast<std::size_t>(p)), 24,
                                          ctx.threads));
        }
    }
    out.summary = "Smith form = minor oracle on 10^3 matrices per N<=4, p in {2,3}, entries scaled by p^{0..4}";
    return out;
}

Outcome criterion_haar(const Context& ctx) {
    Outcome out;
    StatOptions opts;
    opts.threads = ctx.threads;
    std::ostringstream os;
    for (std::int64_t p : {2, 3}) {
        const auto r = verify_haar(2, p, 60000, derive_seed(ctx.seed, static_cast<std::uint64_t>(p)), opts);
        os << " GL_2(F_" << p << ") order " << r.details["group_order"].get<int>() << " gof p="
           << r.details["gof_columns"]["p_value"].dump() << " two-sample p=" << r.details["two_sample"]["p_value"].dump()
           << ";";
        absorb(out, r);
    }
    out.summary = "6e4 samples each:" + os.str();
    return out;
}

Outcome criterion_theorem(const Context& ctx) {
    Outcome out;
    StatOptions opts;
    opts.threads = ctx.threads;
    std::ostringstream os;
    for (std::size_t n : {2, 3}) {
        const auto r = verify_theorem_multitime(n, 2, {0.5, 1.0}, 100000, derive_seed(ctx.seed, n), opts);
        os << " N=" << n;
        for (const auto& c : r.checks) {
            if (c.name == "two_sample_p_value" || c.name == "tv_matrix_vs_reflected") os << " " << c.name << "=" << c.value;
        }
        os << ";";
        absorb(out, r);
    }
    out.summary = "p=2, times (0.5,1.0), 1e5 samples each side:" + os.str();
    return out;
}

Outcome criterion_growth(const Context& ctx) {
    Outcome out;
    std::ostringstream os;
    for (std::size_t n : {2, 3}) {
        for (std::int64_t p : {2, 3}) {
            for (double tau : {1.0, 4.0}) {
                const auto seed = derive_seed(ctx.seed, n * 100 + static_cast<std::size_t>(p) * 10 + static_cast<std::size_t>(tau));
                const auto r = verify_mean_growth(n, p, tau, 10000, seed, 3.0, ctx.threads);
                os << " (N=" << n << ",p=" << p << ",tau=" << tau << ") " << r.details["matrix_mean"].get<double>() << "/"
                   << r.details["reflected_mean"].get<double>();
                absorb(out, r);
            }
        }
    }
    out.summary = "sample means matrix/reflected over 1e4 runs:" + os.str();
    return out;
}

Outcome criterion_props(const Context& ctx) {
    Outcome out;
    for (std::size_t n : {2, 3, 4}) {
        for (std::int64_t p : {2, 3}) {
            absorb(out, verify_singular_number_props(n, p, 1000,
                                                     derive_seed(ctx.seed, n * 10 + static_cast<std::size_t>(p)),
                                                     ctx.threads));
        }
    }
    out.summary = "determinant additivity and monotonicity on 10^3 instances per N in {2,3,4}, p in {2,3}";
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria 1-8"};
    std::vector<int> only;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string report_path;
    std::uint64_t seed = 20260101;
    app.add_option("--only", only, "Run only these criteria")->delimiter(',')->check(CLI::Range(1, 8));
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--report", report_path, "Write every suite report as JSON");
    app.add_option("--seed", seed, "Base seed");
    CLI11_PARSE(app, argc, argv);

    const Context ctx{seed, threads};
    const std::vector<std::pair<std::string, std::function<Outcome(const Context&)>>> criteria{
        {"generator identity", criterion_generators},
        {"one-jump law", criterion_one_jump},
        {"one-box lemma", criterion_lemma},
        {"Smith form vs minor oracle", criterion_snf},
        {"Haar sampler", criterion_haar},
        {"multi-time equality in law", criterion_theorem},
        {"mean growth", criterion_growth},
        {"singular-number properties", criterion_props},
    };
    const std::set<int> selected(only.begin(), only.end());

    bool all = true;
    nlohmann::json report = nlohmann::json::object();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!selected.empty() && !selected.count(id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].second(ctx);
        } catch (const std::exception& e) {
            out.pass = false;
            out.summary = std::string("error: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && out.pass;
        std::cout << (out.pass ? "[PASS] " : "[FAIL] ") << id << " " << criteria[i].first << ": " << out.summary;
        if (!out.pass) std::cout << " | failing:" << failed_checks(out);
        std::printf(" (%.1fs)\n", secs);
        std::cout.flush();
        report[std::to_string(id)] = {{"name", criteria[i].first}, {"pass", out.pass}, {"seconds", secs},
                                      {"reports", out.reports}};
    }
    if (!report_path.empty()) {
        std::ofstream f(report_path);
        f << report.dump(1) << '\n';
    }
    return all ? 0 : 1;
}
