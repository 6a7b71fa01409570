#include "padic/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "padic/parallel.hpp"
#include "padic/processes.hpp"
#include "padic/sampling.hpp"
#include "padic/uniformization.hpp"

namespace padic {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

const char* relation_text(Relation r) {
    switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::Less: return "<";
    case Relation::GreaterEqual: return ">=";
    case Relation::Greater: return ">";
    case Relation::Equal: return "==";
    }
    return "?";
}

// JSON has no infinity; report it as a string.
nlohmann::json number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

// Uniform integer in [lo, hi] from the keyed stream.
int stream_int(const StreamKey& key, std::uint64_t index, int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(stream_word(key, index) % span);
}

Signature random_signature(const StreamKey& key, std::size_t n, int lo, int hi) {
    std::vector<int> parts(n);
    for (std::size_t i = 0; i < n; ++i) parts[i] = stream_int(key, i, lo, hi);
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Signature(std::move(parts));
}

// Entries uniform in Z_p, each multiplied by p^e with e uniform in [0, max_shift].
PAdicMatrix random_matrix(std::uint64_t seed, std::int64_t event, std::int64_t p, std::size_t rows, std::size_t cols,
                          int precision, int max_shift) {
    std::vector<PAdicScalar> entries;
    entries.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const StreamKey key{seed, event, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), 0};
            const StreamKey shift_key{seed, event, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), 1};
            entries.push_back(shift(uniform_zp(key, p, precision), stream_int(shift_key, 0, 0, max_shift)));
        }
    }
    return PAdicMatrix(rows, cols, p, precision, std::move(entries));
}

std::vector<int> first_column_inverse(std::size_t n) {
    std::vector<int> e(n, 0);
    e[0] = -1;
    return e;
}

template <class Key>
Histogram<Key> tally(const std::vector<Key>& draws) {
    Histogram<Key> h;
    for (const auto& d : draws) ++h[d];
    return h;
}

nlohmann::json chi_json(const ChiSquareResult& r) {
    return {{"statistic", number(r.statistic)}, {"dof", r.dof}, {"p_value", number(r.p_value)}, {"cells", r.cells}};
}

void require_samples(std::size_t samples) {
    if (samples == 0) throw InsufficientSamples("sample count must be positive");
}

void require_dimension(std::size_t n) {
    if (n == 0) throw InvalidInput("N must be positive");
}

std::string times_text(const std::vector<Signature>& states) {
    std::string out;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (i) out += " | ";
        out += states[i].to_string();
    }
    return out;
}

} // namespace

bool Check::passed() const {
    switch (relation) {
    case Relation::LessEqual: return value <= threshold;
    case Relation::Less: return value < threshold;
    case Relation::GreaterEqual: return value >= threshold;
    case Relation::Greater: return value > threshold;
    case Relation::Equal: return value == threshold;
    }
    return false;
}

bool VerificationReport::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

void VerificationReport::add(std::string check_name, double value, Relation relation, double threshold) {
    checks.push_back({std::move(check_name), value, relation, threshold});
}

nlohmann::json VerificationReport::to_json(bool include_timing) const {
    nlohmann::json stats = nlohmann::json::object();
    for (const auto& c : checks) {
        stats[c.name] = {{"value", number(c.value)},
                         {"relation", relation_text(c.relation)},
                         {"threshold", number(c.threshold)},
                         {"pass", c.passed()}};
    }
    nlohmann::json out = {{"name", name}, {"params", params}, {"stats", stats}, {"pass", passed()},
                          {"samples", samples}};
    if (!details.empty()) out["details"] = details;
    if (include_timing) out["wall_seconds"] = wall_seconds;
    return out;
}

Signature lemma_one_jump_prediction(const PAdicMatrix& a, const Signature& kappa) {
    const std::size_t n = kappa.size();
    if (a.rows() != n || a.cols() != n) throw InvalidInput("lemma check needs an N x N matrix and kappa in Sig_N");
    std::size_t lowest_unit = n;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = a(i, 0);
        if (e.is_nonzero() && e.valuation() == 0) lowest_unit = i;
    }
    if (lowest_unit == n) throw SingularMatrix("first column has no unit entry; A is not in GL_N(Z_p)");
    std::size_t l = lowest_unit;
    while (l + 1 < n && kappa[l + 1] == kappa[lowest_unit]) ++l;
    std::vector<int> parts = kappa.parts();
    --parts[l];
    return Signature(std::move(parts));
}

bool check_lemma_one_jump(const PAdicMatrix& a, const Signature& kappa) {
    const Signature expected = lemma_one_jump_prediction(a, kappa);
    const PAdicMatrix product = right_diag_multiply(left_diag_multiply(kappa, a), first_column_inverse(kappa.size()));
    return singular_numbers(product) == expected;
}

VerificationReport verify_lemma(std::size_t n, std::int64_t p, std::size_t instances, std::uint64_t seed,
                                int max_part, unsigned threads) {
    require_prime(p);
    require_dimension(n);
    require_samples(instances);
    const auto start = Clock::now();
    VerificationReport report;
    report.name = "lemma";
    report.params = {{"N", n}, {"p", p}, {"instances", instances}, {"seed", seed}, {"max_part", max_part}};
    report.samples = instances;

    const std::uint64_t haar_seed = derive_seed(seed, "lemma-haar");
    const std::uint64_t kappa_seed = derive_seed(seed, "lemma-kappa");
    std::vector<char> ok(instances, 0);
    parallel_for(instances, threads, [&](std::size_t s) {
        const auto event = static_cast<std::int64_t>(s);
        const Signature kappa = random_signature(StreamKey{kappa_seed, event}, n, -max_part, max_part);
        int precision = kappa[0] - kappa[n - 1] + 16;
        for (int attempt = 0;; ++attempt) {
            try {
                ok[s] = check_lemma_one_jump(haar_gln_zp(haar_seed, event, p, n, precision), kappa) ? 1 : 0;
                return;
            } catch (const PrecisionExhausted&) {
                if (attempt >= 6) throw;
                precision *= 2;
            }
        }
    });
    const auto failures = static_cast<double>(std::count(ok.begin(), ok.end(), 0));
    report.add("failures", failures, Relation::Equal, 0.0);
    report.wall_seconds = seconds_since(start);
    return report;
}

VerificationReport verify_one_jump(std::size_t n, std::int64_t p, int max_weight, std::size_t samples,
                                   std::uint64_t seed, double sigmas, unsigned threads) {
    require_prime(p);
    require_dimension(n);
    if (max_weight < 0) throw InvalidInput("K must be nonnegative");
    const auto start = Clock::now();
    VerificationReport report;
    report.name = "one-jump";
    report.params = {{"N", n}, {"p", p}, {"K", max_weight}, {"samples", samples}, {"seed", seed}, {"sigmas", sigmas}};

    const auto states = truncated_state_space(n, max_weight);
    double oracle_mismatches = 0, row_sum_defects = 0, stray_targets = 0, max_z = 0;
    const std::uint64_t mc_seed = derive_seed(seed, "one-jump-mc");
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < states.size(); ++k) {
        const Signature& kappa = states[k];
        const auto law = matrix_walk_jump_law(kappa, p);
        std::map<Signature, Rational> closed;
        Rational sum = 0;
        for (const auto& tr : law) {
            closed[tr.target] += tr.rate;
            sum += tr.rate;
        }
        if (closed != one_jump_oracle(kappa, p)) ++oracle_mismatches;
        if (sum != 1) ++row_sum_defects;

        nlohmann::json row = {{"kappa", kappa.to_string()}};
        if (samples > 0) {
            const auto counts = one_jump_mc(kappa, p, samples, derive_seed(mc_seed, k), threads);
            const double total = static_cast<double>(samples);
            double row_z = 0;
            for (const auto& [target, q_exact] : closed) {
                const double q = to_double(q_exact);
                const auto it = counts.find(target);
                const double f = it == counts.end() ? 0.0 : static_cast<double>(it->second) / total;
                const double sd = std::sqrt(q * (1.0 - q) / total);
                const double z = sd > 0 ? std::abs(f - q) / sd : (f == q ? 0.0 : std::numeric_limits<double>::infinity());
                row_z = std::max(row_z, z);
            }
            for (const auto& [target, c] : counts) {
                if (!closed.count(target)) stray_targets += 1;
            }
            max_z = std::max(max_z, row_z);
            row["max_z"] = number(row_z);
        }
        rows.push_back(row);
    }
    report.samples = samples * states.size();
    report.details["rows"] = rows;
    report.add("oracle_mismatches", oracle_mismatches, Relation::Equal, 0.0);
    report.add("row_sum_defects", row_sum_defects, Relation::Equal, 0.0);
    if (samples > 0) {
        report.add("stray_targets", stray_targets, Relation::Equal, 0.0);
        report.add("max_z", max_z, Relation::LessEqual, sigmas);
    }
    report.wall_seconds = seconds_since(start);
    return report;
}

VerificationReport verify_generators(std::size_t n, std::int64_t p, int max_weight, OneJumpNormalization normalization) {
    require_prime(p);
    require_dimension(n);
    const auto start = Clock::now();
    VerificationReport report;
    report.name = "generators";
    report.params = {{"N", n}, {"p", p}, {"K", max_weight}};
    if (normalization != OneJumpNormalization::Conserving) report.params["normalization"] = "extra-one-minus-t";

    const Rational t(1, p);
    const Rational c = time_change_constant(t, n);
    const GeneratorMatrix a = generator_A(n, p, max_weight, normalization);
    const GeneratorMatrix b = generator_B(n, t, max_weight);

    // Enumerating F_p^N is only affordable for small p^N.
    const double enumeration = std::pow(static_cast<double>(p), static_cast<double>(n));
    const bool run_oracle = enumeration <= 1e6;

    double mismatches_b = 0, mismatches_oracle = 0, row_sum_defects = 0;
    nlohmann::json defects = nlohmann::json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Signature& kappa = a.states()[i];
        std::map<Signature, Rational> row_a, row_b;
        for (const auto& tr : a.row(i)) row_a[tr.target] += tr.rate;
        const auto j = b.index_of(kappa);
        if (!j) {
            ++mismatches_b;
            continue;
        }
        for (const auto& tr : b.row(*j)) row_b[tr.target] += c * tr.rate;
        std::set<Signature> targets;
        for (const auto& [s, q] : row_a) targets.insert(s);
        for (const auto& [s, q] : row_b) targets.insert(s);
        for (const auto& s : targets) {
            const Rational qa = row_a.count(s) ? row_a[s] : Rational(0);
            const Rational qb = row_b.count(s) ? row_b[s] : Rational(0);
            if (qa != qb) ++mismatches_b;
        }
        if (a.diagonal(i) != c * b.diagonal(*j)) ++mismatches_b;

        if (run_oracle && row_a != one_jump_oracle(kappa, p)) ++mismatches_oracle;

        Rational sum = a.diagonal(i);
        for (const auto& [s, q] : row_a) sum += q;
        if (sum != 0) {
            ++row_sum_defects;
            if (defects.size() < 8) {
                defects.push_back({{"kappa", kappa.to_string()}, {"off_diagonal_sum", to_fraction_string(sum - a.diagonal(i))}});
            }
        }
    }
    report.details["c_prime"] = to_fraction_string(c);
    report.details["states"] = a.size();
    report.details["oracle_checked"] = run_oracle;
    if (!defects.empty()) report.details["row_sum_defects"] = defects;
    report.add("mismatches_A_vs_cB", mismatches_b, Relation::Equal, 0.0);
    if (run_oracle) report.add("mismatches_A_vs_oracle", mismatches_oracle, Relation::Equal, 0.0);
    report.add("row_sum_defects", row_sum_defects, Relation::Equal, 0.0);
    report.wall_seconds = seconds_since(start);
    return report;
}

VerificationReport verify_theorem_multitime(std::size_t n, std::int64_t p, const std::vector<double>& times,
                                            std::size_t samples, std::uint64_t seed, const StatOptions& options) {
    require_prime(p);
    require_dimension(n);
    require_samples(samples);
    if (times.empty()) throw InvalidInput("at least one time is required");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0) || !std::isfinite(times[i]) || (i > 0 && times[i] < times[i - 1])) {
            throw InvalidInput("times must be positive, finite and sorted");
        }
    }
    const auto start = Clock::now();
    VerificationReport report;
    report.name = "theorem";
    report.params = {{"N", n},         {"p", p},        {"times", times},
                     {"samples", samples}, {"seed", seed}, {"alpha", options.alpha},
                     {"tv_bound", options.tv_bound}, {"min_expected", options.min_expected}};
    report.samples = 2 * samples;

    const Rational t(1, p);
    const Rational c = time_change_constant(t, n);
    const double c_d = to_double(c);
    std::vector<double> scaled(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) scaled[i] = c_d * times[i];

    const std::uint64_t matrix_seed = derive_seed(seed, "theorem-matrix");
    const std::uint64_t reflected_seed = derive_seed(seed, "theorem-reflected");
    std::vector<std::vector<Signature>> matrix_draws(samples), reflected_draws(samples);
    MatrixWalkOptions walk;
    walk.track_jumps = false;
    parallel_for(samples, options.threads, [&](std::size_t s) {
        matrix_draws[s] = canonical_process(n, p, times, derive_seed(matrix_seed, s), walk).records;
    });
    parallel_for(samples, options.threads, [&](std::size_t s) {
        reflected_draws[s] = reflected_walk_simulate(n, t, scaled, derive_seed(reflected_seed, s)).records;
    });
    const auto hist_matrix = tally(matrix_draws);
    const auto hist_reflected = tally(reflected_draws);

    // Both generators exit at total rate 1 after the time change, so the weight
    // reached by time tau is Poisson(tau).
    const int k = truncation_for_poisson_tail(times.back(), options.tail_eps / 10.0);
    const auto exact_a = multi_time_distribution(generator_A(n, p, k), Rational(1), times, Signature::zeros(n),
                                                 options.tail_eps);
    const auto exact_b = multi_time_distribution(generator_B(n, t, k), c, times, Signature::zeros(n), options.tail_eps);
    double exact_diff = 0.0;
    for (const auto& [key, q] : exact_a.law) {
        const auto it = exact_b.law.find(key);
        exact_diff = std::max(exact_diff, std::abs(q - (it == exact_b.law.end() ? 0.0 : it->second)));
    }
    for (const auto& [key, q] : exact_b.law) {
        if (!exact_a.law.count(key)) exact_diff = std::max(exact_diff, q);
    }

    const auto two = chi_square_two_sample(hist_matrix, hist_reflected, options.min_expected);
    const auto gof_m = chi_square_gof(hist_matrix, exact_a.law, options.min_expected);
    const auto gof_r = chi_square_gof(hist_reflected, exact_a.law, options.min_expected);
    const double tv_m = tv_distance(hist_matrix, exact_a.law);
    const double tv_r = tv_distance(hist_reflected, exact_a.law);
    const double tv_mr = tv_distance(hist_matrix, hist_reflected);

    report.details["c_prime"] = to_fraction_string(c);
    report.details["truncation_K"] = k;
    report.details["two_sample"] = chi_json(two);
    report.details["gof_matrix"] = chi_json(gof_m);
    report.details["gof_reflected"] = chi_json(gof_r);
    nlohmann::json top = nlohmann::json::array();
    std::vector<std::pair<double, std::vector<Signature>>> ranked;
    for (const auto& [key, q] : exact_a.law) ranked.emplace_back(q, key);
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (std::size_t i = 0; i < std::min<std::size_t>(ranked.size(), 10); ++i) {
        const auto& key = ranked[i].second;
        const auto im = hist_matrix.find(key);
        const auto ir = hist_reflected.find(key);
        top.push_back({{"states", times_text(key)},
                       {"exact", ranked[i].first},
                       {"matrix", im == hist_matrix.end() ? 0 : im->second},
                       {"reflected", ir == hist_reflected.end() ? 0 : ir->second}});
    }
    report.details["leading_cells"] = top;

    report.add("exact_law_A_vs_B_max_diff", exact_diff, Relation::LessEqual, 1e-9);
    report.add("exact_boundary_mass", exact_a.boundary_mass, Relation::LessEqual, options.tail_eps);
    report.add("two_sample_p_value", two.p_value, Relation::GreaterEqual, options.alpha);
    report.add("gof_matrix_p_value", gof_m.p_value, Relation::GreaterEqual, options.alpha);
    report.add("gof_reflected_p_value", gof_r.p_value, Relation::GreaterEqual, options.alpha);
    report.add("tv_matrix_vs_exact", tv_m, Relation::LessEqual, options.tv_bound);
    report.add("tv_reflected_vs_exact", tv_r, Relation::LessEqual, options.tv_bound);
    report.add("tv_matrix_vs_reflected", tv_mr, Relation::LessEqual, options.tv_bound);
    report.wall_seconds = seconds_since(start);
    return report;
}

VerificationReport verify_reflection_equivalence(std::size_t n, const Rational& t, double tau, std::size_t samples,
                                                 std::uint64_t seed, const StatOptions& options) {
    require_dimension(n);
    require_samples(samples);
    if (t <= 0 || t >= 1) throw InvalidInput("t must lie strictly between 0 and 1");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidInput("tau must be positive and finite");
    const auto start = Clock::now();
    VerificationReport report;
    report.name = "reflection";
    report.params = {{"N", n},         {"t", to_fraction_string(t)}, {"tau", tau},
                     {"samples", samples}, {"seed", seed},               {"alpha", options.alpha},
                     {"tv_bound", options.tv_bound}};
    report.samples = 2 * samples;

    const std::vector<double> times{tau};
    const std::uint64_t clock_seed = derive_seed(seed, "reflection-clocks");
    const std::uint64_t gillespie_seed = derive_seed(seed, "reflection-gillespie");
    std::vector<Signature> clocks(samples), gillespie(samples);
    parallel_for(samples, options.threads, [&](std::size_t s) {
        clocks[s] = reflected_walk_simulate(n, t, times, derive_seed(clock_seed, s)).records.front();
    });
    parallel_for(samples, options.threads, [&](std::size_t s) {
        gillespie[s] = reflected_walk_gillespie(n, t, times, derive_seed(gillespie_seed, s)).records.front();
    });
    const auto hist_c = tally(clocks);
    const auto hist_g = tally(gillespie);

    const double exit_rate = to_double(reflected_walk_exit_rate(t, n));
    const int k = truncation_for_poisson_tail(exit_rate * tau, options.tail_eps / 10.0);
    const auto exact = finite_time_distribution(generator_B(n, t, k), Rational(1), tau, Signature::zeros(n),
                                                options.tail_eps);

    const auto two = chi_square_two_sample(hist_c, hist_g, options.min_expected);
    const auto gof_c = chi_square_gof(hist_c, exact.law, options.min_expected);
    const auto gof_g = chi_square_gof(hist_g, exact.law, options.min_expected);
    report.details["truncation_K"] = k;
    report.details["two_sample"] = chi_json(two);
    report.details["gof_clocks"] = chi_json(gof_c);
    report.details["gof_gillespie"] = chi_json(gof_g);
    report.add("two_sample_p_value", two.p_value, Relation::GreaterEqual, options.alpha);
    report.add("gof_clocks_p_value", gof_c.p_value, Relation::GreaterEqual, options.alpha);
    report.add("gof_gillespie_p_value", gof_g.p_value, Relation::GreaterEqual, options.alpha);
    report.add("tv_clocks_vs_exact", tv_distance(hist_c, exact.law), Relation::LessEqual, options.tv_bound);
    report.add("tv_gillespie_vs_exact", tv_distance(hist_g, exact.law), Relation::LessEqual, options.tv_bound);
    report.wall_seconds = seconds_since(start);
    return report;
}

VerificationReport verify_mean_growth(std::size_t n, std::int64_t p, double tau, std::size_t runs, std::uint64_t seed,
                                      double sigmas, unsigned threads) {
    require_prime(p);
    require_dimension(n);
    require_samples(runs);
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidInput("tau must be positive and finite");
    const auto start = Clock::now();
    VerificationReport report;
    report.name = "mean-growth";
    report.params = {{"N", n}, {"p", p}, {"tau", tau}, {"runs", runs}, {"seed", seed}, {"sigmas", sigmas}};
    report.samples = 2 * runs;

    const Rational t(1, p);
    const double scaled = to_double(time_change_constant(t, n)) * tau;
    const std::uint64_t matrix_seed = derive_seed(seed, "growth-matrix");
    const std::uint64_t reflected_seed = derive_seed(seed, "growth-reflected");
    std::vector<long> matrix_weight(runs), reflected_weight(runs);
    MatrixWalkOptions walk;
    walk.track_jumps = false;
    const std::vector<double> matrix_times{tau}, reflected_times{scaled};
    parallel_for(runs, threads, [&](std::size_t s) {
        matrix_weight[s] = canonical_process(n, p, matrix_times, derive_seed(matrix_seed, s), walk).records[0].weight();
        reflected_weight[s] =
            reflected_walk_simulate(n, t, reflected_times, derive_seed(reflected_seed, s)).records[0].weight();
    });
    auto mean = [](const std::vector<long>& v) {
        double sum = 0;
        for (long x : v) sum += static_cast<double>(x);
        return sum / static_cast<double>(v.size());
    };
    // Each jump adds exactly one box, so the weight is Poisson(tau).
    const double se = std::sqrt(tau / static_cast<double>(runs));
    const double mm = mean(matrix_weight), mr = mean(reflected_weight);
    report.details["matrix_mean"] = mm;
    report.details["reflected_mean"] = mr;
    report.details["standard_error"] = se;
    report.add("matrix_z", std::abs(mm - tau) / se, Relation::LessEqual, sigmas);
    report.add("reflected_z", std::abs(mr - tau) / se, Relation::LessEqual, sigmas);
    report.wall_seconds = seconds_since(start);
    return report;
}

VerificationReport verify_snf_oracle(std::size_t n, std::int64_t p, std::size_t count, std::uint64_t seed,
                                     int precision, unsigned threads) {
    require_prime(p);
    require_dimension(n);
    require_samples(count);
    if (precision < 1) throw InvalidInput("precision must be positive");
    const auto start = Clock::now();
    VerificationReport report;
    report.name = "snf-oracle";
    report.params = {{"N", n}, {"p", p}, {"count", count}, {"seed", seed}, {"precision", precision}};
    report.samples = count;

    const std::uint64_t matrix_seed = derive_seed(seed, "snf-matrices");
    // 0 agree, 1 mismatch, 2 neither side could certify.
    std::vector<int> outcome(count, 0);
    std::vector<int> det_ok(count, 1);
    parallel_for(count, threads, [&](std::size_t s) {
        const PAdicMatrix a = random_matrix(matrix_seed, static_cast<std::int64_t>(s), p, n, n, precision, 4);
        std::optional<Signature> fast, oracle;
        try {
            fast = singular_numbers(a);
        } catch (const PrecisionExhausted&) {
        } catch (const SingularMatrix&) {
        }
        try {
            oracle = singular_numbers_minor_oracle(a);
        } catch (const PrecisionExhausted&) {
        } catch (const SingularMatrix&) {
        }
        if (!fast && !oracle) {
            outcome[s] = 2;
        } else if (fast != oracle) {
            outcome[s] = 1;
        } else {
            try {
                det_ok[s] = det_valuation(a) == fast->weight() ? 1 : 0;
            } catch (const PrecisionExhausted&) {
                det_ok[s] = 0;
            }
        }
    });
    report.add("mismatches", static_cast<double>(std::count(outcome.begin(), outcome.end(), 1)), Relation::Equal, 0.0);
    report.add("uncertified", static_cast<double>(std::count(outcome.begin(), outcome.end(), 2)), Relation::Equal, 0.0);
    report.add("det_valuation_mismatches", static_cast<double>(std::count(det_ok.begin(), det_ok.end(), 0)),
               Relation::Equal, 0.0);
    report.wall_seconds = seconds_since(start);
    return report;
}

VerificationReport verify_haar(std::size_t n, std::int64_t p, std::size_t samples, std::uint64_t seed,
                               const StatOptions& options) {
    require_prime(p);
    require_dimension(n);
    require_samples(samples);
    const double cells = std::pow(static_cast<double>(p), static_cast<double>(n * n));
    if (cells > 1e6) throw InvalidInput("GL_N(F_p) too large to enumerate for the Haar check");
    const auto start = Clock::now();
    VerificationReport report;
    report.name = "haar";
    report.params = {{"N", n}, {"p", p}, {"samples", samples}, {"seed", seed}, {"alpha", options.alpha}};
    report.samples = 2 * samples;

    using Key = std::vector<std::uint32_t>;
    Law<Key> uniform;
    const auto up = static_cast<std::uint32_t>(p);
    const std::size_t total = static_cast<std::size_t>(cells);
    Key entries(n * n, 0);
    std::vector<Key> group;
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (auto& e : entries) {
            e = static_cast<std::uint32_t>(c % up);
            c /= up;
        }
        if (rank_mod_p(entries, n, n, up) == n) group.push_back(entries);
    }
    for (const auto& g : group) uniform[g] = 1.0 / static_cast<double>(group.size());

    const std::uint64_t column_seed = derive_seed(seed, "haar-columns");
    const std::uint64_t rejection_seed = derive_seed(seed, "haar-rejection");
    std::vector<Key> columns(samples), rejection(samples);
    parallel_for(samples, options.threads, [&](std::size_t s) {
        const auto event = static_cast<std::int64_t>(s);
        columns[s] = reduce_mod_p(haar_gln_zp(column_seed, event, p, n, 1));
        rejection[s] = reduce_mod_p(haar_rejection(rejection_seed, event, p, n, 1));
    });
    const auto hist_c = tally(columns);
    const auto hist_r = tally(rejection);
    double singular = 0;
    for (const auto& [k, c] : hist_c) {
        if (!uniform.count(k)) singular += static_cast<double>(c);
    }
    for (const auto& [k, c] : hist_r) {
        if (!uniform.count(k)) singular += static_cast<double>(c);
    }
    const auto gof = chi_square_gof(hist_c, uniform, options.min_expected);
    const auto gof_r = chi_square_gof(hist_r, uniform, options.min_expected);
    const auto two = chi_square_two_sample(hist_c, hist_r, options.min_expected);
    report.details["group_order"] = group.size();
    report.details["gof_columns"] = chi_json(gof);
    report.details["gof_rejection"] = chi_json(gof_r);
    report.details["two_sample"] = chi_json(two);
    report.add("singular_reductions", singular, Relation::Equal, 0.0);
    report.add("gof_columns_p_value", gof.p_value, Relation::Greater, options.alpha);
    report.add("gof_rejection_p_value", gof_r.p_value, Relation::Greater, options.alpha);
    report.add("two_sample_p_value", two.p_value, Relation::Greater, options.alpha);
    report.wall_seconds = seconds_since(start);
    return report;
}

VerificationReport verify_singular_number_props(std::size_t n, std::int64_t p, std::size_t count, std::uint64_t seed,
                                                unsigned threads) {
    require_prime(p);
    require_dimension(n);
    require_samples(count);
    const auto start = Clock::now();
    VerificationReport report;
    report.name = "singular-number-props";
    report.params = {{"N", n}, {"p", p}, {"count", count}, {"seed", seed}};
    report.samples = count;

    constexpr int precision = 40;
    const std::size_t m = n + 1;
    const std::uint64_t a_seed = derive_seed(seed, "props-a");
    const std::uint64_t factor_seed = derive_seed(seed, "props-factor");
    const std::uint64_t kappa_seed = derive_seed(seed, "props-kappa");

    // Per instance: additivity (square and wide), AB and CA in both directions.
    std::vector<int> additivity(count, 0), product_right(count, 0), product_left(count, 0), uncertified(count, 0);
    auto dominates = [](const Signature& big, const Signature& small) {
        for (std::size_t i = 0; i < big.size(); ++i) {
            if (big[i] < small[i]) return false;
        }
        return true;
    };
    parallel_for(count, threads, [&](std::size_t s) {
        const auto event = static_cast<std::int64_t>(s);
        try {
            const PAdicMatrix square = random_matrix(a_seed, 2 * event, p, n, n, precision, 2);
            const PAdicMatrix wide = random_matrix(a_seed, 2 * event + 1, p, n, m, precision, 2);
            const Signature kappa = random_signature(StreamKey{kappa_seed, event}, n, -3, 3);
            const long shift_weight = kappa.weight();
            for (const auto* a : {&square, &wide}) {
                if (singular_numbers(left_diag_multiply(kappa, *a)).weight() != singular_numbers(*a).weight() + shift_weight) {
                    additivity[s] = 1;
                }
            }

            const Signature sn_wide = singular_numbers(wide);
            for (int sign : {1, -1}) {
                // Factor U diag(p^mu) V with mu of one sign, so SN(factor) = mu.
                const std::int64_t base = 8 * event + (sign > 0 ? 0 : 4);
                const Signature mu_m = random_signature(StreamKey{kappa_seed, base + 1}, m, 0, 3);
                const Signature mu_n = random_signature(StreamKey{kappa_seed, base + 2}, n, 0, 3);
                auto signed_mu = [sign](const Signature& mu) {
                    std::vector<int> parts = mu.parts();
                    for (auto& x : parts) x *= sign;
                    std::sort(parts.begin(), parts.end(), std::greater<>());
                    return Signature(std::move(parts));
                };
                const PAdicMatrix b = multiply(haar_gln_zp(factor_seed, base, p, m, precision),
                                               left_diag_multiply(signed_mu(mu_m), haar_gln_zp(factor_seed, base + 1, p, m, precision)));
                const PAdicMatrix c = multiply(haar_gln_zp(factor_seed, base + 2, p, n, precision),
                                               left_diag_multiply(signed_mu(mu_n), haar_gln_zp(factor_seed, base + 3, p, n, precision)));
                const Signature ab = singular_numbers(multiply(wide, b));
                const Signature ca = singular_numbers(multiply(c, wide));
                const bool right_ok = sign > 0 ? dominates(ab, sn_wide) : dominates(sn_wide, ab);
                const bool left_ok = sign > 0 ? dominates(ca, sn_wide) : dominates(sn_wide, ca);
                if (!right_ok) product_right[s] = 1;
                if (!left_ok) product_left[s] = 1;
            }
        } catch (const PrecisionExhausted&) {
            uncertified[s] = 1;
        } catch (const SingularMatrix&) {
            uncertified[s] = 1;
        }
    });
    auto total = [](const std::vector<int>& v) { return static_cast<double>(std::count(v.begin(), v.end(), 1)); };
    report.add("additivity_violations", total(additivity), Relation::Equal, 0.0);
    report.add("right_factor_violations", total(product_right), Relation::Equal, 0.0);
    report.add("left_factor_violations", total(product_left), Relation::Equal, 0.0);
    report.add("uncertified", total(uncertified), Relation::Equal, 0.0);
    report.wall_seconds = seconds_since(start);
    return report;
}

} // namespace padic
