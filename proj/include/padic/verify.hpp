#pragma once

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "padic/generator.hpp"
#include "padic/matrix.hpp"
#include "padic/stats.hpp"

namespace padic {

enum class Relation { LessEqual, Less, GreaterEqual, Greater, Equal };

// One recorded statistic with the threshold it is held to.
struct Check {
    std::string name;
    double value = 0.0;
    Relation relation = Relation::Equal;
    double threshold = 0.0;

    bool passed() const;
};

/// Outcome of one verification suite. `passed()` depends only on the recorded checks.
struct VerificationReport {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
    std::vector<Check> checks;
    // Supplementary, non-gating information (per-state tables, exact strings).
    nlohmann::json details = nlohmann::json::object();
    std::uint64_t samples = 0;
    double wall_seconds = 0.0;

    bool passed() const;
    void add(std::string check_name, double value, Relation relation, double threshold);
    // {name, params, stats, pass, samples[, wall_seconds]}
    nlohmann::json to_json(bool include_timing = false) const;
};

struct StatOptions {
    double alpha = kDefaultAlpha;
    double tv_bound = 0.02;
    double min_expected = kDefaultMinExpected;
    double tail_eps = 1e-10;
    unsigned threads = 1;
};

// kappa - e_l with l chosen from the first column of A as in the one-box lemma:
// the lowest row whose first entry is a unit, then the bottom of its block in kappa.
Signature lemma_one_jump_prediction(const PAdicMatrix& a, const Signature& kappa);

// SN(diag(p^kappa) A diag(p^-1, 1, ..., 1)) == lemma_one_jump_prediction(A, kappa).
bool check_lemma_one_jump(const PAdicMatrix& a, const Signature& kappa);

// Random Haar A and kappa with |kappa_i| <= max_part.
VerificationReport verify_lemma(std::size_t n, std::int64_t p, std::size_t instances, std::uint64_t seed,
                                int max_part = 5, unsigned threads = 1);

// Closed form vs brute-force oracle (exact), row sums, and Monte Carlo within
// `sigmas` binomial standard deviations, for every kappa with kappa_N >= 0, |kappa| <= K.
VerificationReport verify_one_jump(std::size_t n, std::int64_t p, int max_weight, std::size_t samples,
                                   std::uint64_t seed, double sigmas = 3.0, unsigned threads = 1);

// Exact comparison A = c' B, A = oracle, and zero row sums on |kappa| <= K.
// `normalization` exists so tests can feed the rejected (1 - t) variant.
VerificationReport verify_generators(std::size_t n, std::int64_t p, int max_weight,
                                     OneJumpNormalization normalization = OneJumpNormalization::Conserving);

// Joint law of SN(X(tau_1..tau_k)) vs S(c' tau_1..c' tau_k), two-sample and against the
// exact uniformized law.
VerificationReport verify_theorem_multitime(std::size_t n, std::int64_t p, const std::vector<double>& times,
                                            std::size_t samples, std::uint64_t seed, const StatOptions& options = {});

// Clock dynamics vs Gillespie on the generator rows at a single time.
VerificationReport verify_reflection_equivalence(std::size_t n, const Rational& t, double tau, std::size_t samples,
                                                 std::uint64_t seed, const StatOptions& options = {});

// Sample means of |SN(X(tau))| and |S(c' tau)| within `sigmas` Poisson standard errors of tau.
VerificationReport verify_mean_growth(std::size_t n, std::int64_t p, double tau, std::size_t runs, std::uint64_t seed,
                                      double sigmas = 3.0, unsigned threads = 1);

// Smith form vs minor oracle on random n x n matrices, entries uniform in Z_p times
// p^{0..4}. Also checks det_valuation == |SN|.
VerificationReport verify_snf_oracle(std::size_t n, std::int64_t p, std::size_t count, std::uint64_t seed,
                                     int precision = 24, unsigned threads = 1);

// Mod-p pushforward of the column sampler against uniform on GL_N(F_p), and against
// the rejection sampler.
VerificationReport verify_haar(std::size_t n, std::int64_t p, std::size_t samples, std::uint64_t seed,
                               const StatOptions& options = {});

// Determinant additivity under diag(p^kappa) and entrywise monotonicity under
// factors with nonnegative / nonpositive singular numbers.
VerificationReport verify_singular_number_props(std::size_t n, std::int64_t p, std::size_t count, std::uint64_t seed,
                                                unsigned threads = 1);

} // namespace padic
