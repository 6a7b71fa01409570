#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "padic/rational.hpp"
#include "padic/signature.hpp"

namespace padic {

struct Transition {
    Signature target;
    Rational rate;

    friend bool operator==(const Transition&, const Transition&) = default;
};

// c' = (1/t) (1 - t) / (1 - t^N): the time change matching the two processes.
Rational time_change_constant(const Rational& t, std::size_t n);

/// Parameters of the reflected walk and its matching matrix walk. `rate` is the
/// Poisson rate of the matrix walk.
struct RateParams {
    Rational t;
    std::size_t n = 1;
    Rational rate = 1;

    static RateParams from_prime(std::int64_t p, std::size_t n);
    Rational time_scale() const { return time_change_constant(t, n); }
};

// Total jump rate of the reflected walk, t (1 - t^N) / (1 - t).
Rational reflected_walk_exit_rate(const Rational& t, std::size_t n);

// Off-diagonal generator row of the reflected Poisson walk at kappa:
// kappa -> kappa + e_l at rate t^l (1 - t^{m}) / (1 - t), m = m_{kappa_l}(kappa),
// for each block top l.
std::vector<Transition> reflected_walk_rates(const Signature& kappa, const Rational& t);

enum class OneJumpNormalization {
    // t^{l-1} (1 - t^m) / (1 - t^N); rows sum to 1.
    Conserving,
    // Same with the extra factor (1 - t); rows sum to 1 - t. Kept only so the
    // verification suite can demonstrate why it is rejected.
    ExtraOneMinusT,
};

// Law of SN after one matrix-walk jump from kappa (t = 1/p), closed form.
std::vector<Transition> matrix_walk_jump_law(const Signature& kappa, std::int64_t p,
                                             OneJumpNormalization normalization = OneJumpNormalization::Conserving);

/// Brute-force one-jump law. Enumerates every nonzero w in F_p^N (the reduction of a
/// Haar column), locates the unit entry the way the one-box lemma prescribes on the
/// reversed, negated signature, and tallies kappa -> kappa + e_l with weight
/// 1 / (p^N - 1). Cost p^N.
std::map<Signature, Rational> one_jump_oracle(const Signature& kappa, std::int64_t p);

// {kappa in Sig_N : kappa_N >= 0, |kappa| <= K}, ordered by weight, then
// lexicographically decreasing.
std::vector<Signature> truncated_state_space(std::size_t n, int max_weight);

/// Exact CTMC generator on a truncated state space. Rows keep every off-diagonal
/// transition, including those that leave the truncation (|nu| = K + 1); those are
/// reported as boundary rate rather than dropped.
class GeneratorMatrix {
public:
    GeneratorMatrix(std::size_t n, int max_weight, std::vector<Signature> states, std::vector<Rational> diagonal,
                    std::vector<std::vector<Transition>> rows);

    std::size_t n() const { return n_; }
    int max_weight() const { return max_weight_; }
    const std::vector<Signature>& states() const { return states_; }
    std::size_t size() const { return states_.size(); }
    std::optional<std::size_t> index_of(const Signature& s) const;
    bool contains(const Signature& s) const { return index_of(s).has_value(); }

    const Rational& diagonal(std::size_t i) const { return diagonal_[i]; }
    const std::vector<Transition>& row(std::size_t i) const { return rows_[i]; }

    // G(kappa, nu); zero when absent. kappa must be in the state space.
    Rational at(const Signature& kappa, const Signature& nu) const;
    // Total rate from state i to targets outside the truncation.
    Rational boundary_rate(std::size_t i) const;

    // Every nonzero entry (kappa, nu, value), diagonal included, in state order.
    std::vector<std::tuple<Signature, Signature, Rational>> entries() const;

private:
    std::size_t n_;
    int max_weight_;
    std::vector<Signature> states_;
    std::map<Signature, std::size_t> index_;
    std::vector<Rational> diagonal_;
    std::vector<std::vector<Transition>> rows_;
};

GeneratorMatrix generator_B(std::size_t n, const Rational& t, int max_weight);
GeneratorMatrix generator_A(std::size_t n, std::int64_t p, int max_weight,
                            OneJumpNormalization normalization = OneJumpNormalization::Conserving);

} // namespace padic
