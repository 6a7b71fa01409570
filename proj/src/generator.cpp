#include "padic/generator.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "padic/errors.hpp"
#include "padic/scalar.hpp"

namespace padic {

namespace {

void require_t(const Rational& t) {
    if (t <= 0 || t >= 1) throw InvalidInput("t must lie strictly between 0 and 1, got " + to_fraction_string(t));
}

// Block tops: 0-based indices l where a box can be added.
std::vector<std::size_t> addable_positions(const Signature& kappa) {
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < kappa.size(); ++l) {
        if (kappa.can_add_box(l)) out.push_back(l);
    }
    return out;
}

void enumerate_partitions(std::size_t n, int remaining, int max_part, std::vector<int>& prefix,
                          std::vector<Signature>& out) {
    if (prefix.size() == n) {
        if (remaining == 0) out.emplace_back(prefix);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 0; --part) {
        prefix.push_back(part);
        enumerate_partitions(n, remaining - part, part, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

Rational time_change_constant(const Rational& t, std::size_t n) {
    require_t(t);
    Rational c = (1 - t) / (t * (1 - pow(t, static_cast<unsigned>(n))));
    c.canonicalize();
    return c;
}

RateParams RateParams::from_prime(std::int64_t p, std::size_t n) {
    require_prime(p);
    return RateParams{Rational(1, static_cast<unsigned long>(p)), n, Rational(1)};
}

Rational reflected_walk_exit_rate(const Rational& t, std::size_t n) {
    require_t(t);
    Rational r = t * (1 - pow(t, static_cast<unsigned>(n))) / (1 - t);
    r.canonicalize();
    return r;
}

std::vector<Transition> reflected_walk_rates(const Signature& kappa, const Rational& t) {
    require_t(t);
    std::vector<Transition> out;
    for (std::size_t l : addable_positions(kappa)) {
        const auto m = static_cast<unsigned>(kappa.multiplicity(kappa[l]));
        Rational rate = pow(t, static_cast<unsigned>(l + 1)) * (1 - pow(t, m)) / (1 - t);
        rate.canonicalize();
        out.push_back({kappa.add_box(l), rate});
    }
    return out;
}

std::vector<Transition> matrix_walk_jump_law(const Signature& kappa, std::int64_t p, OneJumpNormalization normalization) {
    require_prime(p);
    const Rational t(1, static_cast<unsigned long>(p));
    const auto n = static_cast<unsigned>(kappa.size());
    std::vector<Transition> out;
    for (std::size_t l : addable_positions(kappa)) {
        const auto m = static_cast<unsigned>(kappa.multiplicity(kappa[l]));
        Rational prob = pow(t, static_cast<unsigned>(l)) * (1 - pow(t, m)) / (1 - pow(t, n));
        if (normalization == OneJumpNormalization::ExtraOneMinusT) prob *= (1 - t);
        prob.canonicalize();
        out.push_back({kappa.add_box(l), prob});
    }
    return out;
}

std::map<Signature, Rational> one_jump_oracle(const Signature& kappa, std::int64_t p) {
    require_prime(p);
    const std::size_t n = kappa.size();
    if (n == 0) throw InvalidInput("empty signature");

    // kappa' = (-kappa_N, ..., -kappa_1), itself weakly decreasing.
    std::vector<int> reversed(n);
    for (std::size_t i = 0; i < n; ++i) reversed[i] = -kappa[n - 1 - i];

    std::uint64_t vectors = 1;
    for (std::size_t i = 0; i < n; ++i) vectors *= static_cast<std::uint64_t>(p);
    const Rational weight(1, static_cast<unsigned long>(vectors - 1));

    std::map<Signature, Rational> law;
    std::vector<std::uint64_t> w(n);
    for (std::uint64_t code = 1; code < vectors; ++code) {
        std::uint64_t rest = code;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = rest % static_cast<std::uint64_t>(p);
            rest /= static_cast<std::uint64_t>(p);
        }
        // Lowest row whose first-column entry is a unit.
        std::size_t unit_row = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (w[i] != 0) unit_row = i;
        }
        // Bottom of the block of kappa' containing that row.
        std::size_t lowered = unit_row;
        while (lowered + 1 < n && reversed[lowered + 1] == reversed[unit_row]) ++lowered;

        std::vector<int> shifted = reversed;
        --shifted[lowered];
        std::vector<int> nu(n);
        for (std::size_t i = 0; i < n; ++i) nu[i] = -shifted[n - 1 - i];
        law[Signature(std::move(nu))] += weight;
    }
    for (auto& [sig, q] : law) q.canonicalize();
    return law;
}

std::vector<Signature> truncated_state_space(std::size_t n, int max_weight) {
    if (n == 0) throw InvalidInput("signature length must be positive");
    if (max_weight < 0) throw InvalidInput("truncation weight must be nonnegative");
    std::vector<Signature> out;
    std::vector<int> prefix;
    for (int w = 0; w <= max_weight; ++w) enumerate_partitions(n, w, w, prefix, out);
    return out;
}

GeneratorMatrix::GeneratorMatrix(std::size_t n, int max_weight, std::vector<Signature> states,
                                 std::vector<Rational> diagonal, std::vector<std::vector<Transition>> rows)
    : n_(n), max_weight_(max_weight), states_(std::move(states)), diagonal_(std::move(diagonal)),
      rows_(std::move(rows)) {
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
}

std::optional<std::size_t> GeneratorMatrix::index_of(const Signature& s) const {
    const auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Rational GeneratorMatrix::at(const Signature& kappa, const Signature& nu) const {
    const auto i = index_of(kappa);
    if (!i) throw InvalidInput("state " + kappa.to_string() + " outside the truncated state space");
    if (kappa == nu) return diagonal_[*i];
    for (const auto& tr : rows_[*i]) {
        if (tr.target == nu) return tr.rate;
    }
    return 0;
}

Rational GeneratorMatrix::boundary_rate(std::size_t i) const {
    Rational total = 0;
    for (const auto& tr : rows_[i]) {
        if (!contains(tr.target)) total += tr.rate;
    }
    return total;
}

std::vector<std::tuple<Signature, Signature, Rational>> GeneratorMatrix::entries() const {
    std::vector<std::tuple<Signature, Signature, Rational>> out;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (diagonal_[i] != 0) out.emplace_back(states_[i], states_[i], diagonal_[i]);
        for (const auto& tr : rows_[i]) out.emplace_back(states_[i], tr.target, tr.rate);
    }
    return out;
}

GeneratorMatrix generator_B(std::size_t n, const Rational& t, int max_weight) {
    if (max_weight < 1) throw InvalidInput("truncation weight K must be at least 1");
    auto states = truncated_state_space(n, max_weight);
    const Rational exit = reflected_walk_exit_rate(t, n);
    std::vector<Rational> diagonal(states.size(), -exit);
    std::vector<std::vector<Transition>> rows;
    rows.reserve(states.size());
    for (const auto& s : states) rows.push_back(reflected_walk_rates(s, t));
    return GeneratorMatrix(n, max_weight, std::move(states), std::move(diagonal), std::move(rows));
}

GeneratorMatrix generator_A(std::size_t n, std::int64_t p, int max_weight, OneJumpNormalization normalization) {
    if (max_weight < 1) throw InvalidInput("truncation weight K must be at least 1");
    auto states = truncated_state_space(n, max_weight);
    std::vector<Rational> diagonal(states.size(), Rational(-1));
    std::vector<std::vector<Transition>> rows;
    rows.reserve(states.size());
    for (const auto& s : states) rows.push_back(matrix_walk_jump_law(s, p, normalization));
    return GeneratorMatrix(n, max_weight, std::move(states), std::move(diagonal), std::move(rows));
}

} // namespace padic
