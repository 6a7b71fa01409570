#include <doctest.h>

#include <cstdint>
#include <map>

#include "padic/errors.hpp"
#include "padic/generator.hpp"
#include "padic/matrix.hpp"

using namespace padic;

namespace {

// Exact one-jump law by enumerating GL_2(Z/p^k): the Haar pushforward mod p^k is
// uniform and, with every singular number below k, SN(diag(p,1) U diag(p^kappa))
// depends only on U mod p^k.
std::map<Signature, Rational> enumerate_one_jump(const Signature& kappa, std::int64_t p, int k) {
    std::int64_t q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    std::map<Signature, std::uint64_t> counts;
    std::uint64_t total = 0;
    for (std::int64_t a = 0; a < q; ++a)
        for (std::int64_t b = 0; b < q; ++b)
            for (std::int64_t c = 0; c < q; ++c)
                for (std::int64_t d = 0; d < q; ++d) {
                    if (((a * d - b * c) % p + p) % p == 0) continue;
                    const std::int64_t s0 = p;
                    std::vector<std::int64_t> v{a * s0, b * s0, c, d};
                    for (int r = 0; r < 2; ++r) {
                        for (int e = 0; e < kappa[0]; ++e) v[2 * r] *= p;
                        for (int e = 0; e < kappa[1]; ++e) v[2 * r + 1] *= p;
                    }
                    ++counts[singular_numbers(PAdicMatrix::from_integers(2, 2, p, 24, v))];
                    ++total;
                }
    std::map<Signature, Rational> law;
    for (const auto& [s, c] : counts) {
        Rational r(static_cast<long>(c), static_cast<unsigned long>(total));
        r.canonicalize();
        law[s] = r;
    }
    return law;
}

std::map<Signature, Rational> as_map(const std::vector<Transition>& row) {
    std::map<Signature, Rational> out;
    for (const auto& tr : row) out[tr.target] += tr.rate;
    return out;
}

} // namespace

TEST_CASE("closed-form one-jump law matches enumeration over GL_2(Z/p^k)") {
    for (const Signature& kappa : {Signature{0, 0}, Signature{1, 0}, Signature{1, 1}, Signature{2, 0}}) {
        const int k = static_cast<int>(kappa.weight()) + 2;
        const auto exact = enumerate_one_jump(kappa, 2, k);
        CHECK(as_map(matrix_walk_jump_law(kappa, 2)) == exact);
        CHECK(one_jump_oracle(kappa, 2) == exact);
    }
    for (const Signature& kappa : {Signature{0, 0}, Signature{1, 0}}) {
        const int k = static_cast<int>(kappa.weight()) + 2;
        const auto exact = enumerate_one_jump(kappa, 3, k);
        CHECK(as_map(matrix_walk_jump_law(kappa, 3)) == exact);
        CHECK(one_jump_oracle(kappa, 3) == exact);
    }
}

TEST_CASE("one-jump law at N=2, p=2") {
    const auto law = as_map(matrix_walk_jump_law(Signature{1, 0}, 2));
    CHECK(law.at(Signature{2, 0}) == Rational(2, 3));
    CHECK(law.at(Signature{1, 1}) == Rational(1, 3));
    CHECK(as_map(matrix_walk_jump_law(Signature{0, 0}, 2)).at(Signature{1, 0}) == 1);
}

TEST_CASE("extra (1 - t) factor loses mass") {
    Rational sum = 0;
    for (const auto& tr : matrix_walk_jump_law(Signature{2, 1, 1}, 3, OneJumpNormalization::ExtraOneMinusT)) sum += tr.rate;
    CHECK(sum == Rational(2, 3));
}

TEST_CASE("reflected walk rates at t = 1/2") {
    const Rational t(1, 2);
    const auto row = as_map(reflected_walk_rates(Signature{1, 0}, t));
    CHECK(row.at(Signature{2, 0}) == Rational(1, 2));
    CHECK(row.at(Signature{1, 1}) == Rational(1, 4));
    CHECK(as_map(reflected_walk_rates(Signature{0, 0}, t)).at(Signature{1, 0}) == Rational(3, 4));
    CHECK(reflected_walk_exit_rate(t, 2) == Rational(3, 4));
    CHECK(time_change_constant(t, 2) == Rational(4, 3));
    CHECK_THROWS_AS(reflected_walk_rates(Signature{0}, Rational(1)), InvalidInput);
}

TEST_CASE("reflected walk exit rate does not depend on the state") {
    const Rational t(2, 7);
    for (const auto& kappa : truncated_state_space(4, 6)) {
        Rational sum = 0;
        for (const auto& tr : reflected_walk_rates(kappa, t)) sum += tr.rate;
        CHECK(sum == reflected_walk_exit_rate(t, 4));
    }
}

TEST_CASE("truncated state space") {
    const auto states = truncated_state_space(2, 2);
    REQUIRE(states.size() == 4);
    CHECK(states[0] == Signature{0, 0});
    CHECK(states[1] == Signature{1, 0});
    CHECK(states[2] == Signature{2, 0});
    CHECK(states[3] == Signature{1, 1});
    CHECK(truncated_state_space(3, 6).size() == 1 + 1 + 2 + 3 + 4 + 5 + 7);
}

TEST_CASE("generators A and B are proportional") {
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::int64_t p : {2, 3, 5}) {
            const Rational t(1, p);
            const Rational c = time_change_constant(t, n);
            const auto a = generator_A(n, p, 5);
            const auto b = generator_B(n, t, 5);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a.diagonal(i) == -1);
                CHECK(a.diagonal(i) == c * b.diagonal(i));
                for (const auto& tr : a.row(i)) CHECK(tr.rate == c * b.at(a.states()[i], tr.target));
            }
        }
    }
}

TEST_CASE("generator entries and boundary") {
    const auto b = generator_B(2, Rational(1, 2), 3);
    CHECK(b.at(Signature{1, 0}, Signature{2, 0}) == Rational(1, 2));
    CHECK(b.at(Signature{1, 0}, Signature{1, 0}) == Rational(-3, 4));
    CHECK(b.at(Signature{1, 0}, Signature{0, 0}) == 0);
    const auto top = *b.index_of(Signature{3, 0});
    CHECK(b.boundary_rate(top) == Rational(3, 4));
    CHECK(b.boundary_rate(0) == 0);
    CHECK_FALSE(b.contains(Signature{4, 0}));
    CHECK_THROWS_AS(generator_A(2, 4, 3), InvalidInput);
    CHECK_THROWS_AS(generator_A(2, 2, 0), InvalidInput);
}
