#include <doctest.h>

#include <random>

#include "padic/errors.hpp"
#include "padic/matrix.hpp"
#include "padic/sampling.hpp"

using namespace padic;

namespace {

PAdicMatrix random_integer_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols, std::int64_t p,
                                  int precision, int max_shift) {
    std::uniform_int_distribution<std::int64_t> value(1, 1000);
    std::uniform_int_distribution<int> power(0, max_shift);
    std::vector<std::int64_t> v(rows * cols);
    for (auto& x : v) {
        x = value(gen);
        for (int k = power(gen); k > 0; --k) x *= p;
    }
    return PAdicMatrix::from_integers(rows, cols, p, precision, v);
}

} // namespace

TEST_CASE("singular numbers of small examples") {
    CHECK(singular_numbers(PAdicMatrix::diagonal(Signature{2, 0}, 3, 8)) == Signature{2, 0});
    CHECK(singular_numbers(PAdicMatrix::from_integers(2, 2, 3, 8, {1, 0, 0, 9})) == Signature{2, 0});
    const auto m = PAdicMatrix::from_integers(2, 2, 3, 8, {3, 1, 0, 3});
    CHECK(singular_numbers(m) == Signature{2, 0});
    CHECK(singular_numbers_minor_oracle(m) == Signature{2, 0});
    const auto neg = PAdicMatrix::diagonal(Signature{1, -2}, 5, 6);
    CHECK(singular_numbers(neg) == Signature{1, -2});
}

TEST_CASE("Smith form agrees with the minor oracle on random matrices") {
    std::mt19937_64 gen(21);
    for (std::int64_t p : {2, 3, 5}) {
        for (std::size_t rows = 1; rows <= 4; ++rows) {
            for (std::size_t cols = 1; cols <= 4; ++cols) {
                for (int trial = 0; trial < 25; ++trial) {
                    const auto a = random_integer_matrix(gen, rows, cols, p, 30, 3);
                    Signature fast, oracle;
                    bool fast_ok = true, oracle_ok = true;
                    try {
                        fast = singular_numbers(a);
                    } catch (const SingularMatrix&) {
                        fast_ok = false;
                    }
                    try {
                        oracle = singular_numbers_minor_oracle(a);
                    } catch (const SingularMatrix&) {
                        oracle_ok = false;
                    }
                    CHECK(fast_ok == oracle_ok);
                    if (fast_ok && oracle_ok) CHECK(fast == oracle);
                    CHECK(fast.size() == std::min(rows, cols));
                }
            }
        }
    }
}

TEST_CASE("determinant valuation is the weight of the singular numbers") {
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_integer_matrix(gen, 3, 3, 2, 30, 3);
        try {
            const auto sn = singular_numbers(a);
            CHECK(det_valuation(a) == sn.weight());
            CHECK(leibniz_determinant(a).valuation() == sn.weight());
        } catch (const SingularMatrix&) {
        }
    }
}

TEST_CASE("singular numbers are invariant under GL_N(Z_p) on both sides") {
    for (std::int64_t p : {2, 3}) {
        for (std::int64_t e = 0; e < 20; ++e) {
            const Signature kappa{3, 1, 1, -2};
            const auto u = haar_gln_zp(17, 2 * e, p, 4, 24);
            const auto v = haar_gln_zp(17, 2 * e + 1, p, 4, 24);
            CHECK(singular_numbers(u) == Signature::zeros(4));
            CHECK(singular_numbers(u * left_diag_multiply(kappa, v)) == kappa);
        }
    }
}

TEST_CASE("singular and under-resolved inputs") {
    const auto zero = PAdicMatrix::from_integers(2, 2, 2, 4, {0, 0, 0, 0});
    CHECK_THROWS_AS(singular_numbers(zero), SingularMatrix);
    CHECK_THROWS_AS(singular_numbers_minor_oracle(zero), SingularMatrix);
    // Rank one at precision 4: the second pivot vanishes below the precision.
    const auto rank_one = PAdicMatrix::from_integers(2, 2, 2, 4, {1, 1, 1, 1});
    CHECK_THROWS_AS(singular_numbers(rank_one), PrecisionExhausted);
    CHECK_THROWS_AS(singular_numbers_minor_oracle(rank_one), PrecisionExhausted);
    const auto a = PAdicMatrix::identity(2, 2, 4);
    const auto b = PAdicMatrix::identity(3, 2, 4);
    CHECK_THROWS_AS(a * b, InvalidInput);
    CHECK_THROWS_AS(a * PAdicMatrix::identity(2, 3, 4), PrimeMismatch);
}

TEST_CASE("GL_2(F_2) has six elements") {
    int count = 0;
    for (std::uint32_t code = 0; code < 16; ++code) {
        std::vector<std::uint32_t> m{code & 1, (code >> 1) & 1, (code >> 2) & 1, (code >> 3) & 1};
        if (rank_mod_p(m, 2, 2, 2) == 2) ++count;
    }
    CHECK(count == 6);
}

TEST_CASE("GL_2(F_3) has 48 elements") {
    int count = 0;
    for (std::uint32_t code = 0; code < 81; ++code) {
        std::vector<std::uint32_t> m{code % 3, code / 3 % 3, code / 9 % 3, code / 27 % 3};
        const bool invertible = (m[0] * m[3] + 9 - m[1] * m[2] % 9) % 3 != 0;
        CHECK((rank_mod_p(m, 2, 2, 3) == 2) == invertible);
        if (invertible) ++count;
    }
    CHECK(count == 48);
}

TEST_CASE("products and diagonal scaling") {
    const auto a = PAdicMatrix::from_integers(2, 3, 5, 6, {1, 2, 3, 4, 5, 6});
    const auto b = PAdicMatrix::from_integers(3, 2, 5, 6, {1, 0, 0, 1, 1, 1});
    const auto c = a * b;
    const std::vector<std::uint64_t> expected{4, 5, 10, 11};
    for (std::size_t i = 0; i < 4; ++i) CHECK(c.entries()[i].residue(4) == expected[i]);
    CHECK(PAdicMatrix::identity(2, 5, 6) * a == a);
    const auto scaled = left_diag_multiply(std::vector<int>{1, 0}, a);
    CHECK(scaled(0, 1).valuation() == 1);
    CHECK(scaled(1, 1).valuation() == 1);
    CHECK(a.transpose().rows() == 3);
    CHECK(reduce_mod_p(a) == std::vector<std::uint32_t>{1, 2, 3, 4, 0, 1});
}
