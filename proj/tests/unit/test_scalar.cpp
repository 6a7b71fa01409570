#include <doctest.h>

#include <cstdint>
#include <random>

#include "padic/errors.hpp"
#include "padic/scalar.hpp"

using namespace padic;

namespace {

// Independent modular arithmetic for the oracle side.
std::int64_t ipow(std::int64_t p, int n) {
    std::int64_t r = 1;
    for (int i = 0; i < n; ++i) r *= p;
    return r;
}

std::int64_t modp(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

std::int64_t euclid_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t r0 = m, r1 = modp(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    return modp(s0, m);
}

// Value of an integral scalar mod p^n.
std::int64_t value_mod(const PAdicScalar& x, int n) { return static_cast<std::int64_t>(x.residue(n)); }

} // namespace

TEST_CASE("inverse of 3 at p=2 with 4 digits is 11") {
    const auto x = PAdicScalar::from_integer(3, 2, 4);
    const auto y = inv(x);
    CHECK(euclid_inverse(3, 16) == 11);
    CHECK(y.valuation() == 0);
    CHECK(value_mod(y, 4) == 11);
}

TEST_CASE("from_integer strips powers of p") {
    const auto x = PAdicScalar::from_integer(12, 2, 6);
    CHECK(x.valuation() == 2);
    CHECK(x.precision() == 6);
    CHECK(x.digits()[0] == 1);
    CHECK(x.digits()[1] == 1);
    CHECK(PAdicScalar::from_integer(0, 5, 3).is_exact_zero());
}

TEST_CASE("negative integers are p-adic complements") {
    const auto x = PAdicScalar::from_integer(-1, 3, 5);
    CHECK(value_mod(x, 5) == ipow(3, 5) - 1);
}

TEST_CASE("ring operations agree with integers modulo p^n") {
    std::mt19937_64 gen(11);
    for (std::int64_t p : {2, 3, 5, 7}) {
        const int n = 6;
        const std::int64_t mod = ipow(p, n);
        std::uniform_int_distribution<std::int64_t> dist(-10000, 10000);
        for (int trial = 0; trial < 300; ++trial) {
            const std::int64_t a = dist(gen), b = dist(gen);
            const auto x = PAdicScalar::from_integer(a, p, n + 4);
            const auto y = PAdicScalar::from_integer(b, p, n + 4);
            const auto s = x + y;
            const auto d = x - y;
            const auto m = x * y;
            if (!s.is_exact_zero() && s.absolute_precision() >= n) CHECK(value_mod(s, n) == modp(a + b, mod));
            if (!d.is_exact_zero() && d.absolute_precision() >= n) CHECK(value_mod(d, n) == modp(a - b, mod));
            if (!m.is_exact_zero()) CHECK(value_mod(m, n) == modp(a * b, mod));
            if (a % p != 0) {
                const auto i = inv(x);
                CHECK(value_mod(i, n) == euclid_inverse(a, mod));
                const auto one = x * i;
                CHECK(one.valuation() == 0);
                CHECK(value_mod(one, n) == 1);
            }
        }
    }
}

TEST_CASE("ring laws hold on random scalars") {
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<std::int64_t> dist(-500, 500);
    for (std::int64_t p : {2, 3}) {
        for (int trial = 0; trial < 200; ++trial) {
            const auto a = PAdicScalar::from_integer(dist(gen), p, 10);
            const auto b = PAdicScalar::from_integer(dist(gen), p, 10);
            const auto c = PAdicScalar::from_integer(dist(gen), p, 10);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            const auto lhs = a * (b + c);
            const auto rhs = a * b + a * c;
            // Both sides are known modulo the smaller absolute precision.
            const int k = std::min(lhs.absolute_precision(), rhs.absolute_precision());
            if (k > 0 && k < kInfiniteValuation) CHECK(lhs.residue(k) == rhs.residue(k));
        }
    }
}

TEST_CASE("ultrametric inequality") {
    std::mt19937_64 gen(9);
    std::uniform_int_distribution<std::int64_t> dist(-4096, 4096);
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = PAdicScalar::from_integer(dist(gen), 2, 16);
        const auto b = PAdicScalar::from_integer(dist(gen), 2, 16);
        const auto s = a + b;
        if (s.is_exact_zero() || a.is_exact_zero() || b.is_exact_zero()) continue;
        CHECK(s.valuation() >= std::min(a.valuation(), b.valuation()));
        if (a.valuation() != b.valuation()) CHECK(s.valuation() == std::min(a.valuation(), b.valuation()));
    }
}

TEST_CASE("cancellation keeps the absolute precision") {
    const auto two = PAdicScalar::from_integer(2, 2, 8);
    const auto four = two + two;
    CHECK(four.valuation() == 2);
    CHECK(four.absolute_precision() == 9);
    CHECK(four.precision() == 7);

    const auto zero = two - two;
    CHECK(zero.is_zero_at_precision());
    CHECK(zero.zero_info()->certified_min_valuation == 9);
    CHECK_FALSE(valuation_of(zero).certified);
}

TEST_CASE("zero handling") {
    const auto z = PAdicScalar::exact_zero(3);
    const auto x = PAdicScalar::from_integer(5, 3, 4);
    CHECK(x + z == x);
    CHECK((x * z).is_exact_zero());
    CHECK_THROWS_AS(inv(z), DivisionByZero);
    CHECK_THROWS_AS(inv(PAdicScalar::zero_at_precision(3, 4)), DivisionByZero);
    const auto zap = PAdicScalar::zero_at_precision(3, 4);
    CHECK((zap * x).zero_info()->certified_min_valuation == 4);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(PAdicScalar::from_integer(1, 4, 3), InvalidInput);
    CHECK_THROWS_AS(PAdicScalar::from_integer(1, 2, 3) + PAdicScalar::from_integer(1, 3, 3), PrimeMismatch);
    CHECK_THROWS_AS(PAdicScalar::from_integer(1, 2, 2).residue(5), PrecisionExhausted);
    const Digit bad[] = {0, 1};
    CHECK_THROWS_AS(PAdicScalar::from_unit(5, 0, bad), InvalidInput);
}

TEST_CASE("division and shifts") {
    const auto a = PAdicScalar::from_integer(6, 3, 6);
    const auto b = PAdicScalar::from_integer(9, 3, 6);
    const auto q = div(a, b);
    CHECK(q.valuation() == -1);
    CHECK(shift(q, 1).valuation() == 0);
    CHECK(shift(q, 1).residue(4) == 2);
    CHECK(PAdicScalar::power_of_p(5, 3, 4).valuation() == 3);
}
