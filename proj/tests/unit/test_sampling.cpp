#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "padic/errors.hpp"
#include "padic/matrix.hpp"
#include "padic/sampling.hpp"
#include "padic/stats.hpp"

using namespace padic;

TEST_CASE("streams are pure functions of their key") {
    const StreamKey a{1, 2, 3, 4, 0};
    const StreamKey b{1, 2, 3, 4, 1};
    CHECK(stream_word(a, 7) == stream_word(a, 7));
    CHECK(stream_word(a, 7) != stream_word(a, 8));
    CHECK(stream_word(a, 7) != stream_word(b, 7));
    CHECK(derive_seed(9, "x") != derive_seed(9, "y"));
    CHECK(derive_seed(9, std::uint64_t{1}) != derive_seed(9, std::uint64_t{2}));
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double u = stream_uniform(a, i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(stream_digit(a, 7, i) < 7u);
        CHECK(stream_exponential(a, i, 2.0) >= 0.0);
    }
}

TEST_CASE("stream digits are uniform") {
    Histogram<int> h;
    const StreamKey key{42};
    for (std::uint64_t i = 0; i < 30000; ++i) ++h[static_cast<int>(stream_digit(key, 5, i))];
    Law<int> uniform;
    for (int d = 0; d < 5; ++d) uniform[d] = 0.2;
    CHECK(chi_square_gof(h, uniform).p_value > 1e-4);
}

TEST_CASE("exponential variates have the right mean") {
    const StreamKey key{3};
    double sum = 0;
    const int n = 40000;
    for (int i = 0; i < n; ++i) sum += stream_exponential(key, static_cast<std::uint64_t>(i), 4.0);
    CHECK(std::abs(sum / n - 0.25) < 5 * 0.25 / std::sqrt(n));
}

TEST_CASE("uniform Z_p elements extend consistently with precision") {
    const StreamKey key{7, 1, 0, 0, 0};
    const auto short_x = uniform_zp(key, 3, 4);
    const auto long_x = uniform_zp(key, 3, 12);
    CHECK(long_x.residue(4) == short_x.residue(4));
}

TEST_CASE("Haar samples are invertible and prefix-consistent") {
    for (std::int64_t p : {2, 3, 5}) {
        for (std::size_t n = 1; n <= 4; ++n) {
            for (std::int64_t e = 0; e < 30; ++e) {
                const auto low = haar_gln_zp(11, e, p, n, 3);
                const auto high = haar_gln_zp(11, e, p, n, 9);
                CHECK(rank_mod_p(reduce_mod_p(low), n, n, static_cast<std::uint32_t>(p)) == n);
                for (std::size_t i = 0; i < n * n; ++i) {
                    CHECK(high.entries()[i].residue(3) == low.entries()[i].residue(3));
                }
                const auto r = haar_rejection_draw(11, e, p, n, 3);
                CHECK(r.attempts >= 1);
                CHECK(rank_mod_p(reduce_mod_p(r.matrix), n, n, static_cast<std::uint32_t>(p)) == n);
            }
        }
    }
}

TEST_CASE("Haar pushforward to GL_2(F_2) is uniform on six classes") {
    Histogram<std::vector<std::uint32_t>> h;
    for (std::int64_t e = 0; e < 12000; ++e) ++h[reduce_mod_p(haar_gln_zp(5, e, 2, 2, 1))];
    CHECK(h.size() == 6);
    Law<std::vector<std::uint32_t>> uniform;
    for (const auto& [k, c] : h) uniform[k] = 1.0 / 6.0;
    CHECK(chi_square_gof(h, uniform).p_value > 1e-4);
}

TEST_CASE("higher digits of Haar entries are uniform") {
    // Digit 1 of every entry is unconditioned.
    Histogram<std::uint32_t> h;
    for (std::int64_t e = 0; e < 5000; ++e) {
        const auto u = haar_gln_zp(8, e, 3, 2, 3);
        for (const auto& x : u.entries()) ++h[static_cast<std::uint32_t>(x.residue(2) / 3)];
    }
    Law<std::uint32_t> uniform{{0, 1.0 / 3}, {1, 1.0 / 3}, {2, 1.0 / 3}};
    CHECK(chi_square_gof(h, uniform).p_value > 1e-4);
}

TEST_CASE("signature measures") {
    const SignatureMeasure m({{Signature{1, 0}, Rational(1, 3)}, {Signature{0, -1}, Rational(2, 3)}});
    std::map<Signature, int> counts;
    for (std::int64_t i = 0; i < 30000; ++i) ++counts[sample_signature(m, StreamKey{4, i})];
    CHECK(counts.size() == 2);
    CHECK(std::abs(counts[Signature{1, 0}] / 30000.0 - 1.0 / 3) < 0.015);
    CHECK(sample_signature(SignatureMeasure::point_mass(Signature{2}), StreamKey{1}) == Signature{2});

    CHECK_THROWS_AS(SignatureMeasure({{Signature{1}, Rational(1, 2)}}), InvalidInput);
    CHECK_THROWS_AS(SignatureMeasure({{Signature{1}, Rational(3, 2)}, {Signature{0}, Rational(-1, 2)}}), InvalidInput);
    CHECK_THROWS_AS(SignatureMeasure({{Signature{1}, Rational(1, 2)}, {Signature{0, 0}, Rational(1, 2)}}), InvalidInput);
}
