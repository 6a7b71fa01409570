#include <doctest.h>

#include <cmath>

#include "padic/errors.hpp"
#include "padic/processes.hpp"
#include "padic/stats.hpp"
#include "padic/uniformization.hpp"

using namespace padic;

TEST_CASE("chi-square survival at tabulated quantiles") {
    CHECK(chi_square_survival(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi_square_survival(18.307038053275146, 10) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi_square_survival(0.0, 3) == 1.0);
    CHECK(chi_square_survival(INFINITY, 3) == 0.0);
}

TEST_CASE("goodness of fit") {
    Histogram<int> h{{0, 500}, {1, 300}, {2, 200}};
    Law<int> exact{{0, 0.5}, {1, 0.3}, {2, 0.2}};
    const auto r = chi_square_gof(h, exact);
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK(r.dof == 2);
    CHECK(r.p_value == doctest::Approx(1.0));

    Histogram<int> skewed{{0, 700}, {1, 200}, {2, 100}};
    CHECK(chi_square_gof(skewed, exact).p_value < 1e-10);

    Histogram<int> stray{{0, 500}, {3, 1}};
    CHECK(chi_square_gof(stray, exact).p_value == 0.0);
    CHECK_THROWS_AS(chi_square_gof(Histogram<int>{}, exact), InsufficientSamples);
}

TEST_CASE("rare cells are pooled") {
    Histogram<int> h{{0, 990}, {1, 6}, {2, 4}};
    Law<int> exact{{0, 0.99}, {1, 0.006}, {2, 0.004}};
    const auto r = chi_square_gof(h, exact);
    CHECK(r.cells == 2);
    CHECK(r.dof == 1);
}

TEST_CASE("two-sample test") {
    Histogram<int> a{{0, 400}, {1, 600}};
    Histogram<int> b{{0, 800}, {1, 1200}};
    CHECK(chi_square_two_sample(a, b).p_value == doctest::Approx(1.0));
    Histogram<int> c{{0, 1200}, {1, 800}};
    CHECK(chi_square_two_sample(a, c).p_value < 1e-10);
}

TEST_CASE("total variation") {
    Law<int> a{{0, 0.5}, {1, 0.5}};
    Law<int> b{{1, 0.5}, {2, 0.5}};
    CHECK(tv_distance(a, b) == doctest::Approx(0.5));
    CHECK(tv_distance(a, a) == 0.0);
    Histogram<int> h{{0, 1}, {1, 1}};
    CHECK(tv_distance(h, a) == 0.0);
}

TEST_CASE("tests are calibrated under the null on the reflected walk") {
    // Clock and Gillespie simulations share one law; at alpha = 0.05 the rejection
    // count over 200 repetitions is Binomial(200, 0.05): mean 10, sd about 3.1.
    const Rational t(1, 2);
    const std::vector<double> times{1.5};
    const auto exact = finite_time_distribution(generator_B(2, t, 20), Rational(1), 1.5, Signature::zeros(2));
    int two_sample_rejections = 0, gof_rejections = 0;
    const int repetitions = 200;
    for (int rep = 0; rep < repetitions; ++rep) {
        Histogram<Signature> a, b;
        for (std::uint64_t s = 0; s < 1000; ++s) {
            const std::uint64_t seed = derive_seed(static_cast<std::uint64_t>(rep), s);
            ++a[reflected_walk_simulate(2, t, times, seed).records[0]];
            ++b[reflected_walk_gillespie(2, t, times, seed).records[0]];
        }
        if (chi_square_two_sample(a, b).p_value < 0.05) ++two_sample_rejections;
        if (chi_square_gof(a, exact.law).p_value < 0.05) ++gof_rejections;
    }
    MESSAGE("two-sample rejections: " << two_sample_rejections << ", goodness-of-fit rejections: " << gof_rejections);
    CHECK(two_sample_rejections <= 23);
    CHECK(gof_rejections <= 23);
    CHECK(two_sample_rejections >= 1);
    CHECK(gof_rejections >= 1);
}
