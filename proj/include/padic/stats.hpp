#pragma once

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "padic/errors.hpp"

namespace padic {

inline constexpr double kDefaultAlpha = 1e-3;
inline constexpr double kDefaultMinExpected = 5.0;

template <class Key>
using Histogram = std::map<Key, std::uint64_t>;

template <class Key>
using Law = std::map<Key, double>;

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    // Cells left after pooling, including the pooled "other" cell if any.
    int cells = 0;
};

// Upper tail of the chi-square distribution: Q(dof/2, x/2).
inline double chi_square_survival(double statistic, int dof) {
    if (dof <= 0) return statistic > 0.0 ? 0.0 : 1.0;
    if (std::isinf(statistic)) return 0.0;
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

namespace detail {

struct Cell {
    double observed_a = 0.0;
    double expected_a = 0.0;
    double observed_b = 0.0;
    double expected_b = 0.0;
};

// Pools every cell whose smaller expectation is below the threshold into one extra
// cell; if that cell is itself too small it is merged into the smallest kept cell.
inline std::vector<Cell> pool(const std::vector<Cell>& raw, double min_expected, bool two_sided) {
    auto small = [&](const Cell& c) {
        return two_sided ? std::min(c.expected_a, c.expected_b) < min_expected : c.expected_a < min_expected;
    };
    std::vector<Cell> kept;
    Cell other;
    bool has_other = false;
    for (const auto& c : raw) {
        if (small(c)) {
            other.observed_a += c.observed_a;
            other.expected_a += c.expected_a;
            other.observed_b += c.observed_b;
            other.expected_b += c.expected_b;
            has_other = true;
        } else {
            kept.push_back(c);
        }
    }
    if (has_other && (other.observed_a > 0 || other.expected_a > 0 || other.observed_b > 0)) {
        if (small(other) && !kept.empty() && other.expected_a > 0) {
            auto smallest = std::min_element(kept.begin(), kept.end(),
                                             [](const Cell& x, const Cell& y) { return x.expected_a < y.expected_a; });
            smallest->observed_a += other.observed_a;
            smallest->expected_a += other.expected_a;
            smallest->observed_b += other.observed_b;
            smallest->expected_b += other.expected_b;
        } else {
            kept.push_back(other);
        }
    }
    return kept;
}

} // namespace detail

/// Pearson goodness of fit of observed counts against exact probabilities. Cells with
/// expected count below `min_expected` are pooled. Observations in cells of zero
/// probability give an infinite statistic and p-value 0.
template <class Key>
ChiSquareResult chi_square_gof(const Histogram<Key>& empirical, const Law<Key>& exact,
                               double min_expected = kDefaultMinExpected) {
    double total = 0.0;
    for (const auto& [k, c] : empirical) total += static_cast<double>(c);
    if (total <= 0.0) throw InsufficientSamples("chi_square_gof: empty histogram");
    double mass = 0.0;
    for (const auto& [k, q] : exact) mass += q;

    std::vector<detail::Cell> raw;
    double stray = 0.0;
    for (const auto& [k, q] : exact) {
        const auto it = empirical.find(k);
        raw.push_back({it == empirical.end() ? 0.0 : static_cast<double>(it->second), total * q / mass, 0.0, 0.0});
    }
    for (const auto& [k, c] : empirical) {
        if (!exact.count(k)) stray += static_cast<double>(c);
    }
    if (stray > 0.0) {
        return {std::numeric_limits<double>::infinity(), std::max(0, static_cast<int>(raw.size())), 0.0,
                static_cast<int>(raw.size()) + 1};
    }
    const auto cells = detail::pool(raw, min_expected, false);
    ChiSquareResult r;
    r.cells = static_cast<int>(cells.size());
    for (const auto& c : cells) {
        if (c.expected_a <= 0.0) {
            if (c.observed_a > 0.0) r.statistic = std::numeric_limits<double>::infinity();
            continue;
        }
        const double d = c.observed_a - c.expected_a;
        r.statistic += d * d / c.expected_a;
    }
    r.dof = std::max(0, r.cells - 1);
    r.p_value = chi_square_survival(r.statistic, r.dof);
    return r;
}

/// Two-sample chi-square homogeneity test between histograms of possibly different
/// sizes. Expected counts come from the pooled proportions; cells where either side
/// expects fewer than `min_expected` observations are pooled.
template <class Key>
ChiSquareResult chi_square_two_sample(const Histogram<Key>& a, const Histogram<Key>& b,
                                      double min_expected = kDefaultMinExpected) {
    double na = 0.0, nb = 0.0;
    for (const auto& [k, c] : a) na += static_cast<double>(c);
    for (const auto& [k, c] : b) nb += static_cast<double>(c);
    if (na <= 0.0 || nb <= 0.0) throw InsufficientSamples("chi_square_two_sample: empty histogram");

    std::set<Key> keys;
    for (const auto& [k, c] : a) keys.insert(k);
    for (const auto& [k, c] : b) keys.insert(k);
    std::vector<detail::Cell> raw;
    for (const auto& k : keys) {
        const auto ia = a.find(k);
        const auto ib = b.find(k);
        const double ca = ia == a.end() ? 0.0 : static_cast<double>(ia->second);
        const double cb = ib == b.end() ? 0.0 : static_cast<double>(ib->second);
        const double share = (ca + cb) / (na + nb);
        raw.push_back({ca, na * share, cb, nb * share});
    }
    const auto cells = detail::pool(raw, min_expected, true);
    ChiSquareResult r;
    r.cells = static_cast<int>(cells.size());
    for (const auto& c : cells) {
        if (c.expected_a > 0.0) r.statistic += (c.observed_a - c.expected_a) * (c.observed_a - c.expected_a) / c.expected_a;
        if (c.expected_b > 0.0) r.statistic += (c.observed_b - c.expected_b) * (c.observed_b - c.expected_b) / c.expected_b;
    }
    r.dof = std::max(0, r.cells - 1);
    r.p_value = chi_square_survival(r.statistic, r.dof);
    return r;
}

template <class Key>
Law<Key> normalize(const Histogram<Key>& h) {
    double total = 0.0;
    for (const auto& [k, c] : h) total += static_cast<double>(c);
    Law<Key> out;
    if (total <= 0.0) return out;
    for (const auto& [k, c] : h) out[k] = static_cast<double>(c) / total;
    return out;
}

// Half L1 distance between two probability laws on a common key space.
template <class Key>
double tv_distance(const Law<Key>& a, const Law<Key>& b) {
    double sum = 0.0;
    for (const auto& [k, q] : a) {
        const auto it = b.find(k);
        sum += std::abs(q - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [k, q] : b) {
        if (!a.count(k)) sum += std::abs(q);
    }
    return std::min(1.0, 0.5 * sum);
}

template <class Key>
double tv_distance(const Histogram<Key>& a, const Histogram<Key>& b) {
    return tv_distance(normalize(a), normalize(b));
}

template <class Key>
double tv_distance(const Histogram<Key>& a, const Law<Key>& b) {
    return tv_distance(normalize(a), b);
}

} // namespace padic
