#include "padic/uniformization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "padic/errors.hpp"

namespace padic {

namespace {

// Uniformized jump kernel in floating point. Slot `size()` is the absorbing
// boundary state collecting mass that leaves the truncation.
class JumpKernel {
public:
    JumpKernel(const GeneratorMatrix& g, const Rational& rate_scale) : states_(g.size()) {
        if (rate_scale < 0) throw InvalidInput("rate scale must be nonnegative");
        Rational max_exit = 0;
        for (std::size_t i = 0; i < g.size(); ++i) max_exit = std::max(max_exit, Rational(-g.diagonal(i)));
        const Rational lambda = max_exit * rate_scale;
        lambda_ = to_double(lambda);
        rows_.resize(states_);
        self_.assign(states_, 1.0);
        if (lambda == 0) return;
        const Rational factor = rate_scale / lambda;
        for (std::size_t i = 0; i < states_; ++i) {
            self_[i] = to_double(1 + factor * g.diagonal(i));
            for (const auto& tr : g.row(i)) {
                const auto j = g.index_of(tr.target);
                rows_[i].emplace_back(j ? *j : states_, to_double(factor * tr.rate));
            }
        }
    }

    double lambda() const { return lambda_; }
    std::size_t slots() const { return states_ + 1; }

    std::vector<double> step(const std::vector<double>& v) const {
        std::vector<double> out(slots(), 0.0);
        out[states_] = v[states_];
        for (std::size_t i = 0; i < states_; ++i) {
            if (v[i] == 0.0) continue;
            out[i] += v[i] * self_[i];
            for (const auto& [j, w] : rows_[i]) out[j] += v[i] * w;
        }
        return out;
    }

    // Law at time tau from the given slot; returns slots() entries and the term count.
    std::pair<std::vector<double>, int> propagate(std::size_t start, double tau, double tail_eps) const {
        std::vector<double> v(slots(), 0.0);
        v[start] = 1.0;
        const double mean = lambda_ * tau;
        if (mean == 0.0) return {v, 1};
        std::vector<double> result(slots(), 0.0);
        double cumulative = 0.0;
        const int limit = static_cast<int>(mean + 60.0 * std::sqrt(mean) + 1000.0);
        int k = 0;
        for (;; ++k) {
            const double w = std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
            for (std::size_t i = 0; i < v.size(); ++i) result[i] += w * v[i];
            cumulative += w;
            // Summing well past tail_eps keeps the leftover placement below the tolerance.
            if ((1.0 - cumulative < 1e-3 * tail_eps && k >= mean) || k >= limit) break;
            v = step(v);
        }
        const double leftover = std::max(0.0, 1.0 - cumulative);
        for (std::size_t i = 0; i < v.size(); ++i) result[i] += leftover * v[i];
        return {std::move(result), k + 1};
    }

private:
    std::size_t states_;
    double lambda_ = 0.0;
    std::vector<std::vector<std::pair<std::size_t, double>>> rows_;
    std::vector<double> self_;
};

std::size_t require_state(const GeneratorMatrix& g, const Signature& s) {
    const auto i = g.index_of(s);
    if (!i) throw InvalidInput("initial state " + s.to_string() + " is outside the truncated state space");
    return *i;
}

void check_boundary(double boundary, double tail_eps, int max_weight) {
    if (boundary > tail_eps) {
        throw TruncationTooSmall("boundary mass " + std::to_string(boundary) + " past |kappa| = " +
                                 std::to_string(max_weight) + " exceeds tolerance " + std::to_string(tail_eps));
    }
}

} // namespace

FiniteTimeLaw finite_time_distribution(const GeneratorMatrix& g, const Rational& rate_scale, double tau,
                                       const Signature& init, double tail_eps) {
    if (!(tau >= 0.0)) throw InvalidInput("time must be nonnegative");
    const std::size_t start = require_state(g, init);
    const JumpKernel kernel(g, rate_scale);
    auto [vec, terms] = kernel.propagate(start, tau, tail_eps);
    FiniteTimeLaw out;
    out.terms = terms;
    out.boundary_mass = vec[g.size()];
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (vec[i] > 0.0) out.law.emplace(g.states()[i], vec[i]);
    }
    check_boundary(out.boundary_mass, tail_eps, g.max_weight());
    return out;
}

MultiTimeLaw multi_time_distribution(const GeneratorMatrix& g, const Rational& rate_scale,
                                     std::span<const double> times, const Signature& init, double tail_eps) {
    if (times.empty()) throw InvalidInput("at least one time is required");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1])) {
            throw InvalidInput("times must be sorted and nonnegative");
        }
    }
    const std::size_t start = require_state(g, init);
    const JumpKernel kernel(g, rate_scale);

    // Partial tuples keyed by state-index path.
    std::map<std::vector<std::size_t>, double> current{{{}, 1.0}};
    double boundary = 0.0;
    double previous_time = 0.0;
    for (double time : times) {
        const double dt = time - previous_time;
        std::map<std::size_t, std::vector<double>> cache;
        std::map<std::vector<std::size_t>, double> next;
        for (const auto& [path, mass] : current) {
            const std::size_t from = path.empty() ? start : path.back();
            auto it = cache.find(from);
            if (it == cache.end()) it = cache.emplace(from, kernel.propagate(from, dt, tail_eps).first).first;
            const auto& law = it->second;
            boundary += mass * law[g.size()];
            for (std::size_t j = 0; j < g.size(); ++j) {
                if (law[j] <= 0.0) continue;
                auto extended = path;
                extended.push_back(j);
                next[extended] += mass * law[j];
            }
        }
        current = std::move(next);
        previous_time = time;
    }

    MultiTimeLaw out;
    out.boundary_mass = boundary;
    for (const auto& [path, mass] : current) {
        std::vector<Signature> tuple;
        tuple.reserve(path.size());
        for (std::size_t j : path) tuple.push_back(g.states()[j]);
        out.law.emplace(std::move(tuple), mass);
    }
    check_boundary(boundary, tail_eps, g.max_weight());
    return out;
}

int truncation_for_poisson_tail(double mean, double tail) {
    if (mean <= 0.0) return 1;
    double cumulative = 0.0;
    for (int k = 0;; ++k) {
        cumulative += std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
        if (1.0 - cumulative < tail) return std::max(k, 1);
        if (k > 100000) return k;
    }
}

} // namespace padic
