#pragma once

#include <map>
#include <span>
#include <vector>

#include "padic/generator.hpp"

namespace padic {

inline constexpr double kDefaultTailEps = 1e-10;

struct FiniteTimeLaw {
    std::map<Signature, double> law;
    // Mass that left the truncated state space by time tau.
    double boundary_mass = 0.0;
    // Number of Poisson terms summed.
    int terms = 0;
};

/// Law at time tau of the chain with generator rate_scale * G, started at init.
///
/// Uniformization: with Lambda = rate_scale * max |G(k,k)| and jump kernel
/// J = I + (rate_scale / Lambda) G, the law is sum_k Poisson(Lambda tau; k) init J^k.
/// The series stops once the Poisson tail drops below tail_eps; the leftover tail
/// weight is placed on the last term, so law + boundary mass sums to 1.
/// Throws TruncationTooSmall when the boundary mass exceeds tail_eps.
FiniteTimeLaw finite_time_distribution(const GeneratorMatrix& g, const Rational& rate_scale, double tau,
                                       const Signature& init, double tail_eps = kDefaultTailEps);

struct MultiTimeLaw {
    std::map<std::vector<Signature>, double> law;
    double boundary_mass = 0.0;
};

// Joint law of the states at the sorted `times`, chained through the Markov
// property. Same error contract as finite_time_distribution, applied to the total
// boundary mass.
MultiTimeLaw multi_time_distribution(const GeneratorMatrix& g, const Rational& rate_scale, std::span<const double> times,
                                     const Signature& init, double tail_eps = kDefaultTailEps);

// Smallest K with P(Poisson(mean) > K) < tail: a truncation weight for a chain that
// adds one box per jump and makes `mean` jumps on average.
int truncation_for_poisson_tail(double mean, double tail);

} // namespace padic
