#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "padic/generator.hpp"
#include "padic/matrix.hpp"
#include "padic/sampling.hpp"

namespace padic {

struct TrajectoryEvent {
    double time = 0.0;
    Signature state;
};

/// Piecewise-constant path of a jump process: the state at time 0, then one event
/// per jump that changed the state. Times strictly increase and consecutive states
/// differ.
class Trajectory {
public:
    explicit Trajectory(Signature initial);

    // Appends a jump. Same-state jumps are dropped; a jump at the time of the last
    // event replaces that event's state.
    void record(double time, const Signature& state);

    std::size_t n() const { return events_.front().state.size(); }
    const std::vector<TrajectoryEvent>& events() const { return events_; }
    const Signature& state_at(double time) const;

private:
    std::vector<TrajectoryEvent> events_;
};

struct WalkResult {
    Trajectory trajectory;
    // State at each requested record time.
    std::vector<Signature> records;
    std::size_t jumps = 0;
    // Matrix walk only.
    std::optional<PAdicMatrix> final_matrix;
    int precision = 0;
};

struct MatrixWalkOptions {
    // Mantissa digits; 0 picks automatically and doubles on PrecisionExhausted.
    int precision = 0;
    // Compute SN after every jump (full trajectory) rather than only at record times.
    bool track_jumps = true;
    bool keep_final_matrix = false;
    int max_escalations = 6;
};

// ceil(m) + 6 sqrt(m) + 16 digits for an expected jump count m.
int auto_precision_for_jumps(double expected_jumps);

/// Matrix-product jump process started at the identity: at each arrival of a rate-c
/// Poisson clock, X <- U diag(p^nu) V X with U, V fresh Haar elements of GL_N(Z_p)
/// and nu ~ M. Records SN(X) at each record time. Every random choice comes from
/// keyed streams, so a retry at higher precision replays the same process.
WalkResult matrix_walk_simulate(std::size_t n, std::int64_t p, const SignatureMeasure& measure, const Rational& rate,
                                std::span<const double> record_times, std::uint64_t seed,
                                const MatrixWalkOptions& options = {});

// Rate-1 walk with M = delta_{(1,0[N-1])}.
WalkResult canonical_process(std::size_t n, std::int64_t p, std::span<const double> record_times, std::uint64_t seed,
                             const MatrixWalkOptions& options = {});

// Clock `clock` (1-based) rings at kappa: kappa + e_j with j the smallest index <= clock
// such that kappa_j = kappa_clock.
Signature reflected_step(const Signature& kappa, std::size_t clock);

/// Reflected Poisson walk from (0[N]) driven by competing exponential clocks of
/// rates t, t^2, ..., t^N.
WalkResult reflected_walk_simulate(std::size_t n, const Rational& t, std::span<const double> record_times,
                                   std::uint64_t seed);

// Same process simulated by Gillespie's method on the generator rows.
WalkResult reflected_walk_gillespie(std::size_t n, const Rational& t, std::span<const double> record_times,
                                    std::uint64_t seed);

// Empirical law of SN(diag(p, 1[N-1]) U diag(p^kappa)) over Haar U. Sample s uses
// Haar stream (seed, s); `threads` only affects speed.
std::map<Signature, std::uint64_t> one_jump_mc(const Signature& kappa, std::int64_t p, std::size_t samples,
                                               std::uint64_t seed, unsigned threads = 1);

} // namespace padic
