#include "padic/processes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "padic/parallel.hpp"

namespace padic {

namespace {

void require_record_times(std::span<const double> times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0) || !std::isfinite(times[i]) || (i > 0 && times[i] < times[i - 1])) {
            throw InvalidInput("record times must be finite, nonnegative and sorted");
        }
    }
}

double horizon(std::span<const double> times) { return times.empty() ? 0.0 : times.back(); }

// Emits the current state for every record time strictly before `next_jump`.
struct RecordCursor {
    std::span<const double> times;
    std::size_t next = 0;

    template <class StateFn>
    void flush_before(double next_jump, std::vector<Signature>& out, StateFn&& state) {
        while (next < times.size() && times[next] < next_jump) {
            out.push_back(state());
            ++next;
        }
    }
};

std::vector<double> clock_rates(std::size_t n, const Rational& t) {
    if (t <= 0 || t >= 1) throw InvalidInput("t must lie strictly between 0 and 1");
    std::vector<double> rates(n);
    for (std::size_t i = 0; i < n; ++i) rates[i] = to_double(pow(t, static_cast<unsigned>(i + 1)));
    return rates;
}

} // namespace

Trajectory::Trajectory(Signature initial) { events_.push_back({0.0, std::move(initial)}); }

void Trajectory::record(double time, const Signature& state) {
    if (state.size() != n()) throw InvalidInput("trajectory state has the wrong length");
    auto& last = events_.back();
    if (time < last.time) throw InvalidInput("trajectory events must be recorded in time order");
    if (state == last.state) return;
    if (time == last.time && events_.size() > 1) {
        last.state = state;
        if (events_[events_.size() - 2].state == state) events_.pop_back();
        return;
    }
    events_.push_back({time, state});
}

const Signature& Trajectory::state_at(double time) const {
    const auto it = std::upper_bound(events_.begin(), events_.end(), time,
                                     [](double t, const TrajectoryEvent& e) { return t < e.time; });
    return it == events_.begin() ? events_.front().state : std::prev(it)->state;
}

int auto_precision_for_jumps(double expected_jumps) {
    const double m = std::max(0.0, expected_jumps);
    return static_cast<int>(std::ceil(m) + std::ceil(6.0 * std::sqrt(m))) + 16;
}

WalkResult matrix_walk_simulate(std::size_t n, std::int64_t p, const SignatureMeasure& measure, const Rational& rate,
                                std::span<const double> record_times, std::uint64_t seed,
                                const MatrixWalkOptions& options) {
    require_prime(p);
    if (n == 0) throw InvalidInput("N must be positive");
    if (measure.length() != n) throw InvalidInput("measure signatures must have length N");
    if (rate < 0) throw InvalidInput("Poisson rate must be nonnegative");
    require_record_times(record_times);

    const double max_time = horizon(record_times);
    const double rate_d = to_double(rate);
    const std::uint64_t time_seed = derive_seed(seed, "jump-times");
    const std::uint64_t measure_seed = derive_seed(seed, "jump-measure");
    const std::uint64_t haar_seed = derive_seed(seed, "jump-haar");

    std::vector<double> jump_times;
    if (rate_d > 0.0) {
        double time = 0.0;
        for (std::int64_t k = 0;; ++k) {
            time += stream_exponential(StreamKey{time_seed, k}, 0, rate_d);
            if (time > max_time) break;
            jump_times.push_back(time);
        }
    }
    std::vector<Signature> nus;
    nus.reserve(jump_times.size());
    int spread = 0;
    for (std::size_t k = 0; k < jump_times.size(); ++k) {
        nus.push_back(sample_signature(measure, StreamKey{measure_seed, static_cast<std::int64_t>(k)}));
        spread += nus.back()[0] - nus.back()[n - 1];
    }

    auto run = [&](int precision) {
        WalkResult out{Trajectory(Signature::zeros(n)), {}, jump_times.size(), std::nullopt, precision};
        PAdicMatrix x = PAdicMatrix::identity(n, p, precision);
        Signature current = Signature::zeros(n);
        bool stale = false;
        auto state = [&]() -> Signature {
            if (stale) {
                current = singular_numbers(x);
                stale = false;
            }
            return current;
        };
        RecordCursor cursor{record_times};
        for (std::size_t k = 0; k < jump_times.size(); ++k) {
            cursor.flush_before(jump_times[k], out.records, state);
            const auto event = static_cast<std::int64_t>(2 * k);
            const PAdicMatrix u = haar_gln_zp(haar_seed, event, p, n, precision);
            const PAdicMatrix v = haar_gln_zp(haar_seed, event + 1, p, n, precision);
            x = multiply(u, multiply(left_diag_multiply(nus[k], v), x));
            stale = true;
            if (options.track_jumps) out.trajectory.record(jump_times[k], state());
        }
        cursor.flush_before(std::numeric_limits<double>::infinity(), out.records, state);
        if (options.keep_final_matrix) out.final_matrix = std::move(x);
        return out;
    };

    int precision = options.precision > 0
                        ? options.precision
                        : std::max(auto_precision_for_jumps(rate_d * max_time), 16 + spread);
    for (int attempt = 0;; ++attempt) {
        try {
            return run(precision);
        } catch (const PrecisionExhausted&) {
            if (attempt >= options.max_escalations) throw;
            precision *= 2;
        }
    }
}

WalkResult canonical_process(std::size_t n, std::int64_t p, std::span<const double> record_times, std::uint64_t seed,
                             const MatrixWalkOptions& options) {
    return matrix_walk_simulate(n, p, SignatureMeasure::point_mass(Signature::single_box(n)), Rational(1), record_times,
                                seed, options);
}

Signature reflected_step(const Signature& kappa, std::size_t clock) {
    if (clock < 1 || clock > kappa.size()) {
        throw InvalidInput("clock index " + std::to_string(clock) + " outside 1.." + std::to_string(kappa.size()));
    }
    std::size_t j = clock - 1;
    while (j > 0 && kappa[j - 1] == kappa[clock - 1]) --j;
    return kappa.add_box(j);
}

WalkResult reflected_walk_simulate(std::size_t n, const Rational& t, std::span<const double> record_times,
                                   std::uint64_t seed) {
    if (n == 0) throw InvalidInput("N must be positive");
    require_record_times(record_times);
    const std::vector<double> rates = clock_rates(n, t);
    double total = 0.0;
    for (double r : rates) total += r;

    const std::uint64_t clock_seed = derive_seed(seed, "reflected-clocks");
    const double max_time = horizon(record_times);
    WalkResult out{Trajectory(Signature::zeros(n)), {}, 0, std::nullopt, 0};
    Signature state = Signature::zeros(n);
    RecordCursor cursor{record_times};
    double time = 0.0;
    for (std::int64_t k = 0;; ++k) {
        const StreamKey key{clock_seed, k};
        time += stream_exponential(key, 0, total);
        if (time > max_time) break;
        cursor.flush_before(time, out.records, [&] { return state; });
        const double u = stream_uniform(key, 1) * total;
        std::size_t clock = n;
        double cumulative = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cumulative += rates[i];
            if (u < cumulative) {
                clock = i + 1;
                break;
            }
        }
        state = reflected_step(state, clock);
        out.trajectory.record(time, state);
        ++out.jumps;
    }
    cursor.flush_before(std::numeric_limits<double>::infinity(), out.records, [&] { return state; });
    return out;
}

WalkResult reflected_walk_gillespie(std::size_t n, const Rational& t, std::span<const double> record_times,
                                    std::uint64_t seed) {
    if (n == 0) throw InvalidInput("N must be positive");
    require_record_times(record_times);
    const std::uint64_t gillespie_seed = derive_seed(seed, "reflected-gillespie");
    const double max_time = horizon(record_times);
    WalkResult out{Trajectory(Signature::zeros(n)), {}, 0, std::nullopt, 0};
    Signature state = Signature::zeros(n);
    RecordCursor cursor{record_times};
    double time = 0.0;
    for (std::int64_t k = 0;; ++k) {
        const auto row = reflected_walk_rates(state, t);
        std::vector<double> rates;
        double total = 0.0;
        for (const auto& tr : row) {
            rates.push_back(to_double(tr.rate));
            total += rates.back();
        }
        const StreamKey key{gillespie_seed, k};
        time += stream_exponential(key, 0, total);
        if (time > max_time) break;
        cursor.flush_before(time, out.records, [&] { return state; });
        const double u = stream_uniform(key, 1) * total;
        std::size_t pick = row.size() - 1;
        double cumulative = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) {
            cumulative += rates[i];
            if (u < cumulative) {
                pick = i;
                break;
            }
        }
        state = row[pick].target;
        out.trajectory.record(time, state);
        ++out.jumps;
    }
    cursor.flush_before(std::numeric_limits<double>::infinity(), out.records, [&] { return state; });
    return out;
}

std::map<Signature, std::uint64_t> one_jump_mc(const Signature& kappa, std::int64_t p, std::size_t samples,
                                               std::uint64_t seed, unsigned threads) {
    require_prime(p);
    const std::size_t n = kappa.size();
    if (n == 0) throw InvalidInput("empty signature");
    std::vector<int> top(n, 0);
    top[0] = 1;
    const int base_precision = kappa[0] - kappa[n - 1] + 12;

    std::vector<Signature> results(samples);
    parallel_for(samples, threads, [&](std::size_t s) {
        int precision = base_precision;
        for (int attempt = 0;; ++attempt) {
            try {
                const PAdicMatrix u = haar_gln_zp(seed, static_cast<std::int64_t>(s), p, n, precision);
                results[s] = singular_numbers(right_diag_multiply(left_diag_multiply(top, u), kappa));
                return;
            } catch (const PrecisionExhausted&) {
                if (attempt >= 6) throw;
                precision *= 2;
            }
        }
    });
    std::map<Signature, std::uint64_t> counts;
    for (auto& s : results) ++counts[s];
    return counts;
}

} // namespace padic
