#pragma once

#include <cstdint>
#include <string_view>

#include "padic/scalar.hpp"

namespace padic {

/// Address of a random stream. Every draw is a pure function of (key, index), so
/// streams can be sampled in any order, from any thread, at any precision.
///
/// `lane` separates sub-streams that share an entry address (rejection retries of
/// the Haar sampler, for instance).
struct StreamKey {
    std::uint64_t seed = 0;
    std::int64_t event_index = 0;
    std::int64_t row = 0;
    std::int64_t col = 0;
    std::uint64_t lane = 0;
};

// Counter-based generator: a keyed 64-bit hash of (key, index, attempt).
std::uint64_t stream_word(const StreamKey& key, std::uint64_t index, std::uint64_t attempt = 0);

// Uniform digit in [0, p) for position `index` of the keyed stream.
Digit stream_digit(const StreamKey& key, std::int64_t p, std::uint64_t index);

// k / 2^53 with k uniform in [0, 2^53).
std::uint64_t stream_bits53(const StreamKey& key, std::uint64_t index);
double stream_uniform(const StreamKey& key, std::uint64_t index);

// Exponential variate with the given rate, by inversion.
double stream_exponential(const StreamKey& key, std::uint64_t index, double rate);

// Independent child seed, e.g. one per sample index or per purpose tag.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);

} // namespace padic
