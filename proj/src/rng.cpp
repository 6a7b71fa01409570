#include "padic/rng.hpp"

#include <cmath>
#include <limits>

namespace padic {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t absorb(std::uint64_t state, std::uint64_t word) { return mix(state + kGolden + mix(word)); }

} // namespace

std::uint64_t stream_word(const StreamKey& key, std::uint64_t index, std::uint64_t attempt) {
    std::uint64_t h = mix(key.seed ^ 0x243f6a8885a308d3ULL);
    h = absorb(h, static_cast<std::uint64_t>(key.event_index));
    h = absorb(h, static_cast<std::uint64_t>(key.row));
    h = absorb(h, static_cast<std::uint64_t>(key.col));
    h = absorb(h, key.lane);
    h = absorb(h, index);
    h = absorb(h, attempt);
    return mix(h);
}

Digit stream_digit(const StreamKey& key, std::int64_t p, std::uint64_t index) {
    const auto up = static_cast<std::uint64_t>(p);
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % up;
    for (std::uint64_t attempt = 0;; ++attempt) {
        const std::uint64_t w = stream_word(key, index, attempt);
        if (w < limit) return static_cast<Digit>(w % up);
    }
}

std::uint64_t stream_bits53(const StreamKey& key, std::uint64_t index) { return stream_word(key, index) >> 11; }

double stream_uniform(const StreamKey& key, std::uint64_t index) {
    return static_cast<double>(stream_bits53(key, index)) * 0x1.0p-53;
}

double stream_exponential(const StreamKey& key, std::uint64_t index, double rate) {
    // 1 - u lies in (0, 1], so the logarithm is finite.
    return -std::log1p(-stream_uniform(key, index)) / rate;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) { return mix(absorb(mix(seed), index) ^ kGolden); }

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
    // FNV-1a over the tag, then mixed with the parent seed.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix(absorb(mix(seed ^ 0x5851f42d4c957f2dULL), h));
}

} // namespace padic
