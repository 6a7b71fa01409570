#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "padic/matrix.hpp"
#include "padic/rational.hpp"
#include "padic/rng.hpp"
#include "padic/signature.hpp"

namespace padic {

inline constexpr std::uint64_t kMaxSamplerRetries = 1'000'000;

// Haar-uniform element of Z_p with `precision` digits. Digit i depends only on
// (key, i), so raising the precision extends the value without changing it.
PAdicScalar uniform_zp(const StreamKey& key, std::int64_t p, int precision);

/// Haar sample from GL_N(Z_p) built column by column, right to left.
///
/// Column j's reduction mod p is redrawn until it leaves the span of the columns
/// already placed to its right; digits 1.. are unconditioned uniform. Entry (i, j)
/// reads its higher digits from lane 0 of key (seed, event_index, i, j) and its digit 0
/// from lane 1 + retry, which keeps samples prefix-consistent across precisions.
PAdicMatrix haar_gln_zp(std::uint64_t seed, std::int64_t event_index, std::int64_t p, std::size_t n, int precision);

struct RejectionDraw {
    PAdicMatrix matrix;
    std::uint64_t attempts = 0;
};

// Whole-matrix rejection: uniform entries, retried until invertible mod p.
// Independent reference for haar_gln_zp.
RejectionDraw haar_rejection_draw(std::uint64_t seed, std::int64_t event_index, std::int64_t p, std::size_t n,
                                  int precision);
PAdicMatrix haar_rejection(std::uint64_t seed, std::int64_t event_index, std::int64_t p, std::size_t n, int precision);

// Finite-support probability measure on Sig_N with exact weights.
class SignatureMeasure {
public:
    // Throws InvalidInput unless weights are positive, sum to exactly 1 and all
    // signatures have the same length.
    explicit SignatureMeasure(std::vector<std::pair<Signature, Rational>> support);

    static SignatureMeasure point_mass(const Signature& s);

    const std::vector<std::pair<Signature, Rational>>& support() const { return support_; }
    std::size_t length() const { return support_.front().first.size(); }

private:
    std::vector<std::pair<Signature, Rational>> support_;
};

// Inverse-CDF draw; the uniform k/2^53 is compared exactly against the weights.
Signature sample_signature(const SignatureMeasure& measure, const StreamKey& key);

} // namespace padic
