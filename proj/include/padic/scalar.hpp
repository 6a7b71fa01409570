#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>

#include "padic/errors.hpp"

namespace padic {

using Digit = std::uint32_t;
using DigitVector = boost::container::small_vector<Digit, 24>;

inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

// Largest prime accepted. Keeps digit products and carries inside 64 bits.
inline constexpr std::int64_t kMaxPrime = (std::int64_t{1} << 31) - 1;

bool is_prime(std::int64_t n);

// Throws InvalidInput unless p is a prime no larger than kMaxPrime.
void require_prime(std::int64_t p);

// Indistinguishable from 0 at the precision of the computation that produced it.
// The true value lies in p^certified_min_valuation * Z_p.
struct ZeroAtPrecision {
    std::int64_t prime = 0;
    int certified_min_valuation = 0;

    friend bool operator==(const ZeroAtPrecision&, const ZeroAtPrecision&) = default;
};

// Result of valuation_of(). For zero-at-precision inputs `value` is only a lower
// bound and `certified` is false.
struct Valuation {
    int value = kInfiniteValuation;
    bool certified = true;

    bool infinite() const { return value == kInfiniteValuation; }
    friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// Truncated element of Q_p, stored as p^valuation * (unit mantissa mod p^precision).
///
/// Three states share the type:
///   - certified nonzero: finite valuation, `precision` digits with digits[0] != 0;
///   - exact zero: valuation infinite, no digits;
///   - zero at precision: no digits, `valuation` holds the certified lower bound
///     (see ZeroAtPrecision). Only arithmetic produces this state.
class PAdicScalar {
public:
    static PAdicScalar from_integer(std::int64_t k, std::int64_t p, int precision);
    static PAdicScalar exact_zero(std::int64_t p, int precision = 1);
    static PAdicScalar zero_at_precision(std::int64_t p, int certified_min_valuation);

    // p^k with a unit mantissa of `precision` digits.
    static PAdicScalar power_of_p(std::int64_t p, int k, int precision);

    // Value p^shift * sum raw[i] p^i, known modulo p^(shift + raw.size()).
    // Leading zero digits are absorbed into the valuation; all-zero input yields
    // a zero-at-precision value.
    static PAdicScalar from_raw_digits(std::int64_t p, int shift, std::span<const Digit> raw);

    // Validated constructor for the canonical form. `digits` must be a unit mantissa.
    static PAdicScalar from_unit(std::int64_t p, int valuation, std::span<const Digit> digits);

    std::int64_t prime() const { return prime_; }
    int valuation() const { return valuation_; }
    int precision() const { return precision_; }
    std::span<const Digit> digits() const { return {digits_.data(), digits_.size()}; }

    bool is_exact_zero() const { return digits_.empty() && valuation_ == kInfiniteValuation; }
    bool is_zero_at_precision() const { return digits_.empty() && valuation_ != kInfiniteValuation; }
    bool is_nonzero() const { return !digits_.empty(); }

    std::optional<ZeroAtPrecision> zero_info() const;

    // Exponent e such that the value is known modulo p^e; infinite for exact zero.
    int absolute_precision() const;

    // The unit mantissa as an integer in [0, p^precision). Requires it to fit.
    std::uint64_t unit_value() const;

    // Value modulo p^k as an integer in [0, p^k) for values in Z_p known to at least
    // that precision. Throws PrecisionExhausted when the digits are not available.
    std::uint64_t residue(int k) const;

    std::string to_string() const;

    friend bool operator==(const PAdicScalar&, const PAdicScalar&) = default;

private:
    friend PAdicScalar neg(const PAdicScalar&);
    friend PAdicScalar mul(const PAdicScalar&, const PAdicScalar&);
    friend PAdicScalar inv(const PAdicScalar&);
    friend PAdicScalar shift(const PAdicScalar&, int);

    PAdicScalar(std::int64_t p, int valuation, int precision, DigitVector digits)
        : prime_(p), valuation_(valuation), precision_(precision), digits_(std::move(digits)) {}

    std::int64_t prime_ = 2;
    int valuation_ = kInfiniteValuation;
    int precision_ = 1;
    DigitVector digits_;
};

PAdicScalar add(const PAdicScalar& a, const PAdicScalar& b);
PAdicScalar sub(const PAdicScalar& a, const PAdicScalar& b);
PAdicScalar mul(const PAdicScalar& a, const PAdicScalar& b);
PAdicScalar neg(const PAdicScalar& a);
PAdicScalar inv(const PAdicScalar& a);
PAdicScalar div(const PAdicScalar& a, const PAdicScalar& b);

// Multiply by p^k; exact.
PAdicScalar shift(const PAdicScalar& a, int k);

Valuation valuation_of(const PAdicScalar& a);

inline PAdicScalar operator+(const PAdicScalar& a, const PAdicScalar& b) { return add(a, b); }
inline PAdicScalar operator-(const PAdicScalar& a, const PAdicScalar& b) { return sub(a, b); }
inline PAdicScalar operator*(const PAdicScalar& a, const PAdicScalar& b) { return mul(a, b); }
inline PAdicScalar operator-(const PAdicScalar& a) { return neg(a); }

} // namespace padic
