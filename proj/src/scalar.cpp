#include "padic/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace padic {

namespace {

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = a % m, r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    // old_r == gcd; callers only pass units.
    return ((old_s % m) + m) % m;
}

void require_same_prime(const PAdicScalar& a, const PAdicScalar& b) {
    if (a.prime() != b.prime()) {
        throw PrimeMismatch("p-adic operands over primes " + std::to_string(a.prime()) + " and " +
                            std::to_string(b.prime()));
    }
}

// acc += digits * p^offset, truncated to acc.size() digits.
void accumulate(DigitVector& acc, std::span<const Digit> digits, std::size_t offset, std::uint64_t p) {
    std::uint64_t carry = 0;
    std::size_t pos = offset;
    for (std::size_t i = 0; pos < acc.size(); ++i, ++pos) {
        const std::uint64_t d = i < digits.size() ? digits[i] : 0;
        if (i >= digits.size() && carry == 0) break;
        const std::uint64_t t = acc[pos] + d + carry;
        acc[pos] = static_cast<Digit>(t % p);
        carry = t / p;
    }
}

// (a * b) mod p^n over little-endian digit arrays.
DigitVector multiply_digits(std::span<const Digit> a, std::span<const Digit> b, std::size_t n, std::uint64_t p) {
    DigitVector out(n, 0);
    for (std::size_t i = 0; i < n && i < a.size(); ++i) {
        const std::uint64_t ai = a[i];
        if (ai == 0) continue;
        std::uint64_t carry = 0;
        for (std::size_t j = 0; i + j < n; ++j) {
            const std::uint64_t bj = j < b.size() ? b[j] : 0;
            const std::uint64_t t = out[i + j] + ai * bj + carry;
            out[i + j] = static_cast<Digit>(t % p);
            carry = t / p;
        }
    }
    return out;
}

} // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

void require_prime(std::int64_t p) {
    if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
    if (p > kMaxPrime) throw InvalidInput("prime " + std::to_string(p) + " exceeds supported range");
}

PAdicScalar PAdicScalar::from_integer(std::int64_t k, std::int64_t p, int precision) {
    require_prime(p);
    if (precision < 1) throw InvalidInput("precision must be at least 1");
    if (k == 0) return exact_zero(p, precision);

    const bool negative = k < 0;
    std::uint64_t magnitude = negative ? std::uint64_t{0} - static_cast<std::uint64_t>(k) : static_cast<std::uint64_t>(k);
    const auto up = static_cast<std::uint64_t>(p);
    int valuation = 0;
    while (magnitude % up == 0) {
        magnitude /= up;
        ++valuation;
    }
    DigitVector digits(static_cast<std::size_t>(precision), 0);
    for (auto& d : digits) {
        d = static_cast<Digit>(magnitude % up);
        magnitude /= up;
    }
    PAdicScalar out(p, valuation, precision, std::move(digits));
    return negative ? neg(out) : out;
}

PAdicScalar PAdicScalar::exact_zero(std::int64_t p, int precision) {
    return PAdicScalar(p, kInfiniteValuation, precision, {});
}

PAdicScalar PAdicScalar::zero_at_precision(std::int64_t p, int certified_min_valuation) {
    return PAdicScalar(p, certified_min_valuation, 0, {});
}

PAdicScalar PAdicScalar::power_of_p(std::int64_t p, int k, int precision) {
    DigitVector digits(static_cast<std::size_t>(precision), 0);
    digits[0] = 1;
    return PAdicScalar(p, k, precision, std::move(digits));
}

PAdicScalar PAdicScalar::from_raw_digits(std::int64_t p, int shift, std::span<const Digit> raw) {
    const auto first = std::find_if(raw.begin(), raw.end(), [](Digit d) { return d != 0; });
    if (first == raw.end()) return zero_at_precision(p, shift + static_cast<int>(raw.size()));
    const auto k = static_cast<int>(first - raw.begin());
    DigitVector digits(first, raw.end());
    const auto precision = static_cast<int>(digits.size());
    return PAdicScalar(p, shift + k, precision, std::move(digits));
}

PAdicScalar PAdicScalar::from_unit(std::int64_t p, int valuation, std::span<const Digit> digits) {
    require_prime(p);
    if (digits.empty()) throw InvalidInput("unit mantissa must have at least one digit");
    if (digits[0] == 0) throw InvalidInput("unit mantissa must have a nonzero first digit");
    for (Digit d : digits) {
        if (static_cast<std::int64_t>(d) >= p) throw InvalidInput("digit out of range for base " + std::to_string(p));
    }
    return PAdicScalar(p, valuation, static_cast<int>(digits.size()), DigitVector(digits.begin(), digits.end()));
}

std::optional<ZeroAtPrecision> PAdicScalar::zero_info() const {
    if (!is_zero_at_precision()) return std::nullopt;
    return ZeroAtPrecision{prime_, valuation_};
}

int PAdicScalar::absolute_precision() const {
    if (is_exact_zero()) return kInfiniteValuation;
    if (is_zero_at_precision()) return valuation_;
    return valuation_ + precision_;
}

std::uint64_t PAdicScalar::unit_value() const {
    std::uint64_t value = 0;
    std::uint64_t place = 1;
    const auto up = static_cast<std::uint64_t>(prime_);
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        value += digits_[i] * place;
        if (i + 1 < digits_.size()) {
            if (place > std::numeric_limits<std::uint64_t>::max() / up) throw std::overflow_error("mantissa exceeds 64 bits");
            place *= up;
        }
    }
    return value;
}

std::uint64_t PAdicScalar::residue(int k) const {
    if (is_exact_zero()) return 0;
    if (absolute_precision() < k) throw PrecisionExhausted("value not known modulo p^" + std::to_string(k));
    if (is_zero_at_precision()) return 0;
    if (valuation_ < 0) throw InvalidInput("residue requested for a non-integral p-adic value");
    const auto up = static_cast<std::uint64_t>(prime_);
    std::uint64_t value = 0;
    std::uint64_t place = 1;
    for (int e = 0; e < k; ++e) {
        const int i = e - valuation_;
        if (i >= 0) value += digits_[static_cast<std::size_t>(i)] * place;
        if (e + 1 < k) {
            if (place > std::numeric_limits<std::uint64_t>::max() / up) throw std::overflow_error("residue exceeds 64 bits");
            place *= up;
        }
    }
    return value;
}

std::string PAdicScalar::to_string() const {
    std::ostringstream os;
    if (is_exact_zero()) return "0";
    if (is_zero_at_precision()) {
        os << "O(" << prime_ << "^" << valuation_ << ")";
        return os.str();
    }
    os << prime_ << "^" << valuation_ << "*[";
    for (std::size_t i = 0; i < digits_.size(); ++i) os << (i ? " " : "") << digits_[i];
    os << "]";
    return os.str();
}

PAdicScalar add(const PAdicScalar& a, const PAdicScalar& b) {
    require_same_prime(a, b);
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;

    const int abs_prec = std::min(a.absolute_precision(), b.absolute_precision());
    int low = abs_prec;
    if (a.is_nonzero()) low = std::min(low, a.valuation());
    if (b.is_nonzero()) low = std::min(low, b.valuation());
    if (low >= abs_prec) return PAdicScalar::zero_at_precision(a.prime(), abs_prec);

    const auto p = static_cast<std::uint64_t>(a.prime());
    DigitVector sum(static_cast<std::size_t>(abs_prec - low), 0);
    for (const PAdicScalar* x : {&a, &b}) {
        if (!x->is_nonzero()) continue;
        accumulate(sum, x->digits(), static_cast<std::size_t>(x->valuation() - low), p);
    }
    return PAdicScalar::from_raw_digits(a.prime(), low, {sum.data(), sum.size()});
}

PAdicScalar sub(const PAdicScalar& a, const PAdicScalar& b) { return add(a, neg(b)); }

PAdicScalar neg(const PAdicScalar& a) {
    if (!a.is_nonzero()) return a;
    const auto p = static_cast<Digit>(a.prime());
    DigitVector digits(a.digits().begin(), a.digits().end());
    digits[0] = p - digits[0];
    for (std::size_t i = 1; i < digits.size(); ++i) digits[i] = p - 1 - digits[i];
    return PAdicScalar(a.prime(), a.valuation(), a.precision(), std::move(digits));
}

PAdicScalar mul(const PAdicScalar& a, const PAdicScalar& b) {
    require_same_prime(a, b);
    if (a.is_exact_zero() || b.is_exact_zero()) return PAdicScalar::exact_zero(a.prime(), std::min(a.precision(), b.precision()));
    if (!a.is_nonzero() || !b.is_nonzero()) {
        return PAdicScalar::zero_at_precision(a.prime(), a.valuation() + b.valuation());
    }
    const auto n = static_cast<std::size_t>(std::min(a.precision(), b.precision()));
    DigitVector digits = multiply_digits(a.digits(), b.digits(), n, static_cast<std::uint64_t>(a.prime()));
    return PAdicScalar(a.prime(), a.valuation() + b.valuation(), static_cast<int>(n), std::move(digits));
}

PAdicScalar inv(const PAdicScalar& a) {
    if (!a.is_nonzero()) throw DivisionByZero("inverse of a p-adic zero");
    const auto p = static_cast<std::uint64_t>(a.prime());
    const auto u = a.digits();
    const std::size_t n = u.size();
    const auto u0_inverse = static_cast<std::uint64_t>(mod_inverse(u[0], a.prime()));

    // Hensel lifting one digit at a time; `acc` tracks u * w mod p^n.
    DigitVector w(n, 0);
    DigitVector acc(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t target = i == 0 ? 1 : 0;
        const std::uint64_t wi = ((target + p - acc[i]) % p) * u0_inverse % p;
        w[i] = static_cast<Digit>(wi);
        if (wi == 0) continue;
        std::uint64_t carry = 0;
        for (std::size_t j = 0; i + j < n; ++j) {
            const std::uint64_t t = acc[i + j] + wi * u[j] + carry;
            acc[i + j] = static_cast<Digit>(t % p);
            carry = t / p;
        }
    }
    return PAdicScalar(a.prime(), -a.valuation(), a.precision(), std::move(w));
}

PAdicScalar div(const PAdicScalar& a, const PAdicScalar& b) {
    require_same_prime(a, b);
    return mul(a, inv(b));
}

PAdicScalar shift(const PAdicScalar& a, int k) {
    if (a.is_exact_zero()) return a;
    if (a.is_zero_at_precision()) return PAdicScalar::zero_at_precision(a.prime(), a.valuation() + k);
    return PAdicScalar(a.prime(), a.valuation() + k, a.precision(), DigitVector(a.digits().begin(), a.digits().end()));
}

Valuation valuation_of(const PAdicScalar& a) {
    if (a.is_zero_at_precision()) return Valuation{a.valuation(), false};
    return Valuation{a.valuation(), true};
}

} // namespace padic
