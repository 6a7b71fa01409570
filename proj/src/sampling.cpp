#include "padic/sampling.hpp"

#include <string>

namespace padic {

namespace {

std::uint64_t inverse_mod(std::uint64_t x, std::uint64_t p) {
    std::uint64_t result = 1, base = x % p, e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

// Row-reduced basis of a subspace of F_p^n, grown one vector at a time.
class ModPSpan {
public:
    ModPSpan(std::size_t n, std::uint64_t p) : n_(n), p_(p) {}

    // Adds v if it is outside the span; returns whether it was added.
    bool try_insert(std::vector<std::uint64_t> v) {
        for (std::size_t b = 0; b < basis_.size(); ++b) {
            const std::uint64_t f = v[pivots_[b]];
            if (f == 0) continue;
            for (std::size_t i = 0; i < n_; ++i) v[i] = (v[i] + (p_ - f) * basis_[b][i]) % p_;
        }
        std::size_t pivot = 0;
        while (pivot < n_ && v[pivot] == 0) ++pivot;
        if (pivot == n_) return false;
        const std::uint64_t scale = inverse_mod(v[pivot], p_);
        for (auto& x : v) x = x * scale % p_;
        // Keep the basis fully reduced at its pivot columns.
        for (std::size_t b = 0; b < basis_.size(); ++b) {
            const std::uint64_t f = basis_[b][pivot];
            if (f == 0) continue;
            for (std::size_t i = 0; i < n_; ++i) basis_[b][i] = (basis_[b][i] + (p_ - f) * v[i]) % p_;
        }
        basis_.push_back(std::move(v));
        pivots_.push_back(pivot);
        return true;
    }

private:
    std::size_t n_;
    std::uint64_t p_;
    std::vector<std::vector<std::uint64_t>> basis_;
    std::vector<std::size_t> pivots_;
};

} // namespace

PAdicScalar uniform_zp(const StreamKey& key, std::int64_t p, int precision) {
    DigitVector raw(static_cast<std::size_t>(precision));
    for (int i = 0; i < precision; ++i) raw[static_cast<std::size_t>(i)] = stream_digit(key, p, static_cast<std::uint64_t>(i));
    return PAdicScalar::from_raw_digits(p, 0, {raw.data(), raw.size()});
}

PAdicMatrix haar_gln_zp(std::uint64_t seed, std::int64_t event_index, std::int64_t p, std::size_t n, int precision) {
    require_prime(p);
    if (n == 0) throw InvalidInput("matrix size must be positive");
    if (precision < 1) throw InvalidInput("precision must be at least 1");
    const auto up = static_cast<std::uint64_t>(p);
    PAdicMatrix out(n, n, p, precision);
    ModPSpan span(n, up);
    std::uint64_t retries = 0;
    DigitVector raw(static_cast<std::size_t>(precision));
    for (std::size_t jj = n; jj-- > 0;) {
        const auto col = static_cast<std::int64_t>(jj);
        std::vector<std::uint64_t> low(n);
        for (std::uint64_t attempt = 0;; ++attempt) {
            for (std::size_t i = 0; i < n; ++i) {
                const StreamKey key{seed, event_index, static_cast<std::int64_t>(i), col, 1 + attempt};
                low[i] = stream_digit(key, p, 0);
            }
            if (span.try_insert(low)) break;
            if (++retries >= kMaxSamplerRetries) throw SamplerStuck("haar_gln_zp exceeded the retry cap");
        }
        for (std::size_t i = 0; i < n; ++i) {
            const StreamKey key{seed, event_index, static_cast<std::int64_t>(i), col, 0};
            raw[0] = static_cast<Digit>(low[i]);
            for (int d = 1; d < precision; ++d) raw[static_cast<std::size_t>(d)] = stream_digit(key, p, static_cast<std::uint64_t>(d));
            out(i, jj) = PAdicScalar::from_raw_digits(p, 0, {raw.data(), raw.size()});
        }
    }
    return out;
}

RejectionDraw haar_rejection_draw(std::uint64_t seed, std::int64_t event_index, std::int64_t p, std::size_t n,
                                  int precision) {
    require_prime(p);
    if (n == 0) throw InvalidInput("matrix size must be positive");
    if (precision < 1) throw InvalidInput("precision must be at least 1");
    for (std::uint64_t attempt = 0; attempt < kMaxSamplerRetries; ++attempt) {
        std::vector<std::uint32_t> low(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const StreamKey key{seed, event_index, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), attempt};
                low[i * n + j] = stream_digit(key, p, 0);
            }
        }
        if (rank_mod_p(low, n, n, static_cast<std::uint32_t>(p)) != n) continue;
        PAdicMatrix out(n, n, p, precision);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const StreamKey key{seed, event_index, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), attempt};
                out(i, j) = uniform_zp(key, p, precision);
            }
        }
        return {std::move(out), attempt + 1};
    }
    throw SamplerStuck("haar_rejection exceeded the retry cap");
}

PAdicMatrix haar_rejection(std::uint64_t seed, std::int64_t event_index, std::int64_t p, std::size_t n, int precision) {
    return haar_rejection_draw(seed, event_index, p, n, precision).matrix;
}

SignatureMeasure::SignatureMeasure(std::vector<std::pair<Signature, Rational>> support) : support_(std::move(support)) {
    if (support_.empty()) throw InvalidInput("measure has empty support");
    Rational total = 0;
    const std::size_t len = support_.front().first.size();
    for (const auto& [sig, w] : support_) {
        if (sig.size() != len) throw InvalidInput("measure support mixes signature lengths");
        if (w <= 0) throw InvalidInput("measure weight " + w.get_str() + " is not positive");
        total += w;
    }
    if (total != 1) throw InvalidInput("measure weights sum to " + total.get_str() + ", not 1");
}

SignatureMeasure SignatureMeasure::point_mass(const Signature& s) { return SignatureMeasure({{s, Rational(1)}}); }

Signature sample_signature(const SignatureMeasure& measure, const StreamKey& key) {
    mpz_class numerator(std::to_string(stream_bits53(key, 0)), 10);
    Rational u(numerator, mpz_class(1) << 53);
    u.canonicalize();
    Rational cumulative = 0;
    for (const auto& [sig, w] : measure.support()) {
        cumulative += w;
        if (u < cumulative) return sig;
    }
    return measure.support().back().first;
}

} // namespace padic
