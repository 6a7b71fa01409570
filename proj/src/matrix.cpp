#include "padic/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace padic {

namespace {

struct PivotScan {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    int best_valuation = kInfiniteValuation;
    int min_uncertain_bound = kInfiniteValuation;
};

// Scan rows [r0, r1) x cols [c0, c1) of a row-major buffer for the lexicographically
// first entry of minimal certified valuation.
PivotScan scan(const std::vector<PAdicScalar>& w, std::size_t cols, std::size_t r0, std::size_t r1, std::size_t c0,
               std::size_t c1) {
    PivotScan s;
    for (std::size_t i = r0; i < r1; ++i) {
        for (std::size_t j = c0; j < c1; ++j) {
            const PAdicScalar& e = w[i * cols + j];
            if (e.is_nonzero()) {
                if (e.valuation() < s.best_valuation) {
                    s.best_valuation = e.valuation();
                    s.best = {i, j};
                }
            } else if (e.is_zero_at_precision()) {
                s.min_uncertain_bound = std::min(s.min_uncertain_bound, e.valuation());
            }
        }
    }
    return s;
}

void check_pivot(const PivotScan& s, const char* what) {
    if (!s.best) {
        if (s.min_uncertain_bound == kInfiniteValuation) throw SingularMatrix(std::string(what) + ": matrix is singular");
        throw PrecisionExhausted(std::string(what) + ": no certified nonzero pivot at current precision");
    }
    if (s.best_valuation >= s.min_uncertain_bound) {
        throw PrecisionExhausted(std::string(what) + ": pivot valuation " + std::to_string(s.best_valuation) +
                                 " not certified below an unresolved entry of bound " +
                                 std::to_string(s.min_uncertain_bound));
    }
}

void require_compatible(const PAdicMatrix& a, const PAdicMatrix& b) {
    if (a.prime() != b.prime()) throw PrimeMismatch("matrices over different primes");
}

// Visits every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& visit) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        visit(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

PAdicMatrix::PAdicMatrix(std::size_t rows, std::size_t cols, std::int64_t p, int precision)
    : rows_(rows), cols_(cols), prime_(p), precision_(precision),
      entries_(rows * cols, PAdicScalar::exact_zero(p, precision)) {
    require_prime(p);
    if (rows == 0 || cols == 0) throw InvalidInput("matrix dimensions must be positive");
    if (precision < 1) throw InvalidInput("precision must be at least 1");
}

PAdicMatrix::PAdicMatrix(std::size_t rows, std::size_t cols, std::int64_t p, int precision,
                         std::vector<PAdicScalar> entries)
    : rows_(rows), cols_(cols), prime_(p), precision_(precision), entries_(std::move(entries)) {
    require_prime(p);
    if (rows == 0 || cols == 0) throw InvalidInput("matrix dimensions must be positive");
    if (entries_.size() != rows * cols) throw InvalidInput("entry count does not match dimensions");
    for (const auto& e : entries_) {
        if (e.prime() != p) throw PrimeMismatch("matrix entry over a different prime");
    }
}

PAdicMatrix PAdicMatrix::identity(std::size_t n, std::int64_t p, int precision) {
    PAdicMatrix m(n, n, p, precision);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = PAdicScalar::power_of_p(p, 0, precision);
    return m;
}

PAdicMatrix PAdicMatrix::diagonal(const Signature& kappa, std::int64_t p, int precision) {
    PAdicMatrix m(kappa.size(), kappa.size(), p, precision);
    for (std::size_t i = 0; i < kappa.size(); ++i) m(i, i) = PAdicScalar::power_of_p(p, kappa[i], precision);
    return m;
}

PAdicMatrix PAdicMatrix::from_integers(std::size_t rows, std::size_t cols, std::int64_t p, int precision,
                                       const std::vector<std::int64_t>& values) {
    if (values.size() != rows * cols) throw InvalidInput("entry count does not match dimensions");
    std::vector<PAdicScalar> entries;
    entries.reserve(values.size());
    for (auto v : values) entries.push_back(PAdicScalar::from_integer(v, p, precision));
    return PAdicMatrix(rows, cols, p, precision, std::move(entries));
}

PAdicMatrix PAdicMatrix::transpose() const {
    std::vector<PAdicScalar> t;
    t.reserve(entries_.size());
    for (std::size_t j = 0; j < cols_; ++j) {
        for (std::size_t i = 0; i < rows_; ++i) t.push_back((*this)(i, j));
    }
    return PAdicMatrix(cols_, rows_, prime_, precision_, std::move(t));
}

PAdicMatrix multiply(const PAdicMatrix& a, const PAdicMatrix& b) {
    require_compatible(a, b);
    if (a.cols() != b.rows()) throw InvalidInput("matrix dimensions do not match for multiplication");
    PAdicMatrix c(a.rows(), b.cols(), a.prime(), std::min(a.precision(), b.precision()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            PAdicScalar acc = PAdicScalar::exact_zero(a.prime(), c.precision());
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (a(i, k).is_exact_zero() || b(k, j).is_exact_zero()) continue;
                acc = add(acc, mul(a(i, k), b(k, j)));
            }
            c(i, j) = std::move(acc);
        }
    }
    return c;
}

PAdicMatrix left_diag_multiply(const std::vector<int>& exponents, const PAdicMatrix& a) {
    if (exponents.size() != a.rows()) throw InvalidInput("diagonal length does not match row count");
    PAdicMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = shift(a(i, j), exponents[i]);
    }
    return out;
}

PAdicMatrix right_diag_multiply(const PAdicMatrix& a, const std::vector<int>& exponents) {
    if (exponents.size() != a.cols()) throw InvalidInput("diagonal length does not match column count");
    PAdicMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = shift(a(i, j), exponents[j]);
    }
    return out;
}

PAdicMatrix left_diag_multiply(const Signature& kappa, const PAdicMatrix& a) {
    return left_diag_multiply(kappa.parts(), a);
}

PAdicMatrix right_diag_multiply(const PAdicMatrix& a, const Signature& kappa) {
    return right_diag_multiply(a, kappa.parts());
}

Signature singular_numbers(const PAdicMatrix& input) {
    if (input.rows() > input.cols()) return singular_numbers(input.transpose());
    const std::size_t n = input.rows();
    const std::size_t m = input.cols();
    std::vector<PAdicScalar> w = input.entries();
    auto at = [&](std::size_t i, std::size_t j) -> PAdicScalar& { return w[i * m + j]; };

    std::vector<int> lambda;
    lambda.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const PivotScan s = scan(w, m, k, n, k, m);
        check_pivot(s, "singular_numbers");
        const auto [pr, pc] = *s.best;
        if (pr != k) {
            for (std::size_t j = k; j < m; ++j) std::swap(at(k, j), at(pr, j));
        }
        if (pc != k) {
            for (std::size_t i = k; i < n; ++i) std::swap(at(i, k), at(i, pc));
        }
        const PAdicScalar pivot_inverse = inv(at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (at(i, k).is_exact_zero()) continue;
            const PAdicScalar factor = mul(at(i, k), pivot_inverse);
            for (std::size_t j = k + 1; j < m; ++j) {
                if (at(k, j).is_exact_zero()) continue;
                at(i, j) = sub(at(i, j), mul(factor, at(k, j)));
            }
        }
        // Column operations clear row k without touching rows below, since column k
        // is now zero there.
        lambda.push_back(s.best_valuation);
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return Signature(std::move(lambda));
}

PAdicScalar leibniz_determinant(const PAdicMatrix& a) {
    if (a.rows() != a.cols()) throw InvalidInput("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    PAdicScalar det = PAdicScalar::exact_zero(a.prime(), a.precision());
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
        }
        PAdicScalar term = a(0, perm[0]);
        for (std::size_t i = 1; i < n && !term.is_exact_zero(); ++i) term = mul(term, a(i, perm[i]));
        if (term.is_exact_zero()) continue;
        det = inversions % 2 == 0 ? add(det, term) : sub(det, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

Signature singular_numbers_minor_oracle(const PAdicMatrix& input) {
    if (input.rows() > input.cols()) return singular_numbers_minor_oracle(input.transpose());
    const std::size_t n = input.rows();
    const std::size_t m = input.cols();

    // partial[k] = lambda_n + ... + lambda_{n-k+1}
    std::vector<long> partial(n + 1, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        int best = kInfiniteValuation;
        int uncertain = kInfiniteValuation;
        for_each_subset(n, k, [&](const std::vector<std::size_t>& rows) {
            for_each_subset(m, k, [&](const std::vector<std::size_t>& cols) {
                PAdicMatrix minor(k, k, input.prime(), input.precision());
                for (std::size_t i = 0; i < k; ++i) {
                    for (std::size_t j = 0; j < k; ++j) minor(i, j) = input(rows[i], cols[j]);
                }
                const PAdicScalar d = leibniz_determinant(minor);
                if (d.is_nonzero()) {
                    best = std::min(best, d.valuation());
                } else if (d.is_zero_at_precision()) {
                    uncertain = std::min(uncertain, d.valuation());
                }
            });
        });
        if (best == kInfiniteValuation) {
            if (uncertain == kInfiniteValuation) throw SingularMatrix("singular_numbers_minor_oracle: matrix is singular");
            throw PrecisionExhausted("singular_numbers_minor_oracle: all minors vanish at current precision");
        }
        if (best >= uncertain) {
            throw PrecisionExhausted("singular_numbers_minor_oracle: minimal minor valuation not certified");
        }
        partial[k] = best;
    }
    std::vector<int> lambda(n);
    for (std::size_t k = 1; k <= n; ++k) lambda[n - k] = static_cast<int>(partial[k] - partial[k - 1]);
    return Signature(std::move(lambda));
}

int det_valuation(const PAdicMatrix& a) {
    if (a.rows() != a.cols()) throw InvalidInput("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    std::vector<PAdicScalar> w = a.entries();
    auto at = [&](std::size_t i, std::size_t j) -> PAdicScalar& { return w[i * n + j]; };
    long total = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const PivotScan s = scan(w, n, k, n, k, k + 1);
        check_pivot(s, "det_valuation");
        const std::size_t pr = s.best->first;
        if (pr != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(pr, j));
        }
        const PAdicScalar pivot_inverse = inv(at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (at(i, k).is_exact_zero()) continue;
            const PAdicScalar factor = mul(at(i, k), pivot_inverse);
            for (std::size_t j = k + 1; j < n; ++j) {
                if (at(k, j).is_exact_zero()) continue;
                at(i, j) = sub(at(i, j), mul(factor, at(k, j)));
            }
        }
        total += s.best_valuation;
    }
    return static_cast<int>(total);
}

std::vector<std::uint32_t> reduce_mod_p(const PAdicMatrix& a) {
    std::vector<std::uint32_t> out;
    out.reserve(a.entries().size());
    for (const auto& e : a.entries()) out.push_back(static_cast<std::uint32_t>(e.residue(1)));
    return out;
}

std::size_t rank_mod_p(std::vector<std::uint32_t> m, std::size_t rows, std::size_t cols, std::uint32_t p) {
    const std::uint64_t up = p;
    auto inverse = [up](std::uint64_t x) {
        std::uint64_t result = 1, base = x % up, e = up - 2;
        while (e) {
            if (e & 1) result = result * base % up;
            base = base * base % up;
            e >>= 1;
        }
        return result;
    };
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot * cols + c] == 0) ++pivot;
        if (pivot == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(m[rank * cols + j], m[pivot * cols + j]);
        const std::uint64_t scale = inverse(m[rank * cols + c]);
        for (std::size_t j = 0; j < cols; ++j) m[rank * cols + j] = static_cast<std::uint32_t>(m[rank * cols + j] * scale % up);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i * cols + c] == 0) continue;
            const std::uint64_t f = m[i * cols + c];
            for (std::size_t j = 0; j < cols; ++j) {
                m[i * cols + j] = static_cast<std::uint32_t>((m[i * cols + j] + (up - f) * m[rank * cols + j]) % up);
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace padic
