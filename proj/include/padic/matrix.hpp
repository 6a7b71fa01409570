#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "padic/scalar.hpp"
#include "padic/signature.hpp"

namespace padic {

/// Dense rows x cols matrix over Q_p. All entries share one prime; `precision`
/// is the nominal digit count the matrix was built with.
class PAdicMatrix {
public:
    PAdicMatrix(std::size_t rows, std::size_t cols, std::int64_t p, int precision);
    PAdicMatrix(std::size_t rows, std::size_t cols, std::int64_t p, int precision, std::vector<PAdicScalar> entries);

    static PAdicMatrix identity(std::size_t n, std::int64_t p, int precision);
    // diag(p^kappa_1, ..., p^kappa_n)
    static PAdicMatrix diagonal(const Signature& kappa, std::int64_t p, int precision);
    // Entries given as integers, row-major.
    static PAdicMatrix from_integers(std::size_t rows, std::size_t cols, std::int64_t p, int precision,
                                     const std::vector<std::int64_t>& values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t prime() const { return prime_; }
    int precision() const { return precision_; }

    const PAdicScalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    PAdicScalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const std::vector<PAdicScalar>& entries() const { return entries_; }

    PAdicMatrix transpose() const;

    friend bool operator==(const PAdicMatrix&, const PAdicMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::int64_t prime_;
    int precision_;
    std::vector<PAdicScalar> entries_;
};

PAdicMatrix multiply(const PAdicMatrix& a, const PAdicMatrix& b);
inline PAdicMatrix operator*(const PAdicMatrix& a, const PAdicMatrix& b) { return multiply(a, b); }

// diag(p^kappa) * A, scaling row i by p^{kappa_i}.
PAdicMatrix left_diag_multiply(const Signature& kappa, const PAdicMatrix& a);
// A * diag(p^kappa), scaling column j by p^{kappa_j}. Accepts any integer tuple via
// the overload below, since shifts such as (-1, 0, ..., 0) are not signatures.
PAdicMatrix right_diag_multiply(const PAdicMatrix& a, const Signature& kappa);
PAdicMatrix right_diag_multiply(const PAdicMatrix& a, const std::vector<int>& exponents);
PAdicMatrix left_diag_multiply(const std::vector<int>& exponents, const PAdicMatrix& a);

/// Singular numbers SN(A) via Smith normal form over Z_p.
///
/// Full pivoting on minimal valuation, ties broken by lowest (row, col). A pivot is
/// accepted only when its valuation is strictly below the certified bound of every
/// zero-at-precision entry left in the active submatrix; otherwise PrecisionExhausted.
/// A submatrix of exact zeros raises SingularMatrix. Inputs with rows > cols are
/// transposed first. Output is weakly decreasing.
Signature singular_numbers(const PAdicMatrix& a);

// SN(A) from minimal valuations of k x k minor determinants, each determinant by
// Leibniz expansion. Exponential cost; intended for n <= 5.
Signature singular_numbers_minor_oracle(const PAdicMatrix& a);

// Exact determinant by Leibniz expansion (square input).
PAdicScalar leibniz_determinant(const PAdicMatrix& a);

// Valuation of det(A) for square A, by column-pivoted Gaussian elimination.
int det_valuation(const PAdicMatrix& a);

// Reduction mod p of a matrix over Z_p, row-major. Requires integral entries.
std::vector<std::uint32_t> reduce_mod_p(const PAdicMatrix& a);

// Rank over F_p of a row-major matrix with entries in [0, p).
std::size_t rank_mod_p(std::vector<std::uint32_t> entries, std::size_t rows, std::size_t cols, std::uint32_t p);

} // namespace padic
