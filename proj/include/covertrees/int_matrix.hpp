#pragma once

#include <covertrees/big_integer.hpp>
#include <covertrees/errors.hpp>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

namespace covertrees {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;

    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<long>> rows) : rows_(rows.size()) {
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw DimensionError("IntMatrix: ragged initializer");
            for (long value : row) entries_.emplace_back(value);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<BigInt>& entries() const noexcept { return entries_; }

    /// Copy with row `row` and column `col` removed.
    IntMatrix without(std::size_t row, std::size_t col) const {
        if (row >= rows_ || col >= cols_) throw IndexError("IntMatrix::without: index out of range");
        IntMatrix out(rows_ - 1, cols_ - 1);
        for (std::size_t i = 0, oi = 0; i < rows_; ++i) {
            if (i == row) continue;
            for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
                if (j == col) continue;
                out(oi, oj++) = (*this)(i, j);
            }
            ++oi;
        }
        return out;
    }

    IntMatrix transposed() const {
        IntMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionError("IntMatrix: product shape mismatch");
        IntMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const BigInt& aik = a(i, k);
                if (sgn(aik) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
            os << ']';
        }
        return os << ']';
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> entries_;
};

/**
 * Exact determinant by fraction-free (Bareiss) elimination.
 *
 * After step k every entry of the trailing block is a (k+1)x(k+1) minor of
 * the input, so each division by the previous pivot is exact. The pivot is
 * the first nonzero entry at or below the diagonal of the current column;
 * an all-zero column means the determinant is 0. A 0x0 matrix has
 * determinant 1.
 */
inline BigInt determinant(IntMatrix m) {
    if (!m.is_square()) throw DimensionError("determinant: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;

    int sign = 1;
    BigInt previous = 1;
    BigInt scratch;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t pivot_row = k + 1;
            while (pivot_row < n && sgn(m(pivot_row, k)) == 0) ++pivot_row;
            if (pivot_row == n) return 0;
            for (std::size_t j = k; j < n; ++j) swap(m(k, j), m(pivot_row, j));
            sign = -sign;
        }
        const mpz_srcptr pivot = m(k, k).get_mpz_t();
        for (std::size_t i = k + 1; i < n; ++i) {
            const mpz_srcptr lead = m(i, k).get_mpz_t();
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_ptr target = m(i, j).get_mpz_t();
                // target = (target * pivot - lead * m(k, j)) / previous
                mpz_mul(scratch.get_mpz_t(), target, pivot);
                mpz_submul(scratch.get_mpz_t(), lead, m(k, j).get_mpz_t());
                mpz_divexact(target, scratch.get_mpz_t(), previous.get_mpz_t());
            }
            m(i, k) = 0;
        }
        previous = m(k, k);
    }
    BigInt result = m(n - 1, n - 1);
    if (sign < 0) result = -result;
    return result;
}

/// Signed cofactor (-1)^(i+j) * det(M without row i and column j).
inline BigInt first_cofactor(const IntMatrix& m, std::size_t i, std::size_t j) {
    if (!m.is_square()) throw DimensionError("first_cofactor: matrix is not square");
    if (i >= m.rows() || j >= m.cols()) throw IndexError("first_cofactor: index out of range");
    BigInt minor = determinant(m.without(i, j));
    return (i + j) % 2 == 0 ? minor : BigInt(-minor);
}

}  // namespace covertrees
