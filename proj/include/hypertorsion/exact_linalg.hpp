#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace hypertorsion {

class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Determinants
// ---------------------------------------------------------------------------

/// Fraction-free (Bareiss) elimination. Every intermediate entry is a minor
/// of the input, and each division below is exact.
inline BigInt bareiss_determinant(Matrix<BigInt> a) {
    if (!a.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return BigInt(1);
    int sign = 1;
    BigInt prev(1);
    BigInt t;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        if (a(p, p) == 0) {
            std::size_t r = p + 1;
            while (r < n && a(r, p) == 0) ++r;
            if (r == n) return BigInt(0);
            a.swap_rows(p, r);
            sign = -sign;
        }
        const BigInt& piv = a(p, p);
        for (std::size_t i = p + 1; i < n; ++i) {
            for (std::size_t j = p + 1; j < n; ++j) {
                // a(i,j) = (piv a(i,j) - a(i,p) a(p,j)) / prev
                t = a(i, p) * a(p, j);
                a(i, j) *= piv;
                a(i, j) -= t;
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            a(i, p) = 0;
        }
        prev = piv;
    }
    BigInt d = a(n - 1, n - 1);
    if (sign < 0) d = -d;
    return d;
}

/// Bareiss on 64-bit integers with overflow detection.
/// Returns false if any intermediate product overflows.
inline bool bareiss_determinant_i64(Matrix<long> a, long& out) {
    const std::size_t n = a.rows();
    if (n == 0) {
        out = 1;
        return true;
    }
    int sign = 1;
    long prev = 1;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        if (a(p, p) == 0) {
            std::size_t r = p + 1;
            while (r < n && a(r, p) == 0) ++r;
            if (r == n) {
                out = 0;
                return true;
            }
            a.swap_rows(p, r);
            sign = -sign;
        }
        const long piv = a(p, p);
        for (std::size_t i = p + 1; i < n; ++i) {
            const long aip = a(i, p);
            for (std::size_t j = p + 1; j < n; ++j) {
                long x, y, z;
                if (__builtin_mul_overflow(piv, a(i, j), &x)) return false;
                if (__builtin_mul_overflow(aip, a(p, j), &y)) return false;
                if (__builtin_sub_overflow(x, y, &z)) return false;
                a(i, j) = z / prev;
            }
            a(i, p) = 0;
        }
        prev = piv;
    }
    out = sign < 0 ? -a(n - 1, n - 1) : a(n - 1, n - 1);
    return true;
}

/// Exact determinant of an integer matrix.
template <class Int>
BigInt det_exact(const Matrix<Int>& m) {
    if (!m.is_square()) throw std::invalid_argument("det_exact: matrix is not square");
    if constexpr (std::is_integral_v<Int>) {
        long d = 0;
        if (bareiss_determinant_i64(matrix_cast<long>(m), d)) return BigInt(d);
        return bareiss_determinant(matrix_cast<BigInt>(m));
    } else {
        return bareiss_determinant(matrix_cast<BigInt>(m));
    }
}

/// Determinant over a field (exact for BigRational, partial pivoting for double).
template <class Field>
Field determinant(Matrix<Field> a) {
    if (!a.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    Field det(1);
    Field f;
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t best = p;
        if constexpr (std::is_floating_point_v<Field>) {
            for (std::size_t r = p + 1; r < n; ++r)
                if (std::abs(a(r, p)) > std::abs(a(best, p))) best = r;
        } else {
            while (best < n && a(best, p) == 0) ++best;
            if (best == n) return Field(0);
        }
        if (a(best, p) == Field(0)) return Field(0);
        if (best != p) {
            a.swap_rows(p, best);
            det = -det;
        }
        det *= a(p, p);
        for (std::size_t i = p + 1; i < n; ++i) {
            if (a(i, p) == Field(0)) continue;
            f = a(i, p) / a(p, p);
            for (std::size_t j = p; j < n; ++j) a(i, j) -= f * a(p, j);
        }
    }
    return det;
}

// ---------------------------------------------------------------------------
// Inversion
// ---------------------------------------------------------------------------

/// Gauss-Jordan inverse. Exact when Field is BigRational.
template <class Field>
Matrix<Field> invert(Matrix<Field> a) {
    if (!a.is_square()) throw std::invalid_argument("invert: matrix is not square");
    const std::size_t n = a.rows();
    Matrix<Field> inv = Matrix<Field>::identity(n);
    Field f;
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t best = p;
        if constexpr (std::is_floating_point_v<Field>) {
            for (std::size_t r = p + 1; r < n; ++r)
                if (std::abs(a(r, p)) > std::abs(a(best, p))) best = r;
        } else {
            while (best < n && a(best, p) == 0) ++best;
        }
        if (best == n || a(best, p) == Field(0)) throw SingularMatrixError("invert: matrix is singular");
        a.swap_rows(p, best);
        inv.swap_rows(p, best);
        const Field piv = a(p, p);
        for (std::size_t j = 0; j < n; ++j) {
            a(p, j) /= piv;
            inv(p, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == p || a(i, p) == Field(0)) continue;
            f = a(i, p);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(p, j);
                inv(i, j) -= f * inv(p, j);
            }
        }
    }
    return inv;
}

inline Matrix<BigRational> invert_rational(const Matrix<BigRational>& m) { return invert(m); }

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

struct SmithNormalForm {
    /// min(rows, cols) diagonal entries, non-negative, each dividing the next;
    /// zeros (if any) trail.
    std::vector<BigInt> diagonal;
    std::size_t rank = 0;

    /// The diagonal entries greater than one: the invariant factors of the
    /// torsion subgroup of the cokernel.
    std::vector<BigInt> invariant_factors() const {
        std::vector<BigInt> out;
        for (const auto& d : diagonal)
            if (d > 1) out.push_back(d);
        return out;
    }
};

/// Smith normal form by elementary unimodular row/column operations, pivoting
/// on the nonzero entry of least absolute value in the active block.
template <class Int>
SmithNormalForm smith_normal_form(const Matrix<Int>& input) {
    Matrix<BigInt> a = matrix_cast<BigInt>(input);
    const std::size_t rows = a.rows(), cols = a.cols();
    const std::size_t steps = std::min(rows, cols);
    SmithNormalForm snf;
    BigInt q, t;

    for (std::size_t p = 0; p < steps; ++p) {
        for (;;) {
            // smallest nonzero |entry| in the block [p.., p..]
            std::size_t br = rows, bc = cols;
            for (std::size_t r = p; r < rows; ++r)
                for (std::size_t c = p; c < cols; ++c)
                    if (a(r, c) != 0 && (br == rows || mpz_cmpabs(a(r, c).get_mpz_t(), a(br, bc).get_mpz_t()) < 0)) {
                        br = r;
                        bc = c;
                    }
            if (br == rows) {
                // remaining block is zero
                for (std::size_t i = p; i < steps; ++i) snf.diagonal.push_back(BigInt(0));
                snf.rank = p;
                return snf;
            }
            a.swap_rows(p, br);
            a.swap_cols(p, bc);

            bool clean = true;
            for (std::size_t r = p + 1; r < rows; ++r) {
                if (a(r, p) == 0) continue;
                mpz_fdiv_q(q.get_mpz_t(), a(r, p).get_mpz_t(), a(p, p).get_mpz_t());
                for (std::size_t c = p; c < cols; ++c) {
                    t = q * a(p, c);
                    a(r, c) -= t;
                }
                if (a(r, p) != 0) clean = false;
            }
            for (std::size_t c = p + 1; c < cols; ++c) {
                if (a(p, c) == 0) continue;
                mpz_fdiv_q(q.get_mpz_t(), a(p, c).get_mpz_t(), a(p, p).get_mpz_t());
                for (std::size_t r = p; r < rows; ++r) {
                    t = q * a(r, p);
                    a(r, c) -= t;
                }
                if (a(p, c) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot must divide the whole remaining block
            std::size_t bad_row = rows;
            for (std::size_t r = p + 1; r < rows && bad_row == rows; ++r)
                for (std::size_t c = p + 1; c < cols; ++c)
                    if (!mpz_divisible_p(a(r, c).get_mpz_t(), a(p, p).get_mpz_t())) {
                        bad_row = r;
                        break;
                    }
            if (bad_row == rows) break;
            for (std::size_t c = p; c < cols; ++c) a(p, c) += a(bad_row, c);
        }
        snf.diagonal.push_back(abs(a(p, p)));
    }
    snf.rank = steps;
    return snf;
}

}  // namespace hypertorsion
