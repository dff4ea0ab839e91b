#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hypertorsion {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Dense row-major matrix over an arbitrary scalar type.
///
/// Used for every concrete matrix in the library: small integer matrices
/// (restrictions of the boundary operator), exact rational matrices
/// (Gram matrices and projection kernels) and their double counterparts.
template <class T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("Matrix: ragged initializer list");
            for (const auto& v : row) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    /// Principal-style submatrix with the given (ordered) row and column indices.
    Matrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
        Matrix s(row_idx.size(), col_idx.size());
        for (std::size_t r = 0; r < row_idx.size(); ++r)
            for (std::size_t c = 0; c < col_idx.size(); ++c) s(r, c) = (*this)(row_idx[r], col_idx[c]);
        return s;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            if (!(a.data_[i] == b.data_[i])) return false;
        return true;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
        Matrix p(a.rows_, b.cols_);
        T acc;
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t l = 0; l < a.cols_; ++l) {
                const T& ail = a(i, l);
                if (ail == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    acc = ail * b(l, j);
                    p(i, j) += acc;
                }
            }
        return p;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("Matrix: dimension mismatch in difference");
        Matrix d(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) d.data_[i] = a.data_[i] - b.data_[i];
        return d;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        for (std::size_t r = 0; r < m.rows_; ++r) {
            for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
            os << '\n';
        }
        return os;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Converts entrywise between scalar types (e.g. integer -> rational).
template <class To, class From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
    Matrix<To> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = To(m(r, c));
    return out;
}

inline double to_double(double v) { return v; }
inline double to_double(const BigRational& v) { return v.get_d(); }
inline double to_double(const BigInt& v) { return v.get_d(); }

}  // namespace hypertorsion
