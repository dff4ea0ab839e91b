#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "simplicial.hpp"

namespace hypertorsion {

/// One nonzero of a boundary column.
struct BoundaryEntry {
    std::size_t row;  // colex rank of the k-face
    int sign;         // +1 or -1
};

/// The k-dimensional boundary operator: rows are k-subsets of [n], columns
/// are (k+1)-subsets, and entry (tau \ tau_m, tau) = (-1)^m.
///
/// Stored as per-column lists ordered by removed-vertex position m. The
/// reduced operator keeps only the rows that avoid vertex n; under colex
/// ranking those are exactly rows 0 .. C(n-1,k)-1.
class BoundaryMatrix {
public:
    BoundaryMatrix(int n, int k, bool reduced) : n_(n), k_(k), reduced_(reduced) {
        if (k < 1 || k > n - 1) throw std::domain_error("boundary: need 1 <= k <= n-1");
        row_count_ = reduced ? binomial(n - 1, k) : binomial(n, k);
        col_count_ = binomial(n, k + 1);
        columns_.resize(col_count_);
        auto faces = enumerate_faces(n, k + 1);
        for (std::size_t c = 0; c < col_count_; ++c) {
            const auto& tau = faces[c];
            for (std::size_t m = 0; m < tau.size(); ++m) {
                std::size_t r = rank(tau.without(m).vertices());
                if (r >= row_count_) continue;
                columns_[c].push_back({r, (m % 2 == 0) ? 1 : -1});
            }
        }
    }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    bool reduced() const noexcept { return reduced_; }
    std::size_t row_count() const noexcept { return row_count_; }
    std::size_t col_count() const noexcept { return col_count_; }

    std::span<const BoundaryEntry> column(std::size_t c) const { return columns_.at(c); }

    int entry(std::size_t r, std::size_t c) const {
        for (const auto& e : columns_.at(c))
            if (e.row == r) return e.sign;
        return 0;
    }

    template <class T = int>
    Matrix<T> to_dense() const {
        Matrix<T> m(row_count_, col_count_);
        for (std::size_t c = 0; c < col_count_; ++c)
            for (const auto& e : columns_[c]) m(e.row, c) = T(e.sign);
        return m;
    }

    /// Square submatrix on the given columns, taken in the order supplied.
    template <class T = long>
    Matrix<T> restrict_columns(std::span<const std::size_t> cols) const {
        Matrix<T> m(row_count_, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& e : columns_.at(cols[j])) m(e.row, j) = T(e.sign);
        return m;
    }

private:
    int n_;
    int k_;
    bool reduced_;
    std::size_t row_count_;
    std::size_t col_count_;
    std::vector<std::vector<BoundaryEntry>> columns_;
};

using ReducedBoundaryMatrix = BoundaryMatrix;

inline BoundaryMatrix build_boundary(int n, int k) { return BoundaryMatrix(n, k, false); }
inline ReducedBoundaryMatrix build_reduced_boundary(int n, int k) { return BoundaryMatrix(n, k, true); }

/// The square matrix of the reduced boundary restricted to the facet set T,
/// columns in canonical colex order of T. Requires |T| = C(n-1, k).
inline Matrix<long> restrict_columns(const ReducedBoundaryMatrix& m, std::span<const Simplex> facets) {
    if (facets.size() != m.row_count())
        throw std::invalid_argument("restrict_columns: need exactly C(n-1,k) facets");
    std::vector<std::size_t> cols;
    cols.reserve(facets.size());
    for (const auto& f : facets) {
        if (static_cast<int>(f.size()) != m.k() + 1 || f.max_vertex() > m.n())
            throw std::invalid_argument("restrict_columns: facet " + f.to_string() + " is not a (k+1)-subset of [n]");
        cols.push_back(rank(f.vertices()));
    }
    std::sort(cols.begin(), cols.end());
    if (std::adjacent_find(cols.begin(), cols.end()) != cols.end())
        throw std::invalid_argument("restrict_columns: repeated facet");
    return m.restrict_columns<long>(cols);
}

/// Positive weights x_1..x_n with z = sum x_i^2.
///
/// Scalar is BigRational for exact identity checks or double for sampling
/// and optimization. Signed and zero weights are rejected.
template <class Scalar>
class WeightVector {
public:
    explicit WeightVector(std::vector<Scalar> x) : x_(std::move(x)) {
        if (x_.empty()) throw std::invalid_argument("WeightVector: no weights");
        z_ = Scalar(0);
        squares_.reserve(x_.size());
        for (const auto& v : x_) {
            if (!(v > Scalar(0))) throw std::invalid_argument("WeightVector: weights must be strictly positive");
            Scalar sq = v * v;
            z_ += sq;
            squares_.push_back(sq);
        }
    }

    static WeightVector ones(int n) { return WeightVector(std::vector<Scalar>(static_cast<std::size_t>(n), Scalar(1))); }

    std::size_t size() const noexcept { return x_.size(); }
    /// Weight of vertex v (1-based).
    const Scalar& x(Vertex v) const { return x_.at(static_cast<std::size_t>(v - 1)); }
    const Scalar& x2(Vertex v) const { return squares_.at(static_cast<std::size_t>(v - 1)); }
    const std::vector<Scalar>& values() const noexcept { return x_; }
    const std::vector<Scalar>& squares() const noexcept { return squares_; }
    const Scalar& z() const noexcept { return z_; }

    /// Diagonal entry of X_j on a face: product of the face's weights.
    Scalar face_weight(const Simplex& s) const {
        Scalar p(1);
        for (auto v : s.vertices()) p *= x(v);
        return p;
    }
    Scalar face_weight_squared(const Simplex& s) const {
        Scalar p(1);
        for (auto v : s.vertices()) p *= x2(v);
        return p;
    }

private:
    std::vector<Scalar> x_;
    std::vector<Scalar> squares_;
    Scalar z_;
};

/// Diagonal weight matrix X_j over the j-subsets of [n] (colex order).
template <class Scalar>
Matrix<Scalar> weight_matrix(int n, int j, const WeightVector<Scalar>& w) {
    auto faces = enumerate_faces(n, j);
    Matrix<Scalar> m(faces.size(), faces.size());
    for (std::size_t i = 0; i < faces.size(); ++i) m(i, i) = w.face_weight(faces[i]);
    return m;
}

/// The weighted Gram matrix of the reduced boundary, assembled directly from
/// the entry formulas: diagonal (sum_{i not in s} x_i^2) prod_{i in s} x_i^2;
/// off-diagonal, when s and s' span a (k+1)-face t, the product of the two
/// boundary signs times prod_{i in t} x_i^2; zero otherwise.
template <class Scalar>
Matrix<Scalar> build_weighted_gram(int n, int k, const WeightVector<Scalar>& w) {
    if (w.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("build_weighted_gram: weight count != n");
    auto rows = enumerate_faces(n - 1, k);
    const std::size_t size = rows.size();
    Matrix<Scalar> g(size, size);
    for (std::size_t a = 0; a < size; ++a) {
        const Simplex& s = rows[a];
        Scalar outside(0);
        for (Vertex v = 1; v <= n; ++v)
            if (!s.contains(v)) outside += w.x2(v);
        g(a, a) = outside * w.face_weight_squared(s);
        for (std::size_t b = a + 1; b < size; ++b) {
            const Simplex& t = rows[b];
            std::vector<Vertex> uni;
            std::set_union(s.vertices().begin(), s.vertices().end(), t.vertices().begin(), t.vertices().end(),
                           std::back_inserter(uni));
            if (static_cast<int>(uni.size()) != k + 1) continue;
            // s = uni minus the vertex at position ms, likewise t
            std::size_t ms = 0, mt = 0;
            while (ms < uni.size() && s.contains(uni[ms])) ++ms;
            while (mt < uni.size() && t.contains(uni[mt])) ++mt;
            const int sign = ((ms + mt) % 2 == 0) ? 1 : -1;
            Scalar val = w.face_weight_squared(Simplex(uni));
            if (sign < 0) val = -val;
            g(a, b) = val;
            g(b, a) = val;
        }
    }
    return g;
}

/// Dense CSV dump: a header line "n,k,rows,cols", the values, then one
/// line per matrix row.
inline void write_boundary_csv(std::ostream& os, const BoundaryMatrix& m) {
    os << "n,k,rows,cols\n" << m.n() << ',' << m.k() << ',' << m.row_count() << ',' << m.col_count() << '\n';
    auto d = m.to_dense<int>();
    for (std::size_t r = 0; r < d.rows(); ++r) {
        for (std::size_t c = 0; c < d.cols(); ++c) os << (c ? "," : "") << d(r, c);
        os << '\n';
    }
}

}  // namespace hypertorsion
