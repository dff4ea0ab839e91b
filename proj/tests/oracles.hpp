#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the code paths it is used to check.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <hypertorsion/hypertorsion.hpp>

namespace oracle {

using hypertorsion::BigInt;
using hypertorsion::BigRational;
using hypertorsion::Matrix;

/// Laplace expansion along the first row.
inline BigInt cofactor_det(const Matrix<BigInt>& m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    BigInt total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c) == 0) continue;
        Matrix<BigInt> minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t cc = 0, j = 0; cc < n; ++cc)
                if (cc != c) minor(r - 1, j++) = m(r, cc);
        BigInt term = m(0, c) * cofactor_det(minor);
        if (c % 2) total -= term;
        else total += term;
    }
    return total;
}

inline std::size_t rational_rank(Matrix<BigRational> a) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t p = rank;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(p, rank);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == rank || a(r, c) == 0) continue;
            BigRational f = a(r, c) / a(rank, c);
            for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

/// All j-subsets of [n] as sorted vertex lists, ordered colexicographically
/// by direct comparison from the largest element down.
inline std::vector<std::vector<int>> colex_subsets(int n, int j) {
    std::vector<std::vector<int>> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != j) continue;
        std::vector<int> s;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1u) s.push_back(v + 1);
        out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

/// Boundary matrix from the definition, by testing every (row, column) pair.
inline Matrix<int> boundary_by_definition(int n, int k, bool reduced) {
    auto rows = colex_subsets(n, k);
    if (reduced)
        rows.erase(std::remove_if(rows.begin(), rows.end(), [n](const auto& s) { return s.back() == n; }),
                   rows.end());
    auto cols = colex_subsets(n, k + 1);
    Matrix<int> d(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t m = 0; m < cols[c].size(); ++m) {
            std::vector<int> face;
            for (std::size_t i = 0; i < cols[c].size(); ++i)
                if (i != m) face.push_back(cols[c][i]);
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (rows[r] == face) d(r, c) = (m % 2 == 0) ? 1 : -1;
        }
    return d;
}

/// Weighted Gram matrix as the explicit triple product D X^2 D^t.
inline Matrix<BigRational> gram_by_product(int n, int k, const std::vector<BigRational>& x) {
    auto d = hypertorsion::matrix_cast<BigRational>(boundary_by_definition(n, k, true));
    auto cols = colex_subsets(n, k + 1);
    Matrix<BigRational> x2(cols.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        BigRational p = 1;
        for (int v : cols[c]) p *= x[static_cast<std::size_t>(v - 1)] * x[static_cast<std::size_t>(v - 1)];
        x2(c, c) = p;
    }
    return d * x2 * d.transpose();
}

template <class Rng>
std::vector<BigRational> random_rational_weights(Rng& rng, int n) {
    std::vector<BigRational> x;
    for (int i = 0; i < n; ++i) {
        BigRational q(static_cast<long>(1 + rng() % 9), static_cast<long>(1 + rng() % 9));
        q.canonicalize();
        x.push_back(q);
    }
    return x;
}

template <class Rng>
std::vector<double> random_positive_weights(Rng& rng, int n) {
    std::vector<double> x;
    for (int i = 0; i < n; ++i) x.push_back(0.25 + 2.0 * hypertorsion::uniform01(rng));
    return x;
}

/// Central differences of f at u.
inline std::vector<double> central_gradient(const std::function<double(const std::vector<double>&)>& f,
                                            std::vector<double> u, double h = 1e-5) {
    std::vector<double> g(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double u0 = u[i];
        u[i] = u0 + h;
        const double fp = f(u);
        u[i] = u0 - h;
        const double fm = f(u);
        u[i] = u0;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

/// The 6-vertex triangulation of the real projective plane.
inline hypertorsion::Complex rp2_6() {
    return hypertorsion::Complex(6, 2,
                                 {{1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {1, 4, 6}, {1, 5, 6},
                                  {2, 3, 6}, {2, 4, 5}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6}});
}

/// Cone with apex 5 over the complete graph on {1,2,3,4}.
inline hypertorsion::Complex cone_5_2() {
    return hypertorsion::Complex(5, 2, {{1, 2, 5}, {1, 3, 5}, {2, 3, 5}, {1, 4, 5}, {2, 4, 5}, {3, 4, 5}});
}

}  // namespace oracle
