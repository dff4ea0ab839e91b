#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypertorsion {

using Vertex = int;  // 1-based, in [1, n]

/// Exact binomial coefficient C(n, j); zero outside 0 <= j <= n.
/// Throws std::overflow_error if the result does not fit in 64 bits.
inline std::uint64_t binomial(std::int64_t n, std::int64_t j) {
    if (n < 0 || j < 0 || j > n) return 0;
    j = std::min(j, n - j);
    unsigned __int128 acc = 1;
    for (std::int64_t i = 1; i <= j; ++i) {
        acc = acc * static_cast<unsigned __int128>(n - j + i) / static_cast<unsigned __int128>(i);
        if (acc > UINT64_MAX) throw std::overflow_error("binomial: result exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

/// A face of the full simplex on [n]: a strictly increasing list of vertices.
class Simplex {
public:
    Simplex() = default;
    explicit Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (vertices_[i] < 1) throw std::invalid_argument("Simplex: vertices are 1-based");
            if (i && vertices_[i] <= vertices_[i - 1])
                throw std::invalid_argument("Simplex: vertices must be strictly increasing");
        }
    }
    Simplex(std::initializer_list<Vertex> vs) : Simplex(std::vector<Vertex>(vs)) {}

    std::span<const Vertex> vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
    Vertex operator[](std::size_t i) const { return vertices_[i]; }
    Vertex max_vertex() const noexcept { return vertices_.empty() ? 0 : vertices_.back(); }

    bool contains(Vertex v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

    /// The face obtained by deleting the m-th vertex (0-based position).
    Simplex without(std::size_t m) const {
        std::vector<Vertex> rest;
        rest.reserve(vertices_.size() - 1);
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (i != m) rest.push_back(vertices_[i]);
        Simplex s;
        s.vertices_ = std::move(rest);
        return s;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '{';
        for (std::size_t i = 0; i < vertices_.size(); ++i) os << (i ? "," : "") << vertices_[i];
        os << '}';
        return os.str();
    }

    friend auto operator<=>(const Simplex&, const Simplex&) = default;

private:
    std::vector<Vertex> vertices_;
};

/// m1 = C(n-2, k-1), m2 = C(n-2, k), m3 = C(n-1, k).
struct BinomialConstants {
    std::int64_t m1;
    std::int64_t m2;
    std::int64_t m3;
};

inline void require_dimensions(int n, int k) {
    if (k < 1) throw std::domain_error("dimension k must be at least 1");
    if (n < k + 2) throw std::domain_error("vertex count n must be at least k + 2");
}

inline BinomialConstants constants(int n, int k) {
    require_dimensions(n, k);
    BinomialConstants c{static_cast<std::int64_t>(binomial(n - 2, k - 1)),
                        static_cast<std::int64_t>(binomial(n - 2, k)),
                        static_cast<std::int64_t>(binomial(n - 1, k))};
    return c;
}

// ---------------------------------------------------------------------------
// Colexicographic ranking of j-subsets of [n].
//
// rank({c_1 < ... < c_j}) = sum_i C(c_i - 1, i). Every subset of [n-1] ranks
// below every subset containing n, so the faces containing the last vertex
// form a contiguous suffix.
// ---------------------------------------------------------------------------

inline std::size_t rank(std::span<const Vertex> vertices) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        r += binomial(vertices[i] - 1, static_cast<std::int64_t>(i) + 1);
    return r;
}

inline std::size_t rank(const Simplex& s, int n) {
    if (s.max_vertex() > n) throw std::out_of_range("rank: vertex exceeds n");
    return rank(s.vertices());
}

inline Simplex unrank(std::size_t r, int n, int j) {
    if (j < 0 || j > n || r >= binomial(n, j)) throw std::out_of_range("unrank: rank out of range");
    std::vector<Vertex> vs(static_cast<std::size_t>(j));
    Vertex top = n;
    for (int i = j; i >= 1; --i) {
        // largest c with C(c - 1, i) <= r
        while (binomial(top - 1, i) > r) --top;
        vs[static_cast<std::size_t>(i - 1)] = top;
        r -= binomial(top - 1, i);
        --top;
    }
    return Simplex(std::move(vs));
}

/// All C(n, j) j-subsets of [n] in colex order; the position is the rank.
inline std::vector<Simplex> enumerate_faces(int n, int j) {
    if (j < 0 || j > n) throw std::invalid_argument("enumerate_faces: need 0 <= j <= n");
    std::vector<Simplex> faces;
    std::size_t count = binomial(n, j);
    faces.reserve(count);
    std::vector<Vertex> cur(static_cast<std::size_t>(j));
    std::iota(cur.begin(), cur.end(), 1);
    for (std::size_t r = 0; r < count; ++r) {
        faces.emplace_back(cur);
        // colex successor: bump the first entry that can move up
        std::size_t i = 0;
        while (i < cur.size() && cur[i] + 1 == (i + 1 < cur.size() ? cur[i + 1] : n + 1)) ++i;
        if (i == cur.size()) break;
        ++cur[i];
        for (std::size_t l = 0; l < i; ++l) cur[l] = static_cast<Vertex>(l + 1);
    }
    return faces;
}

/// Advances a strictly increasing index combination drawn from [0, universe)
/// to its colex successor. Returns false after the last combination.
inline bool next_combination_colex(std::span<std::size_t> comb, std::size_t universe) {
    std::size_t i = 0;
    while (i < comb.size() && comb[i] + 1 == (i + 1 < comb.size() ? comb[i + 1] : universe)) ++i;
    if (i == comb.size()) return false;
    ++comb[i];
    for (std::size_t l = 0; l < i; ++l) comb[l] = l;
    return true;
}

/// A k-dimensional complex on [n] stored by its facets; the full
/// (k-1)-skeleton is implied.
class Complex {
public:
    Complex(int n, int k, std::vector<Simplex> facets) : n_(n), k_(k), facets_(std::move(facets)) {
        require_dimensions(n, k);
        std::set<Simplex> seen;
        for (const auto& f : facets_) {
            if (static_cast<int>(f.size()) != k + 1)
                throw std::invalid_argument("Complex: facet " + f.to_string() + " does not have k+1 vertices");
            if (f.max_vertex() > n)
                throw std::invalid_argument("Complex: facet " + f.to_string() + " has a vertex outside [n]");
            if (!seen.insert(f).second)
                throw std::invalid_argument("Complex: duplicate facet " + f.to_string());
        }
    }

    /// Builds a complex from the colex ranks of its (k+1)-faces.
    static Complex from_ranks(int n, int k, std::span<const std::size_t> ranks) {
        std::vector<Simplex> fs;
        fs.reserve(ranks.size());
        for (auto r : ranks) fs.push_back(unrank(r, n, k + 1));
        return Complex(n, k, std::move(fs));
    }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    const std::vector<Simplex>& facets() const noexcept { return facets_; }

    /// Facet ranks in increasing (canonical) order.
    std::vector<std::size_t> facet_ranks() const {
        std::vector<std::size_t> rs;
        rs.reserve(facets_.size());
        for (const auto& f : facets_) rs.push_back(rank(f.vertices()));
        std::sort(rs.begin(), rs.end());
        return rs;
    }

private:
    int n_;
    int k_;
    std::vector<Simplex> facets_;
};

/// d_i = number of facets containing vertex i (stored 0-based: degrees[i-1]).
struct DegreeSequence {
    std::vector<std::int64_t> degrees;

    std::size_t size() const noexcept { return degrees.size(); }
    std::int64_t operator[](std::size_t i) const { return degrees[i]; }
    std::int64_t sum() const { return std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0}); }
    friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;
    friend auto operator<=>(const DegreeSequence&, const DegreeSequence&) = default;
};

inline DegreeSequence degree_sequence(const Complex& c) {
    DegreeSequence d{std::vector<std::int64_t>(static_cast<std::size_t>(c.n()), 0)};
    for (const auto& f : c.facets())
        for (auto v : f.vertices()) ++d.degrees[static_cast<std::size_t>(v - 1)];
    return d;
}

/// Checks the constraints every hypertree degree sequence satisfies:
/// m1 <= d_i <= m3 and sum d_i = (k+1) m3.
inline bool is_hypertree_degree_sequence(const DegreeSequence& d, int n, int k) {
    auto c = constants(n, k);
    if (d.size() != static_cast<std::size_t>(n)) return false;
    for (auto di : d.degrees)
        if (di < c.m1 || di > c.m3) return false;
    return d.sum() == (k + 1) * c.m3;
}

}  // namespace hypertorsion
