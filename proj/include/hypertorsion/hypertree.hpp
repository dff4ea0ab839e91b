#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boundary.hpp"
#include "exact_linalg.hpp"
#include "random.hpp"
#include "simplicial.hpp"

namespace hypertorsion {

class NotAHypertreeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const BigInt& candidates)
        : std::runtime_error("enumeration budget exceeded: " + candidates.get_str() + " candidate facet sets"),
          candidates_(candidates) {}
    const BigInt& candidates() const noexcept { return candidates_; }

private:
    BigInt candidates_;
};

struct TorsionGroup {
    BigInt order;                         // |det of the reduced boundary on T|
    std::vector<BigInt> invariant_factors;  // Smith factors > 1
};

/// A Q-acyclic complex together with its torsion group.
struct Hypertree {
    Complex complex;
    BigInt torsion_order;
    std::vector<BigInt> invariant_factors;

    DegreeSequence degrees() const { return degree_sequence(complex); }
    int n() const noexcept { return complex.n(); }
    int k() const noexcept { return complex.k(); }
};

/// Signed determinant of the reduced boundary restricted to the facets, or
/// nullopt if the facet count is not C(n-1, k).
inline std::optional<BigInt> reduced_determinant(const Complex& c, const ReducedBoundaryMatrix& rb) {
    if (c.facets().size() != rb.row_count()) return std::nullopt;
    return det_exact(restrict_columns(rb, c.facets()));
}

inline bool is_hypertree(const Complex& c) {
    auto rb = build_reduced_boundary(c.n(), c.k());
    auto d = reduced_determinant(c, rb);
    return d && *d != 0;
}

inline TorsionGroup torsion(const Complex& c, const ReducedBoundaryMatrix& rb) {
    auto d = reduced_determinant(c, rb);
    if (!d || *d == 0) throw NotAHypertreeError("torsion: complex is not a hypertree");
    TorsionGroup g{abs(*d), {}};
    if (g.order > 1) g.invariant_factors = smith_normal_form(restrict_columns(rb, c.facets())).invariant_factors();
    return g;
}

inline TorsionGroup torsion(const Complex& c) { return torsion(c, build_reduced_boundary(c.n(), c.k())); }

inline Hypertree make_hypertree(Complex c) {
    auto g = torsion(c);
    return Hypertree{std::move(c), std::move(g.order), std::move(g.invariant_factors)};
}

/// Number of candidate facet sets: C(C(n, k+1), C(n-1, k)).
inline BigInt candidate_count(int n, int k) {
    auto c = constants(n, k);
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), binomial(n, k + 1), static_cast<unsigned long>(c.m3));
    return out;
}

struct EnumerationOptions {
    std::uint64_t max_candidates = 10'000'000;
    /// Candidate-rank range [first, last) in colex order of facet-rank sets,
    /// for sharding. last == 0 means "to the end".
    std::uint64_t first = 0;
    std::uint64_t last = 0;
};

/// Visits every hypertree in T_{n,k} exactly once, in colex order of its
/// facet-rank set. Returns the number of candidates examined.
inline std::uint64_t enumerate_hypertrees(int n, int k, const std::function<void(const Hypertree&)>& visit,
                                          const EnumerationOptions& opts = {}) {
    const auto consts = constants(n, k);
    const BigInt total = candidate_count(n, k);
    if (total > BigInt(static_cast<unsigned long>(opts.max_candidates))) throw BudgetExceededError(total);
    const std::uint64_t total_u = total.get_ui();
    const std::uint64_t last = opts.last == 0 ? total_u : std::min(opts.last, total_u);
    if (opts.first >= last) return 0;

    const auto rb = build_reduced_boundary(n, k);
    const std::size_t universe = rb.col_count();
    const std::size_t m3 = static_cast<std::size_t>(consts.m3);

    std::vector<std::size_t> comb(m3);
    {
        auto start = unrank(opts.first, static_cast<int>(universe), static_cast<int>(m3));
        for (std::size_t i = 0; i < m3; ++i) comb[i] = static_cast<std::size_t>(start[i] - 1);
    }
    Matrix<long> sq(rb.row_count(), m3);
    std::uint64_t examined = 0;
    for (std::uint64_t r = opts.first; r < last; ++r) {
        sq = rb.restrict_columns<long>(comb);
        long d = 0;
        BigInt det;
        if (bareiss_determinant_i64(sq, d))
            det = BigInt(d);
        else
            det = bareiss_determinant(matrix_cast<BigInt>(sq));
        ++examined;
        if (det != 0) {
            Hypertree t{Complex::from_ranks(n, k, comb), abs(det), {}};
            if (t.torsion_order > 1) t.invariant_factors = smith_normal_form(sq).invariant_factors();
            visit(t);
        }
        if (!next_combination_colex(comb, universe)) break;
    }
    return examined;
}

inline std::vector<Hypertree> all_hypertrees(int n, int k, const EnumerationOptions& opts = {}) {
    std::vector<Hypertree> out;
    enumerate_hypertrees(n, k, [&](const Hypertree& t) { out.push_back(t); }, opts);
    return out;
}

/// Largest torsion found among `budget` candidates. When the budget covers
/// the whole candidate space the search is exhaustive; otherwise candidates
/// are uniform random m3-subsets of the (k+1)-faces drawn from `seed`.
/// Returns nullopt if no hypertree was hit.
inline std::optional<Hypertree> max_torsion_search(int n, int k, std::uint64_t budget, std::uint64_t seed) {
    if (budget == 0) throw std::invalid_argument("max_torsion_search: budget must be positive");
    const auto consts = constants(n, k);
    std::optional<Hypertree> best;
    auto consider = [&](const Hypertree& t) {
        if (!best || t.torsion_order > best->torsion_order) best = t;
    };

    const BigInt total = candidate_count(n, k);
    if (total <= BigInt(static_cast<unsigned long>(budget))) {
        EnumerationOptions opts;
        opts.max_candidates = budget;
        enumerate_hypertrees(n, k, consider, opts);
        return best;
    }

    const auto rb = build_reduced_boundary(n, k);
    const std::size_t universe = rb.col_count();
    const std::size_t m3 = static_cast<std::size_t>(consts.m3);
    std::vector<std::size_t> pool(universe);
    Rng rng(seed);
    for (std::uint64_t draw = 0; draw < budget; ++draw) {
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < m3; ++i) std::swap(pool[i], pool[i + uniform_index(rng, universe - i)]);
        std::vector<std::size_t> cols(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m3));
        std::sort(cols.begin(), cols.end());
        auto sq = rb.restrict_columns<long>(cols);
        BigInt det = det_exact(sq);
        if (det == 0) continue;
        BigInt order = abs(det);
        if (best && order <= best->torsion_order) continue;
        Hypertree t{Complex::from_ranks(n, k, cols), order, {}};
        if (order > 1) t.invariant_factors = smith_normal_form(sq).invariant_factors();
        best = std::move(t);
    }
    return best;
}

}  // namespace hypertorsion
