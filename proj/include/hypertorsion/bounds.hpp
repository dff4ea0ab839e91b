#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "boundary.hpp"
#include "hypertree.hpp"
#include "random.hpp"
#include "simplicial.hpp"

// Every bound here is an upper bound on |H_{k-1}(T)|^2 and is carried as its
// natural logarithm; linear values are attached only when they fit a double.

namespace hypertorsion {

struct BoundReport {
    std::string name;
    double log_bound = 0.0;
    std::optional<double> value;            // exp(log_bound) when finite
    std::optional<std::vector<double>> witness;  // weights x_i attaining the value
    std::optional<double> alpha;
    DegreeSequence degrees;
    bool converged = true;
    std::size_t iterations = 0;

    /// Largest integer the bound allows for |H| itself: floor(exp(log/2)).
    std::optional<double> torsion_cap() const {
        double v = std::exp(0.5 * log_bound);
        if (!std::isfinite(v)) return std::nullopt;
        // absorb the rounding of values that are exact integers
        return std::floor(v * (1.0 + 1e-12));
    }
};

inline std::optional<double> linear_value(double log_bound) {
    double v = std::exp(log_bound);
    return std::isfinite(v) ? std::optional<double>(v) : std::nullopt;
}

inline BoundReport make_report(std::string name, double log_bound, DegreeSequence d = {}) {
    BoundReport r;
    r.name = std::move(name);
    r.log_bound = log_bound;
    r.value = linear_value(log_bound);
    r.degrees = std::move(d);
    return r;
}

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

struct KalaiBaseline {
    double log_baseline;  // (k+1)^{m2}
    double log_improved;  // ((k+1)/n)^{m1} (k+1)^{m2}
};

inline KalaiBaseline kalai_baseline(int n, int k) {
    const auto c = constants(n, k);
    const double lk = std::log(static_cast<double>(k + 1));
    return {static_cast<double>(c.m2) * lk,
            static_cast<double>(c.m1) * (lk - std::log(static_cast<double>(n))) + static_cast<double>(c.m2) * lk};
}

// ---------------------------------------------------------------------------
// Hadamard bound  prod_i (x_i^2)^{m1-d_i} z^{-m1} prod_{t in T} sum_{i in t} x_i^2
// ---------------------------------------------------------------------------

namespace detail {

inline double log_sum_exp(std::span<const double> u) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : u) mx = std::max(mx, v);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double v : u) s += std::exp(v - mx);
    return mx + std::log(s);
}

}  // namespace detail

/// The logarithm of the Hadamard bound as a function of u_i = log x_i^2:
///   F(u) = sum_i (m1 - d_i) u_i - m1 LSE(u) + sum_t LSE(u_t).
/// F is invariant under u -> u + c.
class MainBoundObjective {
public:
    explicit MainBoundObjective(const Complex& c)
        : n_(c.n()), k_(c.k()), consts_(constants(c.n(), c.k())), degrees_(degree_sequence(c)) {
        facets_.reserve(c.facets().size());
        for (const auto& f : c.facets()) {
            std::vector<std::size_t> vs;
            for (auto v : f.vertices()) vs.push_back(static_cast<std::size_t>(v - 1));
            if (vs.size() > kMaxFacetSize) throw std::invalid_argument("MainBoundObjective: facet too large");
            facets_.push_back(std::move(vs));
        }
    }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    const BinomialConstants& consts() const noexcept { return consts_; }
    const DegreeSequence& degrees() const noexcept { return degrees_; }

    double value(std::span<const double> u) const {
        double f = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) f += static_cast<double>(consts_.m1 - degrees_[i]) * u[i];
        f -= static_cast<double>(consts_.m1) * detail::log_sum_exp(u);
        double buf[kMaxFacetSize];
        for (const auto& t : facets_) {
            for (std::size_t j = 0; j < t.size(); ++j) buf[j] = u[t[j]];
            f += detail::log_sum_exp(std::span<const double>(buf, t.size()));
        }
        return f;
    }

    /// Value and gradient
    ///   dF/du_i = (m1 - d_i) - m1 softmax_i(u) + sum_{t ni i} softmax_{t,i}(u).
    double value_and_gradient(std::span<const double> u, std::span<double> grad) const {
        const std::size_t n = u.size();
        double mx = *std::max_element(u.begin(), u.end());
        double z = 0.0;
        for (double v : u) z += std::exp(v - mx);
        double f = -static_cast<double>(consts_.m1) * (mx + std::log(z));
        for (std::size_t i = 0; i < n; ++i) {
            f += static_cast<double>(consts_.m1 - degrees_[i]) * u[i];
            grad[i] = static_cast<double>(consts_.m1 - degrees_[i]) -
                      static_cast<double>(consts_.m1) * std::exp(u[i] - mx) / z;
        }
        double e[kMaxFacetSize];
        for (const auto& t : facets_) {
            double tm = -std::numeric_limits<double>::infinity();
            for (auto i : t) tm = std::max(tm, u[i]);
            double s = 0.0;
            for (std::size_t j = 0; j < t.size(); ++j) {
                e[j] = std::exp(u[t[j]] - tm);
                s += e[j];
            }
            f += tm + std::log(s);
            for (std::size_t j = 0; j < t.size(); ++j) grad[t[j]] += e[j] / s;
        }
        return f;
    }

private:
    static constexpr std::size_t kMaxFacetSize = 64;

    int n_;
    int k_;
    BinomialConstants consts_;
    DegreeSequence degrees_;
    std::vector<std::vector<std::size_t>> facets_;
};

inline double main_bound_at(const Hypertree& t, const WeightVector<double>& w) {
    if (w.size() != static_cast<std::size_t>(t.n())) throw std::invalid_argument("main_bound_at: weight count != n");
    MainBoundObjective obj(t.complex);
    std::vector<double> u;
    for (double x2 : w.squares()) u.push_back(std::log(x2));
    return obj.value(u);
}

struct OptimizerOptions {
    /// Seeded random starts, run after the all-ones and degree-based starts.
    int random_starts = 2;
    std::uint64_t seed = 0;
    std::size_t max_iterations = 10'000;
    double gradient_tolerance = 1e-8;
    double armijo = 1e-4;
    double shrink = 0.5;
    /// Stand-in for u = -infinity on coordinates with d_i = m1.
    double pinned_log_weight = -60.0;
    double degree_floor = 1e-3;
};

namespace detail {

struct DescentResult {
    std::vector<double> u;
    double value;
    std::size_t iterations;
    bool converged;
};

/// Gradient descent with Armijo backtracking over the free coordinates.
inline DescentResult descend(const MainBoundObjective& obj, std::vector<double> u, const std::vector<bool>& pinned,
                             const OptimizerOptions& opt) {
    const std::size_t n = u.size();
    std::vector<double> g(n), trial(n), g_trial(n);
    double f = obj.value_and_gradient(u, g);
    double step = 1.0;
    std::size_t it = 0;
    bool converged = false;
    for (; it < opt.max_iterations; ++it) {
        double gmax = 0.0, gsq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pinned[i]) g[i] = 0.0;
            gmax = std::max(gmax, std::abs(g[i]));
            gsq += g[i] * g[i];
        }
        if (gmax < opt.gradient_tolerance) {
            converged = true;
            break;
        }
        step = std::min(step * 2.0, 1e6);
        double ft = 0.0;
        for (;;) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] - step * g[i];
            ft = obj.value_and_gradient(trial, g_trial);
            if (ft <= f - opt.armijo * step * gsq) break;
            step *= opt.shrink;
            if (step < 1e-20) break;
        }
        if (!(ft < f)) break;  // no progress possible at double precision
        u.swap(trial);
        g.swap(g_trial);
        f = ft;
    }
    return {std::move(u), f, it, converged};
}

}  // namespace detail

/// Numerical infimum of the Hadamard bound over positive weights.
///
/// Starts: all ones (all coordinates free), degree-based x_i^2 =
/// max(d_i - m1, floor), then seeded random log-weights in [-2, 2]. For the
/// non-uniform starts, coordinates with d_i = m1 are pinned near x_i = 0.
/// Whatever the convergence, the reported value is the bound at an actual
/// weight vector and therefore valid.
inline BoundReport main_bound_optimize(const Hypertree& t, const OptimizerOptions& opt = {}) {
    MainBoundObjective obj(t.complex);
    const auto& d = obj.degrees();
    const auto m1 = obj.consts().m1;
    const std::size_t n = d.size();

    std::vector<std::vector<double>> starts;
    std::vector<std::vector<bool>> pins;
    std::vector<bool> none(n, false), at_min(n, false);
    for (std::size_t i = 0; i < n; ++i) at_min[i] = d[i] == m1;

    starts.emplace_back(n, 0.0);
    pins.push_back(none);
    {
        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i)
            u[i] = at_min[i] ? opt.pinned_log_weight
                             : std::log(std::max(static_cast<double>(d[i] - m1), opt.degree_floor));
        starts.push_back(std::move(u));
        pins.push_back(at_min);
    }
    Rng rng(opt.seed);
    for (int s = 0; s < opt.random_starts; ++s) {
        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = 4.0 * uniform01(rng) - 2.0;
            u[i] = at_min[i] ? opt.pinned_log_weight : r;
        }
        starts.push_back(std::move(u));
        pins.push_back(at_min);
    }

    BoundReport best = make_report("main", std::numeric_limits<double>::infinity(), d);
    std::size_t total_iterations = 0;
    for (std::size_t s = 0; s < starts.size(); ++s) {
        auto res = detail::descend(obj, starts[s], pins[s], opt);
        total_iterations += res.iterations;
        if (res.value < best.log_bound) {
            best.log_bound = res.value;
            best.converged = res.converged;
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = std::exp(0.5 * res.u[i]);
            best.witness = std::move(x);
        }
    }
    best.value = linear_value(best.log_bound);
    best.iterations = total_iterations;
    return best;
}

// ---------------------------------------------------------------------------
// Degree-only bounds
// ---------------------------------------------------------------------------

inline void require_hypertree_degrees(int n, int k, const DegreeSequence& d) {
    if (!is_hypertree_degree_sequence(d, n, k))
        throw std::invalid_argument("not a hypertree degree sequence (need m1 <= d_i <= m3, sum (k+1) m3)");
}

/// Single-vertex bound from a vertex of degree d, optimized at
/// t* = (m3 - d)/(d - m1).
inline double oned_bound(int n, int k, std::int64_t d) {
    const auto c = constants(n, k);
    if (d < c.m1 || d > c.m3) throw std::domain_error("oned_bound: degree outside [m1, m3]");
    const double m1 = static_cast<double>(c.m1), m2 = static_cast<double>(c.m2), m3 = static_cast<double>(c.m3);
    const double ratio = static_cast<double>(k) / static_cast<double>(n - 1);
    const double lk = std::log(static_cast<double>(k + 1));
    if (d == c.m1) return m1 * std::log(ratio) + m2 * lk;
    const double dd = static_cast<double>(d);
    return m1 * std::log((dd - m1) / m2) + dd * std::log1p(ratio * (m3 - dd) / (dd - m1)) + (m3 - dd) * lk;
}

/// AM-GM weakening of the Hadamard bound, from squared weights:
///   prod_i (x_i^2)^{m1-d_i} z^{-m1} (sum_i d_i x_i^2 / m3)^{m3}.
/// A squared weight may be zero only where d_i = m1 (0^0 = 1).
inline double amgm_bound_at(int k, const DegreeSequence& d, std::span<const double> x2) {
    const int n = static_cast<int>(d.size());
    const auto c = constants(n, k);
    if (x2.size() != d.size()) throw std::invalid_argument("amgm_bound_at: weight count != n");
    double z = 0.0, weighted = 0.0, acc = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (x2[i] < 0.0) throw std::invalid_argument("amgm_bound_at: negative squared weight");
        if (x2[i] == 0.0) {
            if (d[i] != c.m1) throw std::domain_error("amgm_bound_at: zero weight allowed only where d_i = m1");
            continue;
        }
        acc += static_cast<double>(c.m1 - d[i]) * std::log(x2[i]);
        z += x2[i];
        weighted += static_cast<double>(d[i]) * x2[i];
    }
    if (z <= 0.0) throw std::invalid_argument("amgm_bound_at: all weights zero");
    return acc - static_cast<double>(c.m1) * std::log(z) +
           static_cast<double>(c.m3) * std::log(weighted / static_cast<double>(c.m3));
}

inline double amgm_bound_at(int k, const DegreeSequence& d, const WeightVector<double>& w) {
    return amgm_bound_at(k, d, std::span<const double>(w.squares()));
}

/// prod_i (d_i - m1)^{m1 - d_i} / m2^{m1} * (sum d_i^2 / m3 - (k+1) m1)^{m3}.
inline double simple_bound(int n, int k, const DegreeSequence& d) {
    require_hypertree_degrees(n, k, d);
    const auto c = constants(n, k);
    double acc = 0.0, sq = 0.0;
    for (auto di : d.degrees) {
        sq += static_cast<double>(di) * static_cast<double>(di);
        if (di > c.m1) acc += static_cast<double>(c.m1 - di) * std::log(static_cast<double>(di - c.m1));
    }
    const double inner = sq / static_cast<double>(c.m3) - static_cast<double>((k + 1) * c.m1);
    return acc - static_cast<double>(c.m1) * std::log(static_cast<double>(c.m2)) +
           static_cast<double>(c.m3) * std::log(inner);
}

struct AlphaSolution {
    double alpha;
    std::size_t i_star;  // 1-based position of the first degree > m1 after sorting
    double residual;
    std::size_t iterations;
};

/// Residual h(alpha) = alpha sum_i (d_i - m1)/(d_i - m1 alpha) - 1 over the
/// degrees exceeding m1.
inline double alpha_residual(std::span<const std::int64_t> sorted_excess_degrees, std::int64_t m1, double alpha) {
    double s = 0.0;
    for (auto di : sorted_excess_degrees)
        s += static_cast<double>(di - m1) / (static_cast<double>(di) - static_cast<double>(m1) * alpha);
    return alpha * s - 1.0;
}

/// Bisection for the unique root of the residual on [d_{i*}/m3, d_n/m3].
inline AlphaSolution solve_alpha(int n, int k, const DegreeSequence& d) {
    require_hypertree_degrees(n, k, d);
    const auto c = constants(n, k);
    std::vector<std::int64_t> sorted = d.degrees;
    std::sort(sorted.begin(), sorted.end());
    auto first = std::find_if(sorted.begin(), sorted.end(), [&](auto v) { return v > c.m1; });
    if (first == sorted.end()) throw std::invalid_argument("solve_alpha: no degree exceeds m1");
    const std::size_t i_star = static_cast<std::size_t>(first - sorted.begin()) + 1;
    std::span<const std::int64_t> excess(&*first, static_cast<std::size_t>(sorted.end() - first));

    const double m3 = static_cast<double>(c.m3);
    double lo = static_cast<double>(excess.front()) / m3;
    double hi = static_cast<double>(excess.back()) / m3;
    if (excess.front() == excess.back()) {
        return {lo, i_star, alpha_residual(excess, c.m1, lo), 0};
    }
    double hlo = alpha_residual(excess, c.m1, lo);
    double hhi = alpha_residual(excess, c.m1, hi);
    if (hlo > 0.0 || hhi < 0.0) throw std::logic_error("solve_alpha: residual does not change sign on the bracket");
    std::size_t it = 0;
    double mid = lo, hmid = hlo;
    for (; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        hmid = alpha_residual(excess, c.m1, mid);
        if (hmid == 0.0) break;
        if (hmid < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    // report the better endpoint
    const double rl = std::abs(alpha_residual(excess, c.m1, lo));
    const double rh = std::abs(alpha_residual(excess, c.m1, hi));
    double alpha = std::abs(hmid) <= std::min(rl, rh) ? mid : (rl <= rh ? lo : hi);
    return {alpha, i_star, alpha_residual(excess, c.m1, alpha), it};
}

struct TighterBound {
    double log_tight;
    double log_middle;
    double log_loose;
    AlphaSolution alpha;
    bool chain_ok;  // tight <= middle <= loose
};

/// The nested bounds at the root alpha:
///   alpha^{m1} prod_{i>=i*} (1 + (1-alpha) m1/(d_i - m1))^{d_i - m1}
///   <= (alpha e^{(1-alpha)(n-i*+1)})^{m1} <= e^{(1-alpha)(n-i*) m1}.
inline TighterBound tighter_bound(int n, int k, const DegreeSequence& d) {
    const auto sol = solve_alpha(n, k, d);
    const auto c = constants(n, k);
    const double a = sol.alpha;
    const double m1 = static_cast<double>(c.m1);
    double tight = m1 * std::log(a);
    for (auto di : d.degrees) {
        if (di <= c.m1) continue;
        const double e = static_cast<double>(di - c.m1);
        tight += e * std::log1p((1.0 - a) * m1 / e);
    }
    const double tail = static_cast<double>(static_cast<std::size_t>(n) - sol.i_star);
    const double middle = m1 * (std::log(a) + (1.0 - a) * (tail + 1.0));
    const double loose = (1.0 - a) * tail * m1;
    const double eps = 1e-12 * std::max({1.0, std::abs(tight), std::abs(loose)});
    return {tight, middle, loose, sol, tight <= middle + eps && middle <= loose + eps};
}

/// All bounds for one hypertree, in a fixed order.
inline std::vector<BoundReport> all_bounds(const Hypertree& t, const OptimizerOptions& opt = {}) {
    const int n = t.n(), k = t.k();
    const auto d = t.degrees();
    std::vector<BoundReport> out;
    const auto base = kalai_baseline(n, k);
    out.push_back(make_report("baseline", base.log_baseline, d));
    out.push_back(make_report("baseline_improved", base.log_improved, d));
    out.push_back(main_bound_optimize(t, opt));
    {
        // tightest single-vertex bound over all vertices
        double best = std::numeric_limits<double>::infinity();
        for (auto di : d.degrees) best = std::min(best, oned_bound(n, k, di));
        out.push_back(make_report("oned", best, d));
    }
    out.push_back(make_report("amgm", amgm_bound_at(k, d, WeightVector<double>::ones(n)), d));
    out.push_back(make_report("simple", simple_bound(n, k, d), d));
    {
        auto tb = tighter_bound(n, k, d);
        auto r = make_report("tighter", tb.log_tight, d);
        r.alpha = tb.alpha.alpha;
        out.push_back(r);
        out.push_back(make_report("tighter_middle", tb.log_middle, d));
        out.push_back(make_report("tighter_loose", tb.log_loose, d));
    }
    return out;
}

}  // namespace hypertorsion
