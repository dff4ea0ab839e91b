#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "hypertree.hpp"
#include "measure.hpp"
#include "simplicial.hpp"

namespace hypertorsion {

// ---------------------------------------------------------------------------
// Generating function: for each labeled degree sequence d, the sum of |H|^2
// over hypertrees with that sequence is the coefficient of prod e_i^{d_i} in
// (sum e_i)^{m2} prod e_i^{m1}, i.e. m2! / prod (d_i - m1)!.
// ---------------------------------------------------------------------------

struct GenfuncRow {
    std::vector<std::int64_t> degrees;
    std::uint64_t count = 0;  // hypertrees with this labeled degree sequence
    BigInt torsion_squared_sum;
    BigInt expected;
    bool ok() const { return torsion_squared_sum == expected; }
};

struct GenfuncReport {
    int n = 0;
    int k = 0;
    std::uint64_t candidates = 0;
    std::uint64_t hypertrees = 0;
    std::vector<GenfuncRow> rows;  // lexicographic in the degree sequence
    BigInt total;                  // sum of |H|^2 over all hypertrees
    BigInt expected_total;         // n^{m2}
    bool all_pass() const {
        if (total != expected_total) return false;
        return std::all_of(rows.begin(), rows.end(), [](const GenfuncRow& r) { return r.ok(); });
    }
};

inline BigInt multinomial(std::int64_t total, std::span<const std::int64_t> parts) {
    BigInt num, den(1), f;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(total));
    for (auto p : parts) {
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(p));
        den *= f;
    }
    return num / den;
}

inline GenfuncReport verify_genfunc(int n, int k, std::uint64_t max_candidates = 10'000'000) {
    const auto c = constants(n, k);
    GenfuncReport rep;
    rep.n = n;
    rep.k = k;
    mpz_ui_pow_ui(rep.expected_total.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(c.m2));

    std::map<std::vector<std::int64_t>, GenfuncRow> groups;
    // every monomial of the right-hand side has a positive coefficient
    std::vector<std::int64_t> excess(static_cast<std::size_t>(n));
    std::function<void(std::size_t, std::int64_t)> compose = [&](std::size_t i, std::int64_t left) {
        if (i + 1 == excess.size()) {
            excess[i] = left;
            GenfuncRow row;
            for (auto e : excess) row.degrees.push_back(e + c.m1);
            row.expected = multinomial(c.m2, excess);
            groups.emplace(row.degrees, row);
            return;
        }
        for (std::int64_t e = 0; e <= left; ++e) {
            excess[i] = e;
            compose(i + 1, left - e);
        }
    };
    compose(0, c.m2);

    EnumerationOptions opts;
    opts.max_candidates = max_candidates;
    rep.candidates = enumerate_hypertrees(
        n, k,
        [&](const Hypertree& t) {
            ++rep.hypertrees;
            const BigInt sq = t.torsion_order * t.torsion_order;
            rep.total += sq;
            auto d = t.degrees();
            auto it = groups.find(d.degrees);
            if (it == groups.end()) {
                // impossible for a true hypertree; surfaces as a failing row
                GenfuncRow row;
                row.degrees = d.degrees;
                row.expected = 0;
                it = groups.emplace(d.degrees, row).first;
            }
            ++it->second.count;
            it->second.torsion_squared_sum += sq;
        },
        opts);
    for (auto& [key, row] : groups) rep.rows.push_back(std::move(row));
    return rep;
}

// ---------------------------------------------------------------------------
// Bound validity sweep
// ---------------------------------------------------------------------------

struct BoundCheck {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    /// min over hypertrees of log(bound) - log(|H|^2)
    double worst_slack = std::numeric_limits<double>::infinity();
    std::vector<std::int64_t> worst_degrees;
};

struct BoundSweepOptions {
    OptimizerOptions optimizer{.random_starts = 1, .seed = 0, .max_iterations = 500};
    double log_tolerance = 1e-6;
    std::uint64_t max_candidates = 10'000'000;
};

struct BoundSweepReport {
    int n = 0;
    int k = 0;
    std::uint64_t hypertrees = 0;
    std::vector<BoundCheck> checks;
    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.violations == 0; });
    }
};

inline BoundSweepReport verify_bounds(int n, int k, const BoundSweepOptions& opts = {}) {
    BoundSweepReport rep;
    rep.n = n;
    rep.k = k;
    const auto base = kalai_baseline(n, k);
    const std::vector<std::string> names = {"baseline", "baseline_improved", "main", "oned",
                                            "amgm",     "simple",            "tighter"};
    for (const auto& nm : names) {
        BoundCheck c;
        c.name = nm;
        rep.checks.push_back(std::move(c));
    }
    auto record = [&](std::size_t idx, double log_bound, double log_sq, const DegreeSequence& d) {
        auto& c = rep.checks[idx];
        ++c.checked;
        const double slack = log_bound - log_sq;
        if (slack < -opts.log_tolerance) ++c.violations;
        if (slack < c.worst_slack) {
            c.worst_slack = slack;
            c.worst_degrees = d.degrees;
        }
    };
    const auto ones = WeightVector<double>::ones(n);

    EnumerationOptions eopts;
    eopts.max_candidates = opts.max_candidates;
    enumerate_hypertrees(
        n, k,
        [&](const Hypertree& t) {
            ++rep.hypertrees;
            const auto d = t.degrees();
            const double log_sq = 2.0 * std::log(t.torsion_order.get_d());
            record(0, base.log_baseline, log_sq, d);
            record(1, base.log_improved, log_sq, d);
            record(2, main_bound_optimize(t, opts.optimizer).log_bound, log_sq, d);
            for (auto di : d.degrees) record(3, oned_bound(n, k, di), log_sq, d);
            record(4, amgm_bound_at(k, d, ones), log_sq, d);
            record(5, simple_bound(n, k, d), log_sq, d);
            record(6, tighter_bound(n, k, d).log_tight, log_sq, d);
        },
        eopts);
    return rep;
}

// ---------------------------------------------------------------------------
// Sampler goodness of fit
// ---------------------------------------------------------------------------

struct SamplerReport {
    std::uint64_t samples = 0;
    std::uint64_t support = 0;       // |T_{n,k}|
    std::uint64_t off_support = 0;   // draws that were not hypertrees
    double total_variation = 0.0;    // (1/2) sum |empirical - exact|
    double max_deviation = 0.0;      // max |empirical - exact|
    double exact_mass = 0.0;         // sum of exact densities (should be 1)
    double threshold = 0.01;
    bool pass() const { return off_support == 0 && total_variation < threshold; }
};

inline SamplerReport verify_sampler(int n, int k, const WeightVector<double>& w, std::uint64_t samples,
                                    std::uint64_t seed, double tv_threshold = 0.01,
                                    std::uint64_t max_candidates = 10'000'000) {
    SamplerReport rep;
    rep.samples = samples;
    rep.threshold = tv_threshold;
    std::map<std::vector<std::size_t>, std::pair<double, std::uint64_t>> table;  // exact, observed
    EnumerationOptions eopts;
    eopts.max_candidates = max_candidates;
    enumerate_hypertrees(
        n, k, [&](const Hypertree& t) { table[t.complex.facet_ranks()] = {density(t, w), 0}; }, eopts);
    rep.support = table.size();

    HypertreeSampler sampler(kernel_closed_form(n, k, w));
    Rng rng(seed);
    for (std::uint64_t s = 0; s < samples; ++s) {
        auto ranks = sampler.sample_ranks(rng);
        auto it = table.find(ranks);
        if (it == table.end())
            ++rep.off_support;
        else
            ++it->second.second;
    }
    double tv = 0.0;
    for (const auto& [key, entry] : table) {
        const double emp = samples ? static_cast<double>(entry.second) / static_cast<double>(samples) : 0.0;
        const double dev = std::abs(emp - entry.first);
        tv += dev;
        rep.max_deviation = std::max(rep.max_deviation, dev);
        rep.exact_mass += entry.first;
    }
    if (samples) tv += static_cast<double>(rep.off_support) / static_cast<double>(samples);
    rep.total_variation = 0.5 * tv;
    return rep;
}

}  // namespace hypertorsion
