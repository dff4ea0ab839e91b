#include <catch2/catch_amalgamated.hpp>

#include <hypertorsion/hypertree.hpp>

#include "oracles.hpp"

using namespace hypertorsion;

TEST_CASE("is_hypertree", "[hypertree]") {
    CHECK(is_hypertree(Complex(4, 1, {{1, 2}, {2, 3}, {3, 4}})));
    CHECK_FALSE(is_hypertree(Complex(4, 1, {{1, 2}, {1, 3}, {2, 3}})));
    CHECK_FALSE(is_hypertree(Complex(4, 1, {{1, 2}, {2, 3}})));
    CHECK(is_hypertree(oracle::rp2_6()));
    CHECK(is_hypertree(oracle::cone_5_2()));
}

TEST_CASE("torsion of simple complexes", "[hypertree]") {
    auto tree = torsion(Complex(4, 1, {{1, 2}, {2, 3}, {3, 4}}));
    CHECK(tree.order == 1);
    CHECK(tree.invariant_factors.empty());

    auto rp2 = torsion(oracle::rp2_6());
    CHECK(rp2.order == 2);
    CHECK(rp2.invariant_factors == std::vector<BigInt>{2});

    auto cone = torsion(oracle::cone_5_2());
    CHECK(cone.order == 1);
    CHECK(cone.invariant_factors.empty());

    CHECK_THROWS_AS(torsion(Complex(4, 1, {{1, 2}, {1, 3}, {2, 3}})), NotAHypertreeError);
    CHECK_THROWS_AS(torsion(Complex(4, 1, {{1, 2}})), NotAHypertreeError);
}

TEST_CASE("every labeled tree is torsion-free", "[hypertree]") {
    for (int n = 3; n <= 6; ++n) {
        auto trees = all_hypertrees(n, 1);
        // Cayley
        REQUIRE(trees.size() == static_cast<std::size_t>(std::pow(n, n - 2) + 0.5));
        for (const auto& t : trees) {
            REQUIRE(t.torsion_order == 1);
            REQUIRE(t.invariant_factors.empty());
        }
    }
}

TEST_CASE("enumeration counts", "[hypertree]") {
    CHECK(all_hypertrees(4, 1).size() == 16);

    BigInt sum = 0;
    for (const auto& t : all_hypertrees(5, 2)) sum += t.torsion_order * t.torsion_order;
    CHECK(sum == 125);
}

TEST_CASE("weighted count equals n^{m2}", "[hypertree][property]") {
    for (auto [n, k] : {std::pair{4, 1}, {5, 1}, {6, 1}, {5, 2}, {6, 2}}) {
        BigInt sum = 0;
        enumerate_hypertrees(n, k, [&](const Hypertree& t) { sum += t.torsion_order * t.torsion_order; });
        BigInt expect;
        mpz_ui_pow_ui(expect.get_mpz_t(), static_cast<unsigned long>(n),
                      static_cast<unsigned long>(constants(n, k).m2));
        REQUIRE(sum == expect);
    }
}

TEST_CASE("enumerated hypertrees satisfy the structural invariants", "[hypertree][property]") {
    for (auto [n, k] : {std::pair{5, 2}, {6, 2}, {6, 1}}) {
        const auto c = constants(n, k);
        const auto rb = build_reduced_boundary(n, k);
        std::uint64_t seen = 0, with_torsion = 0;
        enumerate_hypertrees(n, k, [&](const Hypertree& t) {
            ++seen;
            REQUIRE(t.torsion_order >= 1);
            REQUIRE(t.complex.facets().size() == static_cast<std::size_t>(c.m3));
            REQUIRE(is_hypertree_degree_sequence(t.degrees(), n, k));
            // SNF path independently of the determinant fast path
            auto snf = smith_normal_form(restrict_columns(rb, t.complex.facets()));
            BigInt prod = 1;
            for (const auto& f : snf.invariant_factors()) prod *= f;
            REQUIRE(prod == t.torsion_order);
            REQUIRE(snf.invariant_factors() == t.invariant_factors);
            if (t.torsion_order > 1) ++with_torsion;
        });
        REQUIRE(seen > 0);
        if (n == 6 && k == 2) CHECK(with_torsion == 12);  // 6!/|A_5| labelings of RP2_6
        if (n == 5) CHECK(with_torsion == 0);
    }
}

TEST_CASE("sharded enumeration covers the candidate space exactly once", "[hypertree]") {
    const auto full = all_hypertrees(5, 2);
    const std::uint64_t total = candidate_count(5, 2).get_ui();
    REQUIRE(total == 210);
    std::vector<std::vector<std::size_t>> parts;
    std::uint64_t examined = 0;
    for (std::uint64_t lo = 0; lo < total; lo += 37) {
        EnumerationOptions o;
        o.first = lo;
        o.last = std::min<std::uint64_t>(lo + 37, total);
        examined += enumerate_hypertrees(5, 2, [&](const Hypertree& t) { parts.push_back(t.complex.facet_ranks()); }, o);
    }
    CHECK(examined == total);
    REQUIRE(parts.size() == full.size());
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(parts[i] == full[i].complex.facet_ranks());
}

TEST_CASE("enumeration budget guard", "[hypertree]") {
    EnumerationOptions o;
    o.max_candidates = 100;
    try {
        enumerate_hypertrees(5, 2, [](const Hypertree&) {}, o);
        FAIL("expected BudgetExceededError");
    } catch (const BudgetExceededError& e) {
        CHECK(e.candidates() == 210);
    }
    CHECK_THROWS_AS(enumerate_hypertrees(8, 3, [](const Hypertree&) {}), BudgetExceededError);
}

TEST_CASE("max torsion search", "[hypertree]") {
    auto r52 = max_torsion_search(5, 2, 1000, 1);
    REQUIRE(r52.has_value());
    CHECK(r52->torsion_order == 1);
    auto r52_small = max_torsion_search(5, 2, 5, 1);  // random path
    if (r52_small) CHECK(r52_small->torsion_order == 1);

    auto r62 = max_torsion_search(6, 2, 184756, 0);
    REQUIRE(r62.has_value());
    CHECK(r62->torsion_order == 2);
    CHECK(r62->invariant_factors == std::vector<BigInt>{2});
    CHECK(r62->degrees().degrees == std::vector<std::int64_t>(6, 5));

    CHECK_THROWS_AS(max_torsion_search(5, 2, 0, 1), std::invalid_argument);
}

TEST_CASE("random torsion search is deterministic and returns hypertrees", "[hypertree]") {
    auto a = max_torsion_search(6, 2, 20000, 42);
    auto b = max_torsion_search(6, 2, 20000, 42);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->complex.facet_ranks() == b->complex.facet_ranks());
    CHECK(is_hypertree(a->complex));
    CHECK(torsion(a->complex).order == a->torsion_order);
}
