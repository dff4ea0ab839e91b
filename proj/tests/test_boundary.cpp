#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <hypertorsion/boundary.hpp>
#include <hypertorsion/exact_linalg.hpp>

#include "oracles.hpp"

using namespace hypertorsion;

namespace {

std::size_t face_rank(std::initializer_list<Vertex> vs) { return rank(Simplex(vs).vertices()); }

}  // namespace

TEST_CASE("boundary signs follow the removed-vertex position", "[boundary]") {
    auto d = build_boundary(3, 1);
    const auto col12 = face_rank({1, 2});
    CHECK(d.entry(face_rank({1}), col12) == -1);
    CHECK(d.entry(face_rank({2}), col12) == 1);
    CHECK(d.entry(face_rank({3}), col12) == 0);

    auto d2 = build_boundary(4, 2);
    const auto col123 = face_rank({1, 2, 3});
    CHECK(d2.entry(face_rank({2, 3}), col123) == 1);
    CHECK(d2.entry(face_rank({1, 3}), col123) == -1);
    CHECK(d2.entry(face_rank({1, 2}), col123) == 1);
}

TEST_CASE("boundary matches the definition entrywise", "[boundary][property]") {
    for (int n = 2; n <= 7; ++n)
        for (int k = 1; k <= n - 1; ++k) {
            REQUIRE(build_boundary(n, k).to_dense<int>() == oracle::boundary_by_definition(n, k, false));
            REQUIRE(build_reduced_boundary(n, k).to_dense<int>() == oracle::boundary_by_definition(n, k, true));
        }
}

TEST_CASE("boundary of a boundary vanishes", "[boundary][property]") {
    for (int n = 3; n <= 8; ++n)
        for (int k = 1; k + 1 <= n - 1; ++k) {
            auto lower = build_boundary(n, k).to_dense<long>();
            auto upper = build_boundary(n, k + 1).to_dense<long>();
            auto prod = lower * upper;
            REQUIRE(prod == Matrix<long>(prod.rows(), prod.cols()));
        }
}

TEST_CASE("every column has k+1 alternating nonzeros", "[boundary][property]") {
    for (int n = 3; n <= 8; ++n)
        for (int k = 1; k <= n - 1; ++k) {
            auto d = build_boundary(n, k);
            for (std::size_t c = 0; c < d.col_count(); ++c) {
                auto col = d.column(c);
                REQUIRE(col.size() == static_cast<std::size_t>(k + 1));
                for (std::size_t m = 0; m < col.size(); ++m) REQUIRE(col[m].sign == ((m % 2 == 0) ? 1 : -1));
            }
        }
}

TEST_CASE("reduced boundary shape and rank", "[boundary]") {
    auto r = build_reduced_boundary(4, 1);
    CHECK(r.row_count() == 3);
    CHECK(r.col_count() == 6);
    auto r52 = build_reduced_boundary(5, 2);
    CHECK(r52.row_count() == 6);
    CHECK(r52.col_count() == 10);
    CHECK(oracle::rational_rank(r52.to_dense<BigRational>()) == 6);
}

TEST_CASE("restrict_columns", "[boundary]") {
    auto rb = build_reduced_boundary(3, 1);
    std::vector<Simplex> tree{{1, 3}, {1, 2}};  // order of the input is irrelevant
    auto m = restrict_columns(rb, tree);
    CHECK(m == Matrix<long>{{-1, -1}, {1, 0}});
    CHECK(abs(det_exact(m)) == 1);

    auto cone = oracle::cone_5_2();
    auto rb52 = build_reduced_boundary(5, 2);
    auto mc = restrict_columns(rb52, cone.facets());
    CHECK(abs(det_exact(mc)) == 1);
    CHECK(abs(oracle::cofactor_det(matrix_cast<BigInt>(mc))) == 1);

    std::vector<Simplex> too_few{{1, 2}};
    CHECK_THROWS_AS(restrict_columns(rb, too_few), std::invalid_argument);
}

TEST_CASE("weighted Gram matrix on the triangle", "[boundary]") {
    auto w = WeightVector<BigRational>::ones(3);
    auto g = build_weighted_gram(3, 1, w);
    CHECK(g == Matrix<BigRational>{{2, -1}, {-1, 2}});
    CHECK(determinant(g) == 3);  // z^{m2} with z = 3, m2 = 1
}

TEST_CASE("weighted Gram closed form equals the explicit product", "[boundary][property]") {
    Rng rng(11);
    for (auto [n, k] : {std::pair{4, 1}, {5, 1}, {5, 2}, {6, 2}, {6, 3}}) {
        for (int trial = 0; trial < 5; ++trial) {
            auto x = oracle::random_rational_weights(rng, n);
            REQUIRE(build_weighted_gram(n, k, WeightVector<BigRational>(x)) == oracle::gram_by_product(n, k, x));
        }
    }
}

TEST_CASE("Gram determinant normalization at x = (1,2,1,1,1)", "[boundary]") {
    WeightVector<BigRational> w({1, 2, 1, 1, 1});
    auto c = constants(5, 2);
    BigRational expect = 1;
    for (int i = 0; i < c.m2; ++i) expect *= w.z();
    for (const auto& x2 : w.squares())
        for (int i = 0; i < c.m1; ++i) expect *= x2;
    CHECK(determinant(build_weighted_gram(5, 2, w)) == expect);
    CHECK(expect == 8 * 8 * 8 * 64);
}

TEST_CASE("weights must be strictly positive", "[boundary]") {
    CHECK_THROWS_AS(WeightVector<double>({1.0, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector<double>({1.0, -2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector<BigRational>({BigRational(-1, 2)}), std::invalid_argument);
    WeightVector<double> w({1.0, 2.0});
    CHECK(w.z() == 5.0);
}

TEST_CASE("CSV dump layout", "[boundary]") {
    std::ostringstream os;
    write_boundary_csv(os, build_boundary(3, 1));
    CHECK(os.str() == "n,k,rows,cols\n3,1,3,3\n-1,-1,0\n1,0,-1\n0,1,1\n");
}
