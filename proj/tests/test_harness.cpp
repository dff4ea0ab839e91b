#include <catch2/catch_amalgamated.hpp>

#include <hypertorsion/harness.hpp>

using namespace hypertorsion;

TEST_CASE("multinomial coefficients", "[harness]") {
    std::vector<std::int64_t> parts{0, 0, 0, 1, 2};
    CHECK(multinomial(3, parts) == 3);
    std::vector<std::int64_t> six{1, 1, 1, 1, 1, 1};
    CHECK(multinomial(6, six) == 720);
}

TEST_CASE("generating function on labeled trees", "[harness]") {
    auto rep = verify_genfunc(5, 1);
    CHECK(rep.total == 125);
    CHECK(rep.hypertrees == 125);
    CHECK(rep.candidates == 210);
    CHECK(rep.all_pass());
}

TEST_CASE("generating function at (5,2) groups by labeled degree sequence", "[harness]") {
    auto rep = verify_genfunc(5, 2);
    CHECK(rep.total == 125);
    CHECK(rep.expected_total == 125);
    CHECK(rep.all_pass());
    // compositions of m2 = 3 into 5 parts
    CHECK(rep.rows.size() == 35);
    bool found = false;
    for (const auto& row : rep.rows) {
        if (row.degrees == std::vector<std::int64_t>{3, 3, 3, 4, 5}) {
            found = true;
            CHECK(row.torsion_squared_sum == 3);
            CHECK(row.expected == 3);
            CHECK(row.count == 3);
        }
    }
    CHECK(found);
}

TEST_CASE("bound sweep on small cases", "[harness]") {
    auto rep = verify_bounds(4, 1);
    CHECK(rep.hypertrees == 16);
    CHECK(rep.all_pass());
    for (const auto& c : rep.checks) CHECK(c.worst_slack >= -1e-6);

    auto r52 = verify_bounds(5, 2);
    CHECK(r52.hypertrees == 125);
    CHECK(r52.all_pass());
    REQUIRE(r52.checks.size() == 7);
    CHECK(r52.checks[3].checked == 125 * 5);
}

TEST_CASE("sampler goodness of fit", "[harness]") {
    auto a = verify_sampler(4, 1, WeightVector<double>::ones(4), 20000, 3);
    auto b = verify_sampler(4, 1, WeightVector<double>::ones(4), 20000, 3);
    CHECK(a.total_variation == b.total_variation);
    CHECK(a.support == 16);
    CHECK(a.off_support == 0);
    CHECK(a.exact_mass == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(a.max_deviation < 0.01);

    auto c = verify_sampler(5, 2, WeightVector<double>({1, 1, 1, 1, 2}), 2000, 9, 0.5);
    CHECK(c.support == 125);
    CHECK(c.off_support == 0);
    CHECK(c.pass());
}
