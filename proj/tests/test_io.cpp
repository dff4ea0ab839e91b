#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <hypertorsion/io.hpp>

using namespace hypertorsion;

TEST_CASE("complex JSON round trip", "[io]") {
    std::istringstream in(R"({"n": 4, "k": 1, "facets": [[3,4],[1,2],[2,3]]})");
    auto c = read_complex(in);
    CHECK(c.n() == 4);
    CHECK(c.k() == 1);
    CHECK(c.facets().size() == 3);
    auto back = complex_from_json(complex_to_json(c));
    CHECK(back.facet_ranks() == c.facet_ranks());

    auto j = hypertree_to_json(make_hypertree(c));
    CHECK(j["torsion_order"] == 1);
    CHECK(j["degrees"] == nlohmann::json({1, 2, 2, 1}));
    CHECK(j["invariant_factors"].empty());
}

TEST_CASE("big integers in JSON", "[io]") {
    CHECK(bigint_to_json(BigInt(42)) == 42);
    BigInt big("123456789012345678901234567890", 10);
    CHECK(bigint_to_json(big) == "123456789012345678901234567890");
}

TEST_CASE("malformed complexes are rejected", "[io]") {
    CHECK_THROWS(complex_from_json(nlohmann::json::parse(R"({"n": 4, "facets": []})")));
    CHECK_THROWS(complex_from_json(nlohmann::json::parse(R"({"n": 4, "k": 1, "facets": [[2,1]]})")));
    CHECK_THROWS(complex_from_json(nlohmann::json::parse(R"({"n": 4, "k": 1, "facets": [[1,2,3]]})")));
    CHECK_THROWS(complex_from_json(nlohmann::json::parse(R"({"n": 4, "k": 1, "facets": [[1,5]]})")));
    CHECK_THROWS(complex_from_json(nlohmann::json::parse(R"({"n": 4, "k": 1, "facets": [[1,2],[1,2]]})")));
    CHECK_THROWS(read_complex_file("/nonexistent/complex.json"));
}

TEST_CASE("exact rational parsing", "[io]") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("0.5") == BigRational(1, 2));
    CHECK(parse_rational("-2/6") == BigRational(-1, 3));
    CHECK(parse_rational("1e-3") == BigRational(1, 1000));
    CHECK(parse_rational("2.5E2") == 250);
    CHECK(parse_rational(" 1.25 ") == BigRational(5, 4));
    CHECK_THROWS(parse_rational(""));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("1.2.3"));
    CHECK_THROWS(parse_rational("1e"));
    auto w = parse_weight_list("1,1/2,0.25");
    REQUIRE(w.size() == 3);
    CHECK(w[1] == BigRational(1, 2));
    CHECK(w[2] == BigRational(1, 4));
}
