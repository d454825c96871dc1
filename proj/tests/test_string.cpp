// Group strings: Sylow decomposition, term-by-term structure, frozen center
// chains, and report determinism.

#include <doctest.h>

#include <string>
#include <vector>

#include <json.hpp>
#include <twine/catalog.hpp>
#include <twine/errors.hpp>
#include <twine/invariants.hpp>
#include <twine/product_group.hpp>
#include <twine/twist.hpp>

using namespace twine;

TEST_SUITE("string") {

TEST_CASE("sylow decomposition splits mixed orders by ascending prime") {
    auto g = direct_product({heisenberg(3, 1), abelian_group({5, 25})});
    auto parts = sylow_decompose(g);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].prime == 3);
    CHECK(parts[0].group->order() == 27);
    CHECK(parts[1].prime == 5);
    CHECK(parts[1].group->order() == 125);
    CHECK(is_isomorphic(parts[0].group, heisenberg(3, 1)));
    CHECK(is_isomorphic(parts[1].group, abelian_group({5, 25})));

    auto single = sylow_decompose(heisenberg(3, 1));
    REQUIRE(single.size() == 1);
    CHECK(single[0].prime == 3);

    auto z15 = sylow_decompose(abelian_group({15}));
    REQUIRE(z15.size() == 2);
    CHECK(z15[0].group->order() == 3);
    CHECK(z15[1].group->order() == 5);
}

TEST_CASE("the Heisenberg string has two terms ending in Z3^3") {
    auto s = string_of(heisenberg(3, 1));
    REQUIRE(s.factors.size() == 1);
    CHECK(s.factors[0].prime == 3);
    CHECK(s.factors[0].half == 1);
    CHECK(s.factors[0].derived_exponent == 3);
    CHECK(s.factors[0].steps == 1);

    REQUIRE(s.terms.size() == 2);
    CHECK(s.terms[0].iterations == std::vector<std::uint64_t>{0});
    CHECK(s.terms[1].iterations == std::vector<std::uint64_t>{1});
    CHECK_FALSE(is_abelian(*s.terms[0].group));
    CHECK(is_abelian(*s.terms[1].group));
    CHECK(is_isomorphic(s.terms[1].group, abelian_group({3, 3, 3})));
    CHECK(order_structure(*s.terms[1].group) == order_structure(*s.terms[0].group));
}

TEST_CASE("the mod-p^2 Heisenberg string walks the frozen center chain") {
    auto s = string_of(heisenberg(3, 2));
    REQUIRE(s.factors.size() == 1);
    CHECK(s.factors[0].derived_exponent == 9);
    CHECK(s.factors[0].steps == 2);
    REQUIRE(s.terms.size() == 3);

    std::vector<std::size_t> centers;
    for (const auto& t : s.terms) centers.push_back(center(t.group)->order());
    CHECK(centers == std::vector<std::size_t>{9, 81, 729});

    // Consecutive terms are never isomorphic (their centers already differ).
    CHECK_FALSE(is_isomorphic(s.terms[0].group, s.terms[1].group));
    CHECK_FALSE(is_isomorphic(s.terms[1].group, s.terms[2].group));
    CHECK(is_abelian(*s.terms[2].group));
    CHECK(is_isomorphic(s.terms[2].group,
                        abelian_group(abelian_type(order_structure(*s.terms[0].group)))));
}

TEST_CASE("a mixed 3x5 product twists factor by factor, lowest prime first") {
    auto g = direct_product({heisenberg(3, 1), heisenberg(5, 1)});
    auto s = string_of(g);
    REQUIRE(s.factors.size() == 2);
    CHECK(s.factors[0].prime == 3);
    CHECK(s.factors[0].half == 1);
    CHECK(s.factors[1].prime == 5);
    CHECK(s.factors[1].half == 2);

    REQUIRE(s.terms.size() == 3);
    CHECK(s.terms[0].iterations == std::vector<std::uint64_t>{0, 0});
    CHECK(s.terms[1].iterations == std::vector<std::uint64_t>{1, 0});
    CHECK(s.terms[2].iterations == std::vector<std::uint64_t>{1, 1});

    CHECK(s.terms[0].group->order() == 3375);
    std::vector<std::size_t> centers;
    for (const auto& t : s.terms) centers.push_back(center(t.group)->order());
    CHECK(centers == std::vector<std::size_t>{15, 135, 3375});
    CHECK(is_abelian(*s.terms[2].group));
}

TEST_CASE("already-abelian groups give the one-term string") {
    auto s = string_of(abelian_group({27, 3}));
    CHECK(s.terms.size() == 1);
    for (const auto& f : s.factors) CHECK(f.steps == 0);
    CHECK(is_abelian(*s.terms[0].group));
}

TEST_CASE("even orders and class-3 factors are rejected") {
    CHECK_THROWS_AS((void)string_of(abelian_group({4, 2})), EvenOrder);
    CHECK_THROWS_AS((void)string_of(abelian_group({2})), EvenOrder);
    CHECK_THROWS_AS((void)string_of(unitriangular4(3)), NotClass2);
}

TEST_CASE("string reports are valid deterministic JSON with exact levels") {
    auto s = string_of(heisenberg(3, 2));
    std::string a = string_report_json(s);
    std::string b = string_report_json(string_of(heisenberg(3, 2)));
    CHECK(a == b);

    auto doc = nlohmann::json::parse(a);
    CHECK(doc["group"] == "H(p=3,k=2)");
    CHECK(doc["length"] == 3);
    REQUIRE(doc["factors"].size() == 1);
    CHECK(doc["factors"][0]["prime"] == 3);
    CHECK(doc["factors"][0]["steps"] == 2);
    REQUIRE(doc["terms"].size() == 3);
    // s(1) = 1 and s(2) = 4 for the n = 1 twist.
    CHECK(doc["terms"][1]["levels"][0] == "1");
    CHECK(doc["terms"][2]["levels"][0] == "4");
    CHECK(doc["terms"][2]["levels_mod"][0] == 4);  // 4 mod 9
    CHECK(doc["terms"][2]["abelian"] == true);
    CHECK(doc["terms"][0]["abelian"] == false);
}

}
