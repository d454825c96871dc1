// Presentation JSON round-trips and input validation.

#include <doctest.h>

#include <cstdio>
#include <string>

#include <twine/catalog.hpp>
#include <twine/errors.hpp>
#include <twine/pc_group.hpp>
#include <twine/presentation.hpp>

using namespace twine;

TEST_SUITE("presentation") {

TEST_CASE("serialize then parse is the identity on catalog presentations") {
    for (char name : {'A', 'B', 'C', 'D', 'E', 'F'}) {
        CAPTURE(name);
        auto g = std::dynamic_pointer_cast<const PcGroup>(burnside_group(name, 3));
        REQUIRE(g);
        const PcPresentation& p = g->presentation();
        PcPresentation q = presentation_from_json_text(presentation_to_json_text(p));
        CHECK(q.label == p.label);
        CHECK(q.rel_orders == p.rel_orders);
        CHECK(q.power_tails == p.power_tails);
        CHECK(q.comm_tails == p.comm_tails);
    }
}

TEST_CASE("the documented JSON form builds the order-81 modular group") {
    const std::string text = R"({
        "label": "modular-81",
        "generators": [{"order": 27}, {"order": 3}],
        "commutators": {"2,1": [9, 0]}
    })";
    auto pres = presentation_from_json_text(text);
    CHECK(pres.label == "modular-81");
    CHECK(pres.rel_orders == std::vector<Exp>{27, 3});
    REQUIRE(pres.comm_tails.count({1, 0}) == 1);  // 1-based in JSON, 0-based here
    CHECK(pres.comm_tails.at({1, 0}) == std::vector<Exp>{9, 0});
    auto g = PcGroup::build(pres);
    CHECK(g->order() == 81);
}

TEST_CASE("power tails survive the round trip") {
    PcPresentation p;
    p.label = "Z27-tower";
    p.rel_orders = {3, 3, 3};
    p.power_tails[0] = {0, 1, 0};
    p.power_tails[1] = {0, 0, 1};
    PcPresentation q = presentation_from_json_text(presentation_to_json_text(p));
    CHECK(q.power_tails == p.power_tails);
    CHECK(PcGroup::build(q)->order() == 27);
    CHECK(PcGroup::build(q)->element_order(Element{1, 0, 0}) == 27);
}

TEST_CASE("malformed documents are rejected with the offending key") {
    auto bad = [](const std::string& text) {
        CHECK_THROWS_AS((void)presentation_from_json_text(text), ConfigError);
    };
    bad("not json at all");
    bad(R"({"generators": []})");                                     // no generators
    bad(R"({"generators": [{"order": 27}], "bogus": 1})");            // unknown key
    bad(R"({"generators": [{"order": 27, "weight": 2}]})");           // unknown subkey
    bad(R"({"generators": [{}]})");                                   // missing order
    bad(R"({"generators": [{"order": 27}], "powers": {"2": [1]}})");  // index out of range
    bad(R"({"generators": [{"order": 27}], "powers": {"1": [1, 2]}})");  // arity
    bad(R"({"generators": [{"order": 9}, {"order": 3}],
            "commutators": {"1,2": [0, 0]}})");  // j must exceed i
    bad(R"({"generators": [{"order": 9}, {"order": 3}],
            "commutators": {"2": [0, 0]}})");  // malformed pair key
}

TEST_CASE("file save and load round-trip through disk") {
    auto g = std::dynamic_pointer_cast<const PcGroup>(heisenberg(3, 1));
    REQUIRE(g);
    const std::string path = "h3_roundtrip_test.json";
    save_presentation(g->presentation(), path);
    PcPresentation back = load_presentation(path);
    CHECK(back.rel_orders == g->presentation().rel_orders);
    CHECK(back.comm_tails == g->presentation().comm_tails);
    CHECK(PcGroup::build(back)->order() == 27);
    std::remove(path.c_str());

    CHECK_THROWS_AS((void)load_presentation("does/not/exist.json"), ConfigError);
}

TEST_CASE("the group-spec grammar reaches files through the file: form") {
    auto g = std::dynamic_pointer_cast<const PcGroup>(burnside_group('E', 3));
    REQUIRE(g);
    const std::string path = "e3_spec_test.json";
    save_presentation(g->presentation(), path);
    auto loaded = parse_group_spec("file:" + path);
    CHECK(loaded->order() == 81);
    CHECK(is_isomorphic(loaded, burnside_group('E', 3)));
    std::remove(path.c_str());
}

}
