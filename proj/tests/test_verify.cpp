// Verification suites: option validation, report content for each suite,
// canonical check ordering, byte-deterministic rendering, and the json
// round trip.

#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include <twine/catalog.hpp>
#include <twine/errors.hpp>
#include <twine/invariants.hpp>
#include <twine/product_group.hpp>
#include <twine/verify.hpp>

using namespace twine;

namespace {

std::vector<std::string> check_names(const Report& r) {
    std::vector<std::string> out;
    for (const CheckResult& c : r.checks) out.push_back(c.name);
    return out;
}

const CheckResult& check_named(const Report& r, const std::string& name) {
    for (const CheckResult& c : r.checks)
        if (c.name == name) return c;
    REQUIRE_MESSAGE(false, ("missing check: " + name));
    static CheckResult dummy;
    return dummy;
}

bool all_pass(const Report& r) {
    return std::all_of(r.checks.begin(), r.checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("suite names are fixed and unknown names are rejected") {
    CHECK(verify_suite_names() ==
          std::vector<std::string>{"lemma-s", "lemma-center", "theorem", "p4-classification",
                                   "corollary", "associativity"});
    CHECK_THROWS_AS(run_verify_suite("lemmas"), ConfigError);
    CHECK_THROWS_AS(run_verify_suite(""), ConfigError);
}

TEST_CASE("options are validated before any work starts") {
    VerifyOptions o;
    o.p = 4;
    CHECK_THROWS_AS(run_verify_suite("p4-classification", o), ConfigError);
    o.p = 2;
    CHECK_THROWS_AS(run_verify_suite("p4-classification", o), ConfigError);
    o.p = 11;  // 11^4 exceeds the table limit
    CHECK_THROWS_AS(run_verify_suite("p4-classification", o), ConfigError);

    VerifyOptions t;
    t.sampled_triples = 0;
    CHECK_THROWS_AS(run_verify_suite("associativity", t), ConfigError);
    VerifyOptions b;
    b.node_budget = 0;
    CHECK_THROWS_AS(run_verify_suite("theorem", b), ConfigError);

    VerifyOptions g;
    g.group = heisenberg(3, 1);
    CHECK_THROWS_AS(run_verify_suite("p4-classification", g), ConfigError);
    CHECK_THROWS_AS(run_verify_suite("corollary", g), ConfigError);
}

TEST_CASE("p4-classification: all checks pass with the expected content") {
    Report r = run_verify_suite("p4-classification");
    CHECK(r.suite == "p4-classification");
    CHECK(r.tool_version == "1.0.0");
    CHECK(r.overall_pass);
    CHECK(all_pass(r));
    CHECK(r.inputs.size() == 11);

    // canonical ordering: sorted by check name
    CHECK(check_names(r) ==
          std::vector<std::string>{"Class X_1 membership", "Class X_2 membership",
                                   "Class X_3 membership", "Class X_4 membership",
                                   "Class X_5 membership", "Five classes", "Maximal in X_1",
                                   "Maximal in X_2", "Pairwise non-isomorphic"});

    CHECK(check_named(r, "Class X_1 membership").details == "X_1 = {A(p=3), Z3xZ27}");
    CHECK(check_named(r, "Class X_2 membership").details ==
          "X_2 = {B(p=3), D(p=3), E(p=3), Z3xZ3xZ9}");
    CHECK(check_named(r, "Class X_3 membership").details == "X_3 = {C(p=3), Z9xZ9}");
    CHECK(check_named(r, "Class X_4 membership").details == "X_4 = {F(p=3), Z3xZ3xZ3xZ3}");
    CHECK(check_named(r, "Class X_5 membership").details == "X_5 = {Z81}");
    CHECK(check_named(r, "Maximal in X_1").details ==
          "members never arising as a later string term: {A(p=3)}");
    CHECK(check_named(r, "Maximal in X_2").details ==
          "members never arising as a later string term: {B(p=3), D(p=3), E(p=3)}");
    CHECK(check_named(r, "Pairwise non-isomorphic").details ==
          "all 55 unordered pairs of the 11 groups distinguished");

    // passing checks carry no witness or replay text
    for (const CheckResult& c : r.checks) {
        CHECK(c.witness.empty());
        CHECK(c.replay.empty());
    }
}

TEST_CASE("p4-classification report renders byte-identically and round-trips") {
    Report r = run_verify_suite("p4-classification");
    std::string j1 = render_report(r, "json");
    std::string j2 = render_report(r, "json");
    CHECK(j1 == j2);
    CHECK(report_from_json(j1) == r);

    // a fresh run produces the same report (timings are outside its value)
    Report again = run_verify_suite("p4-classification");
    CHECK(again == r);
    CHECK(render_report(again, "json") == j1);

    std::string text = render_report(r, "text");
    CHECK(text.find("suite: p4-classification") == 0);
    CHECK(text.find("PASS Five classes") != std::string::npos);
    CHECK(text.find("overall: PASS") != std::string::npos);
    CHECK(text.find("FAIL") == std::string::npos);
}

TEST_CASE("corollary: mixed-prime string shape and term count") {
    Report r = run_verify_suite("corollary");
    CHECK(r.overall_pass);
    CHECK(r.inputs == std::vector<std::string>{"H(p=3,k=1) x H(p=5,k=1)"});
    CHECK(check_named(r, "Corollary string shape").details ==
          "3 terms; |Z| chain 15<135<3375; final term abelian; order statistics constant");
    CHECK(check_named(r, "Corollary nonabelian term count").details ==
          "2 nonabelian terms, pairwise non-isomorphic; matches the factor step sum 1+1");
}

TEST_CASE("lemma-center: equivalences and normality on the default fixtures") {
    Report r = run_verify_suite("lemma-center");
    CHECK(r.overall_pass);
    CHECK(r.inputs == std::vector<std::string>{"A(p=3)", "H(p=3,k=2)"});
    CHECK(check_names(r) ==
          std::vector<std::string>{"Lemma 2(i) A(p=3)", "Lemma 2(i) H(p=3,k=2)",
                                   "Lemma 2(ii) A(p=3)", "Lemma 2(ii) H(p=3,k=2)",
                                   "Lemma 2(iii) A(p=3)", "Lemma 2(iii) H(p=3,k=2)"});
    CHECK(check_named(r, "Lemma 2(i) H(p=3,k=2)").details ==
          "x central at twist depth i iff x^(p^i) central in the base: 729 elements, i=0..2");
    CHECK(check_named(r, "Lemma 2(iii) H(p=3,k=2)").details ==
          "center at depth i is a normal subgroup one twist deeper: i=0..2, center sizes "
          "9,81,729");
}

TEST_CASE("lemma-center rejects fixtures outside its domain") {
    VerifyOptions o;
    o.group = abelian_group({15});  // not a prime power
    CHECK_THROWS_AS(run_verify_suite("lemma-center", o), ConfigError);
    o.group = abelian_group({4});  // even prime power
    CHECK_THROWS_AS(run_verify_suite("lemma-center", o), ConfigError);
}

TEST_CASE("lemma-s on an explicit fixture: tower comparison only") {
    VerifyOptions o;
    o.group = heisenberg(3, 1);
    Report r = run_verify_suite("lemma-s", o);
    CHECK(r.overall_pass);
    CHECK(check_names(r) == std::vector<std::string>{"Lemma s(i) H(p=3,k=1)",
                                                     "Order structure invariance H(p=3,k=1)"});
    CHECK(check_named(r, "Lemma s(i) H(p=3,k=1)").details ==
          "n=1..5, i=0..6: the i-fold twist tower equals the single collapsed twist (35 tables "
          "of order 27)");
}

TEST_CASE("lemma-s rejects fixtures too large to materialize") {
    VerifyOptions o;
    o.group = abelian_group({5103});  // 3^6 * 7 exceeds the table limit
    CHECK_THROWS_AS(run_verify_suite("lemma-s", o), ConfigError);
}

TEST_CASE("theorem on an abelian input: single-term string, all checks pass") {
    VerifyOptions o;
    o.group = abelian_group({9, 3});
    Report r = run_verify_suite("theorem", o);
    CHECK(r.overall_pass);
    CHECK(r.inputs == std::vector<std::string>{"Z3xZ9"});
    CHECK(check_names(r) == std::vector<std::string>{"Theorem 1(a) Z3xZ9", "Theorem 1(b) Z3xZ9",
                                                     "Theorem 1(c) Z3xZ9"});
    CHECK(check_named(r, "Theorem 1(a) Z3xZ9").details ==
          "single term, already abelian: |Z| = 27");
    CHECK(check_named(r, "Theorem 1(c) Z3xZ9").details == "final term isomorphic to Z3xZ9");
}

TEST_CASE("theorem on the two-step fixture: three-term chain") {
    VerifyOptions o;
    o.group = heisenberg(3, 2);
    Report r = run_verify_suite("theorem", o);
    CHECK(r.overall_pass);
    CHECK(check_named(r, "Theorem 1(a) H(p=3,k=2)").details ==
          "|Z| chain 9<81<729; 3 terms pairwise non-isomorphic");
    CHECK(check_named(r, "Theorem 1(b) H(p=3,k=2)").details ==
          "final term abelian: 265356 unordered pairs commute");
    CHECK(check_named(r, "Theorem 1(c) H(p=3,k=2)").details ==
          "final term isomorphic to Z9xZ9xZ9");
}

TEST_CASE("an exhausted isomorphism search escapes as its own status") {
    VerifyOptions o;
    o.group = abelian_group({9, 3});
    o.node_budget = 1;  // forces the final-term comparison search to give up
    CHECK_THROWS_AS(run_verify_suite("theorem", o), SearchBudgetExceeded);
}

TEST_CASE("associativity on explicit fixtures picks the matching branch") {
    VerifyOptions o;
    o.group = heisenberg(3, 1);
    Report r = run_verify_suite("associativity", o);
    CHECK(r.overall_pass);
    CHECK(check_names(r) == std::vector<std::string>{"Associativity level 1 H(p=3,k=1)"});
    CHECK(check_named(r, "Associativity level 1 H(p=3,k=1)").details ==
          "exhaustive: 19683 ordered triples associate at level 1");

    VerifyOptions u;
    u.group = unitriangular4(3);
    Report ru = run_verify_suite("associativity", u);
    CHECK(ru.overall_pass);
    CHECK(check_names(ru) == std::vector<std::string>{"Non-associativity at class 3 U4(p=3)"});
    const CheckResult& c = check_named(ru, "Non-associativity at class 3 U4(p=3)");
    CHECK(c.details.find("rejects associativity") != std::string::npos);
    CHECK(c.details.find("(a*b)*c") != std::string::npos);
}

TEST_CASE("sampled associativity is seed-deterministic") {
    VerifyOptions a;
    a.group = heisenberg(3, 2);  // order 729: above the exhaustive cutoff
    a.seed = 123;
    a.sampled_triples = 20000;
    Report r1 = run_verify_suite("associativity", a);
    Report r2 = run_verify_suite("associativity", a);
    CHECK(r1.overall_pass);
    CHECK(r1 == r2);
    CHECK(r1.seed == 123);
    CHECK(check_named(r1, "Associativity level 1 H(p=3,k=2)").details ==
          "sampled: 20000 seeded triples associate at level 1 (order 729, seed 123)");

    VerifyOptions b = a;
    b.seed = 124;
    Report r3 = run_verify_suite("associativity", b);
    CHECK(r3.overall_pass);
    CHECK(r3 != r1);  // the seed is part of the report
}

TEST_CASE("failing checks render with witness and replay lines") {
    Report r;
    r.suite = "theorem";
    r.inputs = {"G"};
    r.seed = 7;
    r.tool_version = "1.0.0";
    r.overall_pass = false;
    CheckResult bad;
    bad.name = "Theorem 1(b) G";
    bad.pass = false;
    bad.details = "final string term is not abelian";
    bad.witness = "a=(1,0), b=(0,1) do not commute in the final term";
    bad.replay = "twine verify --suite theorem --group 'file:g.json'";
    r.checks.push_back(bad);

    std::string text = render_report(r, "text");
    CHECK(text.find("FAIL Theorem 1(b) G final string term is not abelian") != std::string::npos);
    CHECK(text.find("  witness: a=(1,0), b=(0,1) do not commute in the final term") !=
          std::string::npos);
    CHECK(text.find("  replay: twine verify --suite theorem --group 'file:g.json'") !=
          std::string::npos);
    CHECK(text.find("overall: FAIL") != std::string::npos);

    CHECK(report_from_json(render_report(r, "json")) == r);
}

TEST_CASE("report rendering validates its format and handles the empty report") {
    Report r;
    CHECK(render_report(r, "json") == "{}\n");
    CHECK(render_report(r, "text") == "(empty report)\n");
    CHECK(report_from_json("{}") == r);
    CHECK_THROWS_AS(render_report(r, "yaml"), ConfigError);
}

TEST_CASE("malformed report documents are rejected") {
    CHECK_THROWS_AS(report_from_json("not json"), ConfigError);
    CHECK_THROWS_AS(report_from_json("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(report_from_json("{\"suite\": \"x\"}"), ConfigError);  // missing fields
    CHECK_THROWS_AS(report_from_json("{\"suite\": 3, \"tool_version\": \"1\", \"seed\": 0, "
                                     "\"inputs\": [], \"overall_pass\": true, \"checks\": []}"),
                    ConfigError);
}

}  // TEST_SUITE
