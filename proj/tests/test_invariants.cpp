// Structural invariants checked against brute-force scans and frozen values.
//
// The scan oracles use nothing but `multiply` over all elements, so they are
// independent of the generator-based computations in the library.

#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include <twine/catalog.hpp>
#include <twine/errors.hpp>
#include <twine/invariants.hpp>
#include <twine/pc_group.hpp>
#include <twine/table_group.hpp>

using namespace twine;

namespace {

/// Every element commuting with all of g, by full scan.
std::set<std::size_t> brute_center(const Group& g) {
    std::set<std::size_t> out;
    const std::size_t n = g.order();
    for (std::size_t i = 0; i < n; ++i) {
        Element a = g.element_at(i);
        bool central = true;
        for (std::size_t j = 0; j < n && central; ++j) {
            Element b = g.element_at(j);
            central = (g.multiply(a, b) == g.multiply(b, a));
        }
        if (central) out.insert(i);
    }
    return out;
}

/// Closure of a seed index set under products, by fixpoint scan.
std::set<std::size_t> brute_closure(const Group& g, std::set<std::size_t> seed) {
    seed.insert(g.index_of(g.identity()));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::size_t> cur(seed.begin(), seed.end());
        for (std::size_t i : cur)
            for (std::size_t j : cur) {
                std::size_t k = g.index_of(g.multiply(g.element_at(i), g.element_at(j)));
                if (seed.insert(k).second) grew = true;
            }
    }
    return seed;
}

std::set<std::size_t> brute_derived(const Group& g) {
    std::set<std::size_t> seed;
    const std::size_t n = g.order();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            seed.insert(g.index_of(
                g.commutator(g.element_at(i), g.element_at(j))));
    return brute_closure(g, std::move(seed));
}

std::set<std::size_t> brute_pth_powers(const Group& g, Exp p) {
    std::set<std::size_t> seed;
    for (std::size_t i = 0; i < g.order(); ++i)
        seed.insert(g.index_of(g.power(g.element_at(i), p)));
    return brute_closure(g, std::move(seed));
}

std::set<std::size_t> view_indices(const SubgroupView& v) {
    return {v.member_indices().begin(), v.member_indices().end()};
}

}  // namespace

TEST_SUITE("invariants") {

TEST_CASE("center of the modular 3-group of order 81 is the cube powers of x") {
    auto A = burnside_group('A', 3);
    auto Z = center(A);
    CHECK(Z->order() == 9);

    // Exact membership: x^(3t), i.e. elements (3t, 0) in normal form.
    for (Exp t = 0; t < 9; ++t) {
        Element e{static_cast<Exp>(3 * t), 0};
        CHECK(Z->contains(e));
    }
    CHECK_FALSE(Z->contains(Element{1, 0}));
    CHECK_FALSE(Z->contains(Element{0, 1}));

    CHECK(view_indices(*Z) == brute_center(*A));
    CHECK(order_structure_text(order_structure(*Z)) == "{1:1, 3:2, 9:6}");
}

TEST_CASE("centers across backends and catalog groups match the brute scan") {
    for (const char* spec : {"heisenberg:p=3", "burnside:B:p=3", "burnside:D:p=3",
                             "burnside:E:p=3", "abelian:9x3"}) {
        auto g = parse_group_spec(spec);
        CAPTURE(spec);
        CHECK(view_indices(*center(g)) == brute_center(*g));
    }
    // Same group through the dense-table backend.
    GroupPtr h = materialize_table(*heisenberg(3, 1));
    CHECK(view_indices(*center(h)) == brute_center(*h));
    CHECK(center(h)->order() == 3);
}

TEST_CASE("derived subgroups match the brute commutator closure") {
    auto A = burnside_group('A', 3);
    auto D = derived_subgroup(A);
    CHECK(D->order() == 3);
    // A' = <x^9> exactly.
    CHECK(view_indices(*D) == brute_derived(*A));
    for (Exp t : {0, 9, 18}) CHECK(D->contains(Element{t, 0}));

    auto H = heisenberg(3, 1);
    CHECK(view_indices(*derived_subgroup(H)) == brute_derived(*H));
    CHECK(derived_subgroup(H)->order() == 3);

    auto ab = abelian_group({9, 3});
    CHECK(derived_subgroup(ab)->order() == 1);
}

TEST_CASE("pth power subgroups match the brute power closure") {
    auto A = burnside_group('A', 3);
    auto P = pth_power_subgroup(A, 3);
    CHECK(P->order() == 9);
    CHECK(view_indices(*P) == brute_pth_powers(*A, 3));

    auto ab = abelian_group({4, 2});
    CHECK(view_indices(*pth_power_subgroup(ab, 2)) == brute_pth_powers(*ab, 2));
    CHECK(pth_power_subgroup(ab, 2)->order() == 2);
}

TEST_CASE("order structures and exponent agree with frozen values") {
    auto A = burnside_group('A', 3);
    CHECK(order_structure_text(order_structure(*A)) == "{1:1, 3:8, 9:18, 27:54}");
    CHECK(exponent_of(*A) == 27);

    // The abelian group Z27 x Z3 has the same statistics; the two sit in one
    // order-structure class even though they are not isomorphic.
    auto ab = abelian_group({27, 3});
    CHECK(order_structure(*ab) == order_structure(*A));

    CHECK(order_structure_text(order_structure(*abelian_group({4, 2}))) ==
          "{1:1, 2:3, 4:4}");
    CHECK(order_structure_text(order_structure(*abelian_group({3, 5}))) ==
          "{1:1, 3:2, 5:4, 15:8}");
    CHECK(exponent_of(*abelian_group({4, 2})) == 4);
    CHECK(exponent_of(*heisenberg(3, 1)) == 3);
}

TEST_CASE("abelian type reconstruction round-trips") {
    auto round = [](std::vector<Exp> factors) {
        auto g = abelian_group(factors);
        return abelian_type(order_structure(*g));
    };
    CHECK(round({4, 2}) == std::vector<Exp>{2, 4});
    CHECK(round({27, 3}) == std::vector<Exp>{3, 27});
    CHECK(round({9, 3, 3}) == std::vector<Exp>{3, 3, 9});
    CHECK(round({8}) == std::vector<Exp>{8});
    CHECK(round({15}) == std::vector<Exp>{3, 5});
    CHECK(round({12, 6}) == std::vector<Exp>{2, 4, 3, 3});
    CHECK(round({1}) == std::vector<Exp>{});

    // The Heisenberg group's statistics coincide with Z3^3: the function
    // answers "which abelian group has these statistics", so this succeeds.
    CHECK(abelian_type(order_structure(*heisenberg(3, 1))) ==
          std::vector<Exp>{3, 3, 3});

    // No abelian group has exactly one involution but six elements of order 4
    // (counts of solutions of x^(2^k)=1 must have non-increasing log jumps).
    OrderStructure q8{{1, 1}, {2, 1}, {4, 6}};
    CHECK_THROWS_AS((void)abelian_type(q8), NotAbelianRealizable);
}

TEST_CASE("fingerprints separate same-order-structure pairs at the documented field") {
    auto fp = [](GroupPtr g) { return fingerprint(g); };
    auto B = burnside_group('B', 3), D = burnside_group('D', 3),
         E = burnside_group('E', 3), A = burnside_group('A', 3);

    CHECK(first_difference(fp(B), fp(B)) == "");
    // B and D share order statistics; B has cyclic center Z9, D has Z3 x Z3.
    CHECK(order_structure(*B) == order_structure(*D));
    CHECK(first_difference(fp(B), fp(D)) == "center_order_structure");
    // D and E agree through the center and derived data; the abelianization
    // splits them (Z3^3 vs Z9 x Z3).
    CHECK(order_structure(*D) == order_structure(*E));
    CHECK(first_difference(fp(D), fp(E)) == "abelianization_order_structure");
    // A vs the abelian group with its statistics: the center order differs.
    CHECK(first_difference(fp(A), fp(abelian_group({27, 3}))) == "center_order");
}

}
