// The twisted product and its iteration, checked against definitions and an
// independent exponent-arithmetic oracle.

#include <doctest.h>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <twine/catalog.hpp>
#include <twine/consistency.hpp>
#include <twine/errors.hpp>
#include <twine/invariants.hpp>
#include <twine/pc_group.hpp>
#include <twine/twist.hpp>

using namespace twine;

namespace {

/// Level reached after i rounds, by the step recurrence s' = (2s+1)n + s.
/// Independent of the closed form used by the library.
std::uint64_t level_by_recurrence(std::uint64_t n, unsigned i) {
    std::uint64_t s = 0;
    for (unsigned r = 0; r < i; ++r) s = (2 * s + 1) * n + s;
    return s;
}

}  // namespace

TEST_SUITE("twist") {

TEST_CASE("both product forms agree on every pair of a class-2 group") {
    auto g = heisenberg(3, 1);
    const std::size_t n = g->order();
    for (Exp lvl : {0, 1, 2, 4}) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Element a = g->element_at(i), b = g->element_at(j);
                CHECK(twisted_multiply(*g, a, b, lvl) ==
                      twisted_multiply_conjugation_form(*g, a, b, lvl));
            }
    }
}

TEST_CASE("the twisted operation is a group: checked exhaustively at level 1") {
    auto t = TwistView::build(burnside_group('A', 3), 1);
    ConsistencyOptions opts;
    opts.exhaustive_order_budget = 100;  // 81 <= 100: fully exhaustive
    auto rep = check_consistency(*t, opts);
    CHECK(rep.passed);
    CHECK(rep.mode == "exhaustive");
}

TEST_CASE("twisting preserves identity, inverses, powers and element orders") {
    auto g = burnside_group('B', 3);
    auto t = TwistView::build(g, 2);
    CHECK(t->order() == g->order());
    CHECK(t->identity() == g->identity());
    for (std::size_t i = 0; i < g->order(); ++i) {
        Element a = g->element_at(i);
        CHECK(t->inverse(a) == g->inverse(a));
        CHECK(t->element_order(a) == g->element_order(a));
        CHECK(t->power(a, 5) == g->power(a, 5));
    }
    CHECK(order_structure(*t) == order_structure(*g));
}

TEST_CASE("the twisted commutator is the (2n+1)-th power of the base commutator") {
    auto g = heisenberg(3, 2);
    auto t = TwistView::build(g, 4);
    const Exp q = 2 * 4 + 1;
    std::mt19937_64 rng(0xc0ffee);
    std::uniform_int_distribution<std::size_t> pick(0, g->order() - 1);
    for (int it = 0; it < 400; ++it) {
        Element a = g->element_at(pick(rng)), b = g->element_at(pick(rng));
        CHECK(t->commutator(a, b) == g->power(g->commutator(a, b), q));
    }
}

TEST_CASE("solve_right inverts the twisted product from the left") {
    auto g = burnside_group('E', 3);
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::size_t> pick(0, g->order() - 1);
    for (Exp lvl : {1, 3}) {
        for (int it = 0; it < 200; ++it) {
            Element a = g->element_at(pick(rng)), b = g->element_at(pick(rng));
            Element x = solve_right(*g, a, b, lvl);
            CHECK(twisted_multiply(*g, x, a, lvl) == b);
        }
    }
}

TEST_CASE("iterated levels match the closed form and the step recurrence") {
    CHECK(iterated_level_text(1, 0) == "0");
    CHECK(iterated_level_text(1, 1) == "1");
    CHECK(iterated_level_text(1, 2) == "4");
    CHECK(iterated_level_text(2, 3) == "62");
    for (Exp n : {1, 2, 3, 5}) {
        for (unsigned i = 0; i <= 8; ++i) {
            const std::uint64_t expect = level_by_recurrence(static_cast<std::uint64_t>(n), i);
            CHECK(iterated_level_text(n, i) == std::to_string(expect));
            for (Exp m : {3, 9, 27, 5, 125, 7}) {
                CHECK(iterated_level_mod(n, i, m) == static_cast<Exp>(expect % static_cast<std::uint64_t>(m)));
            }
        }
    }
    // Far beyond any u64: 201 digits for n=1, i=333; spot-check mod arithmetic.
    CHECK(iterated_level_text(1, 333).size() > 100);
    CHECK(iterated_level_mod(1, 333, 3) ==
          iterated_level_mod(1, 333 % 2 == 1 ? 333 : 332, 3));
}

TEST_CASE("two nested twists equal one twist at the combined level") {
    auto g = burnside_group('A', 3);
    auto once = TwistView::build(g, 1);
    auto nested = TwistView::build(once, 1, false);
    auto combined = TwistView::build(g, 4);  // s(2) for n=1
    for (std::size_t i = 0; i < g->order(); ++i)
        for (std::size_t j = 0; j < g->order(); ++j) {
            Element a = g->element_at(i), b = g->element_at(j);
            CHECK(nested->multiply(a, b) == combined->multiply(a, b));
        }
}

TEST_CASE("iterate_twist collapses iteration to the closed-form level") {
    auto g = burnside_group('A', 3);
    CHECK(iterate_twist(g, 1, 0) == g);
    auto two = iterate_twist(g, 1, 2);
    auto direct = TwistView::build(g, 4);
    for (std::size_t i = 0; i < g->order(); ++i)
        for (std::size_t j = 0; j < g->order(); ++j) {
            Element a = g->element_at(i), b = g->element_at(j);
            CHECK(two->multiply(a, b) == direct->multiply(a, b));
        }
    // A huge iteration count only matters through s(i) mod the period.
    auto far = iterate_twist(g, 1, 1'000'000'007ULL);
    CHECK(far->order() == g->order());
}

TEST_CASE("the level only matters modulo the derived exponent") {
    auto g = burnside_group('A', 3);  // derived subgroup has exponent 3
    auto t0 = TwistView::build(g, 2);
    auto t1 = TwistView::build(g, 5);
    CHECK(t0->level_period() == 3);
    CHECK(t0->effective_level() == 2);
    CHECK(t1->effective_level() == 2);
    CHECK(t1->level() == 5);
    for (std::size_t i = 0; i < g->order(); ++i)
        for (std::size_t j = 0; j < g->order(); ++j) {
            Element a = g->element_at(i), b = g->element_at(j);
            CHECK(t0->multiply(a, b) == t1->multiply(a, b));
        }
}

TEST_CASE("twisting the order-81 modular group gives Z27 x Z3") {
    auto t = TwistView::build(burnside_group('A', 3), 1);
    CHECK(is_abelian(*t));
    GroupPtr tp = t;
    CHECK(is_isomorphic(tp, abelian_group({27, 3})));
}

TEST_CASE("native presentations reproduce the twisted group") {
    for (char name : {'A', 'B', 'D', 'E'}) {
        CAPTURE(name);
        auto g = burnside_group(name, 3);
        auto t = TwistView::build(g, 1);
        auto np = PcGroup::build(native_presentation(*t));
        GroupPtr tp = t, npp = np;
        CHECK(np->order() == t->order());
        CHECK(is_isomorphic(npp, tp));
    }
}

TEST_CASE("class-3 bases are rejected with a concrete witness") {
    auto u = unitriangular4(3);
    CHECK_THROWS_AS((void)TwistView::build(u, 1), NotClass2);
    // Unchecked construction exposes the actual associativity failure.
    auto t = TwistView::build(u, 1, false);
    ConsistencyOptions opts;
    opts.exhaustive_order_budget = 100;  // order 729: generator-anchored + sample
    opts.sampled_triples = 4000;
    opts.seed = 7;
    auto rep = check_consistency(*t, opts);
    CHECK_FALSE(rep.passed);
}

}
