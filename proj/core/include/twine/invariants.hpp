#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "twine/group.hpp"
#include "twine/subgroup_view.hpp"

namespace twine {

/// Multiset of element orders: order -> number of elements with that order.
using OrderStructure = std::map<Exp, Exp>;

/// Elements commuting with everything, as a view onto g.
std::shared_ptr<const SubgroupView> center(const GroupPtr& g);

/// Smallest subgroup containing all commutators (computed as the normal
/// closure of the generator-pair commutators, correct in any finite group).
std::shared_ptr<const SubgroupView> derived_subgroup(const GroupPtr& g);

/// Subgroup generated by all p-th powers.
std::shared_ptr<const SubgroupView> pth_power_subgroup(const GroupPtr& g, Exp p);

/// Least common multiple of all element orders.
Exp exponent_of(const Group& g);

OrderStructure order_structure(const Group& g);

/// Rendering like "{1:1, 3:8, 9:18, 27:54}".
std::string order_structure_text(const OrderStructure& os);

/// Cyclic prime-power orders of the abelian group with the given order
/// statistics, sorted by (prime, exponent). Throws NotAbelianRealizable when
/// no abelian group has these statistics. The reconstruction counts, for each
/// prime p, the solutions of x^{p^k} = 1; in an abelian p-group those counts
/// determine the invariant type, and the result is verified by recomputing
/// its order statistics.
std::vector<Exp> abelian_type(const OrderStructure& os);

/// Direct product of cyclic groups of the given orders (composite orders are
/// split into their prime-power parts). Empty input gives the trivial group.
GroupPtr abelian_group(const std::vector<Exp>& cyclic_orders, std::string label = "");

/// Cheap isomorphism invariants, compared field by field in declaration
/// order. pth_power_orders maps each prime p dividing |G| to the order of the
/// subgroup generated by p-th powers.
struct Fingerprint {
    Exp group_order = 1;
    OrderStructure orders;
    Exp center_order = 1;
    OrderStructure center_orders;
    Exp derived_order = 1;
    Exp derived_exponent = 1;
    std::map<Exp, Exp> pth_power_orders;
    OrderStructure abelianization_orders;
};

Fingerprint fingerprint(const GroupPtr& g);

/// Name of the first fingerprint field where x and y differ, or "" if equal.
std::string first_difference(const Fingerprint& x, const Fingerprint& y);

struct IsoOptions {
    /// Abort (SearchBudgetExceeded) once the backtracking search has touched
    /// this many elements.
    std::size_t node_budget = 50'000'000;
};

struct IsoResult {
    bool isomorphic = false;
    /// Fingerprint field that ruled the pair out, when the cheap gate decided.
    std::string separating_invariant;
    /// Generator images witnessing the isomorphism, when found by search.
    std::vector<std::pair<Element, Element>> generator_map;
};

/// Decides isomorphism. Fast path: fingerprint gate. Groups of coprime-factor
/// order are split into their Sylow parts and compared part by part; the
/// remaining searches run on multiplication tables with profile-filtered
/// backtracking over generator images. Throws SearchBudgetExceeded instead of
/// ever guessing.
IsoResult isomorphism(const GroupPtr& a, const GroupPtr& b, const IsoOptions& opts = {});

bool is_isomorphic(const GroupPtr& a, const GroupPtr& b, const IsoOptions& opts = {});

}
