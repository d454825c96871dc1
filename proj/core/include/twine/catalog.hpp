#pragma once

#include <string>
#include <vector>

#include "twine/group.hpp"
#include "twine/invariants.hpp"

namespace twine {

/// One of the six nonabelian class-2 groups of order p^4 (odd p), in
/// Burnside's classical lettering A..F.
GroupPtr burnside_group(char name, Exp p);

/// Heisenberg group over Z_{p^k}: unitriangular 3x3 matrices, order p^{3k}.
GroupPtr heisenberg(Exp p, int k = 1);

/// Unitriangular 4x4 matrices over F_p (order p^6, nilpotency class 3) as an
/// explicit multiplication table; the standard class-3 counterexample.
GroupPtr unitriangular4(Exp p);

/// The eleven class-<=2 groups of order p^4 (odd p): Burnside A..F plus the
/// five abelian types.
std::vector<GroupPtr> order_p4_groups(Exp p);

/// Groups bucketed by equal order statistics.
struct StatsClass {
    OrderStructure os;
    std::vector<GroupPtr> members;  // input order preserved
};

/// Partition by order statistics. Classes are sorted by their statistics,
/// largest element orders first.
std::vector<StatsClass> classify_by_order_structure(const std::vector<GroupPtr>& groups);

/// Members of the class that never occur as a later term (index >= 1) of any
/// member's group string: the sources of the twisting process.
std::vector<GroupPtr> find_maximal(const StatsClass& cls);

/// Builds a group from a textual form:
///   burnside:A:p=3            heisenberg:p=3[:k=2]
///   unitriangular4:p=3        abelian:27x3  (also 3^3x3, Z27xZ3)
///   file:PATH                 product:SPEC|SPEC[|...]
GroupPtr parse_group_spec(const std::string& spec);

/// One line per known form, for command-line help.
std::string group_spec_help();

}
