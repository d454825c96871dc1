#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twine/element.hpp"

namespace twine {

/// Power-commutator presentation of a finite group of nilpotency class <= 2.
///
/// Generators g_0..g_{k-1} (0-based internally; the JSON form is 1-based) with
/// prime-power relative orders r_i. Normal form: g_0^{e_0} .. g_{k-1}^{e_{k-1}}
/// with 0 <= e_i < r_i, generator order exactly as given (never reordered).
///
/// - power_tails[i] is the normal form of g_i^{r_i}; absent means identity.
///   Tails may only involve generators of index > i.
/// - comm_tails[{j,i}] with j > i is the normal form of the commutator
///   [g_j, g_i] = g_j^-1 g_i^-1 g_j g_i, used by collection as the swap rule
///   g_j g_i = g_i g_j t. Absent means g_j and g_i commute. Every tail must
///   evaluate to a central element; building verifies this.
struct PcPresentation {
    std::string label;
    std::vector<Exp> rel_orders;
    std::map<int, std::vector<Exp>> power_tails;
    std::map<std::pair<int, int>, std::vector<Exp>> comm_tails;

    int num_generators() const { return static_cast<int>(rel_orders.size()); }
};

/// JSON form (1-based indices, missing entries = trivial):
/// {"label": "...", "generators": [{"order": 27}, {"order": 3}],
///  "powers": {"1": [0, 1]}, "commutators": {"2,1": [9, 0]}}
PcPresentation presentation_from_json_text(const std::string& text);
PcPresentation load_presentation(const std::string& path);
std::string presentation_to_json_text(const PcPresentation& p);
void save_presentation(const PcPresentation& p, const std::string& path);

}
