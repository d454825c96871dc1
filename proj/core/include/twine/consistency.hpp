#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "twine/group.hpp"

namespace twine {

struct ConsistencyOptions {
    /// Above this order every check runs in sampled mode.
    std::size_t exhaustive_order_budget = 10000;
    /// Up to this order all |G|^3 triples are checked; above it, triples with
    /// a generator in the first slot are exhausted and general triples are
    /// sampled.
    std::size_t full_triple_limit = 128;
    /// Up to this order the Latin-square property is checked exhaustively.
    std::size_t latin_full_limit = 4096;
    std::size_t sampled_triples = 1'000'000;
    std::uint64_t seed = 0x5EED5EEDu;
};

struct ConsistencyReport {
    bool passed = false;
    /// "exhaustive" when every family of checks was exhausted, else "sampled".
    std::string mode;
    std::string failure;  // human-readable witness when !passed
    std::uint64_t checks_run = 0;
};

/// Certify that multiplication behaves like a group operation: associativity
/// (fully exhaustive at small order; generator-anchored exhaustive plus a
/// deterministic seeded sample above) and the Latin-square property of the
/// multiplication, plus identity/inverse sanity.
ConsistencyReport check_consistency(const Group& g, const ConsistencyOptions& opts = {});

struct ClassWitness {
    Element a, b, c;  // [[a,b],c] != identity
};

/// True iff every generator-pair commutator is central, i.e. the group has
/// nilpotency class <= 2. (Commutators of arbitrary elements are products of
/// generator-pair commutators, so checking generators suffices.)
bool verify_class_at_most_2(const Group& g,
                            std::optional<ClassWitness>* witness = nullptr);

}
