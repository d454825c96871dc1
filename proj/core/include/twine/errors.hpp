#pragma once

#include <stdexcept>
#include <string>

namespace twine {

/// A power-commutator presentation failed structural or associativity
/// validation. The message carries the witness (offending relation or triple).
struct InconsistentPresentation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An operation that requires nilpotency class <= 2 was given a group whose
/// commutators are not all central. The message names a witness triple.
struct NotClass2 : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An explicit multiplication table is not a group table (Latin-square,
/// identity, inverse, or associativity failure; message carries the witness).
struct InvalidTable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An element vector has the wrong arity or an out-of-range entry.
struct InvalidElement : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// String construction rejects groups of even order: the per-prime twist
/// parameter (p-1)/2 is undefined at p = 2.
struct EvenOrder : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sylow decomposition found a prime whose full-order element set is not a
/// subgroup, so the group is not nilpotent (not a direct product of p-groups).
struct NotNilpotent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No finite abelian group realizes the requested order structure.
struct NotAbelianRealizable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An isomorphism search exceeded its node budget. Deliberately distinct from
/// a negative verdict: callers must never read this as "not isomorphic".
struct SearchBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad user-facing configuration: unknown suite, malformed group spec, ...
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}
