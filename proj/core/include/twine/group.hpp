#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "twine/element.hpp"

namespace twine {

/// Abstract finite group. Instances are immutable after construction and all
/// operations are pure, so a single instance is safe to share across threads.
///
/// Every backend exposes a canonical bijection between its elements and
/// [0, order()) via index_of / element_at; set-valued algorithms (closures,
/// centers, isomorphism search) key on that index.
class Group {
public:
    virtual ~Group() = default;

    /// Number of elements.
    virtual std::size_t order() const = 0;
    virtual Element identity() const = 0;
    virtual Element multiply(const Element& a, const Element& b) const = 0;
    virtual Element inverse(const Element& a) const = 0;

    /// A generating set (not necessarily minimal). Contract: commutators of
    /// pairs from this set generate the derived subgroup, which holds for any
    /// generating set when the class is <= 2.
    virtual std::vector<Element> generators() const = 0;

    virtual std::size_t index_of(const Element& a) const = 0;
    virtual Element element_at(std::size_t idx) const = 0;

    const std::string& label() const { return label_; }

    /// a^m for any integer m (reduced via the group order, so arbitrarily
    /// large |m| is fine).
    virtual Element power(const Element& a, Exp m) const;

    /// a^-1 b^-1 a b. Presentation-backed groups override with a closed form.
    virtual Element commutator(const Element& a, const Element& b) const;

    /// g^-1 a g.
    Element conjugate(const Element& a, const Element& g) const;

    /// Least m >= 1 with a^m = identity, found by stripping prime factors of
    /// the group order (Lagrange).
    Exp element_order(const Element& a) const;

    bool is_identity(const Element& a) const;
    bool commutes(const Element& a, const Element& b) const;

protected:
    explicit Group(std::string label) : label_(std::move(label)) {}
    std::string label_;
};

using GroupPtr = std::shared_ptr<const Group>;

/// True iff all generator pairs commute (sufficient: generators generate).
bool is_abelian(const Group& g);

/// Prime factorization of n as (prime, multiplicity), increasing primes.
std::vector<std::pair<Exp, int>> factorize(Exp n);

bool is_prime(Exp p);

/// True iff n = p^e for the given prime p (e >= 0 allowed only with n = 1).
bool is_power_of(Exp n, Exp p);

}
