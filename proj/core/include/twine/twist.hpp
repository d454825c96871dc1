#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "twine/group.hpp"
#include "twine/pc_group.hpp"

namespace twine {

/// The twisted product x o y = [x,y]^n x y on the same element set.
Element twisted_multiply(const Group& base, const Element& x, const Element& y, Exp n);

/// The same product written as y^{-n} x y^{n+1}; the two agree exactly when
/// the base group has nilpotency class <= 2.
Element twisted_multiply_conjugation_form(const Group& base, const Element& x, const Element& y,
                                          Exp n);

/// The unique x with (x o a) = b, namely a^n b a^{-(n+1)}.
Element solve_right(const Group& base, const Element& a, const Element& b, Exp n);

/// A group with the twisted product, sharing the base group's element set and
/// indexing. The operation is associative precisely when the base class is
/// <= 2; construction verifies that (throwing NotClass2 with a witness)
/// unless check_class is false. The twist level is reduced modulo the
/// exponent of the base derived subgroup, which never changes the operation.
class TwistView final : public Group {
  public:
    static std::shared_ptr<const TwistView> build(GroupPtr base, Exp level, bool check_class = true);

    std::size_t order() const override { return base_->order(); }
    Element identity() const override { return base_->identity(); }
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override { return base_->inverse(a); }
    std::vector<Element> generators() const override;
    std::size_t index_of(const Element& a) const override { return base_->index_of(a); }
    Element element_at(std::size_t i) const override { return base_->element_at(i); }

    const GroupPtr& base() const { return base_; }
    /// Level as requested.
    Exp level() const { return level_; }
    /// Level actually applied, i.e. level() mod derived exponent.
    Exp effective_level() const { return effective_; }
    /// Exponent of the base derived subgroup (the twist-level period).
    Exp level_period() const { return period_; }

  private:
    TwistView(std::string label) : Group(std::move(label)) {}

    GroupPtr base_;
    Exp level_ = 0;
    Exp effective_ = 0;
    Exp period_ = 1;
};

/// Exact twist level reached by iterating an n-twist i times:
/// s(i) = ((2n+1)^i - 1) / 2, as a decimal string (the value grows
/// geometrically, hence exact big-integer arithmetic).
std::string iterated_level_text(Exp n, std::uint64_t i);

/// s(i) mod m, computed as ((2n+1)^i - 1)/2 in arithmetic mod 2m.
Exp iterated_level_mod(Exp n, std::uint64_t i, Exp m);

/// S_n applied i times, collapsed to a single twist of level s(i) (reduced
/// modulo the derived exponent). i = 0 returns the base unchanged.
GroupPtr iterate_twist(const GroupPtr& base, Exp n, std::uint64_t iterations);

/// One Sylow factor of a nilpotent group.
struct SylowFactor {
    Exp prime = 0;
    GroupPtr group;
};

/// Sylow subgroups by ascending prime. Polycyclic groups whose presentation
/// splits into per-prime blocks are split symbolically; anything else is
/// sieved by element order and verified, throwing NotNilpotent when the
/// pieces fail to be commuting subgroups of full Sylow size.
std::vector<SylowFactor> sylow_decompose(const GroupPtr& g);

/// One Sylow factor's role in a group string.
struct StringFactor {
    Exp prime = 0;
    GroupPtr sylow;
    Exp half = 0;              ///< (prime - 1) / 2, the twist increment
    Exp derived_exponent = 1;  ///< exponent of the factor's derived subgroup
    Exp steps = 0;             ///< iterations until this factor is abelian
};

/// One term of a group string: the direct product of the Sylow factors, each
/// twisted by its own iteration count.
struct StringTerm {
    GroupPtr group;
    std::vector<std::uint64_t> iterations;  // parallel to GroupString::factors
};

/// The string of groups attached to an odd-order class-<=2 group: term 0 is
/// the group itself; each later term advances the twisting of the lowest
/// not-yet-abelian Sylow factor by one iteration of its (p-1)/2-twist, ending
/// at an abelian final term.
struct GroupString {
    std::string base_label;
    std::vector<StringFactor> factors;
    std::vector<StringTerm> terms;
};

/// Builds the full string. Throws EvenOrder for groups of even order and
/// NotClass2 when some Sylow factor has class > 2. The construction
/// self-checks that every term keeps the base group's order statistics and
/// that the last term is abelian.
GroupString string_of(const GroupPtr& g);

std::string string_report_json(const GroupString& s);

/// Polycyclic presentation of a twisted polycyclic group, obtained by reading
/// off the twisted products of the base generator powers (the twisted normal
/// form). The base of t must be polycyclic.
PcPresentation native_presentation(const TwistView& t);

}
