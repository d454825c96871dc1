#pragma once

#include <memory>
#include <string>
#include <vector>

#include "twine/group.hpp"

namespace twine {

/// External direct product of groups, operating componentwise.
///
/// An element is the concatenation of one element per factor, in order.
/// Factor 0 is the most significant digit of the element index.
class ProductGroup final : public Group {
  public:
    static std::shared_ptr<const ProductGroup> build(std::vector<GroupPtr> factors,
                                                     std::string label = "");

    std::size_t order() const override { return order_; }
    Element identity() const override;
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    Element power(const Element& a, Exp m) const override;
    Element commutator(const Element& a, const Element& b) const override;
    std::vector<Element> generators() const override;
    std::size_t index_of(const Element& a) const override;
    Element element_at(std::size_t i) const override;

    std::size_t factor_count() const { return factors_.size(); }
    const GroupPtr& factor(std::size_t f) const { return factors_[f]; }

    /// Slice of a product element belonging to factor f.
    Element project(const Element& a, std::size_t f) const;
    /// Embeds a factor element, padding all other factors with identities.
    Element embed(const Element& a, std::size_t f) const;

  private:
    explicit ProductGroup(std::string label) : Group(std::move(label)) {}
    void check_arity(const Element& a) const;

    std::vector<GroupPtr> factors_;
    std::vector<std::size_t> offsets_;  // start of each factor's slice; last entry = total arity
    std::size_t order_ = 1;
};

/// Direct product. Polycyclic factors are merged into a single polycyclic
/// group; anything else is wrapped componentwise.
GroupPtr direct_product(const std::vector<GroupPtr>& factors, std::string label = "");

}
