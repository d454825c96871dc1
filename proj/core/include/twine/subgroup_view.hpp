#pragma once

#include <memory>
#include <string>
#include <vector>

#include "twine/group.hpp"

namespace twine {

/// A subgroup presented as a view onto a parent group.
///
/// Elements are parent elements; membership is tracked by sorted parent
/// indices. Operations delegate to the parent, so the view is cheap even when
/// the parent is large.
class SubgroupView final : public Group {
  public:
    /// Wraps the subgroup whose parent indices are `member_indices` (sorted or
    /// not; duplicates rejected). With validate=true, closure under products
    /// and inverses is checked; pass validate=false for sets already known to
    /// be subgroups.
    static std::shared_ptr<const SubgroupView> build(GroupPtr parent,
                                                     std::vector<std::size_t> member_indices,
                                                     std::string label,
                                                     bool validate = true);

    std::size_t order() const override { return members_.size(); }
    Element identity() const override { return parent_->identity(); }
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    Element power(const Element& a, Exp m) const override;
    Element commutator(const Element& a, const Element& b) const override;
    std::vector<Element> generators() const override;
    std::size_t index_of(const Element& a) const override;
    Element element_at(std::size_t i) const override;

    const GroupPtr& parent() const { return parent_; }
    const std::vector<std::size_t>& member_indices() const { return members_; }
    bool contains(const Element& a) const;

  private:
    explicit SubgroupView(std::string label) : Group(std::move(label)) {}
    std::size_t position_of(std::size_t parent_index) const;

    GroupPtr parent_;
    std::vector<std::size_t> members_;  // sorted parent indices
    mutable std::vector<Element> gens_;  // computed lazily
};

}
