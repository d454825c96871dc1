#include "twine/subgroup_view.hpp"

#include <algorithm>
#include <unordered_set>

#include "twine/errors.hpp"

namespace twine {

std::shared_ptr<const SubgroupView> SubgroupView::build(GroupPtr parent,
                                                        std::vector<std::size_t> member_indices,
                                                        std::string label,
                                                        bool validate) {
    if (!parent) throw ConfigError("subgroup view needs a parent group");
    std::sort(member_indices.begin(), member_indices.end());
    if (std::adjacent_find(member_indices.begin(), member_indices.end()) != member_indices.end())
        throw InvalidElement("subgroup '" + label + "': duplicate member index");
    if (member_indices.empty() || member_indices.back() >= parent->order())
        throw InvalidElement("subgroup '" + label + "': member indices out of range");
    if (!std::binary_search(member_indices.begin(), member_indices.end(),
                            parent->index_of(parent->identity())))
        throw InvalidElement("subgroup '" + label + "': identity is not a member");

    if (validate) {
        std::vector<Element> elems;
        elems.reserve(member_indices.size());
        for (std::size_t idx : member_indices) elems.push_back(parent->element_at(idx));
        for (const Element& a : elems)
            for (const Element& b : elems) {
                std::size_t p = parent->index_of(parent->multiply(a, b));
                if (!std::binary_search(member_indices.begin(), member_indices.end(), p))
                    throw InvalidElement("subgroup '" + label + "': not closed under products at " +
                                         to_string(a) + " * " + to_string(b));
            }
    }

    auto sv = std::shared_ptr<SubgroupView>(new SubgroupView(std::move(label)));
    sv->parent_ = std::move(parent);
    sv->members_ = std::move(member_indices);
    return sv;
}

std::size_t SubgroupView::position_of(std::size_t parent_index) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), parent_index);
    if (it == members_.end() || *it != parent_index)
        throw InvalidElement("element is not a member of subgroup '" + label_ + "'");
    return static_cast<std::size_t>(it - members_.begin());
}

Element SubgroupView::multiply(const Element& a, const Element& b) const {
    return parent_->multiply(a, b);
}

Element SubgroupView::inverse(const Element& a) const { return parent_->inverse(a); }

Element SubgroupView::power(const Element& a, Exp m) const { return parent_->power(a, m); }

Element SubgroupView::commutator(const Element& a, const Element& b) const {
    return parent_->commutator(a, b);
}

std::vector<Element> SubgroupView::generators() const {
    if (!gens_.empty() || members_.size() == 1) return gens_;
    std::unordered_set<std::size_t> closed;
    std::vector<std::size_t> closed_list;
    auto grow = [&]() {
        // Closure of the current generators under right multiplication.
        closed.clear();
        closed_list.clear();
        closed.insert(parent_->index_of(parent_->identity()));
        closed_list.push_back(*closed.begin());
        for (std::size_t next = 0; next < closed_list.size(); ++next) {
            Element x = parent_->element_at(closed_list[next]);
            for (const Element& g : gens_) {
                std::size_t p = parent_->index_of(parent_->multiply(x, g));
                if (closed.insert(p).second) closed_list.push_back(p);
            }
        }
    };
    grow();
    for (std::size_t idx : members_)
        if (!closed.count(idx)) {
            gens_.push_back(parent_->element_at(idx));
            grow();
        }
    return gens_;
}

std::size_t SubgroupView::index_of(const Element& a) const {
    return position_of(parent_->index_of(a));
}

Element SubgroupView::element_at(std::size_t i) const {
    if (i >= members_.size()) throw InvalidElement("index " + std::to_string(i) + " out of range");
    return parent_->element_at(members_[i]);
}

bool SubgroupView::contains(const Element& a) const {
    return std::binary_search(members_.begin(), members_.end(), parent_->index_of(a));
}

}
