#include "twine/product_group.hpp"

#include "twine/errors.hpp"
#include "twine/pc_group.hpp"

namespace twine {

namespace {

constexpr std::size_t kMaxProductOrder = std::size_t(1) << 22;

std::string joined_label(const std::vector<GroupPtr>& factors) {
    std::string out;
    for (const GroupPtr& f : factors) {
        if (!out.empty()) out += " x ";
        out += f->label();
    }
    return out;
}

}  // namespace

std::shared_ptr<const ProductGroup> ProductGroup::build(std::vector<GroupPtr> factors,
                                                        std::string label) {
    if (factors.empty()) throw ConfigError("direct product needs at least one factor");
    auto pg = std::shared_ptr<ProductGroup>(
        new ProductGroup(label.empty() ? joined_label(factors) : std::move(label)));
    std::size_t off = 0;
    for (const GroupPtr& f : factors) {
        if (!f) throw ConfigError("direct product factor is null");
        pg->offsets_.push_back(off);
        off += f->identity().size();
        if (pg->order_ > kMaxProductOrder / f->order())
            throw ConfigError("direct product order exceeds " + std::to_string(kMaxProductOrder));
        pg->order_ *= f->order();
    }
    pg->offsets_.push_back(off);
    pg->factors_ = std::move(factors);
    return pg;
}

void ProductGroup::check_arity(const Element& a) const {
    if (a.size() != offsets_.back())
        throw InvalidElement("element " + to_string(a) + " has wrong arity for '" + label_ + "'");
}

Element ProductGroup::project(const Element& a, std::size_t f) const {
    check_arity(a);
    return Element(a.begin() + offsets_[f], a.begin() + offsets_[f + 1]);
}

Element ProductGroup::embed(const Element& a, std::size_t f) const {
    Element out = identity();
    if (a.size() != offsets_[f + 1] - offsets_[f])
        throw InvalidElement("element " + to_string(a) + " has wrong arity for factor " +
                             std::to_string(f) + " of '" + label_ + "'");
    std::copy(a.begin(), a.end(), out.begin() + offsets_[f]);
    return out;
}

Element ProductGroup::identity() const {
    Element out;
    for (const GroupPtr& f : factors_) {
        Element id = f->identity();
        out.insert(out.end(), id.begin(), id.end());
    }
    return out;
}

namespace {

template <typename Fn>
Element componentwise(const std::vector<GroupPtr>& factors, const std::vector<std::size_t>& offsets,
                      Fn&& fn) {
    Element out;
    out.reserve(offsets.back());
    for (std::size_t f = 0; f < factors.size(); ++f) {
        Element part = fn(f);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace

Element ProductGroup::multiply(const Element& a, const Element& b) const {
    check_arity(a);
    check_arity(b);
    return componentwise(factors_, offsets_, [&](std::size_t f) {
        Element xa(a.begin() + offsets_[f], a.begin() + offsets_[f + 1]);
        Element xb(b.begin() + offsets_[f], b.begin() + offsets_[f + 1]);
        return factors_[f]->multiply(xa, xb);
    });
}

Element ProductGroup::inverse(const Element& a) const {
    check_arity(a);
    return componentwise(factors_, offsets_, [&](std::size_t f) {
        Element xa(a.begin() + offsets_[f], a.begin() + offsets_[f + 1]);
        return factors_[f]->inverse(xa);
    });
}

Element ProductGroup::power(const Element& a, Exp m) const {
    check_arity(a);
    return componentwise(factors_, offsets_, [&](std::size_t f) {
        Element xa(a.begin() + offsets_[f], a.begin() + offsets_[f + 1]);
        return factors_[f]->power(xa, m);
    });
}

Element ProductGroup::commutator(const Element& a, const Element& b) const {
    check_arity(a);
    check_arity(b);
    return componentwise(factors_, offsets_, [&](std::size_t f) {
        Element xa(a.begin() + offsets_[f], a.begin() + offsets_[f + 1]);
        Element xb(b.begin() + offsets_[f], b.begin() + offsets_[f + 1]);
        return factors_[f]->commutator(xa, xb);
    });
}

std::vector<Element> ProductGroup::generators() const {
    std::vector<Element> out;
    for (std::size_t f = 0; f < factors_.size(); ++f)
        for (const Element& gen : factors_[f]->generators()) out.push_back(embed(gen, f));
    return out;
}

std::size_t ProductGroup::index_of(const Element& a) const {
    check_arity(a);
    std::size_t idx = 0;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
        Element xa(a.begin() + offsets_[f], a.begin() + offsets_[f + 1]);
        idx = idx * factors_[f]->order() + factors_[f]->index_of(xa);
    }
    return idx;
}

Element ProductGroup::element_at(std::size_t i) const {
    if (i >= order_) throw InvalidElement("index " + std::to_string(i) + " out of range");
    std::vector<Element> parts(factors_.size());
    for (std::size_t f = factors_.size(); f-- > 0;) {
        std::size_t n = factors_[f]->order();
        parts[f] = factors_[f]->element_at(i % n);
        i /= n;
    }
    Element out;
    out.reserve(offsets_.back());
    for (const Element& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

GroupPtr direct_product(const std::vector<GroupPtr>& factors, std::string label) {
    if (factors.empty()) throw ConfigError("direct product needs at least one factor");
    if (factors.size() == 1 && label.empty()) return factors[0];

    bool all_pc = true;
    for (const GroupPtr& f : factors)
        if (!dynamic_cast<const PcGroup*>(f.get())) all_pc = false;
    if (all_pc) {
        PcPresentation merged = static_cast<const PcGroup*>(factors[0].get())->presentation();
        for (std::size_t f = 1; f < factors.size(); ++f)
            merged = product_presentation(merged,
                                          static_cast<const PcGroup*>(factors[f].get())->presentation());
        if (!label.empty()) merged.label = std::move(label);
        // Factors are valid polycyclic groups, so the merged presentation is
        // consistent by construction.
        BuildOptions opts;
        opts.certify = false;
        return PcGroup::build(merged, opts);
    }
    return ProductGroup::build(factors, std::move(label));
}

}
