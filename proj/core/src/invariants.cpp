#include "twine/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "twine/errors.hpp"
#include "twine/pc_group.hpp"
#include "twine/table_group.hpp"

namespace twine {

namespace {

/// Sorted parent indices of the subgroup generated by the seed elements.
std::vector<std::size_t> closure_indices(const Group& g, const std::vector<Element>& seeds) {
    std::unordered_set<std::size_t> seen;
    std::vector<std::size_t> list;
    auto add = [&](std::size_t i) {
        if (seen.insert(i).second) list.push_back(i);
    };
    add(g.index_of(g.identity()));
    for (std::size_t next = 0; next < list.size(); ++next) {
        Element x = g.element_at(list[next]);
        for (const Element& s : seeds) add(g.index_of(g.multiply(x, s)));
    }
    std::sort(list.begin(), list.end());
    return list;
}

std::vector<Exp> divisors_of(Exp n) {
    std::vector<Exp> divs{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t base = divs.size();
        Exp q = 1;
        for (int i = 0; i < e; ++i) {
            q *= p;
            for (std::size_t d = 0; d < base; ++d) divs.push_back(divs[d] * q);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace

std::shared_ptr<const SubgroupView> center(const GroupPtr& g) {
    std::vector<Element> gens = g->generators();
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < g->order(); ++i) {
        Element x = g->element_at(i);
        bool central = true;
        for (const Element& gen : gens)
            if (!g->commutes(x, gen)) {
                central = false;
                break;
            }
        if (central) members.push_back(i);
    }
    return SubgroupView::build(g, std::move(members), "Z(" + g->label() + ")", false);
}

std::shared_ptr<const SubgroupView> derived_subgroup(const GroupPtr& g) {
    std::vector<Element> gens = g->generators();
    std::vector<Element> seeds;
    std::unordered_set<std::size_t> seed_idx;
    auto add_seed = [&](const Element& c) {
        if (!g->is_identity(c) && seed_idx.insert(g->index_of(c)).second) seeds.push_back(c);
    };
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) add_seed(g->commutator(gens[i], gens[j]));

    // Normal closure: regrow whenever conjugation by a generator escapes.
    std::vector<std::size_t> members = closure_indices(*g, seeds);
    for (bool stable = false; !stable;) {
        stable = true;
        for (std::size_t idx : members) {
            Element h = g->element_at(idx);
            for (const Element& gen : gens) {
                Element c = g->conjugate(h, gen);
                if (!std::binary_search(members.begin(), members.end(), g->index_of(c))) {
                    add_seed(c);
                    members = closure_indices(*g, seeds);
                    stable = false;
                    break;
                }
            }
            if (!stable) break;
        }
    }
    return SubgroupView::build(g, std::move(members), "[" + g->label() + "," + g->label() + "]",
                               false);
}

std::shared_ptr<const SubgroupView> pth_power_subgroup(const GroupPtr& g, Exp p) {
    if (p < 2) throw ConfigError("pth_power_subgroup needs p >= 2");
    std::vector<Element> seeds;
    std::unordered_set<std::size_t> seed_idx;
    for (std::size_t i = 0; i < g->order(); ++i) {
        Element c = g->power(g->element_at(i), p);
        if (!g->is_identity(c) && seed_idx.insert(g->index_of(c)).second) seeds.push_back(c);
    }
    return SubgroupView::build(g, closure_indices(*g, seeds),
                               g->label() + "^" + std::to_string(p), false);
}

Exp exponent_of(const Group& g) {
    Exp e = 1;
    for (std::size_t i = 0; i < g.order(); ++i) e = std::lcm(e, g.element_order(g.element_at(i)));
    return e;
}

OrderStructure order_structure(const Group& g) {
    OrderStructure os;
    for (std::size_t i = 0; i < g.order(); ++i) ++os[g.element_order(g.element_at(i))];
    return os;
}

std::string order_structure_text(const OrderStructure& os) {
    std::string out = "{";
    for (const auto& [ord, count] : os) {
        if (out.size() > 1) out += ", ";
        out += std::to_string(ord) + ":" + std::to_string(count);
    }
    return out + "}";
}

std::vector<Exp> abelian_type(const OrderStructure& os) {
    auto reject = [&](const std::string& why) {
        throw NotAbelianRealizable("order statistics " + order_structure_text(os) +
                                   " fit no abelian group: " + why);
    };
    Exp n = 0;
    for (const auto& [ord, count] : os) {
        if (ord < 1 || count < 1) reject("orders and counts must be positive");
        n += count;
    }
    if (n == 0 || os.count(1) == 0 || os.at(1) != 1) reject("needs exactly one identity");

    std::vector<Exp> type;
    for (auto [p, e] : factorize(n)) {
        // f(k) = #solutions of x^{p^k} = 1; in an abelian p-part this equals
        // p^{sum_i min(lambda_i, k)}, whose increments give the conjugate
        // partition of the type lambda.
        std::vector<Exp> logs{0};
        Exp f = 1, pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            auto it = os.find(pk);
            f += it == os.end() ? 0 : it->second;
            Exp m = 0;
            for (Exp t = f; t > 1; t /= p, ++m)
                if (t % p != 0) reject("count of x with x^" + std::to_string(pk) +
                                       "=1 is not a power of " + std::to_string(p));
            logs.push_back(m);
        }
        std::vector<Exp> conj;  // conj[k-1] = #factors with exponent >= k
        for (int k = 1; k <= e; ++k) {
            conj.push_back(logs[k] - logs[k - 1]);
            if (conj.back() < 0 || (k > 1 && conj[k - 1] > conj[k - 2]))
                reject("solution counts for prime " + std::to_string(p) + " are not concave");
        }
        for (int k = 1; k <= e; ++k) {
            Exp copies = conj[k - 1] - (k < e ? conj[k] : 0);
            Exp q = 1;
            for (int i = 0; i < k; ++i) q *= p;
            for (Exp c = 0; c < copies; ++c) type.push_back(q);
        }
    }
    std::sort(type.begin(), type.end(), [](Exp a, Exp b) {
        auto fa = factorize(a)[0], fb = factorize(b)[0];
        return fa.first != fb.first ? fa.first < fb.first : a < b;
    });

    // The reconstruction used only per-prime solution counts; require the full
    // statistics of the candidate type to match exactly.
    OrderStructure expected{{1, 1}};
    for (Exp q : type) {
        OrderStructure next;
        for (const auto& [d1, c1] : expected)
            for (Exp d2 : divisors_of(q)) {
                Exp phi = d2 == 1 ? 1 : d2 - d2 / factorize(d2)[0].first;
                next[std::lcm(d1, d2)] += c1 * phi;
            }
        expected = std::move(next);
    }
    if (expected != os) reject("statistics are not realized by the reconstructed type");
    return type;
}

GroupPtr abelian_group(const std::vector<Exp>& cyclic_orders, std::string label) {
    std::vector<Exp> parts;
    for (Exp o : cyclic_orders) {
        if (o < 1) throw ConfigError("cyclic order must be positive");
        for (auto [p, e] : factorize(o)) {
            Exp q = 1;
            for (int i = 0; i < e; ++i) q *= p;
            parts.push_back(q);
        }
    }
    std::sort(parts.begin(), parts.end(), [](Exp a, Exp b) {
        auto fa = factorize(a)[0], fb = factorize(b)[0];
        return fa.first != fb.first ? fa.first < fb.first : a < b;
    });
    if (parts.empty()) {
        MultiplicationTable t;
        t.n = 1;
        t.cells = {0};
        return TableGroup::build(std::move(t), label.empty() ? "Z1" : std::move(label));
    }
    PcPresentation pres;
    pres.rel_orders = parts;
    if (label.empty())
        for (Exp q : parts) label += (label.empty() ? "Z" : "xZ") + std::to_string(q);
    pres.label = std::move(label);
    BuildOptions opts;
    opts.certify = false;  // no relations to collide: consistent by construction
    return PcGroup::build(pres, opts);
}

Fingerprint fingerprint(const GroupPtr& g) {
    Fingerprint fp;
    fp.group_order = static_cast<Exp>(g->order());
    fp.orders = order_structure(*g);
    auto z = center(g);
    fp.center_order = static_cast<Exp>(z->order());
    fp.center_orders = order_structure(*z);
    auto d = derived_subgroup(g);
    fp.derived_order = static_cast<Exp>(d->order());
    fp.derived_exponent = exponent_of(*d);
    for (auto [p, e] : factorize(fp.group_order))
        fp.pth_power_orders[p] = static_cast<Exp>(pth_power_subgroup(g, p)->order());
    for (std::size_t i = 0; i < g->order(); ++i) {
        Element x = g->element_at(i);
        for (Exp m : divisors_of(g->element_order(x)))
            if (d->contains(g->power(x, m))) {
                ++fp.abelianization_orders[m];
                break;
            }
    }
    return fp;
}

std::string first_difference(const Fingerprint& x, const Fingerprint& y) {
    if (x.group_order != y.group_order) return "group_order";
    if (x.orders != y.orders) return "order_structure";
    if (x.center_order != y.center_order) return "center_order";
    if (x.center_orders != y.center_orders) return "center_order_structure";
    if (x.derived_order != y.derived_order) return "derived_order";
    if (x.derived_exponent != y.derived_exponent) return "derived_exponent";
    if (x.pth_power_orders != y.pth_power_orders) return "pth_power_orders";
    if (x.abelianization_orders != y.abelianization_orders) return "abelianization_order_structure";
    return "";
}

}
