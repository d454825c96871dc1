#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "twine/errors.hpp"
#include "twine/invariants.hpp"
#include "twine/table_group.hpp"

namespace twine {

namespace {

constexpr std::size_t kSearchOrderLimit = 2048;
constexpr std::uint32_t kUnset = 0xFFFFFFFFu;

struct Extension {
    std::vector<std::uint32_t> phi;  // index map, kUnset outside the explored subgroup
    std::size_t explored = 0;
};

/// Extends gens_a[t] -> gens_b[t] over the subgroup generated by gens_a, by
/// breadth-first search from the identity. Every (element, generator)
/// incidence is checked against the image and injectivity is enforced, so a
/// returned map is an isomorphism from that subgroup onto the subgroup the
/// images generate; null means no isomorphism with these images exists.
std::optional<Extension> extend_map(const Group& a, const Group& b,
                                    const std::vector<Element>& gens_a,
                                    const std::vector<Element>& gens_b, std::size_t& budget) {
    Extension ext;
    ext.phi.assign(a.order(), kUnset);
    std::vector<char> hit(b.order(), 0);
    std::vector<std::uint32_t> queue;
    std::size_t ida = a.index_of(a.identity());
    ext.phi[ida] = static_cast<std::uint32_t>(b.index_of(b.identity()));
    hit[ext.phi[ida]] = 1;
    queue.push_back(static_cast<std::uint32_t>(ida));
    for (std::size_t next = 0; next < queue.size(); ++next) {
        Element u = a.element_at(queue[next]);
        Element fu = b.element_at(ext.phi[queue[next]]);
        for (std::size_t t = 0; t < gens_a.size(); ++t) {
            if (budget == 0)
                throw SearchBudgetExceeded("isomorphism search budget exhausted between '" +
                                           a.label() + "' and '" + b.label() + "'");
            --budget;
            std::size_t v = a.index_of(a.multiply(u, gens_a[t]));
            std::size_t fv = b.index_of(b.multiply(fu, gens_b[t]));
            if (ext.phi[v] == kUnset) {
                if (hit[fv]) return std::nullopt;  // not injective
                ext.phi[v] = static_cast<std::uint32_t>(fv);
                hit[fv] = 1;
                queue.push_back(static_cast<std::uint32_t>(v));
            } else if (ext.phi[v] != fv) {
                return std::nullopt;  // not a homomorphism
            }
        }
    }
    ext.explored = queue.size();
    return ext;
}

struct Profile {
    Exp order = 0;
    std::size_t class_size = 0;
    auto operator<=>(const Profile&) const = default;
};

/// (element order, conjugacy class size) per element, O(n^2) table lookups.
std::vector<Profile> element_profiles(const TableGroup& g) {
    const std::size_t n = g.order();
    std::vector<Profile> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t centralizer = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (g.table().cells[i * n + j] == g.table().cells[j * n + i]) ++centralizer;
        out[i] = Profile{g.element_order(g.element_at(i)), n / centralizer};
    }
    return out;
}

/// Backtracking over images of a greedy generating sequence, candidates
/// filtered by profile. Complete: an isomorphism must map each a_m to an
/// element of equal profile, and all such images are tried in index order.
IsoResult search_isomorphism(const GroupPtr& a, const GroupPtr& b, const IsoOptions& opts) {
    if (a->order() > kSearchOrderLimit)
        throw SearchBudgetExceeded("order " + std::to_string(a->order()) +
                                   " exceeds the isomorphism search limit " +
                                   std::to_string(kSearchOrderLimit));
    auto ta = materialize_table(*a);
    auto tb = materialize_table(*b);
    const std::size_t n = ta->order();

    std::vector<Profile> pa = element_profiles(*ta), pb = element_profiles(*tb);
    {
        auto ha = pa, hb = pb;
        std::sort(ha.begin(), ha.end());
        std::sort(hb.begin(), hb.end());
        if (ha != hb) {
            IsoResult r;
            r.separating_invariant = "conjugacy_profile";
            return r;
        }
    }

    // Greedy generating sequence: repeatedly adjoin the largest-order element
    // outside the current closure, keeping the search tree shallow.
    std::vector<std::size_t> gen_seq;
    {
        std::vector<char> in_closure(n, 0);
        auto grow = [&]() {
            std::vector<std::uint32_t> list{
                static_cast<std::uint32_t>(ta->index_of(ta->identity()))};
            std::fill(in_closure.begin(), in_closure.end(), 0);
            in_closure[list[0]] = 1;
            for (std::size_t next = 0; next < list.size(); ++next)
                for (std::size_t s : gen_seq) {
                    std::uint32_t v = ta->table().cells[list[next] * n + s];
                    if (!in_closure[v]) {
                        in_closure[v] = 1;
                        list.push_back(v);
                    }
                }
        };
        grow();
        for (;;) {
            std::size_t pick = n;
            for (std::size_t i = 0; i < n; ++i)
                if (!in_closure[i] && (pick == n || pa[i].order > pa[pick].order)) pick = i;
            if (pick == n) break;
            gen_seq.push_back(pick);
            grow();
        }
    }

    std::map<Profile, std::vector<std::size_t>> candidates;
    for (std::size_t i = 0; i < n; ++i) candidates[pb[i]].push_back(i);

    std::size_t budget = opts.node_budget;
    std::vector<Element> gens_a, gens_b;
    for (std::size_t s : gen_seq) gens_a.push_back(ta->element_at(s));
    std::optional<Extension> full;

    auto descend = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == gen_seq.size()) {
            auto ext = extend_map(*ta, *tb, gens_a, gens_b, budget);
            if (ext && ext->explored == n) {
                full = std::move(ext);
                return true;
            }
            return false;
        }
        std::vector<Element> prefix_a(gens_a.begin(), gens_a.begin() + static_cast<long>(depth) + 1);
        for (std::size_t cand : candidates[pa[gen_seq[depth]]]) {
            gens_b.push_back(tb->element_at(cand));
            if (extend_map(*ta, *tb, prefix_a, gens_b, budget) && self(self, depth + 1))
                return true;
            gens_b.pop_back();
        }
        return false;
    };

    IsoResult r;
    if (gen_seq.empty()) {  // trivial group
        r.isomorphic = n == tb->order();
        if (!r.isomorphic) r.separating_invariant = "group_order";
        return r;
    }
    if (descend(descend, 0)) {
        r.isomorphic = true;
        for (std::size_t m = 0; m < gen_seq.size(); ++m)
            r.generator_map.emplace_back(a->element_at(gen_seq[m]),
                                         b->element_at(tb->index_of(gens_b[m])));
        return r;
    }
    r.separating_invariant = "exhaustive_search";
    return r;
}

/// Splits g into its coprime-order parts (one per prime), or returns an empty
/// list when the parts fail to be commuting subgroups of the right sizes (in
/// which case g is not nilpotent and no split-based shortcut applies).
std::vector<std::shared_ptr<const SubgroupView>> coprime_parts(const GroupPtr& g) {
    auto primes = factorize(static_cast<Exp>(g->order()));
    std::vector<std::shared_ptr<const SubgroupView>> parts;
    if (primes.size() < 2) return parts;
    for (auto [p, e] : primes) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < g->order(); ++i)
            if (is_power_of(g->element_order(g->element_at(i)), p)) members.push_back(i);
        Exp expect = 1;
        for (int k = 0; k < e; ++k) expect *= p;
        if (static_cast<Exp>(members.size()) != expect) return {};
        try {
            parts.push_back(SubgroupView::build(g, std::move(members),
                                                g->label() + "_p" + std::to_string(p), true));
        } catch (const InvalidElement&) {
            return {};
        }
    }
    for (std::size_t x = 0; x < parts.size(); ++x)
        for (std::size_t y = x + 1; y < parts.size(); ++y)
            for (std::size_t i = 0; i < parts[x]->order(); ++i)
                for (std::size_t j = 0; j < parts[y]->order(); ++j)
                    if (!g->commutes(parts[x]->element_at(i), parts[y]->element_at(j))) return {};
    return parts;
}

}  // namespace

IsoResult isomorphism(const GroupPtr& a, const GroupPtr& b, const IsoOptions& opts) {
    IsoResult r;
    if (!a || !b) throw ConfigError("isomorphism needs two groups");
    if (a.get() == b.get()) {
        r.isomorphic = true;
        for (const Element& gen : a->generators()) r.generator_map.emplace_back(gen, gen);
        return r;
    }
    std::string diff = first_difference(fingerprint(a), fingerprint(b));
    if (!diff.empty()) {
        r.separating_invariant = diff;
        return r;
    }
    if (a->order() == 1) {
        r.isomorphic = true;
        return r;
    }

    // Coprime orders split both groups into commuting prime-order parts;
    // matching parts pairwise settles the product (sizes already agree, the
    // fingerprints being equal).
    if (factorize(static_cast<Exp>(a->order())).size() > 1) {
        auto pa = coprime_parts(a);
        auto pb = coprime_parts(b);
        if (!pa.empty() && !pb.empty()) {
            r.isomorphic = true;
            for (std::size_t f = 0; f < pa.size(); ++f) {
                IsoResult part = isomorphism(pa[f], pb[f], opts);
                if (!part.isomorphic) {
                    r.isomorphic = false;
                    r.separating_invariant = part.separating_invariant;
                    r.generator_map.clear();
                    return r;
                }
                // Part elements are parent elements, and the union of the
                // parts' generators generates the product.
                for (auto& [x, y] : part.generator_map) r.generator_map.emplace_back(x, y);
            }
            return r;
        }
    }
    return search_isomorphism(a, b, opts);
}

bool is_isomorphic(const GroupPtr& a, const GroupPtr& b, const IsoOptions& opts) {
    return isomorphism(a, b, opts).isomorphic;
}

}
