#include "twine/twist.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "twine/consistency.hpp"
#include "twine/errors.hpp"
#include "twine/invariants.hpp"
#include "twine/product_group.hpp"
#include "twine/subgroup_view.hpp"

namespace twine {

Element twisted_multiply(const Group& base, const Element& x, const Element& y, Exp n) {
    Element c = base.commutator(x, y);
    return base.multiply(base.multiply(base.power(c, n), x), y);
}

Element twisted_multiply_conjugation_form(const Group& base, const Element& x, const Element& y,
                                          Exp n) {
    return base.multiply(base.multiply(base.power(y, -n), x), base.power(y, n + 1));
}

Element solve_right(const Group& base, const Element& a, const Element& b, Exp n) {
    return base.multiply(base.multiply(base.power(a, n), b), base.power(a, -(n + 1)));
}

std::shared_ptr<const TwistView> TwistView::build(GroupPtr base, Exp level, bool check_class) {
    if (!base) throw ConfigError("twist needs a base group");
    if (check_class) {
        std::optional<ClassWitness> w;
        if (!verify_class_at_most_2(*base, &w))
            throw NotClass2("twist of '" + base->label() + "': commutator of generators " +
                            to_string(w->a) + ", " + to_string(w->b) +
                            " is not central (fails against " + to_string(w->c) + ")");
    }
    Exp period = exponent_of(*derived_subgroup(base));
    auto tv = std::shared_ptr<TwistView>(
        new TwistView("twist(" + base->label() + "," + std::to_string(level) + ")"));
    tv->base_ = std::move(base);
    tv->level_ = level;
    tv->period_ = period;
    tv->effective_ = ((level % period) + period) % period;
    return tv;
}

Element TwistView::multiply(const Element& a, const Element& b) const {
    return twisted_multiply(*base_, a, b, effective_);
}

std::vector<Element> TwistView::generators() const {
    // Base generators alone need not generate under the twisted product (the
    // twisted commutators only reach [x,y]^{2n+1}); adding the base
    // generator-pair commutators always suffices: they are central, so
    // twisted products involving them agree with base products, letting any
    // base word be rebuilt one letter at a time.
    std::vector<Element> gens = base_->generators();
    std::unordered_set<std::size_t> have;
    for (const Element& g : gens) have.insert(base_->index_of(g));
    std::size_t d = gens.size();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            Element c = base_->commutator(gens[i], gens[j]);
            if (!base_->is_identity(c) && have.insert(base_->index_of(c)).second)
                gens.push_back(c);
        }
    return gens;
}

std::string iterated_level_text(Exp n, std::uint64_t i) {
    mpz_class b = 2 * mpz_class(static_cast<long>(n)) + 1;
    mpz_class t;
    mpz_pow_ui(t.get_mpz_t(), b.get_mpz_t(), i);
    t = (t - 1) / 2;
    return t.get_str();
}

Exp iterated_level_mod(Exp n, std::uint64_t i, Exp m) {
    if (m < 1) throw ConfigError("iterated_level_mod needs a positive modulus");
    if (m == 1) return 0;
    mpz_class b = 2 * mpz_class(static_cast<long>(n)) + 1;
    mpz_class mod2 = 2 * mpz_class(static_cast<long>(m));
    mpz_class e(static_cast<unsigned long>(i));
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), mod2.get_mpz_t());
    // (2n+1)^i stays odd mod the even modulus, so the halving is exact.
    mpz_class s = ((r - 1) / 2) % mpz_class(static_cast<long>(m));
    if (s < 0) s += static_cast<long>(m);
    return static_cast<Exp>(s.get_si());
}

GroupPtr iterate_twist(const GroupPtr& base, Exp n, std::uint64_t iterations) {
    if (iterations == 0) return base;
    auto probe = TwistView::build(base, 0, true);  // class check + level period
    Exp level = iterated_level_mod(n, iterations, probe->level_period());
    return TwistView::build(base, level, false);
}

namespace {

Exp prime_of_rel_order(const PcPresentation& p, int i) { return factorize(p.rel_orders[i])[0].first; }

/// Per-prime split of a polycyclic presentation, when every relation tail
/// stays inside its generator's prime block.
std::vector<SylowFactor> split_pc_blocks(const PcGroup& g) {
    const PcPresentation& pres = g.presentation();
    const int k = pres.num_generators();
    std::vector<Exp> gen_prime(k);
    for (int i = 0; i < k; ++i) gen_prime[i] = prime_of_rel_order(pres, i);

    auto tail_inside = [&](const std::vector<Exp>& tail, Exp p) {
        for (int i = 0; i < k; ++i)
            if (tail[i] != 0 && gen_prime[i] != p) return false;
        return true;
    };
    for (const auto& [i, tail] : pres.power_tails)
        if (!tail_inside(tail, gen_prime[i])) return {};
    for (const auto& [ji, tail] : pres.comm_tails) {
        if (gen_prime[ji.first] != gen_prime[ji.second]) {
            for (Exp e : tail)
                if (e != 0) return {};  // coprime generators fail to commute: not block-split
        } else if (!tail_inside(tail, gen_prime[ji.first])) {
            return {};
        }
    }

    std::vector<SylowFactor> out;
    for (auto [p, mult] : factorize(static_cast<Exp>(g.order()))) {
        std::vector<int> block;
        std::vector<int> pos(k, -1);
        for (int i = 0; i < k; ++i)
            if (gen_prime[i] == p) {
                pos[i] = static_cast<int>(block.size());
                block.push_back(i);
            }
        PcPresentation sub;
        sub.label = g.label() + "_p" + std::to_string(p);
        for (int i : block) sub.rel_orders.push_back(pres.rel_orders[i]);
        auto project = [&](const std::vector<Exp>& tail) {
            std::vector<Exp> t(block.size(), 0);
            for (int i = 0; i < k; ++i)
                if (tail[i] != 0) t[pos[i]] = tail[i];
            return t;
        };
        for (const auto& [i, tail] : pres.power_tails)
            if (gen_prime[i] == p) sub.power_tails[pos[i]] = project(tail);
        for (const auto& [ji, tail] : pres.comm_tails)
            if (gen_prime[ji.first] == p && gen_prime[ji.second] == p)
                sub.comm_tails[{pos[ji.first], pos[ji.second]}] = project(tail);
        BuildOptions opts;
        opts.certify = false;  // a prime block of a consistent presentation stays consistent
        out.push_back(SylowFactor{p, PcGroup::build(sub, opts)});
    }
    return out;
}

}  // namespace

std::vector<SylowFactor> sylow_decompose(const GroupPtr& g) {
    if (!g) throw ConfigError("sylow_decompose needs a group");
    auto primes = factorize(static_cast<Exp>(g->order()));
    if (primes.empty()) return {};
    if (primes.size() == 1) return {SylowFactor{primes[0].first, g}};

    if (auto* pc = dynamic_cast<const PcGroup*>(g.get())) {
        auto blocks = split_pc_blocks(*pc);
        if (!blocks.empty()) return blocks;
    }

    // Sieve by element order; in a nilpotent group the p-power-order elements
    // form the (normal) Sylow p-subgroup and distinct parts commute.
    std::vector<SylowFactor> out;
    for (auto [p, e] : primes) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < g->order(); ++i)
            if (is_power_of(g->element_order(g->element_at(i)), p)) members.push_back(i);
        Exp expect = 1;
        for (int t = 0; t < e; ++t) expect *= p;
        if (static_cast<Exp>(members.size()) != expect)
            throw NotNilpotent("group '" + g->label() + "' has " + std::to_string(members.size()) +
                               " elements of " + std::to_string(p) + "-power order, but a Sylow " +
                               std::to_string(p) + "-subgroup would need " + std::to_string(expect));
        try {
            out.push_back(SylowFactor{
                p, SubgroupView::build(g, std::move(members), g->label() + "_p" + std::to_string(p),
                                       true)});
        } catch (const InvalidElement& err) {
            throw NotNilpotent("group '" + g->label() + "': " + err.what());
        }
    }
    for (std::size_t x = 0; x < out.size(); ++x)
        for (std::size_t y = x + 1; y < out.size(); ++y)
            for (std::size_t i = 0; i < out[x].group->order(); ++i)
                for (std::size_t j = 0; j < out[y].group->order(); ++j)
                    if (!g->commutes(out[x].group->element_at(i), out[y].group->element_at(j)))
                        throw NotNilpotent("group '" + g->label() + "': elements of coprime order " +
                                           "fail to commute");
    return out;
}

GroupString string_of(const GroupPtr& g) {
    if (!g) throw ConfigError("string_of needs a group");
    if (g->order() % 2 == 0)
        throw EvenOrder("group '" + g->label() + "' has even order " + std::to_string(g->order()) +
                        "; strings are defined for odd order");
    GroupString s;
    s.base_label = g->label();
    if (g->order() == 1) {
        s.terms.push_back(StringTerm{g, {}});
        return s;
    }

    for (const SylowFactor& f : sylow_decompose(g)) {
        std::optional<ClassWitness> w;
        if (!verify_class_at_most_2(*f.group, &w))
            throw NotClass2("Sylow " + std::to_string(f.prime) + "-subgroup of '" + g->label() +
                            "' has class > 2: commutator of " + to_string(w->a) + ", " +
                            to_string(w->b) + " is not central");
        StringFactor sf;
        sf.prime = f.prime;
        sf.sylow = f.group;
        sf.half = (f.prime - 1) / 2;
        sf.derived_exponent = exponent_of(*derived_subgroup(f.group));
        for (Exp e = sf.derived_exponent; e > 1; e /= f.prime) ++sf.steps;
        s.factors.push_back(std::move(sf));
    }

    std::vector<Exp> prefix{0};
    for (const StringFactor& f : s.factors) prefix.push_back(prefix.back() + f.steps);
    const Exp length = 1 + prefix.back();

    OrderStructure base_os = order_structure(*g);
    for (Exp term = 0; term < length; ++term) {
        StringTerm st;
        std::vector<GroupPtr> parts;
        for (std::size_t j = 0; j < s.factors.size(); ++j) {
            Exp it = std::clamp<Exp>(term - prefix[j], 0, s.factors[j].steps);
            st.iterations.push_back(static_cast<std::uint64_t>(it));
            parts.push_back(iterate_twist(s.factors[j].sylow, s.factors[j].half,
                                          static_cast<std::uint64_t>(it)));
        }
        st.group = direct_product(parts);
        if (order_structure(*st.group) != base_os)
            throw std::logic_error("string term " + std::to_string(term) + " of '" + g->label() +
                                   "' changed the order statistics");
        s.terms.push_back(std::move(st));
    }
    if (!is_abelian(*s.terms.back().group))
        throw std::logic_error("last string term of '" + g->label() + "' is not abelian");
    return s;
}

std::string string_report_json(const GroupString& s) {
    nlohmann::json doc;
    doc["group"] = s.base_label;
    doc["length"] = s.terms.size();
    doc["factors"] = nlohmann::json::array();
    for (const StringFactor& f : s.factors)
        doc["factors"].push_back({{"prime", f.prime},
                                  {"order", f.sylow->order()},
                                  {"twist_increment", f.half},
                                  {"derived_exponent", f.derived_exponent},
                                  {"steps", f.steps}});
    doc["terms"] = nlohmann::json::array();
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
        const StringTerm& t = s.terms[i];
        nlohmann::json levels = nlohmann::json::array();
        nlohmann::json levels_mod = nlohmann::json::array();
        for (std::size_t j = 0; j < t.iterations.size(); ++j) {
            levels.push_back(iterated_level_text(s.factors[j].half, t.iterations[j]));
            levels_mod.push_back(
                iterated_level_mod(s.factors[j].half, t.iterations[j], s.factors[j].derived_exponent));
        }
        doc["terms"].push_back({{"index", i},
                                {"label", t.group->label()},
                                {"order", t.group->order()},
                                {"iterations", t.iterations},
                                {"levels", levels},
                                {"levels_mod", levels_mod},
                                {"abelian", is_abelian(*t.group)}});
    }
    return doc.dump(2) + "\n";
}

PcPresentation native_presentation(const TwistView& t) {
    auto* pc = dynamic_cast<const PcGroup*>(t.base().get());
    if (!pc) throw ConfigError("native_presentation needs a polycyclic base, got '" +
                               t.base()->label() + "'");
    const PcPresentation& bp = pc->presentation();
    const int k = bp.num_generators();
    const std::size_t n = t.order();

    // Tabulate the twisted normal form g_0^{a_0} o (g_1^{a_1} o (...)) and
    // invert it.
    std::vector<std::vector<Exp>> rev(n);
    std::vector<char> seen(n, 0);
    std::vector<Exp> tuple(k, 0);
    for (std::size_t count = 0;; ++count) {
        Element v = t.identity();
        for (int i = k; i-- > 0;)
            if (tuple[i] != 0) v = t.multiply(pc->power(pc->generator(i), tuple[i]), v);
        std::size_t idx = t.index_of(v);
        if (seen[idx])
            throw std::logic_error("twisted normal form of '" + t.label() + "' is not a bijection");
        seen[idx] = 1;
        rev[idx] = tuple;
        int i = k - 1;
        while (i >= 0 && ++tuple[i] == bp.rel_orders[i]) tuple[i--] = 0;
        if (i < 0) break;
    }

    PcPresentation out;
    out.label = t.label();
    out.rel_orders = bp.rel_orders;
    for (int i = 0; i < k; ++i) {
        Element power = pc->power(pc->generator(i), bp.rel_orders[i]);
        if (t.is_identity(power)) continue;
        std::vector<Exp> tail = rev[t.index_of(power)];
        for (int j = 0; j <= i; ++j)
            if (tail[j] != 0)
                throw std::logic_error("twisted power tail of generator " + std::to_string(i + 1) +
                                       " in '" + t.label() + "' is not supported above it");
        out.power_tails[i] = std::move(tail);
    }
    for (int j = 1; j < k; ++j)
        for (int i = 0; i < j; ++i) {
            Element c = t.commutator(pc->generator(j), pc->generator(i));
            if (!t.is_identity(c)) out.comm_tails[{j, i}] = rev[t.index_of(c)];
        }
    return out;
}

}
