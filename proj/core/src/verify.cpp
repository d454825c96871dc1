#include "twine/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "twine/catalog.hpp"
#include "twine/consistency.hpp"
#include "twine/errors.hpp"
#include "twine/invariants.hpp"
#include "twine/product_group.hpp"
#include "twine/table_group.hpp"
#include "twine/twist.hpp"

#ifndef TWINE_VERSION
#define TWINE_VERSION "0.0.0"
#endif

namespace twine {

namespace {

using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------
// Small utilities
// ---------------------------------------------------------------------------

Exp ipow(Exp base, int e) {
    Exp r = 1;
    while (e-- > 0) r *= base;
    return r;
}

bool is_odd_prime(Exp p) {
    if (p < 3 || p % 2 == 0) return false;
    for (Exp q = 3; q * q <= p; q += 2)
        if (p % q == 0) return false;
    return true;
}

/// p such that o = p^k for a prime p, or 0 when o is not a prime power.
Exp prime_of_prime_power(std::size_t o) {
    if (o < 2) return 0;
    Exp p = 0;
    std::size_t r = o;
    for (std::size_t q = 2; q * q <= r; ++q)
        if (r % q == 0) {
            p = static_cast<Exp>(q);
            break;
        }
    if (p == 0) p = static_cast<Exp>(r);
    while (r > 1) {
        if (r % static_cast<std::size_t>(p) != 0) return 0;
        r /= static_cast<std::size_t>(p);
    }
    return p;
}

/// Number of prime factors of e, counted with multiplicity.
int factor_count(Exp e) {
    int t = 0;
    for (Exp r = e; r > 1;)
        for (Exp q = 2; q <= r; ++q)
            if (r % q == 0) {
                r /= q;
                ++t;
                break;
            }
    return t;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string chain_text(const std::vector<std::size_t>& orders) {
    std::vector<std::string> parts;
    for (std::size_t v : orders) parts.push_back(std::to_string(v));
    return join(parts, "<");
}

std::string label_set_text(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    return "{" + join(labels, ", ") + "}";
}

std::vector<Element> all_elements(const Group& g) {
    std::vector<Element> out;
    out.reserve(g.order());
    for (std::size_t i = 0; i < g.order(); ++i) out.push_back(g.element_at(i));
    return out;
}

/// Full product table of g under its own operation, indexed by element index.
std::vector<std::uint32_t> product_cells(const Group& g) {
    const std::size_t o = g.order();
    std::vector<Element> e = all_elements(g);
    std::vector<std::uint32_t> cells(o * o);
    for (std::size_t a = 0; a < o; ++a)
        for (std::size_t b = 0; b < o; ++b)
            cells[a * o + b] = static_cast<std::uint32_t>(g.index_of(g.multiply(e[a], e[b])));
    return cells;
}

/// Product table of the level-n twisted operation [x,y]^n x y over g.
std::vector<std::uint32_t> twisted_cells_of(const Group& g, Exp n) {
    const std::size_t o = g.order();
    std::vector<Element> e = all_elements(g);
    std::vector<std::uint32_t> cells(o * o);
    for (std::size_t a = 0; a < o; ++a)
        for (std::size_t b = 0; b < o; ++b)
            cells[a * o + b] =
                static_cast<std::uint32_t>(g.index_of(twisted_multiply(g, e[a], e[b], n)));
    return cells;
}

// ---------------------------------------------------------------------------
// Raw index tables: a minimal group-table form used as an independent oracle
// for iterated twisting, kept free of the twist machinery under test.
// ---------------------------------------------------------------------------

struct RawTable {
    std::size_t o = 0;
    std::vector<std::uint32_t> cells;
    std::uint32_t id = 0;
    std::vector<std::uint32_t> inv;
    std::string problem;  ///< non-empty when the table lost its group structure
};

RawTable raw_table(std::size_t o, std::vector<std::uint32_t> cells) {
    RawTable t;
    t.o = o;
    t.cells = std::move(cells);
    std::size_t id = o;
    for (std::size_t e = 0; e < o && id == o; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < o && ok; ++x)
            ok = t.cells[e * o + x] == x && t.cells[x * o + e] == x;
        if (ok) id = e;
    }
    if (id == o) {
        t.problem = "no two-sided identity";
        return t;
    }
    t.id = static_cast<std::uint32_t>(id);
    t.inv.assign(o, 0);
    for (std::size_t a = 0; a < o; ++a) {
        std::size_t b = o;
        for (std::size_t c = 0; c < o; ++c)
            if (t.cells[a * o + c] == id) {
                b = c;
                break;
            }
        if (b == o || t.cells[b * o + a] != id) {
            t.problem = "element " + std::to_string(a) + " lacks a two-sided inverse";
            return t;
        }
        t.inv[a] = static_cast<std::uint32_t>(b);
    }
    return t;
}

/// One literal twist step on a raw table: out[a][b] = [a,b]^n a b, computed
/// purely by index arithmetic on the previous level's table.
RawTable twist_raw_once(const RawTable& t, Exp n) {
    const std::size_t o = t.o;
    std::vector<std::uint32_t> out(o * o);
    for (std::size_t a = 0; a < o; ++a)
        for (std::size_t b = 0; b < o; ++b) {
            std::uint32_t ab = t.cells[a * o + b];
            std::uint32_t comm = t.cells[t.cells[t.inv[a] * o + t.inv[b]] * o + ab];
            std::uint32_t acc = ab;
            for (Exp k = 0; k < n; ++k) acc = t.cells[comm * o + acc];
            out[a * o + b] = acc;
        }
    return raw_table(o, std::move(out));
}

/// Effective twist level of an iterated-twist result; 0 when the result is
/// the untwisted base. The twisted product is a function of the base group
/// and this value alone, which is what makes it a safe cache key.
Exp collapsed_level_key(const GroupPtr& v) {
    if (auto tv = std::dynamic_pointer_cast<const TwistView>(v)) return tv->effective_level();
    return 0;
}

// ---------------------------------------------------------------------------
// Check collection
// ---------------------------------------------------------------------------

struct Outcome {
    bool pass = true;
    std::string details;
    std::string witness;
};

std::string replay_command(const std::string& suite, const VerifyOptions& opts) {
    std::string c = "twine verify --suite " + suite;
    if (opts.group) {
        if (!opts.group_spec.empty())
            c += " --group '" + opts.group_spec + "'";
        else
            c += " --group <" + opts.group->label() + ">";
    } else {
        c += " --p " + std::to_string(opts.p);
    }
    if (suite == "associativity") c += " --seed " + std::to_string(opts.seed);
    return c;
}

class Sink {
public:
    Sink(std::string suite, const VerifyOptions& opts) {
        report_.suite = std::move(suite);
        report_.seed = opts.seed;
        report_.tool_version = TWINE_VERSION;
        replay_ = replay_command(report_.suite, opts);
    }

    void input(const std::string& label) { report_.inputs.push_back(label); }
    bool has_input(const std::string& label) const {
        return std::find(report_.inputs.begin(), report_.inputs.end(), label) !=
               report_.inputs.end();
    }

    void check(const std::string& name, const std::function<Outcome()>& body) {
        auto t0 = Clock::now();
        Outcome oc = body();
        double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        CheckResult c;
        c.name = name;
        c.pass = oc.pass;
        c.details = oc.details;
        if (!oc.pass) {
            c.witness = oc.witness.empty() ? "(no witness data)" : oc.witness;
            c.replay = replay_;
        }
        report_.checks.push_back(std::move(c));
        report_.timings_ms[name] = ms;
    }

    Report finish() && {
        std::sort(report_.checks.begin(), report_.checks.end(),
                  [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
        report_.overall_pass =
            !report_.checks.empty() &&
            std::all_of(report_.checks.begin(), report_.checks.end(),
                        [](const CheckResult& c) { return c.pass; });
        return std::move(report_);
    }

private:
    Report report_;
    std::string replay_;
};

// ---------------------------------------------------------------------------
// Fixture families
// ---------------------------------------------------------------------------

std::vector<GroupPtr> class2_fixture_set(Exp p) {
    std::vector<GroupPtr> v;
    for (char c : {'A', 'B', 'C', 'D', 'E', 'F'}) v.push_back(burnside_group(c, p));
    v.push_back(heisenberg(p, 1));
    // The two-step fixture joins in only while its order stays scan-sized.
    if (ipow(p, 6) <= 729) v.push_back(heisenberg(p, 2));
    return v;
}

bool fits_table(std::size_t o) { return o <= kMaxTableOrder; }

void require_table_sized(const std::string& suite, const Group& g) {
    if (!fits_table(g.order()))
        throw ConfigError("suite '" + suite + "': fixture '" + g.label() + "' of order " +
                          std::to_string(g.order()) + " exceeds the table limit " +
                          std::to_string(kMaxTableOrder));
}

/// The eleven groups of order p^4 partitioned by order statistics, with each
/// class located by its canonical representative: the class holding A is
/// X_1, B gives X_2, C gives X_3, F gives X_4, and the cyclic group X_5.
struct P4 {
    std::vector<GroupPtr> groups;
    std::vector<StatsClass> classes;
    std::array<std::string, 6> marker{};  // 1-based
    std::array<int, 6> class_of{};        // 1-based; -1 when a marker is missing
};

P4 p4_partition(Exp p) {
    P4 d;
    d.groups = order_p4_groups(p);
    d.classes = classify_by_order_structure(d.groups);
    d.marker[1] = burnside_group('A', p)->label();
    d.marker[2] = burnside_group('B', p)->label();
    d.marker[3] = burnside_group('C', p)->label();
    d.marker[4] = burnside_group('F', p)->label();
    d.marker[5] = abelian_group({ipow(p, 4)})->label();
    for (int k = 1; k <= 5; ++k) {
        d.class_of[k] = -1;
        for (std::size_t ci = 0; ci < d.classes.size(); ++ci)
            for (const GroupPtr& m : d.classes[ci].members)
                if (m->label() == d.marker[k]) d.class_of[k] = static_cast<int>(ci);
    }
    return d;
}

/// Group strings computed once per label and shared across checks.
class StringCache {
public:
    const GroupString& get(const GroupPtr& g) {
        auto it = by_label_.find(g->label());
        if (it == by_label_.end()) it = by_label_.emplace(g->label(), string_of(g)).first;
        return it->second;
    }

private:
    std::map<std::string, GroupString> by_label_;
};

// ---------------------------------------------------------------------------
// Suite: lemma-s
// ---------------------------------------------------------------------------

Outcome literal_vs_collapsed(const GroupPtr& g) {
    const std::size_t o = g->order();
    RawTable floor = raw_table(o, product_cells(*g));
    Outcome oc;
    if (!floor.problem.empty()) {
        oc.pass = false;
        oc.details = "base product table is not a group table";
        oc.witness = floor.problem;
        return oc;
    }
    std::map<Exp, std::vector<std::uint32_t>> collapsed;
    std::size_t comparisons = 0;
    for (Exp n = 1; n <= 5; ++n) {
        RawTable cur = floor;
        for (std::uint64_t i = 0; i <= 6; ++i) {
            if (i > 0) {
                cur = twist_raw_once(cur, n);
                if (!cur.problem.empty()) {
                    oc.pass = false;
                    oc.details = "literal twist tower lost its group structure";
                    oc.witness = "n=" + std::to_string(n) + ", i=" + std::to_string(i) + ": " +
                                 cur.problem;
                    return oc;
                }
            }
            GroupPtr v = iterate_twist(g, n, i);
            Exp key = collapsed_level_key(v);
            auto it = collapsed.find(key);
            if (it == collapsed.end()) it = collapsed.emplace(key, product_cells(*v)).first;
            ++comparisons;
            if (cur.cells != it->second) {
                std::size_t d = 0;
                while (cur.cells[d] == it->second[d]) ++d;
                std::size_t a = d / o, b = d % o;
                oc.pass = false;
                oc.details = "literal twist tower diverges from the collapsed twist";
                oc.witness = "n=" + std::to_string(n) + ", i=" + std::to_string(i) +
                             ", a=" + to_string(g->element_at(a)) +
                             ", b=" + to_string(g->element_at(b)) + ": literal product " +
                             to_string(g->element_at(cur.cells[d])) + ", collapsed product " +
                             to_string(g->element_at(it->second[d]));
                return oc;
            }
        }
    }
    oc.details = "n=1..5, i=0..6: the i-fold twist tower equals the single collapsed twist (" +
                 std::to_string(comparisons) + " tables of order " + std::to_string(o) + ")";
    return oc;
}

Outcome os_invariance(const GroupPtr& g) {
    Outcome oc;
    OrderStructure want = order_structure(*g);
    int imax = std::max(factor_count(exponent_of(*derived_subgroup(g))), 1);
    for (Exp n = 1; n <= 5; ++n)
        for (int i = 0; i <= imax; ++i) {
            OrderStructure got = order_structure(*iterate_twist(g, n, static_cast<std::uint64_t>(i)));
            if (got != want) {
                oc.pass = false;
                oc.details = "twisting changed the order statistics";
                oc.witness = "n=" + std::to_string(n) + ", i=" + std::to_string(i) +
                             ": structure " + order_structure_text(got) + " differs from " +
                             order_structure_text(want);
                return oc;
            }
        }
    oc.details = "order statistics constant under the twist for n=1..5, i=0.." +
                 std::to_string(imax) + ": " + order_structure_text(want);
    return oc;
}

void run_lemma_s(Sink& sink, const VerifyOptions& opts) {
    std::vector<GroupPtr> fixtures =
        opts.group ? std::vector<GroupPtr>{opts.group} : class2_fixture_set(opts.p);
    for (const GroupPtr& g : fixtures) {
        require_table_sized("lemma-s", *g);
        sink.input(g->label());
    }
    for (const GroupPtr& g : fixtures) {
        sink.check("Lemma s(i) " + g->label(), [&] { return literal_vs_collapsed(g); });
        sink.check("Order structure invariance " + g->label(), [&] { return os_invariance(g); });
    }
    if (!opts.group)
        sink.check("Order structure of Z2 x Z4", [] {
            Outcome oc;
            std::string got = order_structure_text(order_structure(*abelian_group({2, 4})));
            oc.pass = got == "{1:1, 2:3, 4:4}";
            oc.details = "order statistics of the direct product Z2 x Z4: " + got;
            if (!oc.pass) oc.witness = "expected {1:1, 2:3, 4:4}, computed " + got;
            return oc;
        });
}

// ---------------------------------------------------------------------------
// Suite: lemma-center
// ---------------------------------------------------------------------------

void lemma_center_checks(Sink& sink, const GroupPtr& g) {
    const std::size_t o = g->order();
    const Exp p = prime_of_prime_power(o);
    if (p == 0 || p == 2)
        throw ConfigError("lemma-center: fixture '" + g->label() +
                          "' must have odd prime power order, not " + std::to_string(o));
    require_table_sized("lemma-center", *g);
    const Exp n = (p - 1) / 2;
    int t = 0;
    for (Exp r = exponent_of(*derived_subgroup(g)); r > 1; r /= p) ++t;
    const std::string L = g->label();
    const std::string irange = "i=0.." + std::to_string(t);

    // Product tables and centrality masks for twist depths 0 .. t+1.
    std::vector<std::vector<std::uint32_t>> cells(static_cast<std::size_t>(t) + 2);
    std::vector<std::vector<char>> central(static_cast<std::size_t>(t) + 2);
    for (int i = 0; i <= t + 1; ++i) {
        cells[i] = product_cells(*iterate_twist(g, n, static_cast<std::uint64_t>(i)));
        central[i].assign(o, 1);
        for (std::size_t x = 0; x < o; ++x)
            for (std::size_t y = 0; y < o; ++y)
                if (cells[i][x * o + y] != cells[i][y * o + x]) {
                    central[i][x] = 0;
                    break;
                }
    }
    std::vector<Element> elems = all_elements(*g);
    std::vector<std::uint32_t> binv(o);
    for (std::size_t x = 0; x < o; ++x)
        binv[x] = static_cast<std::uint32_t>(g->index_of(g->inverse(elems[x])));

    auto text = [&](std::size_t idx) { return to_string(elems[idx]); };

    sink.check("Lemma 2(i) " + L, [&] {
        Outcome oc;
        for (int i = 0; i <= t; ++i) {
            const Exp pi = ipow(p, i);
            for (std::size_t x = 0; x < o; ++x) {
                bool deep = central[i][x] != 0;
                bool base = central[0][g->index_of(g->power(elems[x], pi))] != 0;
                if (deep != base) {
                    oc.pass = false;
                    oc.details = "centrality at twist depth i disagrees with x^(p^i) in the base";
                    oc.witness = "i=" + std::to_string(i) + ", x=" + text(x) + ": central at depth " +
                                 std::to_string(i) + " is " + (deep ? "true" : "false") +
                                 " but x^" + std::to_string(pi) + " central in the base is " +
                                 (base ? "true" : "false");
                    return oc;
                }
            }
        }
        oc.details = "x central at twist depth i iff x^(p^i) central in the base: " +
                     std::to_string(o) + " elements, " + irange;
        return oc;
    });

    sink.check("Lemma 2(ii) " + L, [&] {
        Outcome oc;
        for (int i = 0; i <= t; ++i)
            for (std::size_t x = 0; x < o; ++x) {
                bool deep = central[i + 1][x] != 0;
                bool prev = central[i][g->index_of(g->power(elems[x], p))] != 0;
                if (deep != prev) {
                    oc.pass = false;
                    oc.details =
                        "centrality at twist depth i+1 disagrees with x^p at depth i";
                    oc.witness = "i=" + std::to_string(i) + ", x=" + text(x) +
                                 ": central at depth " + std::to_string(i + 1) + " is " +
                                 (deep ? "true" : "false") + " but x^" + std::to_string(p) +
                                 " central at depth " + std::to_string(i) + " is " +
                                 (prev ? "true" : "false");
                    return oc;
                }
            }
        oc.details = "x central at twist depth i+1 iff x^p central at depth i: " +
                     std::to_string(o) + " elements, " + irange;
        return oc;
    });

    sink.check("Lemma 2(iii) " + L, [&] {
        Outcome oc;
        std::vector<std::string> sizes;
        for (int i = 0; i <= t; ++i) {
            std::vector<std::size_t> zi;
            for (std::size_t x = 0; x < o; ++x)
                if (central[i][x]) zi.push_back(x);
            sizes.push_back(std::to_string(zi.size()));
            const auto& deeper = cells[i + 1];
            for (std::size_t z : zi)
                if (!central[i][binv[z]]) {
                    oc.pass = false;
                    oc.details = "center at depth i is not inverse-closed";
                    oc.witness = "i=" + std::to_string(i) + ", z=" + text(z) +
                                 ": inverse " + text(binv[z]) + " is not central at depth " +
                                 std::to_string(i);
                    return oc;
                }
            for (std::size_t z1 : zi)
                for (std::size_t z2 : zi)
                    if (!central[i][deeper[z1 * o + z2]]) {
                        oc.pass = false;
                        oc.details = "center at depth i is not closed one twist deeper";
                        oc.witness = "i=" + std::to_string(i) + ", z1=" + text(z1) +
                                     ", z2=" + text(z2) + ": product " +
                                     text(deeper[z1 * o + z2]) + " is not central at depth " +
                                     std::to_string(i);
                        return oc;
                    }
            for (std::size_t gx = 0; gx < o; ++gx)
                for (std::size_t z : zi) {
                    std::uint32_t conj = deeper[deeper[gx * o + z] * o + binv[gx]];
                    if (!central[i][conj]) {
                        oc.pass = false;
                        oc.details = "center at depth i is not normal one twist deeper";
                        oc.witness = "i=" + std::to_string(i) + ", g=" + text(gx) +
                                     ", z=" + text(z) + ": conjugate " + text(conj) +
                                     " is not central at depth " + std::to_string(i);
                        return oc;
                    }
                }
        }
        oc.details = "center at depth i is a normal subgroup one twist deeper: " + irange +
                     ", center sizes " + join(sizes, ",");
        return oc;
    });
}

void run_lemma_center(Sink& sink, const VerifyOptions& opts) {
    std::vector<GroupPtr> fixtures;
    if (opts.group) {
        fixtures.push_back(opts.group);
    } else {
        fixtures.push_back(burnside_group('A', opts.p));
        fixtures.push_back(heisenberg(opts.p, ipow(opts.p, 6) <= 729 ? 2 : 1));
    }
    for (const GroupPtr& g : fixtures) sink.input(g->label());
    for (const GroupPtr& g : fixtures) lemma_center_checks(sink, g);
}

// ---------------------------------------------------------------------------
// Suite: theorem
// ---------------------------------------------------------------------------

void theorem_fixture_checks(Sink& sink, StringCache& cache, const GroupPtr& g,
                            const IsoOptions& io) {
    const std::string L = g->label();
    const GroupString& s = cache.get(g);

    sink.check("Theorem 1(a) " + L, [&] {
        Outcome oc;
        std::vector<std::size_t> zo;
        for (const StringTerm& term : s.terms) zo.push_back(center(term.group)->order());
        for (std::size_t k = 0; k + 1 < zo.size(); ++k)
            if (zo[k] >= zo[k + 1]) {
                oc.pass = false;
                oc.details = "center orders do not strictly increase along the string";
                oc.witness = "terms " + std::to_string(k) + " and " + std::to_string(k + 1) +
                             ": |Z| chain " + chain_text(zo);
                return oc;
            }
        for (std::size_t i = 0; i < s.terms.size(); ++i)
            for (std::size_t j = i + 1; j < s.terms.size(); ++j)
                if (is_isomorphic(s.terms[i].group, s.terms[j].group, io)) {
                    oc.pass = false;
                    oc.details = "two string terms are isomorphic";
                    oc.witness = "terms " + std::to_string(i) + " and " + std::to_string(j) +
                                 " of '" + L + "'";
                    return oc;
                }
        if (s.terms.size() == 1)
            oc.details = "single term, already abelian: |Z| = " + std::to_string(zo[0]);
        else
            oc.details = "|Z| chain " + chain_text(zo) + "; " + std::to_string(s.terms.size()) +
                         " terms pairwise non-isomorphic";
        return oc;
    });

    sink.check("Theorem 1(b) " + L, [&] {
        Outcome oc;
        GroupPtr last = s.terms.back().group;
        const std::size_t o = last->order();
        std::vector<Element> e = all_elements(*last);
        std::size_t pairs = 0;
        for (std::size_t a = 0; a < o; ++a)
            for (std::size_t b = a + 1; b < o; ++b) {
                ++pairs;
                if (last->multiply(e[a], e[b]) != last->multiply(e[b], e[a])) {
                    oc.pass = false;
                    oc.details = "final string term is not abelian";
                    oc.witness = "a=" + to_string(e[a]) + ", b=" + to_string(e[b]) +
                                 " do not commute in the final term";
                    return oc;
                }
            }
        oc.details = "final term abelian: " + std::to_string(pairs) + " unordered pairs commute";
        return oc;
    });
}

void run_theorem(Sink& sink, const VerifyOptions& opts) {
    StringCache cache;
    IsoOptions io;
    io.node_budget = opts.node_budget;

    if (opts.group) {
        GroupPtr g = opts.group;
        sink.input(g->label());
        theorem_fixture_checks(sink, cache, g, io);
        sink.check("Theorem 1(c) " + g->label(), [&] {
            Outcome oc;
            GroupPtr last = cache.get(g).terms.back().group;
            GroupPtr ab;
            try {
                ab = abelian_group(abelian_type(order_structure(*g)));
            } catch (const NotAbelianRealizable& ex) {
                oc.pass = false;
                oc.details = "order statistics admit no abelian group";
                oc.witness = ex.what();
                return oc;
            }
            if (!is_isomorphic(last, ab, io)) {
                oc.pass = false;
                oc.details = "final term is not the abelian group with the base's statistics";
                oc.witness = "final term of '" + g->label() + "' vs " + ab->label();
                return oc;
            }
            oc.details = "final term isomorphic to " + ab->label();
            return oc;
        });
        return;
    }

    std::vector<GroupPtr> fixtures = class2_fixture_set(opts.p);
    P4 d = p4_partition(opts.p);
    for (const GroupPtr& g : fixtures) sink.input(g->label());
    for (const GroupPtr& g : d.groups)
        if (!sink.has_input(g->label())) sink.input(g->label());

    for (const GroupPtr& g : fixtures) theorem_fixture_checks(sink, cache, g, io);

    for (int k = 1; k <= 5; ++k) {
        sink.check("Theorem 1(c) X_" + std::to_string(k), [&] {
            Outcome oc;
            if (d.class_of[k] < 0) {
                oc.pass = false;
                oc.details = "marker group missing from the classification";
                oc.witness = "no order statistics class contains " + d.marker[k];
                return oc;
            }
            const StatsClass& cls = d.classes[static_cast<std::size_t>(d.class_of[k])];
            GroupPtr ab;
            for (const GroupPtr& m : cls.members)
                if (derived_subgroup(m)->order() == 1) {
                    if (ab) {
                        oc.pass = false;
                        oc.details = "class has two abelian members";
                        oc.witness = ab->label() + " and " + m->label();
                        return oc;
                    }
                    ab = m;
                }
            if (!ab) {
                oc.pass = false;
                oc.details = "class has no abelian member";
                oc.witness = "members " + label_set_text([&] {
                    std::vector<std::string> ls;
                    for (const GroupPtr& m : cls.members) ls.push_back(m->label());
                    return ls;
                }());
                return oc;
            }
            std::vector<std::string> ls;
            for (const GroupPtr& m : cls.members) {
                ls.push_back(m->label());
                GroupPtr last = cache.get(m).terms.back().group;
                if (!is_isomorphic(last, ab, io)) {
                    oc.pass = false;
                    oc.details = "a member's final string term misses the class's abelian member";
                    oc.witness = "final term of '" + m->label() + "' is not isomorphic to " +
                                 ab->label();
                    return oc;
                }
            }
            oc.details = "final string terms of " + label_set_text(ls) +
                         " all isomorphic to " + ab->label();
            return oc;
        });
    }
}

// ---------------------------------------------------------------------------
// Suite: p4-classification
// ---------------------------------------------------------------------------

void run_p4(Sink& sink, const VerifyOptions& opts) {
    const Exp p = opts.p;
    P4 d = p4_partition(p);
    for (const GroupPtr& g : d.groups) sink.input(g->label());

    sink.check("Five classes", [&] {
        Outcome oc;
        std::vector<std::string> sizes, structures;
        for (const StatsClass& c : d.classes) {
            sizes.push_back(std::to_string(c.members.size()));
            structures.push_back(order_structure_text(c.os));
        }
        oc.pass = d.classes.size() == 5;
        oc.details = std::to_string(d.groups.size()) + " groups of order " +
                     std::to_string(ipow(p, 4)) + " fall into " +
                     std::to_string(d.classes.size()) + " order statistics classes of sizes " +
                     join(sizes, ", ");
        if (!oc.pass) oc.witness = "class statistics: " + join(structures, " | ");
        return oc;
    });

    auto expected_members = [&](int k) -> std::vector<std::string> {
        const Exp p2 = p * p, p3 = p2 * p, p4 = p3 * p;
        switch (k) {
            case 1: return {d.marker[1], abelian_group({p, p3})->label()};
            case 2:
                return {d.marker[2], burnside_group('D', p)->label(),
                        burnside_group('E', p)->label(), abelian_group({p, p, p2})->label()};
            case 3: return {d.marker[3], abelian_group({p2, p2})->label()};
            case 4: return {d.marker[4], abelian_group({p, p, p, p})->label()};
            default: return {abelian_group({p4})->label()};
        }
    };

    for (int k = 1; k <= 5; ++k) {
        sink.check("Class X_" + std::to_string(k) + " membership", [&] {
            Outcome oc;
            if (d.class_of[k] < 0) {
                oc.pass = false;
                oc.details = "marker group missing from the classification";
                oc.witness = "no order statistics class contains " + d.marker[k];
                return oc;
            }
            std::vector<std::string> got;
            for (const GroupPtr& m : d.classes[static_cast<std::size_t>(d.class_of[k])].members)
                got.push_back(m->label());
            std::string got_text = label_set_text(got);
            std::string want_text = label_set_text(expected_members(k));
            oc.pass = got_text == want_text;
            oc.details = "X_" + std::to_string(k) + " = " + got_text;
            if (!oc.pass) oc.witness = "computed " + got_text + ", expected " + want_text;
            return oc;
        });
    }

    auto maximal_check = [&](int k, std::vector<std::string> want) {
        sink.check("Maximal in X_" + std::to_string(k), [&, want] {
            Outcome oc;
            if (d.class_of[k] < 0) {
                oc.pass = false;
                oc.details = "marker group missing from the classification";
                oc.witness = "no order statistics class contains " + d.marker[k];
                return oc;
            }
            std::vector<std::string> got;
            for (const GroupPtr& m :
                 find_maximal(d.classes[static_cast<std::size_t>(d.class_of[k])]))
                got.push_back(m->label());
            std::string got_text = label_set_text(got);
            std::string want_text = label_set_text(want);
            oc.pass = got_text == want_text;
            oc.details = "members never arising as a later string term: " + got_text;
            if (!oc.pass) oc.witness = "computed " + got_text + ", expected " + want_text;
            return oc;
        });
    };
    maximal_check(1, {d.marker[1]});
    maximal_check(2, {d.marker[2], burnside_group('D', p)->label(),
                      burnside_group('E', p)->label()});

    sink.check("Pairwise non-isomorphic", [&] {
        Outcome oc;
        IsoOptions io;
        io.node_budget = opts.node_budget;
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < d.groups.size(); ++i)
            for (std::size_t j = i + 1; j < d.groups.size(); ++j) {
                ++pairs;
                if (is_isomorphic(d.groups[i], d.groups[j], io)) {
                    oc.pass = false;
                    oc.details = "two catalog groups of order p^4 are isomorphic";
                    oc.witness = d.groups[i]->label() + " and " + d.groups[j]->label();
                    return oc;
                }
            }
        oc.details = "all " + std::to_string(pairs) + " unordered pairs of the " +
                     std::to_string(d.groups.size()) + " groups distinguished";
        return oc;
    });
}

// ---------------------------------------------------------------------------
// Suite: corollary
// ---------------------------------------------------------------------------

void run_corollary(Sink& sink, const VerifyOptions& opts) {
    IsoOptions io;
    io.node_budget = opts.node_budget;
    GroupPtr g = direct_product({heisenberg(3, 1), heisenberg(5, 1)});
    sink.input(g->label());
    GroupString s = string_of(g);

    sink.check("Corollary string shape", [&] {
        Outcome oc;
        std::vector<std::size_t> zo;
        for (const StringTerm& term : s.terms) zo.push_back(center(term.group)->order());
        std::vector<std::size_t> want{15, 135, 3375};
        if (s.terms.size() != 3 || zo != want) {
            oc.pass = false;
            oc.details = "string shape differs from the expected three-term chain";
            oc.witness = std::to_string(s.terms.size()) + " terms, |Z| chain " + chain_text(zo) +
                         "; expected 3 terms with chain " + chain_text(want);
            return oc;
        }
        if (derived_subgroup(s.terms.back().group)->order() != 1) {
            oc.pass = false;
            oc.details = "final term is not abelian";
            oc.witness = "derived subgroup of the final term has order " +
                         std::to_string(derived_subgroup(s.terms.back().group)->order());
            return oc;
        }
        OrderStructure base_os = order_structure(*g);
        for (std::size_t k = 0; k < s.terms.size(); ++k)
            if (order_structure(*s.terms[k].group) != base_os) {
                oc.pass = false;
                oc.details = "a term changed the order statistics";
                oc.witness = "term " + std::to_string(k) + ": " +
                             order_structure_text(order_structure(*s.terms[k].group));
                return oc;
            }
        oc.details = "3 terms; |Z| chain 15<135<3375; final term abelian; order statistics constant";
        return oc;
    });

    sink.check("Corollary nonabelian term count", [&] {
        Outcome oc;
        Exp lower = 0;
        std::vector<std::string> steps;
        for (const StringFactor& f : s.factors) {
            lower += f.steps;
            steps.push_back(std::to_string(f.steps));
        }
        std::size_t nonabelian = s.terms.empty() ? 0 : s.terms.size() - 1;
        if (static_cast<Exp>(nonabelian) != lower || lower != 2) {
            oc.pass = false;
            oc.details = "nonabelian term count misses the factor step sum";
            oc.witness = std::to_string(nonabelian) + " nonabelian terms vs step sum " +
                         join(steps, "+") + " = " + std::to_string(lower);
            return oc;
        }
        for (std::size_t k = 0; k < nonabelian; ++k)
            if (derived_subgroup(s.terms[k].group)->order() == 1) {
                oc.pass = false;
                oc.details = "a leading term is already abelian";
                oc.witness = "term " + std::to_string(k) + " of '" + g->label() + "'";
                return oc;
            }
        for (std::size_t i = 0; i < nonabelian; ++i)
            for (std::size_t j = i + 1; j < nonabelian; ++j)
                if (is_isomorphic(s.terms[i].group, s.terms[j].group, io)) {
                    oc.pass = false;
                    oc.details = "two nonabelian terms are isomorphic";
                    oc.witness = "terms " + std::to_string(i) + " and " + std::to_string(j);
                    return oc;
                }
        oc.details = "2 nonabelian terms, pairwise non-isomorphic; matches the factor step sum " +
                     join(steps, "+");
        return oc;
    });
}

// ---------------------------------------------------------------------------
// Suite: associativity
// ---------------------------------------------------------------------------

Outcome associativity_check(const GroupPtr& g, Exp n, const VerifyOptions& opts) {
    Outcome oc;
    const std::size_t o = g->order();
    auto fail_with = [&](const Element& a, const Element& b, const Element& c,
                         const Element& left, const Element& right) {
        oc.pass = false;
        oc.details = "twisted operation is not associative on a class <= 2 group";
        oc.witness = "a=" + to_string(a) + ", b=" + to_string(b) + ", c=" + to_string(c) +
                     ": (a*b)*c = " + to_string(left) + " but a*(b*c) = " + to_string(right);
    };

    if (o <= 81) {
        std::vector<std::uint32_t> cells = twisted_cells_of(*g, n);
        for (std::size_t a = 0; a < o; ++a)
            for (std::size_t b = 0; b < o; ++b)
                for (std::size_t c = 0; c < o; ++c) {
                    std::uint32_t left = cells[cells[a * o + b] * o + c];
                    std::uint32_t right = cells[a * o + cells[b * o + c]];
                    if (left != right) {
                        fail_with(g->element_at(a), g->element_at(b), g->element_at(c),
                                  g->element_at(left), g->element_at(right));
                        return oc;
                    }
                }
        oc.details = "exhaustive: " + std::to_string(o * o * o) +
                     " ordered triples associate at level " + std::to_string(n);
        return oc;
    }

    std::mt19937_64 rng(opts.seed);
    if (fits_table(o)) {
        std::vector<std::uint32_t> cells = twisted_cells_of(*g, n);
        for (std::size_t k = 0; k < opts.sampled_triples; ++k) {
            std::size_t a = static_cast<std::size_t>(rng() % o);
            std::size_t b = static_cast<std::size_t>(rng() % o);
            std::size_t c = static_cast<std::size_t>(rng() % o);
            std::uint32_t left = cells[cells[a * o + b] * o + c];
            std::uint32_t right = cells[a * o + cells[b * o + c]];
            if (left != right) {
                fail_with(g->element_at(a), g->element_at(b), g->element_at(c),
                          g->element_at(left), g->element_at(right));
                oc.witness += " (sample " + std::to_string(k) + ")";
                return oc;
            }
        }
    } else {
        for (std::size_t k = 0; k < opts.sampled_triples; ++k) {
            Element a = g->element_at(static_cast<std::size_t>(rng() % o));
            Element b = g->element_at(static_cast<std::size_t>(rng() % o));
            Element c = g->element_at(static_cast<std::size_t>(rng() % o));
            Element left = twisted_multiply(*g, twisted_multiply(*g, a, b, n), c, n);
            Element right = twisted_multiply(*g, a, twisted_multiply(*g, b, c, n), n);
            if (left != right) {
                fail_with(a, b, c, left, right);
                oc.witness += " (sample " + std::to_string(k) + ")";
                return oc;
            }
        }
    }
    oc.details = "sampled: " + std::to_string(opts.sampled_triples) +
                 " seeded triples associate at level " + std::to_string(n) + " (order " +
                 std::to_string(o) + ", seed " + std::to_string(opts.seed) + ")";
    return oc;
}

/// Finds the first (in index order) non-associative triple of the level-1
/// twisted operation; such a triple exists exactly when the class exceeds 2.
Outcome class3_witness_check(const GroupPtr& g) {
    Outcome oc;
    const std::size_t o = g->order();
    auto found = [&](const Element& a, const Element& b, const Element& c, const Element& left,
                     const Element& right) {
        oc.details = "level-1 twisted product rejects associativity: a=" + to_string(a) +
                     ", b=" + to_string(b) + ", c=" + to_string(c) + ": (a*b)*c = " +
                     to_string(left) + " but a*(b*c) = " + to_string(right);
    };
    if (fits_table(o)) {
        std::vector<std::uint32_t> cells = twisted_cells_of(*g, 1);
        for (std::size_t a = 0; a < o; ++a)
            for (std::size_t b = 0; b < o; ++b)
                for (std::size_t c = 0; c < o; ++c) {
                    std::uint32_t left = cells[cells[a * o + b] * o + c];
                    std::uint32_t right = cells[a * o + cells[b * o + c]];
                    if (left != right) {
                        found(g->element_at(a), g->element_at(b), g->element_at(c),
                              g->element_at(left), g->element_at(right));
                        return oc;
                    }
                }
    } else {
        for (std::size_t a = 0; a < o; ++a)
            for (std::size_t b = 0; b < o; ++b)
                for (std::size_t c = 0; c < o; ++c) {
                    Element ea = g->element_at(a), eb = g->element_at(b), ec = g->element_at(c);
                    Element left = twisted_multiply(*g, twisted_multiply(*g, ea, eb, 1), ec, 1);
                    Element right = twisted_multiply(*g, ea, twisted_multiply(*g, eb, ec, 1), 1);
                    if (left != right) {
                        found(ea, eb, ec, left, right);
                        return oc;
                    }
                }
    }
    oc.pass = false;
    oc.details = "expected a non-associative triple, found none";
    oc.witness = "the level-1 twisted operation on '" + g->label() +
                 "' is associative, so the group has class <= 2";
    return oc;
}

void run_associativity(Sink& sink, const VerifyOptions& opts) {
    if (opts.group) {
        GroupPtr g = opts.group;
        sink.input(g->label());
        std::optional<ClassWitness> w;
        if (verify_class_at_most_2(*g, &w))
            sink.check("Associativity level 1 " + g->label(),
                       [&] { return associativity_check(g, 1, opts); });
        else
            sink.check("Non-associativity at class 3 " + g->label(),
                       [&] { return class3_witness_check(g); });
        return;
    }

    std::vector<Exp> levels{1};
    if ((opts.p - 1) / 2 != 1) levels.push_back((opts.p - 1) / 2);
    for (const GroupPtr& g : class2_fixture_set(opts.p)) {
        sink.input(g->label());
        for (Exp n : levels)
            sink.check("Associativity level " + std::to_string(n) + " " + g->label(),
                       [&] { return associativity_check(g, n, opts); });
    }
    GroupPtr u = unitriangular4(3);
    sink.input(u->label());
    sink.check("Non-associativity at class 3 " + u->label(),
               [&] { return class3_witness_check(u); });
}

}  // namespace

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

std::vector<std::string> verify_suite_names() {
    return {"lemma-s", "lemma-center", "theorem", "p4-classification", "corollary",
            "associativity"};
}

Report run_verify_suite(const std::string& suite, const VerifyOptions& opts) {
    const std::vector<std::string> names = verify_suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw ConfigError("unknown suite '" + suite + "'; available: " + join(names, ", "));
    if (!is_odd_prime(opts.p) || ipow(opts.p, 4) > static_cast<Exp>(kMaxTableOrder))
        throw ConfigError("p must be an odd prime with p^4 <= " +
                          std::to_string(kMaxTableOrder) + ", not " + std::to_string(opts.p));
    if (opts.sampled_triples == 0) throw ConfigError("sampled_triples must be positive");
    if (opts.node_budget == 0) throw ConfigError("node_budget must be positive");
    if (opts.group && (suite == "p4-classification" || suite == "corollary"))
        throw ConfigError("suite '" + suite + "' runs on a fixed fixture set and takes no group");

    Sink sink(suite, opts);
    if (suite == "lemma-s")
        run_lemma_s(sink, opts);
    else if (suite == "lemma-center")
        run_lemma_center(sink, opts);
    else if (suite == "theorem")
        run_theorem(sink, opts);
    else if (suite == "p4-classification")
        run_p4(sink, opts);
    else if (suite == "corollary")
        run_corollary(sink, opts);
    else
        run_associativity(sink, opts);
    return std::move(sink).finish();
}

bool operator==(const CheckResult& a, const CheckResult& b) {
    return a.name == b.name && a.pass == b.pass && a.details == b.details &&
           a.witness == b.witness && a.replay == b.replay;
}
bool operator!=(const CheckResult& a, const CheckResult& b) { return !(a == b); }

bool operator==(const Report& a, const Report& b) {
    // timings are diagnostic and deliberately outside the report's value
    return a.suite == b.suite && a.inputs == b.inputs && a.seed == b.seed &&
           a.tool_version == b.tool_version && a.overall_pass == b.overall_pass &&
           a.checks == b.checks;
}
bool operator!=(const Report& a, const Report& b) { return !(a == b); }

std::string render_report(const Report& r, const std::string& format) {
    const bool empty = r == Report{};
    if (format == "json") {
        if (empty) return "{}\n";
        nlohmann::json j;
        j["suite"] = r.suite;
        j["tool_version"] = r.tool_version;
        j["seed"] = r.seed;
        j["inputs"] = r.inputs;
        j["overall_pass"] = r.overall_pass;
        nlohmann::json checks = nlohmann::json::array();
        for (const CheckResult& c : r.checks)
            checks.push_back({{"name", c.name},
                              {"pass", c.pass},
                              {"details", c.details},
                              {"witness", c.witness},
                              {"replay", c.replay}});
        j["checks"] = std::move(checks);
        return j.dump(2) + "\n";
    }
    if (format == "text") {
        if (empty) return "(empty report)\n";
        std::ostringstream out;
        out << "suite: " << r.suite << "\n";
        out << "tool: twine " << r.tool_version << "\n";
        out << "seed: " << r.seed << "\n";
        out << "inputs: " << join(r.inputs, ", ") << "\n";
        for (const CheckResult& c : r.checks) {
            out << (c.pass ? "PASS " : "FAIL ") << c.name << " " << c.details << "\n";
            if (!c.pass) {
                out << "  witness: " << c.witness << "\n";
                out << "  replay: " << c.replay << "\n";
            }
        }
        out << "overall: " << (r.overall_pass ? "PASS" : "FAIL") << "\n";
        return out.str();
    }
    throw ConfigError("unknown report format '" + format + "' (use json or text)");
}

Report report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& ex) {
        throw ConfigError(std::string("report: ") + ex.what());
    }
    if (!j.is_object()) throw ConfigError("report: top level must be an object");
    Report r;
    if (j.empty()) return r;
    try {
        r.suite = j.at("suite").get<std::string>();
        r.tool_version = j.at("tool_version").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.inputs = j.at("inputs").get<std::vector<std::string>>();
        r.overall_pass = j.at("overall_pass").get<bool>();
        for (const auto& jc : j.at("checks")) {
            CheckResult c;
            c.name = jc.at("name").get<std::string>();
            c.pass = jc.at("pass").get<bool>();
            c.details = jc.at("details").get<std::string>();
            c.witness = jc.at("witness").get<std::string>();
            c.replay = jc.at("replay").get<std::string>();
            r.checks.push_back(std::move(c));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& ex) {
        throw ConfigError(std::string("report: ") + ex.what());
    }
    return r;
}

}  // namespace twine
