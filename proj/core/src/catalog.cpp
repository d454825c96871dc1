#include "twine/catalog.hpp"

#include <algorithm>
#include <array>

#include "twine/errors.hpp"
#include "twine/pc_group.hpp"
#include "twine/presentation.hpp"
#include "twine/product_group.hpp"
#include "twine/table_group.hpp"
#include "twine/twist.hpp"

namespace twine {

namespace {

void require_odd_prime(Exp p, const std::string& who) {
    if (p < 3 || !is_prime(p)) throw ConfigError(who + " needs an odd prime, got " + std::to_string(p));
}

}  // namespace

GroupPtr burnside_group(char name, Exp p) {
    require_odd_prime(p, "burnside_group");
    PcPresentation pres;
    pres.label = std::string(1, name) + "(p=" + std::to_string(p) + ")";
    switch (name) {
        case 'A':  // x of order p^3, [y,x] = x^{p^2}
            pres.rel_orders = {p * p * p, p};
            pres.comm_tails[{1, 0}] = {p * p, 0};
            break;
        case 'B':  // [z,y] = x^p
            pres.rel_orders = {p * p, p, p};
            pres.comm_tails[{2, 1}] = {p, 0, 0};
            break;
        case 'C':  // [y,x] = x^p
            pres.rel_orders = {p * p, p * p};
            pres.comm_tails[{1, 0}] = {p, 0};
            break;
        case 'D':  // [z,x] = x^p
            pres.rel_orders = {p * p, p, p};
            pres.comm_tails[{2, 0}] = {p, 0, 0};
            break;
        case 'E':  // [z,x] = y
            pres.rel_orders = {p * p, p, p};
            pres.comm_tails[{2, 0}] = {0, 1, 0};
            break;
        case 'F':  // [w,z] = x, exponent p
            pres.rel_orders = {p, p, p, p};
            pres.comm_tails[{3, 2}] = {1, 0, 0, 0};
            break;
        default:
            throw ConfigError("burnside_group letter must be A..F, got '" + std::string(1, name) +
                              "'");
    }
    return PcGroup::build(pres);
}

GroupPtr heisenberg(Exp p, int k) {
    if (p < 2 || !is_prime(p)) throw ConfigError("heisenberg needs a prime, got " + std::to_string(p));
    if (k < 1 || k > 6) throw ConfigError("heisenberg needs 1 <= k <= 6");
    Exp q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    PcPresentation pres;
    pres.label = "H(p=" + std::to_string(p) + ",k=" + std::to_string(k) + ")";
    pres.rel_orders = {q, q, q};
    pres.comm_tails[{1, 0}] = {0, 0, q - 1};  // [y,x] = z^{-1}, z central
    return PcGroup::build(pres);
}

GroupPtr unitriangular4(Exp p) {
    if (p < 2 || !is_prime(p)) throw ConfigError("unitriangular4 needs a prime");
    std::size_t n = 1;
    for (int i = 0; i < 6; ++i) n *= static_cast<std::size_t>(p);
    if (n > kMaxTableOrder)
        throw ConfigError("unitriangular4(p=" + std::to_string(p) + ") has order " +
                          std::to_string(n) + ", above the table limit");

    // A matrix is its six strictly-upper entries (12,13,14,23,24,34); the
    // element index is those digits in base p, entry 12 most significant.
    struct M {
        std::array<Exp, 6> e;  // a12 a13 a14 a23 a24 a34
    };
    auto index = [&](const M& m) {
        std::size_t i = 0;
        for (Exp v : m.e) i = i * static_cast<std::size_t>(p) + static_cast<std::size_t>(v);
        return i;
    };
    auto at = [&](std::size_t i) {
        M m;
        for (int d = 5; d >= 0; --d) {
            m.e[d] = static_cast<Exp>(i % static_cast<std::size_t>(p));
            i /= static_cast<std::size_t>(p);
        }
        return m;
    };
    auto mul = [&](const M& a, const M& b) {
        M c;
        c.e[0] = (a.e[0] + b.e[0]) % p;                                   // 12
        c.e[3] = (a.e[3] + b.e[3]) % p;                                   // 23
        c.e[5] = (a.e[5] + b.e[5]) % p;                                   // 34
        c.e[1] = (a.e[1] + b.e[1] + a.e[0] * b.e[3]) % p;                 // 13
        c.e[4] = (a.e[4] + b.e[4] + a.e[3] * b.e[5]) % p;                 // 24
        c.e[2] = (a.e[2] + b.e[2] + a.e[0] * b.e[4] + a.e[1] * b.e[5]) % p;  // 14
        return c;
    };

    MultiplicationTable t;
    t.n = n;
    t.cells.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        M a = at(i);
        for (std::size_t j = 0; j < n; ++j)
            t.cells[i * n + j] = static_cast<std::uint32_t>(index(mul(a, at(j))));
    }
    M g12, g23, g34;
    g12.e = {1, 0, 0, 0, 0, 0};
    g23.e = {0, 0, 0, 1, 0, 0};
    g34.e = {0, 0, 0, 0, 0, 1};
    return TableGroup::build(std::move(t), "U4(p=" + std::to_string(p) + ")",
                             {index(g12), index(g23), index(g34)});
}

std::vector<GroupPtr> order_p4_groups(Exp p) {
    require_odd_prime(p, "order_p4_groups");
    std::vector<GroupPtr> out;
    for (char c : {'A', 'B', 'C', 'D', 'E', 'F'}) out.push_back(burnside_group(c, p));
    const Exp p2 = p * p, p3 = p2 * p, p4 = p3 * p;
    out.push_back(abelian_group({p4}));
    out.push_back(abelian_group({p3, p}));
    out.push_back(abelian_group({p2, p2}));
    out.push_back(abelian_group({p2, p, p}));
    out.push_back(abelian_group({p, p, p, p}));
    return out;
}

namespace {

/// Largest element orders first: descending lexicographic on the (order,
/// count) pairs read from the largest order down.
bool stats_before(const OrderStructure& a, const OrderStructure& b) {
    auto ia = a.rbegin(), ib = b.rbegin();
    for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first > ib->first;
        if (ia->second != ib->second) return ia->second > ib->second;
    }
    return ib == b.rend() && ia != a.rend();
}

}  // namespace

std::vector<StatsClass> classify_by_order_structure(const std::vector<GroupPtr>& groups) {
    std::vector<StatsClass> classes;
    for (const GroupPtr& g : groups) {
        OrderStructure os = order_structure(*g);
        auto it = std::find_if(classes.begin(), classes.end(),
                               [&](const StatsClass& c) { return c.os == os; });
        if (it == classes.end())
            classes.push_back(StatsClass{std::move(os), {g}});
        else
            it->members.push_back(g);
    }
    std::sort(classes.begin(), classes.end(),
              [](const StatsClass& x, const StatsClass& y) { return stats_before(x.os, y.os); });
    return classes;
}

std::vector<GroupPtr> find_maximal(const StatsClass& cls) {
    std::vector<GroupPtr> later_terms;
    for (const GroupPtr& m : cls.members) {
        GroupString s = string_of(m);
        for (std::size_t i = 1; i < s.terms.size(); ++i) later_terms.push_back(s.terms[i].group);
    }
    std::vector<GroupPtr> maximal;
    for (const GroupPtr& m : cls.members) {
        bool occurs = false;
        for (const GroupPtr& t : later_terms)
            if (is_isomorphic(m, t)) {
                occurs = true;
                break;
            }
        if (!occurs) maximal.push_back(m);
    }
    return maximal;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return parts;
}

Exp parse_number(const std::string& s, const std::string& where) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError(where + ": '" + s + "' is not a number");
    }
    if (pos != s.size() || v < 0) throw ConfigError(where + ": '" + s + "' is not a number");
    return static_cast<Exp>(v);
}

Exp parse_assignment(const std::string& part, const std::string& key, const std::string& where) {
    if (part.rfind(key + "=", 0) != 0)
        throw ConfigError(where + ": expected '" + key + "=N', got '" + part + "'");
    return parse_number(part.substr(key.size() + 1), where);
}

/// "27x3", "3^3x3", "Z27xZ3", "27*3" -> cyclic orders.
std::vector<Exp> parse_orders(const std::string& text) {
    std::vector<Exp> orders;
    std::string norm;
    for (char c : text) norm += (c == '*') ? 'x' : c;
    for (std::string part : split(norm, 'x')) {
        if (!part.empty() && (part[0] == 'Z' || part[0] == 'z')) part = part.substr(1);
        auto caret = part.find('^');
        if (caret == std::string::npos) {
            orders.push_back(parse_number(part, "abelian orders"));
        } else {
            Exp base = parse_number(part.substr(0, caret), "abelian orders");
            Exp exp = parse_number(part.substr(caret + 1), "abelian orders");
            Exp q = 1;
            for (Exp i = 0; i < exp; ++i) {
                if (q > (Exp(1) << 22) / (base ? base : 1))
                    throw ConfigError("abelian orders: " + part + " is too large");
                q *= base;
            }
            orders.push_back(q);
        }
    }
    return orders;
}

}  // namespace

GroupPtr parse_group_spec(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.empty() || parts[0].empty()) throw ConfigError("empty group spec");
    const std::string& kind = parts[0];

    if (kind == "burnside") {
        if (parts.size() != 3 || parts[1].size() != 1)
            throw ConfigError("expected burnside:LETTER:p=N, got '" + spec + "'");
        return burnside_group(parts[1][0], parse_assignment(parts[2], "p", "burnside"));
    }
    if (kind == "heisenberg") {
        if (parts.size() < 2 || parts.size() > 3)
            throw ConfigError("expected heisenberg:p=N[:k=M], got '" + spec + "'");
        Exp p = parse_assignment(parts[1], "p", "heisenberg");
        Exp k = parts.size() == 3 ? parse_assignment(parts[2], "k", "heisenberg") : 1;
        return heisenberg(p, static_cast<int>(k));
    }
    if (kind == "unitriangular4") {
        if (parts.size() != 2) throw ConfigError("expected unitriangular4:p=N, got '" + spec + "'");
        return unitriangular4(parse_assignment(parts[1], "p", "unitriangular4"));
    }
    if (kind == "abelian") {
        if (parts.size() != 2) throw ConfigError("expected abelian:ORDERS, got '" + spec + "'");
        return abelian_group(parse_orders(parts[1]));
    }
    if (kind == "file") {
        if (parts.size() < 2) throw ConfigError("expected file:PATH, got '" + spec + "'");
        // Paths may contain ':'; stitch the remainder back together.
        std::string path = spec.substr(5);
        return PcGroup::build(load_presentation(path));
    }
    if (kind == "product") {
        std::string rest = spec.substr(8);
        std::vector<GroupPtr> factors;
        for (const std::string& sub : split(rest, '|')) factors.push_back(parse_group_spec(sub));
        return direct_product(factors);
    }
    throw ConfigError("unknown group spec '" + spec + "' (see group_spec_help())");
}

std::string group_spec_help() {
    return "  burnside:A:p=3        nonabelian order-p^4 group, letters A..F\n"
           "  heisenberg:p=3        Heisenberg group over Z_p (add :k=2 for Z_{p^2})\n"
           "  unitriangular4:p=3    4x4 unitriangular matrices, class 3\n"
           "  abelian:27x3          direct product of cyclic groups (also 3^3x3)\n"
           "  file:groups/g.json    polycyclic presentation from a JSON file\n"
           "  product:SPEC|SPEC     direct product of the parts\n";
}

}
