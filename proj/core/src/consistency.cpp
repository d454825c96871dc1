#include "twine/consistency.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace twine {

namespace {

// Deterministic across platforms (unlike std::uniform_int_distribution).
struct SplitMix {
    std::uint64_t s;
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

std::string triple_text(const Element& a, const Element& b, const Element& c) {
    return to_string(a) + ", " + to_string(b) + ", " + to_string(c);
}

}  // namespace

ConsistencyReport check_consistency(const Group& g, const ConsistencyOptions& opts) {
    ConsistencyReport rep;
    const std::size_t n = g.order();
    const bool small = n <= opts.exhaustive_order_budget;
    const bool full_triples = n <= opts.full_triple_limit;
    const bool full_latin = n <= opts.latin_full_limit && small;
    rep.mode = (full_triples && full_latin) ? "exhaustive" : "sampled";
    SplitMix rng{opts.seed};

    std::vector<Element> elems;
    if (small) {
        elems.reserve(n);
        for (std::size_t i = 0; i < n; ++i) elems.push_back(g.element_at(i));
    }
    auto elem = [&](std::size_t i) { return small ? elems[i] : g.element_at(i); };

    const Element id = g.identity();
    if (g.multiply(id, id) != id) {
        rep.failure = "identity * identity != identity";
        return rep;
    }

    // Identity and inverses.
    {
        std::size_t count = small ? n : std::size_t(4096);
        for (std::size_t t = 0; t < count; ++t) {
            Element x = elem(small ? t : rng.below(n));
            ++rep.checks_run;
            if (g.multiply(id, x) != x || g.multiply(x, id) != x) {
                rep.failure = "identity does not fix " + to_string(x);
                return rep;
            }
            Element xi = g.inverse(x);
            if (!g.is_identity(g.multiply(x, xi)) || !g.is_identity(g.multiply(xi, x))) {
                rep.failure = "inverse fails for " + to_string(x);
                return rep;
            }
        }
    }

    // Associativity.
    auto assoc = [&](const Element& a, const Element& b, const Element& c) {
        ++rep.checks_run;
        return g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c));
    };
    if (full_triples) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n; ++l)
                    if (!assoc(elems[i], elems[j], elems[l])) {
                        rep.failure = "associativity fails on " +
                                      triple_text(elems[i], elems[j], elems[l]);
                        return rep;
                    }
    } else {
        if (small) {
            for (const Element& a : g.generators())
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t l = 0; l < n; ++l)
                        if (!assoc(a, elems[j], elems[l])) {
                            rep.failure = "associativity fails on " +
                                          triple_text(a, elems[j], elems[l]);
                            return rep;
                        }
        }
        for (std::size_t t = 0; t < opts.sampled_triples; ++t) {
            Element a = elem(rng.below(n)), b = elem(rng.below(n)), c = elem(rng.below(n));
            if (!assoc(a, b, c)) {
                rep.failure = "associativity fails on " + triple_text(a, b, c);
                return rep;
            }
        }
    }

    // Latin square: per row/column, products must be pairwise distinct.
    {
        std::vector<char> seen(n, 0);
        auto scan = [&](const Element& a, bool row) -> bool {
            std::fill(seen.begin(), seen.end(), 0);
            for (std::size_t j = 0; j < n; ++j) {
                Element b = elem(j);
                std::size_t idx = g.index_of(row ? g.multiply(a, b) : g.multiply(b, a));
                ++rep.checks_run;
                if (seen[idx]) return false;
                seen[idx] = 1;
            }
            return true;
        };
        std::size_t rows = full_latin ? n : std::min<std::size_t>(n, 64);
        for (std::size_t t = 0; t < rows; ++t) {
            Element a = elem(full_latin ? t : rng.below(n));
            if (!scan(a, true)) {
                rep.failure = "left translation by " + to_string(a) + " not injective";
                return rep;
            }
            if (!scan(a, false)) {
                rep.failure = "right translation by " + to_string(a) + " not injective";
                return rep;
            }
        }
    }

    rep.passed = true;
    return rep;
}

bool verify_class_at_most_2(const Group& g, std::optional<ClassWitness>* witness) {
    // [g_i, g_j] central for all generator pairs forces G/Z(G) abelian, hence
    // class <= 2; conversely class <= 2 makes every commutator central.
    auto gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            Element c = g.commutator(gens[i], gens[j]);
            if (g.is_identity(c)) continue;
            for (const Element& m : gens)
                if (!g.commutes(c, m)) {
                    if (witness) *witness = ClassWitness{gens[i], gens[j], m};
                    return false;
                }
        }
    return true;
}

}
