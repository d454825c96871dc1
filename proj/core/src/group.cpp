#include "twine/group.hpp"

#include "twine/errors.hpp"

namespace twine {

Element Group::power(const Element& a, Exp m) const {
    const Exp n = static_cast<Exp>(order());
    Exp r = m % n;
    if (r < 0) r += n;
    Element base = a;
    Element acc = identity();
    while (r > 0) {
        if (r & 1) acc = multiply(acc, base);
        r >>= 1;
        if (r) base = multiply(base, base);
    }
    return acc;
}

Element Group::commutator(const Element& a, const Element& b) const {
    return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
}

Element Group::conjugate(const Element& a, const Element& g) const {
    return multiply(inverse(g), multiply(a, g));
}

Exp Group::element_order(const Element& a) const {
    Exp m = static_cast<Exp>(order());
    for (auto [p, mult] : factorize(m)) {
        for (int t = 0; t < mult; ++t) {
            if (is_identity(power(a, m / p)))
                m /= p;
            else
                break;
        }
    }
    return m;
}

bool Group::is_identity(const Element& a) const { return a == identity(); }

bool Group::commutes(const Element& a, const Element& b) const {
    return multiply(a, b) == multiply(b, a);
}

bool is_abelian(const Group& g) {
    auto gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!g.commutes(gens[i], gens[j])) return false;
    return true;
}

std::vector<std::pair<Exp, int>> factorize(Exp n) {
    std::vector<std::pair<Exp, int>> out;
    for (Exp p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int m = 0;
            while (n % p == 0) {
                n /= p;
                ++m;
            }
            out.emplace_back(p, m);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_prime(Exp p) {
    if (p < 2) return false;
    auto f = factorize(p);
    return f.size() == 1 && f[0].second == 1;
}

bool is_power_of(Exp n, Exp p) {
    if (n < 1) return false;
    while (n % p == 0) n /= p;
    return n == 1;
}

}
