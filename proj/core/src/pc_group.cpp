#include "twine/pc_group.hpp"

#include <algorithm>

#include "twine/consistency.hpp"
#include "twine/errors.hpp"

namespace twine {

namespace {

constexpr Exp kMaxRelOrder = Exp(1) << 16;
constexpr std::size_t kMaxOrder = std::size_t(1) << 22;
constexpr Exp kMagnitudeGuard = Exp(1) << 45;
constexpr int kSettleCap = 4096;

Exp floor_div(Exp a, Exp b) {
    Exp q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

/// Working state of one collection. `e` is the exponent vector of the current
/// word (entries may leave [0, r_i) mid-flight; they are literal letter
/// counts). `corr` holds, per nontrivial commutator tail, the pending exponent
/// of that central element; folding order is immaterial precisely because the
/// build verified all tails central.
struct Collector {
    const PcGroup& G;
    boost::container::small_vector<Exp, 16> e;
    boost::container::small_vector<Exp, 16> corr;

    explicit Collector(const PcGroup& g)
        : G(g), e(g.k_, 0), corr(g.pairs_.size(), 0) {}

    void load(const Element& a) {
        for (int i = 0; i < G.k_; ++i) e[i] = a[i];
    }

    Exp mod_pair(std::size_t p, __int128 v) const {
        Exp m = G.tail_mod_[p];
        Exp r = static_cast<Exp>(v % m);
        return r < 0 ? r + m : r;
    }

    void guard(Exp v) const {
        if (v > kMagnitudeGuard || v < -kMagnitudeGuard)
            throw InconsistentPresentation(
                "collection magnitude overflow in '" + G.label() +
                "' (power-tail chain too deep for this build)");
    }

    /// Right-multiply the current word by (g^v)^m. The class-2 power law
    /// supplies the internal sorting correction C(m,2)*v_j*v_i; each new
    /// letter g_i additionally crosses the e_j existing letters of every
    /// higher generator.
    void append(const Exp* v, Exp m) {
        if (m == 0) return;
        const __int128 half = static_cast<__int128>(m) * (m - 1) / 2;
        for (std::size_t p = 0; p < G.pairs_.size(); ++p) {
            const auto& pr = G.pairs_[p];
            __int128 t = static_cast<__int128>(v[pr.j]) * v[pr.i] * half +
                         static_cast<__int128>(e[pr.j]) * m * v[pr.i];
            if (t != 0) corr[p] = mod_pair(p, static_cast<__int128>(corr[p]) + t);
        }
        for (int i = 0; i < G.k_; ++i) {
            if (v[i] != 0) {
                e[i] += m * v[i];
                guard(e[i]);
            }
        }
    }

    /// Insert (g^v)^m immediately after position i0 (v supported on indices
    /// > i0, the power-tail discipline). A new letter g_t only crosses the
    /// existing letters strictly between i0 and its slot.
    void insert_after(int i0, const Exp* v, Exp m) {
        if (m == 0) return;
        const __int128 half = static_cast<__int128>(m) * (m - 1) / 2;
        for (std::size_t p = 0; p < G.pairs_.size(); ++p) {
            const auto& pr = G.pairs_[p];
            __int128 t = static_cast<__int128>(v[pr.j]) * v[pr.i] * half;
            if (pr.j > i0 && pr.i > i0)
                t += static_cast<__int128>(m) * v[pr.j] * e[pr.i];
            if (t != 0) corr[p] = mod_pair(p, static_cast<__int128>(corr[p]) + t);
        }
        for (int i = i0 + 1; i < G.k_; ++i) {
            if (v[i] != 0) {
                e[i] += m * v[i];
                guard(e[i]);
            }
        }
    }

    /// Reduce every exponent into [0, r_i), inserting power tails for the
    /// extracted g_i^{q*r_i}. Ascending order suffices: tails only touch
    /// higher indices.
    void sweep() {
        for (int i = 0; i < G.k_; ++i) {
            if (e[i] >= 0 && e[i] < G.rel_[i]) continue;
            Exp q = floor_div(e[i], G.rel_[i]);
            e[i] -= q * G.rel_[i];
            if (!G.ptail_[i].empty()) {
                guard(q);
                insert_after(i, G.ptail_[i].data(), q);
            }
        }
    }

    /// Fold pending central corrections until none remain. Folding one tail
    /// can spawn corrections for others (tails may be supported on
    /// non-commuting generators), hence the loop and the stabilization cap.
    void settle() {
        sweep();
        int rounds = 0;
        while (true) {
            std::size_t p = 0;
            while (p < corr.size() && corr[p] == 0) ++p;
            if (p == corr.size()) break;
            if (++rounds > kSettleCap)
                throw InconsistentPresentation(
                    "collection did not stabilize in '" + G.label() + "'");
            Exp n = corr[p];
            corr[p] = 0;
            append(G.pairs_[p].tail.data(), n);
            sweep();
        }
    }

    Element take() {
        Element out(G.k_, 0);
        for (int i = 0; i < G.k_; ++i) out[i] = e[i];
        return out;
    }
};

PcGroup::PcGroup(PcPresentation pres) : Group(pres.label), pres_(std::move(pres)) {}

std::shared_ptr<const PcGroup> PcGroup::build(PcPresentation pres,
                                              const BuildOptions& opts) {
    const int k = pres.num_generators();
    if (k <= 0) throw InconsistentPresentation("presentation has no generators");
    if (k > 24) throw InconsistentPresentation("more than 24 generators");

    auto check_vec = [&](const std::vector<Exp>& v, const char* what) {
        if (static_cast<int>(v.size()) != k)
            throw InconsistentPresentation(std::string(what) + ": vector arity != k");
        for (int i = 0; i < k; ++i)
            if (v[i] < 0 || v[i] >= pres.rel_orders[i])
                throw InconsistentPresentation(std::string(what) +
                                               ": entry out of normal-form range");
    };

    std::size_t order = 1;
    for (int i = 0; i < k; ++i) {
        Exp r = pres.rel_orders[i];
        if (r < 2 || r > kMaxRelOrder)
            throw InconsistentPresentation("relative order out of supported range");
        auto f = factorize(r);
        if (f.size() != 1)
            throw InconsistentPresentation("relative order " + std::to_string(r) +
                                           " is not a prime power");
        order *= static_cast<std::size_t>(r);
        if (order > kMaxOrder)
            throw InconsistentPresentation("group order exceeds supported scale");
    }

    for (const auto& [i, tail] : pres.power_tails) {
        if (i < 0 || i >= k) throw InconsistentPresentation("power tail: bad index");
        check_vec(tail, "power tail");
        for (int m = 0; m <= i; ++m)
            if (tail[m] != 0)
                throw InconsistentPresentation(
                    "power tail of generator " + std::to_string(i + 1) +
                    " touches index <= its own (tails must live strictly above)");
    }
    for (const auto& [ji, tail] : pres.comm_tails) {
        auto [j, i] = ji;
        if (!(i >= 0 && i < j && j < k))
            throw InconsistentPresentation("commutator tail: bad index pair");
        check_vec(tail, "commutator tail");
    }

    auto g = std::shared_ptr<PcGroup>(new PcGroup(std::move(pres)));
    g->k_ = k;
    g->rel_ = g->pres_.rel_orders;
    g->order_ = order;
    g->stride_.assign(k, 1);
    for (int i = k - 2; i >= 0; --i)
        g->stride_[i] = g->stride_[i + 1] * static_cast<std::size_t>(g->rel_[i + 1]);
    g->ptail_.assign(k, {});
    for (const auto& [i, tail] : g->pres_.power_tails) {
        bool trivial = std::all_of(tail.begin(), tail.end(), [](Exp x) { return x == 0; });
        if (!trivial) g->ptail_[i] = tail;
    }
    for (const auto& [ji, tail] : g->pres_.comm_tails) {
        bool trivial = std::all_of(tail.begin(), tail.end(), [](Exp x) { return x == 0; });
        if (!trivial) g->pairs_.push_back({ji.first, ji.second, tail});
    }
    std::sort(g->pairs_.begin(), g->pairs_.end(), [](const auto& a, const auto& b) {
        return std::pair(a.j, a.i) < std::pair(b.j, b.i);
    });
    // Start from the always-sound modulus |G|, then tighten each entry to the
    // exact order of its tail element. A correction exponent for a central
    // tail only matters modulo that order, and the reduction is what makes
    // folding settle for tails supported at or below their own pair (e.g.
    // [g2,g1] = g1^p): without it the self-generated correction never reaches
    // zero once the group order gains a factor coprime to the tail exponent.
    // Computing ord(t) only takes powers of t itself, which cross nothing.
    g->tail_mod_.assign(g->pairs_.size(), static_cast<Exp>(order));
    for (std::size_t p = 0; p < g->pairs_.size(); ++p) {
        Element t(g->pairs_[p].tail.begin(), g->pairs_[p].tail.end());
        g->tail_mod_[p] = g->element_order(t);
    }

    // Every commutator tail must be central; otherwise the collection rules
    // do not describe a class-<=2 group at all. (Junk input that slips past
    // this comparison is still caught by the certification pass below.)
    for (const auto& pr : g->pairs_) {
        Element t(pr.tail.begin(), pr.tail.end());
        for (int m = 0; m < k; ++m) {
            Element gm = g->generator(m);
            if (g->multiply(t, gm) != g->multiply(gm, t))
                throw NotClass2("commutator tail [g" + std::to_string(pr.j + 1) +
                                ",g" + std::to_string(pr.i + 1) + "] = " +
                                twine::to_string(t) + " is not central in '" +
                                g->label() + "' (fails against g" +
                                std::to_string(m + 1) + ")");
        }
    }

    if (opts.certify) {
        ConsistencyOptions copts;
        copts.exhaustive_order_budget = opts.certify_budget;
        ConsistencyReport rep = check_consistency(*g, copts);
        if (!rep.passed)
            throw InconsistentPresentation("presentation '" + g->label() +
                                           "' failed certification: " + rep.failure);
    }
    return g;
}

Element PcGroup::identity() const { return Element(k_, 0); }

void PcGroup::validate_element(const Element& a) const {
    if (static_cast<int>(a.size()) != k_)
        throw InvalidElement("element arity " + std::to_string(a.size()) +
                             " != " + std::to_string(k_) + " in '" + label() + "'");
    for (int i = 0; i < k_; ++i)
        if (a[i] < 0 || a[i] >= rel_[i])
            throw InvalidElement("element entry out of range in '" + label() + "'");
}

Element PcGroup::multiply(const Element& a, const Element& b) const {
    validate_element(a);
    validate_element(b);
    Collector c(*this);
    c.load(a);
    c.append(b.data(), 1);
    c.settle();
    return c.take();
}

Element PcGroup::power(const Element& a, Exp m) const {
    validate_element(a);
    // Balanced reduction keeps the one-shot class-2 power law within the
    // magnitude guard; m = -1 (inverse) stays a single append.
    const Exp n = static_cast<Exp>(order_);
    Exp r = m % n;
    if (r < 0) r += n;
    if (r > n - r) r -= n;
    if (r == 0) return identity();
    Collector c(*this);
    c.append(a.data(), r);
    c.settle();
    return c.take();
}

Element PcGroup::inverse(const Element& a) const { return power(a, -1); }

Element PcGroup::commutator(const Element& a, const Element& b) const {
    validate_element(a);
    validate_element(b);
    // Bilinear closed form: [a, b] = prod over tails t_{ji} of
    // t_{ji}^(a_j b_i - a_i b_j).
    Collector c(*this);
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
        const auto& pr = pairs_[p];
        __int128 t = static_cast<__int128>(a[pr.j]) * b[pr.i] -
                     static_cast<__int128>(a[pr.i]) * b[pr.j];
        c.corr[p] = c.mod_pair(p, t);
    }
    c.settle();
    return c.take();
}

std::vector<Element> PcGroup::generators() const {
    std::vector<Element> out;
    out.reserve(k_);
    for (int i = 0; i < k_; ++i) out.push_back(generator(i));
    return out;
}

Element PcGroup::generator(int i) const {
    Element g(k_, 0);
    g[i] = 1;
    return g;
}

std::size_t PcGroup::index_of(const Element& a) const {
    validate_element(a);
    std::size_t idx = 0;
    for (int i = 0; i < k_; ++i) idx += static_cast<std::size_t>(a[i]) * stride_[i];
    return idx;
}

Element PcGroup::element_at(std::size_t idx) const {
    if (idx >= order_) throw InvalidElement("element index out of range");
    Element a(k_, 0);
    for (int i = 0; i < k_; ++i) {
        a[i] = static_cast<Exp>(idx / stride_[i]);
        idx %= stride_[i];
    }
    return a;
}

PcPresentation product_presentation(const PcPresentation& a, const PcPresentation& b) {
    const int ka = a.num_generators(), kb = b.num_generators();
    PcPresentation p;
    p.label = a.label + " x " + b.label;
    p.rel_orders = a.rel_orders;
    p.rel_orders.insert(p.rel_orders.end(), b.rel_orders.begin(), b.rel_orders.end());
    auto widen_a = [&](const std::vector<Exp>& v) {
        std::vector<Exp> w(ka + kb, 0);
        std::copy(v.begin(), v.end(), w.begin());
        return w;
    };
    auto widen_b = [&](const std::vector<Exp>& v) {
        std::vector<Exp> w(ka + kb, 0);
        std::copy(v.begin(), v.end(), w.begin() + ka);
        return w;
    };
    for (const auto& [i, t] : a.power_tails) p.power_tails[i] = widen_a(t);
    for (const auto& [ji, t] : a.comm_tails) p.comm_tails[ji] = widen_a(t);
    for (const auto& [i, t] : b.power_tails) p.power_tails[i + ka] = widen_b(t);
    for (const auto& [ji, t] : b.comm_tails)
        p.comm_tails[{ji.first + ka, ji.second + ka}] = widen_b(t);
    return p;
}

}
