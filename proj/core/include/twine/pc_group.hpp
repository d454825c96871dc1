#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "twine/group.hpp"
#include "twine/presentation.hpp"

namespace twine {

struct BuildOptions {
    /// Run the budgeted associativity / Latin-square certification after the
    /// structural and centrality checks. Internal constructions that are
    /// consistent by construction (e.g. direct products of validated groups)
    /// switch this off.
    bool certify = true;
    /// Above this order the certification samples triples instead of
    /// exhausting them (see ConsistencyOptions).
    std::size_t certify_budget = 10000;
};

/// Finite class-<=2 group realized by collection on a power-commutator
/// presentation.
///
/// Collection strategy: a product of normal forms is rewritten by merging
/// exponent vectors while accumulating, per commutator tail, a symbolic
/// exponent for the central correction it contributes. Corrections are folded
/// in after the merge; folding may spawn lower-generation corrections, which
/// repeats until the state stabilizes (real presentations settle within a few
/// rounds; a generous cap turns pathological input into a build error).
class PcGroup final : public Group, public std::enable_shared_from_this<PcGroup> {
public:
    static std::shared_ptr<const PcGroup> build(PcPresentation pres,
                                                const BuildOptions& opts = {});

    std::size_t order() const override { return order_; }
    Element identity() const override;
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    Element power(const Element& a, Exp m) const override;
    Element commutator(const Element& a, const Element& b) const override;
    std::vector<Element> generators() const override;
    std::size_t index_of(const Element& a) const override;
    Element element_at(std::size_t idx) const override;

    const PcPresentation& presentation() const { return pres_; }
    int num_generators() const { return k_; }
    Element generator(int i) const;

private:
    friend struct Collector;
    explicit PcGroup(PcPresentation pres);
    void validate_element(const Element& a) const;

    PcPresentation pres_;
    int k_ = 0;
    std::vector<Exp> rel_;
    std::vector<std::size_t> stride_;
    std::size_t order_ = 1;

    // Nontrivial commutator tails, ascending (j, i); trivial pairs are absent.
    struct CommPair {
        int j, i;
        std::vector<Exp> tail;
    };
    std::vector<CommPair> pairs_;
    // Per pair: the order of the tail as a group element. Tails are central,
    // so a pending correction exponent is meaningful only modulo this value;
    // reducing by it is what makes folding terminate when a tail is supported
    // on a generator at or below its own pair (e.g. [g2,g1] = g1^p).
    std::vector<Exp> tail_mod_;
    std::vector<std::vector<Exp>> ptail_;  // per generator; empty = identity
};

/// Concatenate two presentations into the presentation of the direct product
/// (all cross-factor commutators trivial).
PcPresentation product_presentation(const PcPresentation& a, const PcPresentation& b);

}
