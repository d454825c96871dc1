#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "twine/group.hpp"

namespace twine {

/// Dense row-major multiplication table: cells[a * n + b] is the index of a*b.
struct MultiplicationTable {
    std::size_t n = 0;
    std::vector<std::uint32_t> cells;
};

/// Largest order accepted by the table backend (memory: n^2 cells).
inline constexpr std::size_t kMaxTableOrder = 4096;

/// Group stored as an explicit multiplication table.
///
/// Elements are single-entry exponent vectors holding the element index.
/// Construction validates the table exhaustively: a two-sided identity,
/// bijective row/column translations, two-sided inverses, and associativity
/// (checked exactly via generator-anchored triples, which suffices once the
/// generators' closure is the whole table). Failures throw InvalidTable with
/// a witness.
class TableGroup final : public Group {
  public:
    /// Validates and wraps a multiplication table. If generator_indices is
    /// empty a small generating set is chosen greedily. Pass validate=false
    /// only for tables already proven consistent.
    static std::shared_ptr<const TableGroup> build(MultiplicationTable table,
                                                   std::string label,
                                                   std::vector<std::size_t> generator_indices = {},
                                                   bool validate = true);

    std::size_t order() const override { return n_; }
    Element identity() const override { return Element{static_cast<Exp>(id_)}; }
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    std::vector<Element> generators() const override;
    std::size_t index_of(const Element& a) const override;
    Element element_at(std::size_t i) const override;

    const MultiplicationTable& table() const { return table_; }
    const std::vector<std::size_t>& generator_indices() const { return gens_; }

  private:
    explicit TableGroup(std::string label) : Group(std::move(label)) {}

    std::size_t cell(std::size_t a, std::size_t b) const { return table_.cells[a * n_ + b]; }
    std::size_t check_index(const Element& a) const;

    MultiplicationTable table_;
    std::size_t n_ = 0;
    std::size_t id_ = 0;
    std::vector<std::uint32_t> inv_;
    std::vector<std::size_t> gens_;
};

/// Rebuilds any group (order at most kMaxTableOrder) as a TableGroup with the
/// same element indexing. The copy is revalidated, so a non-associative
/// operation surfaces as InvalidTable.
std::shared_ptr<const TableGroup> materialize_table(const Group& g);

}
