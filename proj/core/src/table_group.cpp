#include "twine/table_group.hpp"

#include <algorithm>

#include "twine/errors.hpp"

namespace twine {

namespace {

[[noreturn]] void fail(const std::string& label, const std::string& what) {
    throw InvalidTable("table '" + label + "': " + what);
}

// Closure of seed indices under the table operation.
std::vector<char> close_under_product(const MultiplicationTable& t,
                                      const std::vector<std::size_t>& seed) {
    std::vector<char> in(t.n, 0);
    std::vector<std::size_t> members;
    auto add = [&](std::size_t x) {
        if (!in[x]) {
            in[x] = 1;
            members.push_back(x);
        }
    };
    for (std::size_t s : seed) add(s);
    for (std::size_t next = 0; next < members.size(); ++next) {
        std::size_t x = members[next];
        for (std::size_t i = 0; i < members.size(); ++i) {
            add(t.cells[x * t.n + members[i]]);
            add(t.cells[members[i] * t.n + x]);
        }
    }
    return in;
}

}  // namespace

std::shared_ptr<const TableGroup> TableGroup::build(MultiplicationTable table,
                                                    std::string label,
                                                    std::vector<std::size_t> generator_indices,
                                                    bool validate) {
    const std::size_t n = table.n;
    if (n == 0 || n > kMaxTableOrder)
        fail(label, "order must be in 1.." + std::to_string(kMaxTableOrder));
    if (table.cells.size() != n * n)
        fail(label, "cell count does not match order");
    for (std::uint32_t c : table.cells)
        if (c >= n) fail(label, "cell value " + std::to_string(c) + " out of range");
    for (std::size_t g : generator_indices)
        if (g >= n) fail(label, "generator index " + std::to_string(g) + " out of range");

    auto cell = [&](std::size_t a, std::size_t b) { return table.cells[a * n + b]; };

    // Locate the two-sided identity.
    std::size_t id = n;
    for (std::size_t e = 0; e < n && id == n; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x)
            ok = cell(e, x) == x && cell(x, e) == x;
        if (ok) id = e;
    }
    if (id == n) fail(label, "no two-sided identity");

    std::vector<std::uint32_t> inv(n, 0);
    if (validate) {
        // Rows and columns must be permutations.
        std::vector<char> seen(n);
        for (std::size_t a = 0; a < n; ++a) {
            std::fill(seen.begin(), seen.end(), 0);
            for (std::size_t b = 0; b < n; ++b) {
                std::size_t p = cell(a, b);
                if (seen[p])
                    fail(label, "row " + std::to_string(a) + " repeats product " + std::to_string(p));
                seen[p] = 1;
            }
            std::fill(seen.begin(), seen.end(), 0);
            for (std::size_t b = 0; b < n; ++b) {
                std::size_t p = cell(b, a);
                if (seen[p])
                    fail(label, "column " + std::to_string(a) + " repeats product " + std::to_string(p));
                seen[p] = 1;
            }
        }
    }

    // Two-sided inverses.
    for (std::size_t a = 0; a < n; ++a) {
        std::size_t b = n;
        for (std::size_t c = 0; c < n; ++c)
            if (cell(a, c) == id) {
                b = c;
                break;
            }
        if (b == n || cell(b, a) != id)
            fail(label, "element " + std::to_string(a) + " lacks a two-sided inverse");
        inv[a] = static_cast<std::uint32_t>(b);
    }

    // Generating set: keep the given one, or grow one greedily.
    std::vector<std::size_t> gens = generator_indices;
    {
        std::vector<char> reach = close_under_product(table, gens.empty() ? std::vector<std::size_t>{id} : gens);
        if (gens.empty()) {
            for (std::size_t x = 0; x < n; ++x)
                if (!reach[x]) {
                    gens.push_back(x);
                    reach = close_under_product(table, gens);
                }
        } else if (std::count(reach.begin(), reach.end(), char(1)) != static_cast<long>(n)) {
            fail(label, "given generators do not generate");
        }
    }

    if (validate) {
        // Light's test: with a verified generating set, associativity on
        // triples (a, g, b) for generators g implies full associativity.
        for (std::size_t g : gens)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (cell(cell(a, g), b) != cell(a, cell(g, b)))
                        fail(label, "associativity fails on (" + std::to_string(a) + ", " +
                                        std::to_string(g) + ", " + std::to_string(b) + ")");
    }

    auto tg = std::shared_ptr<TableGroup>(new TableGroup(std::move(label)));
    tg->table_ = std::move(table);
    tg->n_ = n;
    tg->id_ = id;
    tg->inv_ = std::move(inv);
    tg->gens_ = std::move(gens);
    return tg;
}

std::size_t TableGroup::check_index(const Element& a) const {
    if (a.size() != 1 || a[0] < 0 || static_cast<std::size_t>(a[0]) >= n_)
        throw InvalidElement("element " + to_string(a) + " is not an index into '" + label_ + "'");
    return static_cast<std::size_t>(a[0]);
}

Element TableGroup::multiply(const Element& a, const Element& b) const {
    return Element{static_cast<Exp>(cell(check_index(a), check_index(b)))};
}

Element TableGroup::inverse(const Element& a) const {
    return Element{static_cast<Exp>(inv_[check_index(a)])};
}

std::vector<Element> TableGroup::generators() const {
    std::vector<Element> out;
    out.reserve(gens_.size());
    for (std::size_t g : gens_) out.push_back(Element{static_cast<Exp>(g)});
    return out;
}

std::size_t TableGroup::index_of(const Element& a) const { return check_index(a); }

Element TableGroup::element_at(std::size_t i) const {
    if (i >= n_) throw InvalidElement("index " + std::to_string(i) + " out of range");
    return Element{static_cast<Exp>(i)};
}

std::shared_ptr<const TableGroup> materialize_table(const Group& g) {
    const std::size_t n = g.order();
    if (n > kMaxTableOrder)
        throw InvalidTable("group '" + g.label() + "' is too large to materialize as a table");
    MultiplicationTable t;
    t.n = n;
    t.cells.resize(n * n);
    std::vector<Element> elems;
    elems.reserve(n);
    for (std::size_t i = 0; i < n; ++i) elems.push_back(g.element_at(i));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            t.cells[a * n + b] = static_cast<std::uint32_t>(g.index_of(g.multiply(elems[a], elems[b])));
    std::vector<std::size_t> gens;
    for (const Element& e : g.generators()) gens.push_back(g.index_of(e));
    return TableGroup::build(std::move(t), g.label(), std::move(gens), true);
}

}
