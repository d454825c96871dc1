#pragma once

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <string>

namespace twine {

using Exp = std::int64_t;

/// Uniform element representation across backends: an exponent vector in
/// generator order for presentation-backed groups, a single table index for
/// table-backed groups, and the concatenation of factor vectors for products.
using Element = boost::container::small_vector<Exp, 8>;

inline std::string to_string(const Element& e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e[i]);
    }
    return s + ")";
}

}
