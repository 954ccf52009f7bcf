#pragma once

#include "nilmap/poly_map.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nilmap {

// Printable names for the variables of Q[x1..xn].
//
// `x1..xN` are always accepted when parsing. For N <= 4 the aliases x, y, z, w are used by
// default; a custom alias string assigns one letter per variable (e.g. "abc").
class VarNames {
public:
    static VarNames standard(std::size_t nvars);
    static VarNames indexed(std::size_t nvars);
    static VarNames from_alias(std::string_view letters, std::size_t nvars);

    std::size_t size() const { return names_.size(); }
    const std::string& operator[](std::size_t i) const { return names_.at(i); }
    std::optional<std::size_t> lookup(std::string_view name) const;

private:
    std::vector<std::string> names_;
};

std::string format_polynomial(const Polynomial& p, const VarNames& names);
std::string format_polynomial(const Polynomial& p);
// Components joined by "; ".
std::string format_map(const PolyMap& map, const VarNames& names);
std::string format_map(const PolyMap& map);

Polynomial parse_polynomial(std::string_view text, const VarNames& names);
Polynomial parse_polynomial(std::string_view text, std::size_t nvars);

// Parses `c1; c2; ...; cn` (a trailing `;` and `#` line comments are allowed); the number of
// components fixes n. With expected_dimension set, a different count is an arity error.
// Text starting with '{' is read as a JSON document {"n": n, "components": [...]}.
PolyMap parse_map(std::string_view text, std::optional<std::size_t> expected_dimension = std::nullopt,
                  std::optional<std::string> alias = std::nullopt);

}  // namespace nilmap
