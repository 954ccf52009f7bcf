#pragma once

#include "nilmap/linalg.hpp"
#include "nilmap/poly_map.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nilmap {

// x_i -> x_i + Q with Q free of x_i; every other coordinate is fixed.
class ElementaryMap {
public:
    ElementaryMap(std::size_t n, std::size_t index, Polynomial q);

    std::size_t dimension() const { return n_; }
    std::size_t index() const { return index_; }
    const Polynomial& q() const { return q_; }

    PolyMap realize() const;
    ElementaryMap inverse() const { return ElementaryMap(n_, index_, -q_); }

    friend bool operator==(const ElementaryMap&, const ElementaryMap&) = default;

private:
    std::size_t n_;
    std::size_t index_;
    Polynomial q_;
};

using TameFactor = std::variant<ElementaryMap, LinearMap>;

// factors[0] o factors[1] o ... o factors[k-1]; the last factor is applied first.
struct TameFactorization {
    std::size_t dimension = 0;
    std::vector<TameFactor> factors;
};

PolyMap realize(const TameFactor& factor);
PolyMap realize(const LinearMap& t);

bool keller_check(const PolyMap& f);

// Polynomial inverse of F = x + H, H(0) = 0, with total degree <= degree_bound (default
// (deg F)^(n-1)). Throws ShapeError if F(0) != 0.
std::optional<PolyMap> formal_inverse(const PolyMap& f, std::optional<int> degree_bound = std::nullopt);

// F = x + H where conjugate(H, t) has an acyclic dependency digraph (no loops). The result is
// [t, elementary factors..., t^-1]. Throws NotTriangularizable otherwise.
TameFactorization tame_decompose(const PolyMap& f, const std::optional<LinearMap>& t = std::nullopt);

PolyMap compose_factorization(const TameFactorization& f);

// T with conjugate(h, T) strictly triangular up to reordering, if one exists.
std::optional<LinearMap> linear_triangularization(const PolyMap& h);

struct ClassifiedDecomposition {
    std::string route;  // "triangular", "reduction", "linear", "block"
    TameFactorization factorization;
};

// Finds the conjugation (form B reduction, linear triangularization, or the block splitting for
// a form B map with linear leading part) and decomposes F. Throws NotTriangularizable if no
// route applies.
ClassifiedDecomposition classify_and_decompose(const PolyMap& f);

}  // namespace nilmap
