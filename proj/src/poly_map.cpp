#include "nilmap/poly_map.hpp"

#include "nilmap/errors.hpp"

#include <algorithm>

namespace nilmap {

PolyMap::PolyMap(std::vector<Polynomial> components) : components_(std::move(components)) {
    if (components_.empty()) throw DimensionMismatch("a polynomial map needs at least one component");
    for (const auto& c : components_)
        if (c.nvars() != components_.size())
            throw DimensionMismatch("map component lives in Q[x1..x" + std::to_string(c.nvars()) +
                                    "] but the map has dimension " + std::to_string(components_.size()));
}

PolyMap PolyMap::identity(std::size_t n) {
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(Polynomial::variable(n, i));
    return PolyMap(std::move(c));
}

PolyMap PolyMap::zero(std::size_t n) { return PolyMap(std::vector<Polynomial>(n, Polynomial(n))); }

bool PolyMap::fixes_origin() const {
    return std::all_of(components_.begin(), components_.end(),
                       [](const Polynomial& p) { return p.constant_term().is_zero(); });
}

int PolyMap::degree() const {
    int d = -1;
    for (const auto& c : components_) d = std::max(d, c.total_degree());
    return d;
}

PolyMap PolyMap::operator-() const {
    std::vector<Polynomial> c;
    for (const auto& p : components_) c.push_back(-p);
    return PolyMap(std::move(c));
}

PolyMap operator+(const PolyMap& a, const PolyMap& b) {
    if (a.dimension() != b.dimension()) throw DimensionMismatch("maps of different dimension");
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < a.dimension(); ++i) c.push_back(a[i] + b[i]);
    return PolyMap(std::move(c));
}

PolyMap operator-(const PolyMap& a, const PolyMap& b) { return a + (-b); }

PolyMap compose_map(const PolyMap& f, const PolyMap& g, int max_degree) {
    if (f.dimension() != g.dimension()) throw DimensionMismatch("cannot compose maps of different dimension");
    std::vector<Polynomial> c;
    c.reserve(f.dimension());
    for (const auto& fi : f.components()) c.push_back(fi.substitute(g.components(), max_degree));
    return PolyMap(std::move(c));
}

}  // namespace nilmap
