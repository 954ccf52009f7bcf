#pragma once

#include "nilmap/polynomial.hpp"

#include <cstddef>
#include <vector>

namespace nilmap {

// Polynomial map K^n -> K^n: n components, each in Q[x1..xn].
class PolyMap {
public:
    explicit PolyMap(std::vector<Polynomial> components);

    static PolyMap identity(std::size_t n);
    static PolyMap zero(std::size_t n);

    std::size_t dimension() const { return components_.size(); }
    const std::vector<Polynomial>& components() const { return components_; }
    const Polynomial& operator[](std::size_t i) const { return components_.at(i); }

    // H(0) = 0.
    bool fixes_origin() const;
    // Largest total degree over the components (-1 for the zero map).
    int degree() const;

    PolyMap operator-() const;
    friend PolyMap operator+(const PolyMap& a, const PolyMap& b);
    friend PolyMap operator-(const PolyMap& a, const PolyMap& b);
    friend bool operator==(const PolyMap& a, const PolyMap& b) = default;

private:
    std::vector<Polynomial> components_;
};

// (F o G)_i = F_i(G_1, ..., G_n); terms above max_degree are dropped when max_degree >= 0.
PolyMap compose_map(const PolyMap& f, const PolyMap& g, int max_degree = -1);

}  // namespace nilmap
