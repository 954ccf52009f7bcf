#pragma once

// Arithmetic in Q[t], with elements stored as one-variable Polynomials.

#include "nilmap/polynomial.hpp"

#include <optional>
#include <utility>

namespace nilmap::univariate {

Polynomial from_coefficients(const std::vector<Rational>& ascending);
Rational leading_coefficient(const Polynomial& p);
Polynomial monic(const Polynomial& p);

// a = q*b + r with deg r < deg b. Throws std::domain_error for b = 0.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
std::optional<Polynomial> exact_quotient(const Polynomial& a, const Polynomial& b);

// Monic gcd (zero iff both arguments are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

struct Bezout {
    Polynomial g, s, t;  // s*a + t*b = g, g monic
};
Bezout extended_gcd(const Polynomial& a, const Polynomial& b);

// p(t) viewed in Q[x1..xn] with t -> x_index.
Polynomial lift(const Polynomial& p, std::size_t nvars, std::size_t index);
// Inverse of lift for polynomials in x_index alone; nullopt if another variable occurs.
std::optional<Polynomial> project(const Polynomial& p, std::size_t index);

}  // namespace nilmap::univariate
