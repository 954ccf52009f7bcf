#pragma once

// Random instances for the property suites. Every generator takes the engine by reference so a
// fixed seed reproduces the whole sequence.

#include "nilmap/classification.hpp"

#include <random>
#include <span>

namespace nilmap::gen {

using Engine = std::mt19937_64;

Rational random_integer(Engine& rng, int bound, bool nonzero = false);

// Up to `terms` random terms in the listed variables, total degree <= max_degree, integer
// coefficients in [-bound, bound].
Polynomial random_polynomial(Engine& rng, std::size_t nvars, std::span<const std::size_t> vars,
                             unsigned max_degree, unsigned terms, int bound = 3, bool zero_constant = true);
Polynomial random_polynomial(Engine& rng, std::size_t nvars, unsigned max_degree, unsigned terms, int bound = 3,
                             bool zero_constant = true);
// One-variable polynomial of degree in [min_degree, max_degree].
Polynomial random_univariate(Engine& rng, unsigned min_degree, unsigned max_degree, bool zero_constant, int bound = 3);

PolyMap random_map(Engine& rng, std::size_t n, unsigned max_degree, int bound = 3);
LinearMap random_linear_map(Engine& rng, std::size_t n, int bound = 2);

// Strictly upper triangular H (H_i in Q[x_{i+1}, ..., x_n]) conjugated by a random T.
PolyMap random_triangular_nilpotent(Engine& rng, std::size_t n, unsigned max_degree);

// (a2 h(a1 x + a2 y), -a1 h(a1 x + a2 y)) with constant a_i.
PolyMap random_plane_nilpotent(Engine& rng, unsigned max_degree);

CanonicalFormA random_canonical_params(Engine& rng);

struct FormADraw {
    CanonicalFormA params;
    LinearMap t0;
    PolyMap map;  // conjugate(build_canonical_A(params), t0), with deg_z u >= 2 and deg_z v = 1
};
FormADraw random_form_a_conjugate(Engine& rng);

// A nilpotent member of one of the constructed families, in dimension n (2 <= n <= 5).
PolyMap random_nilpotent_member(Engine& rng, std::size_t n);

// Shape-valid instance with a linear leading part in H1. Nilpotent draws come from the
// seed h = (b f(s), -a f(s), b g(s), -a g(s)) lifted to dimension n; the others are either
// unconstrained or a nilpotent draw with one perturbed coefficient.
GeneralizedFormB random_form_b(Engine& rng, std::size_t n, bool nilpotent);

// Narrow-shape nilpotent instance with h2 = c * h1, reduced by the row operation x1 += c * x2.
GeneralizedFormB reduction_instance(Engine& rng, std::size_t n, const Rational& c);

ReducedForm4D random_reduced_4d(Engine& rng, bool nilpotent);

}  // namespace nilmap::gen
