#pragma once

#include "nilmap/poly_map.hpp"
#include "nilmap/text.hpp"

#include <random>
#include <string>

namespace testing_support {

using nilmap::Polynomial;
using nilmap::PolyMap;

inline Polynomial P(const std::string& text, std::size_t n = 3) { return nilmap::parse_polynomial(text, n); }
inline PolyMap M(const std::string& text) { return nilmap::parse_map(text); }

// Dense-ish random polynomial with integer coefficients in [-3, 3].
inline Polynomial random_poly(std::mt19937_64& rng, std::size_t nvars, unsigned max_degree, unsigned terms = 4) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<unsigned> deg(0, max_degree);
    std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
    Polynomial p(nvars);
    for (unsigned t = 0; t < terms; ++t) {
        nilmap::Exponents e(nvars, 0);
        const unsigned d = deg(rng);
        for (unsigned k = 0; k < d; ++k) ++e[var(rng)];
        p.add_term(e, nilmap::Rational(coef(rng)));
    }
    return p;
}

}  // namespace testing_support
