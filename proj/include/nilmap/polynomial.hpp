#pragma once

#include "nilmap/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nilmap {

// Exponent vector of a monomial x1^e1 * ... * xn^en.
using Exponents = std::vector<std::uint32_t>;

std::uint32_t total_degree(const Exponents& e);

// Graded lexicographic order: total degree first, then lexicographic with x1 most significant.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse multivariate polynomial over Q in a fixed ambient ring Q[x1..xn].
//
// Terms are kept in canonical form: no zero coefficients and every exponent
// vector has length nvars(). Equality is therefore structural.
class Polynomial {
public:
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t index);
    static Polynomial monomial(std::size_t nvars, Exponents exponents, const Rational& c);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    Rational coefficient(const Exponents& e) const;

    // -1 for the zero polynomial.
    int total_degree() const;
    int degree_in(std::size_t index) const;
    bool depends_on(std::size_t index) const;
    // Leading exponent vector in grlex order. Requires a nonzero polynomial.
    const Exponents& leading_exponents() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    // Product with every term of total degree above max_degree dropped.
    static Polynomial multiply_truncated(const Polynomial& a, const Polynomial& b, int max_degree);

    Polynomial pow(unsigned exponent) const;
    Polynomial truncated(int max_degree) const;

    Polynomial derivative(std::size_t index) const;
    // Formal antiderivative in one variable with zero integration constant.
    Polynomial antiderivative(std::size_t index) const;

    // Ascending coefficients [p0, ..., pd] with p = sum pj * x_index^j; each pj is free of x_index.
    std::vector<Polynomial> coefficients_in(std::size_t index) const;
    // [p^(0), ..., p^(d)] graded by total degree in the subset variables.
    std::vector<Polynomial> homogeneous_parts(std::span<const std::size_t> subset) const;

    // Simultaneous substitution x_i -> bindings[i]. If every variable that occurs is bound, the
    // result lives in the bindings' ring; otherwise the bindings' ring must equal nvars().
    Polynomial substitute(const std::map<std::size_t, Polynomial>& bindings, int max_degree = -1) const;
    // Full substitution x_i -> values[i] for all i.
    Polynomial substitute(std::span<const Polynomial> values, int max_degree = -1) const;

    // Re-home into a ring of new_nvars variables, sending x_i to x_{target[i]}.
    Polynomial embed(std::size_t new_nvars, std::span<const std::size_t> target) const;

    // Exact quotient this / divisor if divisor divides this, otherwise nullopt.
    std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

    // Rational evaluation at a point of length nvars().
    Rational evaluate(std::span<const Rational> point) const;

    void add_term(const Exponents& e, const Rational& c);

private:
    void check_compatible(const Polynomial& o) const;

    std::size_t nvars_;
    TermMap terms_;
};

// Free-function spellings of the core operations.
inline Polynomial partial_derivative(const Polynomial& p, std::size_t i) { return p.derivative(i); }
inline int degree_in(const Polynomial& p, std::size_t i) { return p.degree_in(i); }
inline std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t i) {
    return p.coefficients_in(i);
}
inline std::vector<Polynomial> homogeneous_parts(const Polynomial& p, std::span<const std::size_t> subset) {
    return p.homogeneous_parts(subset);
}

}  // namespace nilmap

namespace nilmap {

// p re-homed into Q[kept...] (kept[k] becomes variable k); nullopt if p involves any other variable.
std::optional<Polynomial> restrict_to(const Polynomial& p, std::span<const std::size_t> kept);

}  // namespace nilmap
