#include "nilmap/univariate.hpp"

#include "nilmap/errors.hpp"

#include <stdexcept>

namespace nilmap::univariate {

namespace {

void require_univariate(const Polynomial& p) {
    if (p.nvars() != 1) throw DimensionMismatch("expected a polynomial in one variable");
}

Polynomial term(const Rational& c, unsigned degree) { return Polynomial::monomial(1, Exponents{degree}, c); }

}  // namespace

Polynomial from_coefficients(const std::vector<Rational>& ascending) {
    Polynomial p(1);
    for (std::size_t i = 0; i < ascending.size(); ++i) p.add_term(Exponents{static_cast<std::uint32_t>(i)}, ascending[i]);
    return p;
}

Rational leading_coefficient(const Polynomial& p) {
    require_univariate(p);
    return p.is_zero() ? Rational(0) : p.terms().rbegin()->second;
}

Polynomial monic(const Polynomial& p) {
    if (p.is_zero()) return p;
    return p * leading_coefficient(p).inverse();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    require_univariate(a);
    require_univariate(b);
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Polynomial q(1), r = a;
    const int db = b.total_degree();
    const Rational lb = leading_coefficient(b);
    while (!r.is_zero() && r.total_degree() >= db) {
        Polynomial t = term(leading_coefficient(r) / lb, static_cast<unsigned>(r.total_degree() - db));
        q += t;
        r -= t * b;
    }
    return {q, r};
}

std::optional<Polynomial> exact_quotient(const Polynomial& a, const Polynomial& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        auto r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

Bezout extended_gcd(const Polynomial& a, const Polynomial& b) {
    require_univariate(a);
    require_univariate(b);
    Polynomial r0 = a, r1 = b;
    Polynomial s0 = Polynomial::constant(1, Rational(1)), s1(1);
    Polynomial t0(1), t1 = Polynomial::constant(1, Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const Rational inv = leading_coefficient(r0).inverse();
    return {r0 * inv, s0 * inv, t0 * inv};
}

Polynomial lift(const Polynomial& p, std::size_t nvars, std::size_t index) {
    require_univariate(p);
    const std::size_t target[] = {index};
    return p.embed(nvars, target);
}

std::optional<Polynomial> project(const Polynomial& p, std::size_t index) {
    Polynomial out(1);
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != index && e[i] != 0) return std::nullopt;
        out.add_term(Exponents{e[index]}, c);
    }
    return out;
}

}  // namespace nilmap::univariate
