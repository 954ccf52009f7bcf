#include "nilmap/jacobian.hpp"

#include "nilmap/errors.hpp"
#include "nilmap/kernels.hpp"

#include <set>

namespace nilmap {

PolyMatrix jacobian(const PolyMap& h) {
    const std::size_t n = h.dimension();
    PolyMatrix j(n, n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) j(r, c) = h[r].derivative(c);
    return j;
}

PolyMatrix jacobian(std::span<const Polynomial> components, std::span<const std::size_t> variables) {
    if (components.empty()) throw DimensionMismatch("jacobian of an empty component list");
    PolyMatrix j(components.size(), variables.size(), components.front().nvars());
    for (std::size_t r = 0; r < components.size(); ++r)
        for (std::size_t c = 0; c < variables.size(); ++c) j(r, c) = components[r].derivative(variables[c]);
    return j;
}

NilpotencyReport nilpotency_report(const PolyMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("nilpotency needs a square matrix");
    NilpotencyReport report;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        report.sigma.push_back(principal_minor_sum(m, k));
        if (report.nilpotent && !report.sigma.back().is_zero()) {
            report.nilpotent = false;
            report.witness = std::make_pair(k, report.sigma.back());
        }
    }
    return report;
}

NilpotencyReport nilpotency_equations(const PolyMap& h) { return nilpotency_report(jacobian(h)); }

bool is_nilpotent(const PolyMatrix& m) {
    // Lower sigma_k are cheap; stop at the first nonzero one.
    for (std::size_t k = 1; k <= m.rows(); ++k)
        if (!principal_minor_sum(m, k).is_zero()) return false;
    return true;
}

bool is_nilpotent(const PolyMap& h) { return is_nilpotent(jacobian(h)); }

bool is_nilpotent_bruteforce(const PolyMap& h) {
    const PolyMatrix j = jacobian(h);
    PolyMatrix power = j;
    for (std::size_t k = 1; k < h.dimension(); ++k) {
        if (power.is_zero()) return true;
        power = kernels::multiply_serial(power, j);
    }
    return power.is_zero();
}

PolyMap apply_linear(const RationalMatrix& m, const PolyMap& h) {
    const std::size_t n = h.dimension();
    if (m.cols() != n) throw DimensionMismatch("linear map and polynomial map dimensions differ");
    std::vector<Polynomial> out;
    out.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Polynomial p(h[0].nvars());
        for (std::size_t c = 0; c < n; ++c)
            if (!m(r, c).is_zero()) p += h[c] * m(r, c);
        out.push_back(std::move(p));
    }
    return PolyMap(std::move(out));
}

PolyMap conjugate(const PolyMap& h, const LinearMap& t) {
    if (h.dimension() != t.dimension()) throw DimensionMismatch("conjugator dimension differs from the map");
    return apply_linear(t.inverse_matrix(), compose_map(h, t.as_poly_map()));
}

std::optional<DependenceCertificate> linear_dependence(std::span<const Polynomial> components) {
    if (components.empty()) throw PreconditionError("linear_dependence needs at least one polynomial");
    std::set<Exponents, GrlexLess> monomials;
    for (const auto& p : components)
        for (const auto& [e, c] : p.terms()) monomials.insert(e);

    DependenceCertificate cert;
    if (monomials.empty()) {
        cert.coefficients.assign(components.size(), Rational(0));
        cert.coefficients[0] = Rational(1);
        return cert;
    }
    RationalMatrix m(monomials.size(), components.size());
    std::size_t row = 0;
    for (const auto& e : monomials) {
        for (std::size_t c = 0; c < components.size(); ++c) m(row, c) = components[c].coefficient(e);
        ++row;
    }
    auto basis = kernel(m);
    if (basis.empty()) return std::nullopt;
    cert.coefficients = std::move(basis.front());
    for (const auto& c : cert.coefficients) {
        if (c.is_zero()) continue;
        const Rational inv = c.inverse();
        for (auto& x : cert.coefficients) x *= inv;
        break;
    }
    return cert;
}

bool certifies(const DependenceCertificate& cert, std::span<const Polynomial> components) {
    if (cert.coefficients.size() != components.size() || components.empty()) return false;
    bool nonzero = false;
    Polynomial sum(components.front().nvars());
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (cert.coefficients[i].is_zero()) continue;
        nonzero = true;
        sum += components[i] * cert.coefficients[i];
    }
    return nonzero && sum.is_zero();
}

Polynomial CoefficientSystem::coefficient(std::size_t source, std::size_t power) const {
    for (const auto& eq : equations)
        if (eq.source == source && eq.power == power) return eq.equation;
    std::size_t nvars = equations.empty() ? 0 : equations.front().equation.nvars();
    return Polynomial(nvars);
}

CoefficientSystem coefficient_system(std::span<const Polynomial> source, std::size_t variable) {
    CoefficientSystem system;
    system.variable = variable;
    for (std::size_t s = 0; s < source.size(); ++s) {
        if (variable >= source[s].nvars()) throw std::out_of_range("coefficient_system: variable index out of range");
        const auto coeffs = source[s].coefficients_in(variable);
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            if (!coeffs[j].is_zero()) system.equations.push_back({s, j, coeffs[j]});
    }
    return system;
}

bool verify_lemma_2_1(const Polynomial& u, const Polynomial& v, std::size_t zvar) {
    if (u.nvars() != v.nvars()) throw DimensionMismatch("u and v live in different rings");
    if (u.nvars() < 3 || zvar >= u.nvars()) throw std::out_of_range("verify_lemma_2_1 needs x, y and z");
    std::size_t x = 0;
    while (x == zvar) ++x;
    std::size_t y = x + 1;
    while (y == zvar) ++y;

    if (!(u.derivative(x) + v.derivative(y)).is_zero()) throw PreconditionError("u_x + v_y is not zero");
    const int d = u.degree_in(zvar);
    const int l = v.degree_in(zvar);
    if (l > d) throw PreconditionError("deg_z v exceeds deg_z u");

    const auto us = u.coefficients_in(zvar);
    const auto vs = v.coefficients_in(zvar);
    for (int j = l + 1; j <= d; ++j)
        if (!us[static_cast<std::size_t>(j)].derivative(x).is_zero()) return false;
    for (int i = 0; i <= l; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        Polynomial ui = idx < us.size() ? us[idx] : Polynomial(u.nvars());
        if (!(ui.derivative(x) + vs[idx].derivative(y)).is_zero()) return false;
    }
    return true;
}

}  // namespace nilmap
