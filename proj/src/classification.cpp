#include "nilmap/classification.hpp"

#include "nilmap/errors.hpp"
#include "nilmap/text.hpp"
#include "nilmap/univariate.hpp"

#include <json.hpp>

#include <algorithm>

namespace nilmap {

namespace {

constexpr std::size_t X = 0, Y = 1, Z = 2;

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }

Polynomial z_coefficient(const Polynomial& p, int power) {
    const auto cs = p.coefficients_in(Z);
    if (power < 0 || static_cast<std::size_t>(power) >= cs.size()) return Polynomial(p.nvars());
    return cs[static_cast<std::size_t>(power)];
}

bool dependent(const PolyMap& h) { return linear_dependence(h.components()).has_value(); }

// A guarantee failed on `h`. Under Skip the independence hypothesis was never checked,
// so a dependent input only means the guarantee did not apply.
[[noreturn]] void guarantee_failed(const std::string& result, const std::string& detail, const PolyMap& h,
                                   IndependencePolicy policy) {
    if (policy == IndependencePolicy::Skip && dependent(h))
        throw PreconditionError(result + " does not apply (components are linearly dependent): " + detail);
    throw TheoremViolation(result, detail, instance_json(h));
}

void check_independence(const PolyMap& h, IndependencePolicy policy) {
    if (policy == IndependencePolicy::Enforce && dependent(h))
        throw PreconditionError("components are linearly dependent over Q");
}

// T = M^{-1} where M has lambda as its last row and the smallest-index unit vectors above it.
LinearMap completion_transform(const RationalVector& lambda) {
    const std::size_t n = lambda.size();
    std::size_t skip = n;
    for (std::size_t i = n; i-- > 0;)
        if (!lambda[i].is_zero()) {
            skip = i;
            break;
        }
    if (skip == n) throw PreconditionError("cannot complete the zero vector to a basis");
    RationalMatrix m(n, n);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (i != skip) m(row++, i) = Rational(1);
    for (std::size_t i = 0; i < n; ++i) m(n - 1, i) = lambda[i];
    return LinearMap(m).inverse();
}

// Coefficient of x^ex y^ey in p, as a polynomial in z alone.
Polynomial xy_coefficient(const Polynomial& p, std::uint32_t ex, std::uint32_t ey) {
    Polynomial out(1);
    for (const auto& [e, c] : p.terms())
        if (e[X] == ex && e[Y] == ey) out.add_term(Exponents{e[Z]}, c);
    return out;
}

Polynomial at_origin_xy(const Polynomial& p) {
    const std::size_t n = p.nvars();
    return p.substitute({{X, Polynomial(n)}, {Y, Polynomial(n)}});
}

// Reads (a1, a2, h, c1, c2) off a map (U, V, 0) whose (x, y)-block is nilpotent over Q[z].
std::optional<CanonicalFormA> fit_canonical(const PolyMap& g) {
    using namespace univariate;
    if (!g[2].is_zero()) return std::nullopt;
    const Polynomial c1 = at_origin_xy(g[0]), c2 = at_origin_xy(g[1]);
    const Polynomial p = g[0] - c1, q = g[1] - c2;

    CanonicalFormA params;
    params.c1 = *project(c1, Z);
    params.c2 = *project(c2, Z);
    if (p.is_zero() && q.is_zero()) {
        params.a2 = Polynomial::constant(1, Rational(1));
        return params;
    }

    // (P_x : P_y) = (Q_x : Q_y) = (a1 : a2) over Q(z).
    const Polynomial& src = p.is_zero() ? q : p;
    const Polynomial dx = src.derivative(X), dy = src.derivative(Y);
    const Polynomial& probe = dx.is_zero() ? dy : dx;
    if (probe.is_zero()) return std::nullopt;
    const Exponents& e = probe.leading_exponents();
    Polynomial a1 = xy_coefficient(dx, e[X], e[Y]);
    Polynomial a2 = xy_coefficient(dy, e[X], e[Y]);
    const Polynomial g12 = gcd(a1, a2);
    a1 = *exact_quotient(a1, g12);
    a2 = *exact_quotient(a2, g12);
    const Rational lead = leading_coefficient(a1.is_zero() ? a2 : a1).inverse();
    a1 *= lead;
    a2 *= lead;

    // P(0, y, z) = sum_k r_k a2^{k+1} y^k, or Q(x, 0, z) = -sum_k r_k a1^{k+1} x^k when a2 = 0.
    const std::size_t n = g.dimension();
    const bool use_p = !a2.is_zero();
    const Polynomial line = use_p ? p.substitute({{X, Polynomial(n)}}) : -q.substitute({{Y, Polynomial(n)}});
    const std::size_t axis = use_p ? Y : X;
    const Polynomial& denom = use_p ? a2 : a1;
    Polynomial h(2);
    const auto cs = line.coefficients_in(axis);
    for (std::size_t k = 0; k < cs.size(); ++k) {
        auto ck = project(cs[k], Z);
        if (!ck) return std::nullopt;
        auto rk = exact_quotient(*ck, denom.pow(static_cast<unsigned>(k + 1)));
        if (!rk) return std::nullopt;
        for (const auto& [ez, c] : rk->terms()) h.add_term(Exponents{static_cast<std::uint32_t>(k), ez[0]}, c);
    }
    params.a1 = a1;
    params.a2 = a2;
    params.h = h;
    return params;
}

Polynomial weighted_sum(const PolyMap& h, std::size_t first, const std::vector<Rational>& w) {
    Polynomial s(h.dimension());
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!w[i].is_zero()) s += h[first + i] * w[i];
    return s;
}

std::vector<std::size_t> tail_vars(std::size_t n) {
    std::vector<std::size_t> v;
    for (std::size_t i = 2; i < n; ++i) v.push_back(i);
    return v;
}

Polynomial to_plane(const Polynomial& p) {
    const std::size_t kept[] = {0, 1};
    auto r = restrict_to(p, kept);
    if (!r) throw ShapeError("expected a polynomial in x1, x2 only");
    return *r;
}

void require_origin_and_nilpotent(const PolyMap& h) {
    if (!h.fixes_origin()) throw PreconditionError("H(0) != 0");
    if (!is_nilpotent(h)) throw PreconditionError("JH is not nilpotent");
}

}  // namespace

std::string to_string(ReductionStatus status) {
    return status == ReductionStatus::ExternalFormReached ? "external-form-reached" : "contradiction";
}

std::string instance_json(const PolyMap& h) {
    nlohmann::json j;
    j["n"] = h.dimension();
    j["components"] = nlohmann::json::array();
    for (const auto& p : h.components()) j["components"].push_back(format_polynomial(p));
    return j.dump();
}

// ---------------------------------------------------------------- family A

FormAInstance FormAInstance::from_map(PolyMap map) {
    if (map.dimension() != 3) throw ShapeError("form A needs a map in three variables");
    if (map[2].depends_on(Z)) throw ShapeError("third component depends on z");
    if (map[1].degree_in(Z) > 1) throw ShapeError("deg_z v exceeds 1");
    if (!map.fixes_origin()) throw ShapeError("H(0) != 0");
    return FormAInstance{std::move(map), Z};
}

PolyMap build_canonical_A(const CanonicalFormA& p) {
    for (const Polynomial* c : {&p.a1, &p.a2, &p.c1, &p.c2})
        if (c->nvars() != 1) throw DimensionMismatch("a_i and c_i must be polynomials in z alone");
    if (p.h.nvars() != 2) throw DimensionMismatch("h must be a polynomial in (t, z)");

    const Rational zero[] = {Rational(0)};
    const Rational origin[] = {Rational(0), Rational(0)};
    const Rational h0 = p.h.evaluate(origin);
    if (!(p.c1.evaluate(zero) + p.a2.evaluate(zero) * h0).is_zero() ||
        !(p.c2.evaluate(zero) - p.a1.evaluate(zero) * h0).is_zero())
        throw PreconditionError("parameters do not give H(0) = 0");

    constexpr std::size_t n = 3;
    const Polynomial a1 = univariate::lift(p.a1, n, Z), a2 = univariate::lift(p.a2, n, Z);
    const Polynomial s = a1 * var(n, X) + a2 * var(n, Y);
    const std::vector<Polynomial> args{s, var(n, Z)};
    const Polynomial hs = p.h.substitute(args);
    PolyMap result({a2 * hs + univariate::lift(p.c1, n, Z), -(a1 * hs) + univariate::lift(p.c2, n, Z), Polynomial(n)});
    if (!is_nilpotent(result)) throw ConstructionMismatch("canonical form A is not nilpotent");
    return result;
}

std::optional<CanonicalRecognition> recognize_canonical_A(const PolyMap& h) {
    if (h.dimension() != 3 || !h.fixes_origin()) return std::nullopt;
    if (h[2].depends_on(Z) || h[1].degree_in(Z) != 1 || h[0].degree_in(Z) < 2) return std::nullopt;
    if (!is_nilpotent(h)) return std::nullopt;

    auto cert = linear_dependence(h.components());
    if (!cert) throw TheoremViolation("recognize_canonical_A", "no linear dependence among u, v, h", instance_json(h));
    LinearMap t = completion_transform(cert->coefficients);
    const PolyMap g = conjugate(h, t);
    auto params = fit_canonical(g);
    if (!params || build_canonical_A(*params) != g)
        throw ConstructionMismatch("conjugated map does not match the canonical form: " + format_map(g));
    return CanonicalRecognition{t, *params};
}

Conjugation triangularize_top_coefficients(const PolyMap& h) {
    if (h.dimension() != 3) throw ShapeError("triangularize_top_coefficients needs n = 3");
    const int d = std::max(h[0].degree_in(Z), h[1].degree_in(Z));
    if (d < 1) throw PreconditionError("u and v are free of z");
    const Polynomial ud = z_coefficient(h[0], d), vd = z_coefficient(h[1], d);
    const Polynomial top[] = {ud, vd};
    const std::size_t plane[] = {X, Y};
    if (!is_nilpotent(jacobian(top, plane))) throw NotNilpotentTop("J_{x,y}(u_d, v_d) is not nilpotent");

    const Polynomial bar[] = {ud - Polynomial::constant(3, ud.constant_term()),
                              vd - Polynomial::constant(3, vd.constant_term())};
    LinearMap t = LinearMap::identity(3);
    if (!bar[0].is_zero() || !bar[1].is_zero()) {
        auto cert = linear_dependence(bar);
        if (!cert) throw TheoremViolation("triangularize_top_coefficients", "top coefficients are independent", instance_json(h));
        const LinearMap t2 = completion_transform(cert->coefficients);
        RationalMatrix m = RationalMatrix::identity(3);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) m(r, c) = t2.matrix()(r, c);
        t = LinearMap(m);
    }

    PolyMap g = conjugate(h, t);
    const Polynomial nud = z_coefficient(g[0], d), nvd = z_coefficient(g[1], d);
    if (nud.depends_on(X) || !nvd.is_constant() || g[2].degree_in(Z) != h[2].degree_in(Z))
        throw ConstructionMismatch("top coefficients are not triangular after the transform");
    return Conjugation{t, std::move(g)};
}

DependenceCertificate certify_theorem_2_3(const FormAInstance& inst) {
    const PolyMap& h = inst.map;
    if (h[1].degree_in(Z) != 1) throw PreconditionError("deg_z v must be 1");
    if (h[0].degree_in(Z) < 2) throw PreconditionError("deg_z u must be at least 2");
    if (!is_nilpotent(h)) throw PreconditionError("JH is not nilpotent");
    auto cert = linear_dependence(h.components());
    if (!cert) throw TheoremViolation("certify_theorem_2_3", "u, v, h are linearly independent", instance_json(h));
    return *cert;
}

Reduction normalize_theorem_2_5(const FormAInstance& inst, IndependencePolicy policy) {
    const PolyMap& h = inst.map;
    require_origin_and_nilpotent(h);
    check_independence(h, policy);
    if (h[0].degree_in(Z) >= 2)
        throw PreconditionError("deg_z u >= 2 forces linearly dependent components");

    LinearMap t = LinearMap::identity(3);
    PolyMap g = h;
    if (std::max(h[0].degree_in(Z), h[1].degree_in(Z)) >= 1) {
        auto tri = triangularize_top_coefficients(h);
        t = tri.transform;
        g = std::move(tri.map);
    }

    const Polynomial u1 = z_coefficient(g[0], 1), v1 = z_coefficient(g[1], 1);
    if (!v1.is_zero()) {
        if (!u1.is_constant())
            guarantee_failed("normalize_theorem_2_5", "u1 is not constant and v1 != 0", h, policy);
        // Replace v by v1*u - u1*v, which has no z-term; x and y are mixed only among themselves.
        const Rational a = u1.constant_term(), b = v1.constant_term();
        RationalMatrix m = RationalMatrix::identity(3);
        const std::size_t keep = a.is_zero() ? Y : X;
        m(0, X) = Rational(keep == X ? 1 : 0);
        m(0, Y) = Rational(keep == Y ? 1 : 0);
        m(1, X) = b;
        m(1, Y) = -a;
        const LinearMap t2 = LinearMap(m).inverse();
        g = conjugate(g, t2);
        t = t * t2;
    }
    if (g[1].depends_on(Z) || g[2].depends_on(Z))
        throw ConstructionMismatch("normalized map is not of the shape (u(x,y,z), v(x,y), h(x,y))");
    return Reduction{t, std::move(g), ReductionStatus::ExternalFormReached};
}

// ---------------------------------------------------------------- family B

GeneralizedFormB GeneralizedFormB::from_map(PolyMap map) {
    const std::size_t n = map.dimension();
    if (n < 3) throw ShapeError("generalized form B needs n >= 3");
    if (!map.fixes_origin()) throw ShapeError("H(0) != 0");
    const std::vector<std::size_t> tail = tail_vars(n);
    for (std::size_t i = 2; i < n; ++i)
        for (auto v : tail)
            if (map[i].depends_on(v)) throw ShapeError("H" + std::to_string(i + 1) + " is not in Q[x1, x2]");

    auto linear_part = [&](const Polynomial& p) -> std::optional<std::vector<Rational>> {
        const auto parts = p.homogeneous_parts(tail);
        std::vector<Rational> coeffs(n - 2, Rational(0));
        if (parts.size() > 2) return std::nullopt;
        if (parts.size() == 2)
            for (const auto& [e, c] : parts[1].terms()) {
                if (total_degree(e) != 1) return std::nullopt;
                for (std::size_t k = 0; k < tail.size(); ++k)
                    if (e[tail[k]] == 1) coeffs[k] = c;
            }
        return coeffs;
    };
    auto zero_part = [&](const Polynomial& p) {
        const auto parts = p.homogeneous_parts(tail);
        return parts.empty() ? Polynomial(n) : parts[0];
    };

    GeneralizedFormB out{std::move(map), {}, std::nullopt, Polynomial(n), Polynomial(n)};
    auto b = linear_part(out.map[1]);
    if (!b) throw ShapeError("H2 is not of the form b3 x3 + ... + bn xn + H2^(0)(x1, x2)");
    out.b = std::move(*b);
    out.a = linear_part(out.map[0]);
    out.h2_0 = zero_part(out.map[1]);
    out.h1_0 = zero_part(out.map[0]);
    return out;
}

bool GeneralizedFormB::narrow() const { return !h2_0.depends_on(0); }

Polynomial GeneralizedFormB::h2() const { return weighted_sum(map, 2, b); }

Polynomial GeneralizedFormB::h1() const {
    if (!a) throw ShapeError("H1 has no linear leading part in x3..xn");
    return weighted_sum(map, 2, *a);
}

std::vector<Polynomial> nilpotency_system_general(const GeneralizedFormB& form) {
    const PolyMap& h = form.map;
    const std::size_t n = h.dimension();
    auto d = [&](std::size_t i, std::size_t j) { return h[i].derivative(j); };
    const Polynomial h2 = form.h2();
    const Polynomial h2x1 = h2.derivative(0), h2x2 = h2.derivative(1);

    Polynomial e1 = d(0, 0) + d(1, 1);
    Polynomial e2 = d(1, 1) * d(1, 1) + d(0, 1) * d(1, 0) + h2x2;
    Polynomial e3 = -(d(0, 0) * h2x2 - d(0, 1) * h2x1);
    Polynomial e4(n);
    for (std::size_t i = 2; i < n; ++i) {
        const Polynomial h1xi = d(0, i);
        if (h1xi.is_zero()) continue;
        e2 += h1xi * d(i, 0);
        e3 += h1xi * (d(1, 0) * d(i, 1) - d(1, 1) * d(i, 0));
        e4 += h1xi * (d(i, 0) * h2x2 - d(i, 1) * h2x1);
    }

    // Rows 3..n of JH are supported on two columns, so rank JH <= 4.
    const PolyMatrix j = jacobian(h);
    for (std::size_t k = 5; k <= n; ++k)
        if (!principal_minor_sum(j, k).is_zero())
            throw ConstructionMismatch("sigma_" + std::to_string(k) + " does not vanish on this shape");
    return {e1, e2, e3, e4};
}

int leading_part_bound_check(const GeneralizedFormB& form, IndependencePolicy policy) {
    const PolyMap& h = form.map;
    require_origin_and_nilpotent(h);
    check_independence(h, policy);
    const auto parts = h[0].homogeneous_parts(tail_vars(h.dimension()));
    const int d = parts.empty() ? 0 : static_cast<int>(parts.size()) - 1;
    if (d > 1) guarantee_failed("leading_part_bound_check", "deg H1^(d) = " + std::to_string(d) + " > 1", h, policy);
    if (d == 1 && (parts[1].depends_on(0) || parts[1].depends_on(1)))
        guarantee_failed("leading_part_bound_check", "H1^(1) is not in Q[x3, ..., xn]", h, policy);
    return d;
}

Reduction reduce_theorem_3_3(const GeneralizedFormB& form, IndependencePolicy policy) {
    const PolyMap& h = form.map;
    const std::size_t n = h.dimension();
    if (!form.narrow()) throw ShapeError("H2 must lie in Q[x2, ..., xn] with H2^(0) in Q[x2]");
    require_origin_and_nilpotent(h);
    check_independence(h, policy);

    if (std::all_of(form.b.begin(), form.b.end(), [](const Rational& r) { return r.is_zero(); }))
        return Reduction{LinearMap::identity(n), h, ReductionStatus::ExternalFormReached};

    const int d = leading_part_bound_check(form, policy);
    LinearMap t = LinearMap::identity(n);
    if (d <= 0) {
        t = elementary_permutation(n, 0, 1);
    } else {
        const Polynomial pair[] = {form.h1(), form.h2()};
        auto cert = linear_dependence(pair);
        if (!cert || cert->coefficients[1].is_zero())
            guarantee_failed("reduce_theorem_3_3", "h2 is not a multiple of a nonzero h1", h, policy);
        const Rational c = -cert->coefficients[0] / cert->coefficients[1];
        for (std::size_t i = 0; i < form.b.size(); ++i)
            if (form.b[i] != c * (*form.a)[i])
                guarantee_failed("reduce_theorem_3_3", "b is not c2/c1 times a", h, policy);
        t = elementary_row_add(n, 0, c, 1);
    }

    PolyMap g = conjugate(h, t);
    for (auto v : tail_vars(n))
        if (g[1].depends_on(v)) throw ConstructionMismatch("second component still involves x3..xn");
    return Reduction{t, std::move(g), ReductionStatus::ExternalFormReached};
}

// ---------------------------------------------------------------- dimension four

PolyMap ReducedForm4D::realize() const {
    constexpr std::size_t n = 4;
    const std::size_t target[] = {0, 1};
    return PolyMap({var(n, 2) + h1.embed(n, target), var(n, 3) + h2.embed(n, target), h3.embed(n, target),
                    h4.embed(n, target)});
}

ReducedForm4D reduce_4d(const GeneralizedFormB& form) {
    if (!form.a) throw ShapeError("H1 has no linear leading part a3 x3 + ... + an xn");
    ReducedForm4D r{to_plane(form.h1_0), to_plane(form.h2_0), to_plane(form.h1()), to_plane(form.h2())};
    if (is_nilpotent(r.realize()) != is_nilpotent(form.map))
        throw ConstructionMismatch("reduction to dimension four changed nilpotency");
    return r;
}

Conjugation theorem_4_1_transform(const ReducedForm4D& h, const Rational& lambda) {
    if (h.h4 != h.h3 * lambda) throw PreconditionError("h4 is not lambda times h3");
    const LinearMap t = elementary_row_add(4, 2, lambda, 3) * elementary_row_add(4, 0, lambda, 1);
    PolyMap g = conjugate(h.realize(), t);
    if (!(g[3]).is_zero()) throw ConstructionMismatch("fourth component did not vanish");
    return Conjugation{t, std::move(g)};
}

bool keller_parameterized_check(const ReducedForm4D& h) {
    constexpr std::size_t n = 3;
    const std::size_t target[] = {0, 1};
    const Polynomial t = var(n, 2), t2 = t * t;
    const Polynomial p[] = {var(n, 0) + t * h.h1.embed(n, target) - t2 * h.h3.embed(n, target),
                            var(n, 1) + t * h.h2.embed(n, target) - t2 * h.h4.embed(n, target)};
    const std::size_t plane[] = {0, 1};
    return poly_det(jacobian(p, plane)) == Polynomial::constant(n, Rational(1));
}

}  // namespace nilmap
