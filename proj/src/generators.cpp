#include "nilmap/generators.hpp"

#include "nilmap/univariate.hpp"

#include <algorithm>
#include <numeric>

namespace nilmap::gen {

namespace {

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
    std::vector<std::size_t> v(to - from);
    std::iota(v.begin(), v.end(), from);
    return v;
}

bool coin(Engine& rng) { return std::bernoulli_distribution(0.5)(rng); }

// Solve S^T x = target for x in the column span of S (S has independent columns).
RationalVector solve_in_span(const std::vector<RationalVector>& cols, const RationalVector& target) {
    const std::size_t m = cols.size();
    RationalMatrix gram(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < cols[i].size(); ++k) gram(i, j) += cols[i][k] * cols[j][k];
    const RationalVector coeffs = gram.inverse().value().apply(target);
    RationalVector x(cols[0].size(), Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += coeffs[i] * cols[i][k];
    return x;
}

RationalVector random_vector(Engine& rng, std::size_t n, int bound) {
    RationalVector v(n);
    for (auto& x : v) x = random_integer(rng, bound);
    return v;
}

bool is_zero_vector(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

Polynomial dot_tail(const RationalVector& c, std::size_t n) {
    Polynomial p(n);
    for (std::size_t i = 0; i < c.size(); ++i) p += Polynomial::variable(n, i + 2) * c[i];
    return p;
}

}  // namespace

Rational random_integer(Engine& rng, int bound, bool nonzero) {
    std::uniform_int_distribution<int> d(-bound, bound);
    for (;;) {
        const int v = d(rng);
        if (!nonzero || v != 0) return Rational(v);
    }
}

Polynomial random_polynomial(Engine& rng, std::size_t nvars, std::span<const std::size_t> vars, unsigned max_degree,
                             unsigned terms, int bound, bool zero_constant) {
    std::uniform_int_distribution<unsigned> deg(zero_constant ? 1 : 0, max_degree);
    std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
    Polynomial p(nvars);
    if (vars.empty() || max_degree == 0) {
        if (!zero_constant) p.add_term(Exponents(nvars, 0), random_integer(rng, bound));
        return p;
    }
    for (unsigned t = 0; t < terms; ++t) {
        Exponents e(nvars, 0);
        const unsigned d = deg(rng);
        for (unsigned k = 0; k < d; ++k) ++e[vars[pick(rng)]];
        p.add_term(e, random_integer(rng, bound));
    }
    return p;
}

Polynomial random_polynomial(Engine& rng, std::size_t nvars, unsigned max_degree, unsigned terms, int bound,
                             bool zero_constant) {
    const auto vars = range(0, nvars);
    return random_polynomial(rng, nvars, vars, max_degree, terms, bound, zero_constant);
}

Polynomial random_univariate(Engine& rng, unsigned min_degree, unsigned max_degree, bool zero_constant, int bound) {
    const unsigned d = std::uniform_int_distribution<unsigned>(min_degree, max_degree)(rng);
    std::vector<Rational> c(d + 1);
    for (unsigned i = 0; i <= d; ++i) c[i] = random_integer(rng, bound);
    if (zero_constant) c[0] = Rational(0);
    if (d > 0 || !zero_constant) c[d] = random_integer(rng, bound, true);
    return univariate::from_coefficients(c);
}

PolyMap random_map(Engine& rng, std::size_t n, unsigned max_degree, int bound) {
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < n; ++i) comps.push_back(random_polynomial(rng, n, max_degree, 3, bound, false));
    return PolyMap(std::move(comps));
}

LinearMap random_linear_map(Engine& rng, std::size_t n, int bound) {
    for (;;) {
        RationalMatrix m(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m(r, c) = random_integer(rng, bound);
        if (!m.determinant().is_zero()) return LinearMap(m);
    }
}

PolyMap random_triangular_nilpotent(Engine& rng, std::size_t n, unsigned max_degree) {
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < n; ++i) {
        const auto later = range(i + 1, n);
        comps.push_back(later.empty() ? Polynomial(n) : random_polynomial(rng, n, later, max_degree, 3));
    }
    return conjugate(PolyMap(std::move(comps)), random_linear_map(rng, n));
}

PolyMap random_plane_nilpotent(Engine& rng, unsigned max_degree) {
    const Rational a1 = random_integer(rng, 2), a2 = coin(rng) ? Rational(1) : random_integer(rng, 2, true);
    const Polynomial h = random_univariate(rng, 1, max_degree, true);
    const Polynomial s = Polynomial::variable(2, 0) * a1 + Polynomial::variable(2, 1) * a2;
    const Polynomial hs = h.substitute(std::vector<Polynomial>{s});
    return PolyMap({hs * a2, hs * (-a1)});
}

CanonicalFormA random_canonical_params(Engine& rng) {
    CanonicalFormA p;
    p.a1 = random_univariate(rng, 0, 2, false, 2);
    p.a2 = random_univariate(rng, 0, 1, false, 2);
    if (p.a1.is_zero() && p.a2.is_zero()) p.a2 = Polynomial::constant(1, Rational(1));
    const std::size_t tz[] = {0, 1};
    p.h = random_polynomial(rng, 2, tz, 3, 3);
    p.c1 = random_univariate(rng, 0, 3, true);
    p.c2 = random_univariate(rng, 0, 2, true);
    // h(0, 0) = 0 because the constant term was suppressed, so c_i(0) = 0 gives H(0) = 0.
    return p;
}

FormADraw random_form_a_conjugate(Engine& rng) {
    for (;;) {
        CanonicalFormA p;
        RationalMatrix t0 = RationalMatrix::identity(3);
        const Rational alpha = random_integer(rng, 2, true), delta = random_integer(rng, 2, true),
                       gamma = random_integer(rng, 2, true), beta = random_integer(rng, 2), mu = random_integer(rng, 2);
        t0(0, 0) = alpha;
        t0(0, 1) = beta;
        t0(1, 1) = delta;
        t0(2, 2) = gamma;
        const std::size_t t_only[] = {0};
        if (coin(rng)) {
            // Constant direction; z enters only through c_i and a linear z-term of h.
            const Rational a1 = random_integer(rng, 2), a2 = random_integer(rng, 2);
            if (a1.is_zero() && a2.is_zero()) continue;
            p.a1 = Polynomial::constant(1, a1);
            p.a2 = Polynomial::constant(1, a2);
            p.h = random_polynomial(rng, 2, t_only, 3, 3);
            if (coin(rng)) p.h += random_polynomial(rng, 2, t_only, 2, 2) * Polynomial::variable(2, 1);
            p.c1 = random_univariate(rng, 2, 3, true);
            // Shift along the kernel of s = a1 x + a2 y keeps h(s) free of z.
            t0(0, 2) = mu * a2;
            t0(1, 2) = -mu * a1;
        } else {
            // a1 = 0 and v = c2(z); a2 and h may depend on z freely.
            p.a1 = Polynomial(1);
            p.a2 = random_univariate(rng, 0, 2, false, 2);
            if (p.a2.is_zero()) continue;
            const std::size_t tz[] = {0, 1};
            p.h = random_polynomial(rng, 2, tz, 3, 3);
            p.h += random_polynomial(rng, 2, t_only, 2, 2);
            p.c1 = random_univariate(rng, 0, 3, true);
            t0(0, 2) = mu;
            t0(1, 2) = random_integer(rng, 2);
        }
        p.c2 = univariate::from_coefficients({Rational(0), random_integer(rng, 3, true)});
        const LinearMap t(t0);
        PolyMap h = conjugate(build_canonical_A(p), t);
        if (h[2].depends_on(2) || h[1].degree_in(2) != 1 || h[0].degree_in(2) < 2 || !h.fixes_origin()) continue;
        return FormADraw{std::move(p), t, std::move(h)};
    }
}

namespace {

struct SeedB {
    Rational alpha, beta;
    Polynomial f, g;  // univariate, zero constant
};

// Lift of the seed to dimension n. With narrow = true, alpha = 0 so H2 lies in Q[x2, ..., xn].
GeneralizedFormB lift_seed(Engine& rng, std::size_t n, const SeedB& seed) {
    const std::size_t m = n - 2;
    const Polynomial x1 = Polynomial::variable(n, 0), x2 = Polynomial::variable(n, 1);
    const Polynomial s = x1 * seed.alpha + x2 * seed.beta;
    const Polynomial fs = seed.f.substitute(std::vector<Polynomial>{s});
    const Polynomial gs = seed.g.substitute(std::vector<Polynomial>{s});
    for (;;) {
        RationalVector u = random_vector(rng, m, 2), w(m, Rational(0));
        if (is_zero_vector(u)) continue;
        std::vector<RationalVector> span{u};
        if (m >= 3) {
            w = random_vector(rng, m, 2);
            span.push_back(w);
            if (RationalMatrix::from_rows(span).rank() < 2) continue;
        }
        // A.u = beta, B.u = -alpha, A.w = B.w = 0.
        auto adjust = [&](const Rational& target) {
            RationalVector r = random_vector(rng, m, 2);
            RationalVector rhs{target - std::inner_product(u.begin(), u.end(), r.begin(), Rational(0))};
            if (span.size() == 2) rhs.push_back(-std::inner_product(w.begin(), w.end(), r.begin(), Rational(0)));
            RationalVector corr = solve_in_span(span, rhs);
            for (std::size_t k = 0; k < m; ++k) r[k] += corr[k];
            return r;
        };
        RationalVector a = adjust(seed.beta), b = adjust(-seed.alpha);
        if (RationalMatrix::from_rows({a, b}).rank() < 2) continue;

        const std::size_t plane[] = {0, 1};
        const Polynomial psi = random_polynomial(rng, n, plane, 2, 2);
        std::vector<Polynomial> comps{dot_tail(a, n) + fs * seed.beta, dot_tail(b, n) - fs * seed.alpha};
        for (std::size_t k = 0; k < m; ++k) comps.push_back(gs * u[k] + psi * w[k]);
        return GeneralizedFormB::from_map(PolyMap(std::move(comps)));
    }
}

SeedB random_seed(Engine& rng, bool narrow) {
    SeedB seed;
    seed.alpha = narrow ? Rational(0) : random_integer(rng, 2);
    seed.beta = random_integer(rng, 2, true);
    seed.f = random_univariate(rng, 1, 2, true);
    seed.g = random_univariate(rng, 1, 2, true);
    return seed;
}

}  // namespace

GeneralizedFormB random_form_b(Engine& rng, std::size_t n, bool nilpotent) {
    if (nilpotent) return lift_seed(rng, n, random_seed(rng, false));
    if (coin(rng)) {
        GeneralizedFormB base = lift_seed(rng, n, random_seed(rng, false));
        std::vector<Polynomial> comps = base.map.components();
        const std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        const std::size_t plane[] = {0, 1};
        comps[i] += random_polynomial(rng, n, plane, 2, 1);
        return GeneralizedFormB::from_map(PolyMap(std::move(comps)));
    }
    const std::size_t plane[] = {0, 1};
    std::vector<Polynomial> comps;
    comps.push_back(dot_tail(random_vector(rng, n - 2, 2), n) + random_polynomial(rng, n, plane, 2, 3));
    comps.push_back(dot_tail(random_vector(rng, n - 2, 2), n) + random_polynomial(rng, n, plane, 2, 3));
    for (std::size_t i = 2; i < n; ++i) comps.push_back(random_polynomial(rng, n, plane, 2, 3));
    return GeneralizedFormB::from_map(PolyMap(std::move(comps)));
}

GeneralizedFormB reduction_instance(Engine& rng, std::size_t n, const Rational& c) {
    // G = (a.x', 0, q_3(x2), ..., q_n(x2)) is strictly triangular; conjugating by P_n(1(-c), 2)
    // gives H = (a.x', c a.x', q_i(x2 - c x1)).
    RationalVector a;
    do a = random_vector(rng, n - 2, 2);
    while (is_zero_vector(a));
    const std::size_t second[] = {1};
    std::vector<Polynomial> comps{dot_tail(a, n), Polynomial(n)};
    for (std::size_t i = 2; i < n; ++i) comps.push_back(random_polynomial(rng, n, second, 2, 2));
    PolyMap h = conjugate(PolyMap(std::move(comps)), elementary_row_add(n, 0, -c, 1));
    return GeneralizedFormB::from_map(std::move(h));
}

ReducedForm4D random_reduced_4d(Engine& rng, bool nilpotent) {
    const std::size_t plane[] = {0, 1};
    if (!nilpotent) {
        ReducedForm4D r;
        for (Polynomial* p : {&r.h1, &r.h2, &r.h3, &r.h4}) *p = random_polynomial(rng, 2, plane, 2, 3);
        return r;
    }
    ReducedForm4D r;
    if (coin(rng)) {
        const SeedB seed = random_seed(rng, false);
        const Polynomial s = Polynomial::variable(2, 0) * seed.alpha + Polynomial::variable(2, 1) * seed.beta;
        const Polynomial fs = seed.f.substitute(std::vector<Polynomial>{s});
        const Polynomial gs = seed.g.substitute(std::vector<Polynomial>{s});
        r = ReducedForm4D{fs * seed.beta, fs * (-seed.alpha), gs * seed.beta, gs * (-seed.alpha)};
    } else {
        const std::size_t y_only[] = {1};
        r = ReducedForm4D{random_polynomial(rng, 2, y_only, 2, 2), Polynomial(2), random_polynomial(rng, 2, y_only, 2, 2),
                          Polynomial(2)};
    }
    // Conjugating by diag(N, N) keeps the shape (z + h1, w + h2, h3, h4).
    const LinearMap plane_map = random_linear_map(rng, 2, 1);
    const RationalMatrix& nm = plane_map.matrix();
    const RationalMatrix& ni = plane_map.inverse_matrix();
    const std::vector<Polynomial> args{Polynomial::variable(2, 0) * nm(0, 0) + Polynomial::variable(2, 1) * nm(0, 1),
                                       Polynomial::variable(2, 0) * nm(1, 0) + Polynomial::variable(2, 1) * nm(1, 1)};
    auto mix = [&](const Polynomial& p, const Polynomial& q, std::size_t row) {
        return p.substitute(args) * ni(row, 0) + q.substitute(args) * ni(row, 1);
    };
    return ReducedForm4D{mix(r.h1, r.h2, 0), mix(r.h1, r.h2, 1), mix(r.h3, r.h4, 0), mix(r.h3, r.h4, 1)};
}

PolyMap random_nilpotent_member(Engine& rng, std::size_t n) {
    const int pick = std::uniform_int_distribution<int>(0, 2)(rng);
    if (pick == 0 || n < 2 || n > 5) return random_triangular_nilpotent(rng, n, n >= 5 ? 2 : 3);
    switch (n) {
        case 2:
            return conjugate(random_plane_nilpotent(rng, 3), random_linear_map(rng, 2));
        case 3:
            if (pick == 1) return conjugate(build_canonical_A(random_canonical_params(rng)), random_linear_map(rng, 3));
            return random_form_a_conjugate(rng).map;
        case 4:
            if (pick == 1) return conjugate(random_reduced_4d(rng, true).realize(), random_linear_map(rng, 4));
            return random_form_b(rng, 4, true).map;
        default:
            return random_form_b(rng, 5, true).map;
    }
}

}  // namespace nilmap::gen
