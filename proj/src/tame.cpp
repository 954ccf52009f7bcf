#include "nilmap/tame.hpp"

#include "nilmap/classification.hpp"
#include "nilmap/errors.hpp"
#include "nilmap/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nilmap {

ElementaryMap::ElementaryMap(std::size_t n, std::size_t index, Polynomial q) : n_(n), index_(index), q_(std::move(q)) {
    if (index_ >= n_) throw DimensionMismatch("elementary map index out of range");
    if (q_.nvars() != n_) throw DimensionMismatch("elementary map polynomial lives in the wrong ring");
    if (q_.depends_on(index_)) throw ShapeError("Q of an elementary map must be free of its own variable");
}

PolyMap ElementaryMap::realize() const {
    std::vector<Polynomial> comps = PolyMap::identity(n_).components();
    comps[index_] += q_;
    return PolyMap(std::move(comps));
}

PolyMap realize(const LinearMap& t) {
    const RationalMatrix& m = t.matrix();
    const std::size_t n = m.rows();
    std::vector<Polynomial> comps(n, Polynomial(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!m(i, j).is_zero()) comps[i] += Polynomial::variable(n, j) * m(i, j);
    return PolyMap(std::move(comps));
}

PolyMap realize(const TameFactor& factor) {
    if (const auto* e = std::get_if<ElementaryMap>(&factor)) return e->realize();
    return realize(std::get<LinearMap>(factor));
}

bool keller_check(const PolyMap& f) {
    const Polynomial det = poly_det(jacobian(f));
    return det.is_constant() && !det.is_zero();
}

std::optional<PolyMap> formal_inverse(const PolyMap& f, std::optional<int> degree_bound) {
    const std::size_t n = f.dimension();
    if (!f.fixes_origin()) throw ShapeError("F(0) != 0");
    const PolyMap id = PolyMap::identity(n);
    int bound = degree_bound.value_or(0);
    if (!degree_bound) {
        const int d = std::max(f.degree(), 1);
        bound = static_cast<int>(std::pow(static_cast<double>(d), static_cast<double>(n - 1)));
    }
    if (bound < 1) bound = 1;

    // F = A x + R with R of order >= 2. The fixpoint of G = x - H o G is built one degree at a
    // time: the degree-d part of R o G only sees the parts of G below degree d, so
    // g_d = -A^-1 [R o G_{<d}]_d.
    RationalMatrix a(n, n);
    std::vector<Polynomial> rest;
    rest.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial r = f[i];
        for (std::size_t j = 0; j < n; ++j) {
            Exponents e(n, 0);
            e[j] = 1;
            a(i, j) = f[i].coefficient(e);
            r -= Polynomial::monomial(n, std::move(e), a(i, j));
        }
        rest.push_back(std::move(r));
    }
    const auto a_inv = a.inverse();
    if (!a_inv) return std::nullopt;
    const PolyMap r_map(std::move(rest));
    auto apply_inverse = [&](const std::vector<Polynomial>& v) {
        std::vector<Polynomial> out(n, Polynomial(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!(*a_inv)(i, j).is_zero()) out[i] += v[j] * (*a_inv)(i, j);
        return out;
    };

    std::vector<Polynomial> g = apply_inverse(id.components());
    auto inverts = [&](const PolyMap& candidate) {
        return compose_map(f, candidate) == id && compose_map(candidate, f) == id;
    };
    for (int d = 2; d <= bound; ++d) {
        const PolyMap current(g);
        const PolyMap image = compose_map(r_map, current, d);
        std::vector<Polynomial> top(n, Polynomial(n));
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [e, c] : image[i].terms())
                if (static_cast<int>(total_degree(e)) == d) top[i].add_term(e, -c);
        const auto step = apply_inverse(top);
        // Zero correction at degree d: G may already be exact.
        if (std::all_of(step.begin(), step.end(), [](const Polynomial& p) { return p.is_zero(); }) && inverts(current))
            return current;
        for (std::size_t i = 0; i < n; ++i) g[i] += step[i];
    }
    const PolyMap result(std::move(g));
    if (inverts(result)) return result;
    return std::nullopt;
}

namespace {

// Order in which the components must be applied: i before j whenever g_i depends on x_j.
std::vector<std::size_t> application_order(const PolyMap& g) {
    const std::size_t n = g.dimension();
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g[i].depends_on(j)) {
                if (i == j) throw NotTriangularizable("H_" + std::to_string(i + 1) + " depends on its own variable");
                ++indegree[j];
            }
    std::vector<std::size_t> order, ready;
    for (std::size_t j = n; j-- > 0;)
        if (indegree[j] == 0) ready.push_back(j);
    while (!ready.empty()) {
        const std::size_t i = ready.back();
        ready.pop_back();
        order.push_back(i);
        for (std::size_t j = n; j-- > 0;)
            if (g[i].depends_on(j) && --indegree[j] == 0) ready.push_back(j);
    }
    if (order.size() != n) throw NotTriangularizable("dependency digraph of H has a cycle");
    return order;
}

bool is_identity(const LinearMap& t) { return t.matrix() == RationalMatrix::identity(t.matrix().rows()); }

void append(TameFactorization& out, const TameFactorization& part) {
    out.factors.insert(out.factors.end(), part.factors.begin(), part.factors.end());
}

void check_recomposition(const TameFactorization& f, const PolyMap& target) {
    if (compose_factorization(f) != target) throw ConstructionMismatch("tame factors do not recompose to F");
}

// Appends the candidates that are independent of the basis so far.
void extend_basis(std::vector<RationalVector>& basis, const std::vector<RationalVector>& candidates) {
    for (const auto& v : candidates) {
        std::vector<RationalVector> trial = basis;
        trial.push_back(v);
        if (RationalMatrix::from_rows(trial).rank() > basis.size()) {
            basis = std::move(trial);
        }
    }
}

// {l : D_v(l.H) = 0 for every v in directions}, as the null space of the coefficient equations.
std::vector<RationalVector> annihilating_forms(const PolyMap& h, const std::vector<RationalVector>& directions) {
    const std::size_t n = h.dimension();
    std::vector<RationalVector> rows;
    for (const auto& v : directions) {
        std::map<Exponents, RationalVector, GrlexLess> eq;
        for (std::size_t i = 0; i < n; ++i) {
            Polynomial dv(n);
            for (std::size_t j = 0; j < n; ++j)
                if (!v[j].is_zero()) dv += h[i].derivative(j) * v[j];
            for (const auto& [e, c] : dv.terms()) {
                auto [it, fresh] = eq.try_emplace(e, RationalVector(n, Rational(0)));
                it->second[i] = c;
            }
        }
        for (auto& [e, row] : eq) rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        std::vector<RationalVector> all;
        for (std::size_t i = 0; i < n; ++i) {
            RationalVector e(n, Rational(0));
            e[i] = Rational(1);
            all.push_back(std::move(e));
        }
        return all;
    }
    return kernel(RationalMatrix::from_rows(rows));
}

std::optional<ClassifiedDecomposition> try_triangular(const PolyMap& f) {
    try {
        return ClassifiedDecomposition{"triangular", tame_decompose(f)};
    } catch (const NotTriangularizable&) {
        return std::nullopt;
    }
}

std::optional<ClassifiedDecomposition> try_reduction(const PolyMap& f, const PolyMap& h) {
    try {
        const Reduction r = reduce_theorem_3_3(GeneralizedFormB::from_map(h), IndependencePolicy::Skip);
        return ClassifiedDecomposition{"reduction", tame_decompose(f, r.transform)};
    } catch (const PreconditionError&) {
    } catch (const NotTriangularizable&) {
    }
    return std::nullopt;
}

std::optional<ClassifiedDecomposition> try_linear(const PolyMap& f, const PolyMap& h) {
    auto t = linear_triangularization(h);
    if (!t) return std::nullopt;
    return ClassifiedDecomposition{"linear", tame_decompose(f, *t)};
}

// F = (x1 + a.x' + g1, x2 + b.x' + g2, x' + q(x1, x2)) splits as T_L o Q o E with
// E = (x1, x2, x' + q), T_L = (x1 + a.x', x2 + b.x', x') and the plane map
// Q = (x1 + g1 - a.q, x2 + g2 - b.q, x').
std::optional<ClassifiedDecomposition> try_block(const PolyMap& f, const PolyMap& h) {
    const std::size_t n = h.dimension();
    if (n < 3) return std::nullopt;
    std::optional<GeneralizedFormB> form;
    try {
        form = GeneralizedFormB::from_map(h);
    } catch (const PreconditionError&) {
        return std::nullopt;
    }
    if (!form->a) return std::nullopt;
    const auto& a = *form->a;
    const auto& b = form->b;

    Polynomial aq(n), bq(n);
    for (std::size_t k = 2; k < n; ++k) {
        aq += h[k] * a[k - 2];
        bq += h[k] * b[k - 2];
    }
    std::vector<Polynomial> plane(n, Polynomial(n));
    plane[0] = form->h1_0 - aq;
    plane[1] = form->h2_0 - bq;
    const PolyMap p(std::move(plane));
    const PolyMap q_map = PolyMap::identity(n) + p;

    TameFactorization inner;
    try {
        inner = tame_decompose(q_map);
    } catch (const NotTriangularizable&) {
        auto t = linear_triangularization(p);
        if (!t) return std::nullopt;
        inner = tame_decompose(q_map, *t);
    }

    RationalMatrix tl = RationalMatrix::identity(n);
    for (std::size_t k = 2; k < n; ++k) {
        tl(0, k) = a[k - 2];
        tl(1, k) = b[k - 2];
    }
    TameFactorization out{n, {}};
    const LinearMap tl_map(tl);
    if (!is_identity(tl_map)) out.factors.emplace_back(tl_map);
    append(out, inner);
    for (std::size_t k = 2; k < n; ++k)
        if (!h[k].is_zero()) out.factors.emplace_back(ElementaryMap(n, k, h[k]));
    check_recomposition(out, f);
    return ClassifiedDecomposition{"block", std::move(out)};
}

}  // namespace

TameFactorization tame_decompose(const PolyMap& f, const std::optional<LinearMap>& t) {
    const std::size_t n = f.dimension();
    const PolyMap h = f - PolyMap::identity(n);
    const bool bracket = t && !is_identity(*t);
    const PolyMap g = bracket ? conjugate(h, *t) : h;

    TameFactorization out{n, {}};
    if (bracket) out.factors.emplace_back(*t);
    const auto order = application_order(g);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (!g[*it].is_zero()) out.factors.emplace_back(ElementaryMap(n, *it, g[*it]));
    if (bracket) out.factors.emplace_back(t->inverse());
    check_recomposition(out, f);
    return out;
}

PolyMap compose_factorization(const TameFactorization& f) {
    PolyMap result = PolyMap::identity(f.dimension);
    for (auto it = f.factors.rbegin(); it != f.factors.rend(); ++it) {
        PolyMap step = realize(*it);
        if (step.dimension() != f.dimension) throw DimensionMismatch("factor dimension does not match");
        result = compose_map(step, result);
    }
    return result;
}

std::optional<LinearMap> linear_triangularization(const PolyMap& h) {
    const std::size_t n = h.dimension();
    if (!h.fixes_origin()) return std::nullopt;
    // V_1 = {l : l.H = 0}; V_{k+1} = forms whose image under H is constant along ker V_k.
    std::vector<RationalVector> basis;
    while (basis.size() < n) {
        std::vector<RationalVector> directions;
        if (basis.empty()) {
            for (std::size_t i = 0; i < n; ++i) {
                RationalVector e(n, Rational(0));
                e[i] = Rational(1);
                directions.push_back(std::move(e));
            }
        } else {
            directions = kernel(RationalMatrix::from_rows(basis));
        }
        const std::size_t before = basis.size();
        extend_basis(basis, annihilating_forms(h, directions));
        if (basis.size() == before) return std::nullopt;
    }
    // Rows of M are the filtration basis; T = M^-1 gives conjugate(H, T) = M H(M^-1 y).
    return LinearMap(RationalMatrix::from_rows(basis)).inverse();
}

ClassifiedDecomposition classify_and_decompose(const PolyMap& f) {
    const std::size_t n = f.dimension();
    if (!f.fixes_origin()) throw ShapeError("F(0) != 0");
    const PolyMap h = f - PolyMap::identity(n);
    if (auto r = try_triangular(f)) return *r;
    if (auto r = try_reduction(f, h)) return *r;
    if (auto r = try_linear(f, h)) return *r;
    if (auto r = try_block(f, h)) return *r;
    throw NotTriangularizable("no linear conjugation or block splitting triangularizes H");
}

}  // namespace nilmap
