#include "nilmap/polynomial.hpp"

#include "nilmap/errors.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace nilmap {

std::uint32_t total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    const auto da = nilmap::total_degree(a);
    const auto db = nilmap::total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::out_of_range("variable index out of range");
    Exponents e(nvars, 0);
    e[index] = 1;
    return monomial(nvars, std::move(e), Rational(1));
}

Polynomial Polynomial::monomial(std::size_t nvars, Exponents exponents, const Rational& c) {
    if (exponents.size() != nvars) throw DimensionMismatch("monomial length differs from ring dimension");
    Polynomial p(nvars);
    p.add_term(exponents, c);
    return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Polynomial::check_compatible(const Polynomial& o) const {
    if (nvars_ != o.nvars_)
        throw DimensionMismatch("polynomials live in rings of different dimension (" +
                                std::to_string(nvars_) + " vs " + std::to_string(o.nvars_) + ")");
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && nilmap::total_degree(terms_.begin()->first) == 0);
}

Rational Polynomial::constant_term() const { return coefficient(Exponents(nvars_, 0)); }

Rational Polynomial::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(nilmap::total_degree(terms_.rbegin()->first));
}

int Polynomial::degree_in(std::size_t index) const {
    if (index >= nvars_) throw std::out_of_range("variable index out of range");
    if (terms_.empty()) return -1;
    std::uint32_t best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, e[index]);
    return static_cast<int>(best);
}

bool Polynomial::depends_on(std::size_t index) const { return degree_in(index) > 0; }

const Exponents& Polynomial::leading_exponents() const {
    if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
    return terms_.rbegin()->first;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial multiply_generic(const Polynomial& a, const Polynomial& b, int max_degree) {
    Polynomial r(a.nvars());
    Exponents e(a.nvars());
    for (const auto& [ea, ca] : a.terms()) {
        const int da = static_cast<int>(nilmap::total_degree(ea));
        for (const auto& [eb, cb] : b.terms()) {
            if (max_degree >= 0 && da + static_cast<int>(nilmap::total_degree(eb)) > max_degree) continue;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

// Exponent vectors packed into one word with `bits` bits per variable; products add the packed
// keys directly, and the hash map avoids one heap-allocated key per partial product.
struct Packed {
    std::uint64_t key;
    int degree;
    const mpq_class* coeff;
};

std::vector<Packed> pack(const Polynomial& p, unsigned bits) {
    std::vector<Packed> out;
    out.reserve(p.size());
    for (const auto& [e, c] : p.terms()) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < e.size(); ++i) key |= static_cast<std::uint64_t>(e[i]) << (bits * i);
        out.push_back({key, static_cast<int>(nilmap::total_degree(e)), &c.get()});
    }
    return out;
}

Polynomial multiply_impl(const Polynomial& a, const Polynomial& b, int max_degree) {
    const std::size_t n = a.nvars();
    if (a.is_zero() || b.is_zero()) return Polynomial(n);
    if (n == 0 || n > 16 || a.size() * b.size() < 16) return multiply_generic(a, b, max_degree);
    const unsigned bits = static_cast<unsigned>(64 / n);
    const std::uint64_t limit = bits >= 32 ? (std::uint64_t{1} << 32) : (std::uint64_t{1} << bits);
    for (std::size_t i = 0; i < n; ++i) {
        const int da = std::max(a.degree_in(i), 0), db = std::max(b.degree_in(i), 0);
        if (static_cast<std::uint64_t>(da + db) >= limit) return multiply_generic(a, b, max_degree);
    }

    const auto pa = pack(a, bits), pb = pack(b, bits);
    std::unordered_map<std::uint64_t, mpq_class> acc;
    acc.reserve(std::min<std::size_t>(pa.size() * pb.size(), 1u << 20));
    mpq_class product;
    for (const auto& ta : pa)
        for (const auto& tb : pb) {
            if (max_degree >= 0 && ta.degree + tb.degree > max_degree) continue;
            mpq_mul(product.get_mpq_t(), ta.coeff->get_mpq_t(), tb.coeff->get_mpq_t());
            auto& slot = acc[ta.key + tb.key];
            slot += product;
        }

    Polynomial r(n);
    Exponents e(n);
    const std::uint64_t mask = bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    for (const auto& [key, c] : acc) {
        if (sgn(c) == 0) continue;
        for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<std::uint32_t>((key >> (bits * i)) & mask);
        r.add_term(e, Rational(c));
    }
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_compatible(b);
    return multiply_impl(a, b, -1);
}

Polynomial Polynomial::multiply_truncated(const Polynomial& a, const Polynomial& b, int max_degree) {
    a.check_compatible(b);
    return multiply_impl(a, b, max_degree);
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
    Polynomial result = constant(nvars_, Rational(1));
    Polynomial base = *this;
    while (exponent > 0) {
        if (exponent & 1u) result *= base;
        exponent >>= 1u;
        if (exponent > 0) base *= base;
    }
    return result;
}

Polynomial Polynomial::truncated(int max_degree) const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_)
        if (static_cast<int>(nilmap::total_degree(e)) <= max_degree) r.terms_.emplace_hint(r.terms_.end(), e, c);
    return r;
}

Polynomial Polynomial::derivative(std::size_t index) const {
    if (index >= nvars_) throw std::out_of_range("variable index out of range");
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[index] == 0) continue;
        Exponents d = e;
        --d[index];
        r.add_term(d, c * Rational(static_cast<long>(e[index])));
    }
    return r;
}

Polynomial Polynomial::antiderivative(std::size_t index) const {
    if (index >= nvars_) throw std::out_of_range("variable index out of range");
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        Exponents d = e;
        ++d[index];
        r.add_term(d, c / Rational(static_cast<long>(d[index])));
    }
    return r;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t index) const {
    const int d = degree_in(index);
    std::vector<Polynomial> out;
    if (d < 0) return out;
    out.assign(static_cast<std::size_t>(d) + 1, Polynomial(nvars_));
    for (const auto& [e, c] : terms_) {
        Exponents stripped = e;
        stripped[index] = 0;
        out[e[index]].add_term(stripped, c);
    }
    return out;
}

std::vector<Polynomial> Polynomial::homogeneous_parts(std::span<const std::size_t> subset) const {
    if (subset.empty()) throw std::invalid_argument("homogeneous_parts needs a non-empty variable subset");
    for (auto i : subset)
        if (i >= nvars_) throw std::out_of_range("variable index out of range");
    std::vector<Polynomial> out;
    for (const auto& [e, c] : terms_) {
        std::size_t deg = 0;
        for (auto i : subset) deg += e[i];
        if (out.size() <= deg) out.resize(deg + 1, Polynomial(nvars_));
        out[deg].add_term(e, c);
    }
    return out;
}

namespace {

using TermRef = const std::pair<const Exponents, Rational>*;

// Nested Horner evaluation over variables v, v+1, ...; dropping terms above max_degree early is
// exact because every term has nonnegative degree.
Polynomial horner(const std::vector<TermRef>& terms, std::size_t v, const std::vector<Polynomial>& images,
                  std::size_t out_vars, int max_degree) {
    if (v == images.size()) {
        Rational c(0);
        for (TermRef t : terms) c += t->second;
        return Polynomial::constant(out_vars, c);
    }
    std::map<std::uint32_t, std::vector<TermRef>, std::greater<>> groups;
    for (TermRef t : terms) groups[t->first[v]].push_back(t);
    Polynomial acc(out_vars);
    std::uint32_t prev = groups.begin()->first;
    for (const auto& [k, group] : groups) {
        for (std::uint32_t step = k; step < prev; ++step)
            acc = Polynomial::multiply_truncated(acc, images[v], max_degree);
        acc += horner(group, v + 1, images, out_vars, max_degree);
        prev = k;
    }
    for (std::uint32_t step = 0; step < prev; ++step) acc = Polynomial::multiply_truncated(acc, images[v], max_degree);
    return acc;
}

Polynomial horner_substitute(const Polynomial& p, const std::vector<Polynomial>& images, std::size_t out_vars,
                             int max_degree) {
    if (p.is_zero()) return Polynomial(out_vars);
    std::vector<TermRef> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) terms.push_back(&t);
    Polynomial r = horner(terms, 0, images, out_vars, max_degree);
    return max_degree >= 0 ? r.truncated(max_degree) : r;
}

}  // namespace

Polynomial Polynomial::substitute(std::span<const Polynomial> values, int max_degree) const {
    if (values.size() != nvars_) throw DimensionMismatch("substitution needs one value per variable");
    std::map<std::size_t, Polynomial> bindings;
    for (std::size_t i = 0; i < values.size(); ++i) bindings.emplace(i, values[i]);
    return substitute(bindings, max_degree);
}

Polynomial Polynomial::substitute(const std::map<std::size_t, Polynomial>& bindings, int max_degree) const {
    std::optional<std::size_t> target;
    for (const auto& [i, b] : bindings) {
        if (i >= nvars_) throw std::out_of_range("substitution binds a variable outside the ring");
        if (target && *target != b.nvars()) throw DimensionMismatch("bound polynomials live in different rings");
        target = b.nvars();
    }
    bool all_bound = true;
    for (std::size_t i = 0; i < nvars_ && all_bound; ++i)
        if (!bindings.contains(i) && depends_on(i)) all_bound = false;
    const std::size_t out_vars = target.value_or(nvars_);
    if (!all_bound && out_vars != nvars_)
        throw DimensionMismatch("partial substitution requires bindings in the same ring");

    std::vector<Polynomial> images;
    images.reserve(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
        auto it = bindings.find(i);
        if (it != bindings.end())
            images.push_back(it->second);
        else if (depends_on(i))
            images.push_back(variable(nvars_, i));
        else
            images.emplace_back(out_vars);
    }

    return horner_substitute(*this, images, out_vars, max_degree);
}

Polynomial Polynomial::embed(std::size_t new_nvars, std::span<const std::size_t> target) const {
    if (target.size() != nvars_) throw DimensionMismatch("embedding needs one target per variable");
    for (auto t : target)
        if (t >= new_nvars) throw std::out_of_range("embedding target outside the new ring");
    Polynomial r(new_nvars);
    for (const auto& [e, c] : terms_) {
        Exponents ne(new_nvars, 0);
        for (std::size_t i = 0; i < nvars_; ++i) ne[target[i]] += e[i];
        r.add_term(ne, c);
    }
    return r;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
    check_compatible(divisor);
    if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
    const Exponents& lead = divisor.leading_exponents();
    const Rational lead_coeff = divisor.terms_.rbegin()->second;
    Polynomial remainder = *this;
    Polynomial quotient(nvars_);
    while (!remainder.is_zero()) {
        const Exponents& re = remainder.leading_exponents();
        Exponents q(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (re[i] < lead[i]) return std::nullopt;
            q[i] = re[i] - lead[i];
        }
        const Rational qc = remainder.terms_.rbegin()->second / lead_coeff;
        Polynomial step = monomial(nvars_, q, qc);
        quotient += step;
        remainder -= step * divisor;
    }
    return quotient;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars_) throw DimensionMismatch("evaluation point has the wrong length");
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
        sum += t;
    }
    return sum;
}

}  // namespace nilmap

namespace nilmap {

std::optional<Polynomial> restrict_to(const Polynomial& p, std::span<const std::size_t> kept) {
    Polynomial out(kept.size());
    for (const auto& [e, c] : p.terms()) {
        Exponents ne(kept.size(), 0);
        std::uint32_t used = 0;
        for (std::size_t k = 0; k < kept.size(); ++k) {
            ne[k] = e.at(kept[k]);
            used += ne[k];
        }
        if (used != total_degree(e)) return std::nullopt;
        out.add_term(ne, c);
    }
    return out;
}

}  // namespace nilmap
