#include "nilmap/linalg.hpp"

#include "nilmap/errors.hpp"
#include "nilmap/kernels.hpp"

#include <algorithm>

namespace nilmap {

// ---------------------------------------------------------------- RationalMatrix

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw DimensionMismatch("matrix entries do not match the declared shape");
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
    if (rows.empty()) throw DimensionMismatch("matrix needs at least one row");
    RationalMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw DimensionMismatch("ragged matrix rows");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

RationalVector RationalMatrix::row(std::size_t r) const {
    return RationalVector(data_.begin() + static_cast<long>(r * cols_),
                          data_.begin() + static_cast<long>((r + 1) * cols_));
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

RationalVector RationalMatrix::apply(std::span<const Rational> v) const {
    if (v.size() != cols_) throw DimensionMismatch("vector length does not match matrix columns");
    RationalVector out(rows_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!(*this)(r, c).is_zero()) out[r] += (*this)(r, c) * v[c];
    return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    RationalMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a(r, k);
            if (x.is_zero()) continue;
            for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += x * b(k, c);
        }
    return out;
}

namespace {

// In-place reduced row echelon form; returns the pivot column of each pivot row.
std::vector<std::size_t> rref(RationalMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
        const Rational inv = m(row, col).inverse();
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            const Rational f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t RationalMatrix::rank() const {
    RationalMatrix copy = *this;
    return rref(copy).size();
}

Rational RationalMatrix::determinant() const {
    if (!is_square()) throw DimensionMismatch("determinant of a non-square matrix");
    RationalMatrix m = *this;
    Rational det(1);
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t p = col;
        while (p < rows_ && m(p, col).is_zero()) ++p;
        if (p == rows_) return Rational(0);
        if (p != col) {
            for (std::size_t c = 0; c < cols_; ++c) std::swap(m(p, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        const Rational inv = m(col, col).inverse();
        for (std::size_t r = col + 1; r < rows_; ++r) {
            if (m(r, col).is_zero()) continue;
            const Rational f = m(r, col) * inv;
            for (std::size_t c = col; c < cols_; ++c) m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

std::optional<RationalMatrix> RationalMatrix::inverse() const {
    if (!is_square()) return std::nullopt;
    const std::size_t n = rows_;
    RationalMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = (*this)(r, c);
        aug(r, n + r) = Rational(1);
    }
    const auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    RationalMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
    return inv;
}

std::vector<RationalVector> kernel(const RationalMatrix& m) {
    RationalMatrix reduced = m;
    const auto pivots = rref(reduced);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(m.cols(), Rational(0));
        v[free] = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---------------------------------------------------------------- LinearMap

LinearMap::LinearMap(RationalMatrix matrix) : matrix_(std::move(matrix)), inverse_(matrix_) {
    if (!matrix_.is_square()) throw DimensionMismatch("a linear map needs a square matrix");
    auto inv = matrix_.inverse();
    if (!inv) throw PreconditionError("linear map matrix is singular");
    inverse_ = std::move(*inv);
}

LinearMap LinearMap::identity(std::size_t n) {
    return LinearMap(RationalMatrix::identity(n), RationalMatrix::identity(n));
}

LinearMap LinearMap::inverse() const { return LinearMap(inverse_, matrix_); }

bool LinearMap::is_identity() const { return matrix_ == RationalMatrix::identity(dimension()); }

PolyMap LinearMap::as_poly_map() const {
    const std::size_t n = dimension();
    std::vector<Polynomial> comps;
    for (std::size_t r = 0; r < n; ++r) {
        Polynomial p(n);
        for (std::size_t c = 0; c < n; ++c)
            if (!matrix_(r, c).is_zero()) p += Polynomial::variable(n, c) * matrix_(r, c);
        comps.push_back(std::move(p));
    }
    return PolyMap(std::move(comps));
}

LinearMap operator*(const LinearMap& a, const LinearMap& b) {
    return LinearMap(a.matrix_ * b.matrix_, b.inverse_ * a.inverse_);
}

LinearMap elementary_permutation(std::size_t n, std::size_t i, std::size_t j) {
    if (i >= n || j >= n || i == j) throw std::out_of_range("P_n(i,j) needs distinct indices in range");
    RationalMatrix m = RationalMatrix::identity(n);
    m(i, i) = Rational(0);
    m(j, j) = Rational(0);
    m(i, j) = Rational(1);
    m(j, i) = Rational(1);
    return LinearMap(m);
}

LinearMap elementary_row_add(std::size_t n, std::size_t i, const Rational& a, std::size_t j) {
    if (i >= n || j >= n || i == j) throw std::out_of_range("P_n(i(a),j) needs distinct indices in range");
    RationalMatrix m = RationalMatrix::identity(n);
    m(j, i) = a;
    return LinearMap(m);
}

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, Polynomial(nvars)) {}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
    : rows_(rows), cols_(cols), nvars_(entries.empty() ? 0 : entries.front().nvars()), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw DimensionMismatch("matrix entries do not match the declared shape");
    for (const auto& p : data_)
        if (p.nvars() != nvars_) throw DimensionMismatch("matrix entries live in different rings");
}

PolyMatrix PolyMatrix::identity(std::size_t n, std::size_t nvars) {
    PolyMatrix m(n, n, nvars);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial::constant(nvars, Rational(1));
    return m;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    PolyMatrix out(rows.size(), cols.size(), nvars_);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = (*this)(rows[r], cols[c]);
    return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) { return kernels::multiply_parallel(a, b); }

Polynomial poly_det_cofactor(const PolyMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Polynomial::constant(m.nvars(), Rational(1));
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Polynomial det(m.nvars());
    std::vector<std::size_t> rest_rows;
    for (std::size_t r = 1; r < n; ++r) rest_rows.push_back(r);
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c).is_zero()) continue;
        std::vector<std::size_t> rest_cols;
        for (std::size_t k = 0; k < n; ++k)
            if (k != c) rest_cols.push_back(k);
        Polynomial term = m(0, c) * poly_det_cofactor(m.submatrix(rest_rows, rest_cols));
        if (c % 2 == 0)
            det += term;
        else
            det -= term;
    }
    return det;
}

Polynomial poly_det_bareiss(const PolyMatrix& input) {
    if (!input.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = input.rows();
    if (n == 0) return Polynomial::constant(input.nvars(), Rational(1));
    PolyMatrix m = input;
    Polynomial previous = Polynomial::constant(m.nvars(), Rational(1));
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m(p, k).is_zero()) ++p;
            if (p == n) return Polynomial(m.nvars());
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                auto q = num.divide_exact(previous);
                if (!q) throw ConstructionMismatch("Bareiss step left a non-exact quotient");
                m(i, j) = std::move(*q);
            }
            m(i, k) = Polynomial(m.nvars());
        }
        previous = m(k, k);
    }
    Polynomial det = m(n - 1, n - 1);
    return negate ? -det : det;
}

Polynomial poly_det(const PolyMatrix& m) { return m.rows() <= 4 ? poly_det_cofactor(m) : poly_det_bareiss(m); }

Polynomial principal_minor_sum(const PolyMatrix& m, std::size_t k) { return kernels::principal_minor_sum_parallel(m, k); }

std::size_t poly_matrix_rank(const PolyMatrix& input) {
    PolyMatrix m = input;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::optional<std::size_t> pivot;
        for (std::size_t r = rank; r < m.rows(); ++r) {
            if (m(r, col).is_zero()) continue;
            if (!pivot) {
                pivot = r;
                continue;
            }
            const auto& best = m(*pivot, col);
            const auto& cand = m(r, col);
            if (cand.total_degree() < best.total_degree() ||
                (cand.total_degree() == best.total_degree() && cand.size() < best.size()))
                pivot = r;
        }
        if (!pivot) continue;
        if (*pivot != rank)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(*pivot, c), m(rank, c));
        const Polynomial p = m(rank, col);
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            if (m(r, col).is_zero()) continue;
            const Polynomial f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) = p * m(r, c) - f * m(rank, c);
        }
        ++rank;
    }
    return rank;
}

}  // namespace nilmap
