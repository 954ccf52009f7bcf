#pragma once

#include "nilmap/poly_map.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace nilmap {

using RationalVector = std::vector<Rational>;

class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols);
    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    RationalVector row(std::size_t r) const;

    RationalMatrix transpose() const;
    RationalVector apply(std::span<const Rational> v) const;
    std::size_t rank() const;
    Rational determinant() const;
    std::optional<RationalMatrix> inverse() const;

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> data_;
};

// Basis of the right null space {v : M v = 0}, read off the reduced row echelon form with one
// vector per free column (free entry 1). Empty iff M has full column rank.
std::vector<RationalVector> kernel(const RationalMatrix& m);

// Invertible linear change of coordinates x -> M x, with its exact inverse cached.
class LinearMap {
public:
    explicit LinearMap(RationalMatrix matrix);

    static LinearMap identity(std::size_t n);

    std::size_t dimension() const { return matrix_.rows(); }
    const RationalMatrix& matrix() const { return matrix_; }
    const RationalMatrix& inverse_matrix() const { return inverse_; }
    LinearMap inverse() const;
    bool is_identity() const;

    // The polynomial map x -> M x.
    PolyMap as_poly_map() const;

    // (this * other): first apply other, then this.
    friend LinearMap operator*(const LinearMap& a, const LinearMap& b);
    friend bool operator==(const LinearMap& a, const LinearMap& b) { return a.matrix_ == b.matrix_; }

private:
    LinearMap(RationalMatrix matrix, RationalMatrix inverse)
        : matrix_(std::move(matrix)), inverse_(std::move(inverse)) {}

    RationalMatrix matrix_;
    RationalMatrix inverse_;
};

// P_n(i, j): swap coordinates i and j (0-based, i != j). Self-inverse.
LinearMap elementary_permutation(std::size_t n, std::size_t i, std::size_t j);
// P_n(i(a), j): add a times row i to row j (0-based, i != j). Inverse is P_n(i(-a), j).
LinearMap elementary_row_add(std::size_t n, std::size_t i, const Rational& a, std::size_t j);

// Matrix with polynomial entries; all entries share one ambient ring.
class PolyMatrix {
public:
    PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);
    PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries);

    static PolyMatrix identity(std::size_t n, std::size_t nvars);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nvars() const { return nvars_; }
    bool is_square() const { return rows_ == cols_; }
    bool is_zero() const;

    Polynomial& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Polynomial& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    PolyMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::size_t nvars_;
    std::vector<Polynomial> data_;
};

// Exact determinant: cofactor expansion for n <= 4, fraction-free Bareiss elimination above.
Polynomial poly_det(const PolyMatrix& m);
Polynomial poly_det_cofactor(const PolyMatrix& m);
Polynomial poly_det_bareiss(const PolyMatrix& m);

// sigma_k: sum of all principal k x k minors (1 <= k <= n).
Polynomial principal_minor_sum(const PolyMatrix& m, std::size_t k);

// Rank over the fraction field Q(x1..xn).
std::size_t poly_matrix_rank(const PolyMatrix& m);

}  // namespace nilmap
