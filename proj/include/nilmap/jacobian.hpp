#pragma once

#include "nilmap/linalg.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace nilmap {

// Entry (i, j) = dH_i / dx_j.
PolyMatrix jacobian(const PolyMap& h);
// Jacobian of the given polynomials with respect to the listed variables only.
PolyMatrix jacobian(std::span<const Polynomial> components, std::span<const std::size_t> variables);

struct NilpotencyReport {
    std::vector<Polynomial> sigma;  // sigma[k-1] = sum of principal k x k minors
    bool nilpotent = true;
    // First nonvanishing (k, sigma_k) when not nilpotent.
    std::optional<std::pair<std::size_t, Polynomial>> witness;
};

NilpotencyReport nilpotency_report(const PolyMatrix& m);
NilpotencyReport nilpotency_equations(const PolyMap& h);

bool is_nilpotent(const PolyMatrix& m);
bool is_nilpotent(const PolyMap& h);
// J(H)^n computed by repeated serial matrix products.
bool is_nilpotent_bruteforce(const PolyMap& h);

// x -> T^{-1} H(T x).
PolyMap conjugate(const PolyMap& h, const LinearMap& t);
// x -> M H(x), the linear map applied after H.
PolyMap apply_linear(const RationalMatrix& m, const PolyMap& h);

struct DependenceCertificate {
    std::vector<Rational> coefficients;  // first nonzero entry is 1

    friend bool operator==(const DependenceCertificate&, const DependenceCertificate&) = default;
};

// A nonzero rational relation sum c_i p_i = 0, or nullopt if the p_i are independent.
std::optional<DependenceCertificate> linear_dependence(std::span<const Polynomial> components);
bool certifies(const DependenceCertificate& cert, std::span<const Polynomial> components);

struct CoefficientEquation {
    std::size_t source = 0;  // index into the source list
    std::size_t power = 0;   // power of the designated variable
    Polynomial equation;
};

struct CoefficientSystem {
    std::size_t variable = 0;
    std::vector<CoefficientEquation> equations;

    // Coefficient of variable^power in source identity `source` (zero if absent).
    Polynomial coefficient(std::size_t source, std::size_t power) const;
};

// Splits each source polynomial into its coefficients of powers of x_variable. Zero
// coefficients are dropped, so the system of a zero source is empty.
CoefficientSystem coefficient_system(std::span<const Polynomial> source, std::size_t variable);

// Checks u_jx = 0 for l < j <= d and u_ix + v_iy = 0 for i <= l, where d = deg_z u, l = deg_z v and
// (x, y) are the two lowest-index variables other than z. Throws PreconditionError unless
// u_x + v_y = 0 and deg_z v <= deg_z u.
bool verify_lemma_2_1(const Polynomial& u, const Polynomial& v, std::size_t zvar);

}  // namespace nilmap
