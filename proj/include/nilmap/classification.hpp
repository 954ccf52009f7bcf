#pragma once

#include "nilmap/jacobian.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilmap {

// Whether operations whose hypotheses include "components linearly independent" check it.
// With Skip, a failed guarantee is reported as PreconditionError instead of TheoremViolation,
// since the theorem no longer applies.
enum class IndependencePolicy { Enforce, Skip };

enum class ReductionStatus { ExternalFormReached, Contradiction };
std::string to_string(ReductionStatus status);

// H = (u, v, h) in Q[x, y, z] with h free of z, deg_z v <= 1 and H(0) = 0.
struct FormAInstance {
    PolyMap map;
    std::size_t z_index = 2;

    static FormAInstance from_map(PolyMap map);
};

// H = (a2 h(s, z) + c1, -a1 h(s, z) + c2, 0) with s = a1 x + a2 y. a1, a2, c1, c2 live in Q[z]
// (one variable); h lives in Q[t, z] (t is variable 0).
struct CanonicalFormA {
    Polynomial a1{1}, a2{1}, c1{1}, c2{1};
    Polynomial h{2};

    friend bool operator==(const CanonicalFormA&, const CanonicalFormA&) = default;
};

PolyMap build_canonical_A(const CanonicalFormA& params);

struct CanonicalRecognition {
    LinearMap transform;  // conjugate(H, transform) == build_canonical_A(params)
    CanonicalFormA params;
};

std::optional<CanonicalRecognition> recognize_canonical_A(const PolyMap& h);

struct Conjugation {
    LinearMap transform;
    PolyMap map;  // conjugate(input, transform)
};

Conjugation triangularize_top_coefficients(const PolyMap& h);

DependenceCertificate certify_theorem_2_3(const FormAInstance& h);

struct Reduction {
    LinearMap transform;
    PolyMap map;
    ReductionStatus status = ReductionStatus::ExternalFormReached;
};

Reduction normalize_theorem_2_5(const FormAInstance& h, IndependencePolicy policy = IndependencePolicy::Enforce);

// H = (H1, b.x' + H2^(0)(x1, x2), H3(x1, x2), ..., Hn(x1, x2)) with x' = (x3, ..., xn).
struct GeneralizedFormB {
    PolyMap map;
    std::vector<Rational> b;                // b3..bn
    std::optional<std::vector<Rational>> a;  // a3..an when H1 = a.x' + H1^(0)(x1, x2)
    Polynomial h2_0;                         // H2^(0)
    Polynomial h1_0;                         // H1 with every term involving x' removed

    static GeneralizedFormB from_map(PolyMap map);

    std::size_t dimension() const { return map.dimension(); }
    // H2 free of x1 and H2^(0) in Q[x2].
    bool narrow() const;
    // sum b_i H_i and, when a is present, sum a_i H_i.
    Polynomial h2() const;
    Polynomial h1() const;
};

// Left sides of the four vanishing conditions on a nilpotent H of this shape:
//   E1 = H1x1 + H2x2
//   E2 = H2x2^2 + H1x2 H2x1 + sum_i H1xi Hix1 + h2x2
//   E3 = sum_i H1xi (H2x1 Hix2 - H2x2 Hix1) - (H1x1 h2x2 - H1x2 h2x1)
//   E4 = sum_i H1xi (Hix1 h2x2 - Hix2 h2x1)
// with i running over 3..n.
std::vector<Polynomial> nilpotency_system_general(const GeneralizedFormB& h);

int leading_part_bound_check(const GeneralizedFormB& h, IndependencePolicy policy = IndependencePolicy::Enforce);

Reduction reduce_theorem_3_3(const GeneralizedFormB& h, IndependencePolicy policy = IndependencePolicy::Enforce);

// h1..h4 in Q[x, y]; realized as the map (z + h1, w + h2, h3, h4) on Q^4.
struct ReducedForm4D {
    Polynomial h1{2}, h2{2}, h3{2}, h4{2};

    PolyMap realize() const;

    friend bool operator==(const ReducedForm4D&, const ReducedForm4D&) = default;
};

ReducedForm4D reduce_4d(const GeneralizedFormB& h);

Conjugation theorem_4_1_transform(const ReducedForm4D& h, const Rational& lambda);

// det J_{x,y}(x + t h1 - t^2 h3, y + t h2 - t^2 h4) == 1 in Q[x, y, t].
bool keller_parameterized_check(const ReducedForm4D& h);

// Serialized map for TheoremViolation payloads.
std::string instance_json(const PolyMap& h);

}  // namespace nilmap
