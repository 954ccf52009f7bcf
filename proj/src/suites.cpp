#include "nilmap/suites.hpp"

#include "nilmap/classification.hpp"
#include "nilmap/errors.hpp"
#include "nilmap/generators.hpp"
#include "nilmap/json_io.hpp"
#include "nilmap/tame.hpp"
#include "nilmap/text.hpp"

#include <algorithm>
#include <chrono>
#include <exception>

namespace nilmap::suites {

namespace {

using Clock = std::chrono::steady_clock;

class Recorder {
public:
    Recorder(std::string name, std::optional<double> limit = std::nullopt) : start_(Clock::now()) {
        result_.name = std::move(name);
        result_.time_limit = limit;
    }

    // Runs one instance; the check returns an empty string on success or the failure reason.
    template <class Check>
    void instance(Check&& check) {
        ++result_.instances;
        std::string reason;
        try {
            reason = check();
        } catch (const TheoremViolation& e) {
            reason = json_io::to_json(e).dump();
        } catch (const std::exception& e) {
            reason = std::string("exception: ") + e.what();
        }
        if (!reason.empty()) {
            if (result_.failures == 0) result_.first_failure = reason;
            ++result_.failures;
        }
    }

    bool failed() const { return result_.failures > 0; }

    SuiteResult finish() {
        result_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
        return result_;
    }

private:
    SuiteResult result_;
    Clock::time_point start_;
};

std::string describe(const std::string& reason, const PolyMap& h) { return reason + ": " + instance_json(h); }

std::string describe_pair(const std::string& reason, const Polynomial& u, const Polynomial& v) {
    return reason + ": u = " + format_polynomial(u) + ", v = " + format_polynomial(v);
}

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }

bool all_zero(const std::vector<Polynomial>& ps) {
    return std::all_of(ps.begin(), ps.end(), [](const Polynomial& p) { return p.is_zero(); });
}

}  // namespace

SuiteResult nilpotency_oracle(std::uint64_t seed) {
    Recorder rec("nilpotency oracle agreement", 60.0);
    gen::Engine rng(seed);
    auto agree = [](const PolyMap& h) -> std::string {
        return is_nilpotent(h) == is_nilpotent_bruteforce(h) ? "" : describe("oracles disagree", h);
    };
    for (int i = 0; i < 500; ++i) {
        const PolyMap h = gen::random_map(rng, 2 + i % 3, 3, 3);
        rec.instance([&] { return agree(h); });
    }
    for (int i = 0; i < 200; ++i) {
        const PolyMap h = gen::random_nilpotent_member(rng, 2 + i % 4);
        rec.instance([&] {
            if (!is_nilpotent_bruteforce(h)) return describe("family member is not nilpotent", h);
            return agree(h);
        });
    }
    return rec.finish();
}

SuiteResult z_free_equations(std::uint64_t seed) {
    Recorder rec("z-free nilpotency equations");
    gen::Engine rng(seed);
    const std::size_t xy[] = {0, 1};
    for (int i = 0; i < 100; ++i) {
        const PolyMap h({gen::random_polynomial(rng, 3, 3, 4), gen::random_polynomial(rng, 3, 3, 4),
                         gen::random_polynomial(rng, 3, xy, 3, 4)});
        rec.instance([&]() -> std::string {
            const auto d = [&](std::size_t i, std::size_t j) { return h[i].derivative(j); };
            const Polynomial ux = d(0, 0), uy = d(0, 1), uz = d(0, 2), vx = d(1, 0), vy = d(1, 1), vz = d(1, 2);
            const Polynomial hx = d(2, 0), hy = d(2, 1);
            const Polynomial e1 = ux + vy;
            const Polynomial e2 = ux * vy - vx * uy - hx * uz - hy * vz;
            const Polynomial e3 = vx * hy * uz - hx * vy * uz + hx * uy * vz - ux * hy * vz;
            const auto report = nilpotency_equations(h);
            if (report.sigma.size() != 3) return describe("expected three equations", h);
            if (report.sigma[0] != e1 || report.sigma[1] != e2 || report.sigma[2] != e3)
                return describe("sigma differs from the hand-coded equations", h);
            return "";
        });
    }
    return rec.finish();
}

SuiteResult coefficient_comparison(std::uint64_t seed) {
    Recorder rec("coefficient comparison in z");
    gen::Engine rng(seed);
    const std::size_t xz[] = {0, 2}, x_only[] = {0};
    for (int i = 0; i < 100 && !rec.failed(); ++i) {
        const Polynomial u = gen::random_polynomial(rng, 3, 4, 5);
        const int dz = std::max(u.degree_in(2), 0);
        Polynomial g = gen::random_polynomial(rng, 3, x_only, 3, 2);
        if (dz > 0) g += gen::random_polynomial(rng, 3, xz, static_cast<unsigned>(dz), 3);
        // deg_z g <= total degree <= dz keeps deg_z v <= deg_z u.
        const Polynomial v = -u.derivative(0).antiderivative(1) + g;
        rec.instance([&]() -> std::string {
            if (!(u.derivative(0) + v.derivative(1)).is_zero()) return describe_pair("construction broke u_x + v_y = 0", u, v);
            return verify_lemma_2_1(u, v, 2) ? "" : describe_pair("coefficient identities failed", u, v);
        });
    }
    return rec.finish();
}

SuiteResult dependence_certificates(std::uint64_t seed) {
    Recorder rec("dependence certificates");
    gen::Engine rng(seed);
    for (int i = 0; i < 100; ++i) {
        const auto draw = gen::random_form_a_conjugate(rng);
        rec.instance([&]() -> std::string {
            const auto cert = certify_theorem_2_3(FormAInstance::from_map(draw.map));
            return certifies(cert, draw.map.components()) ? "" : describe("certificate does not vanish", draw.map);
        });
    }
    return rec.finish();
}

SuiteResult canonical_round_trip(std::uint64_t seed) {
    Recorder rec("canonical form round trip");
    gen::Engine rng(seed);
    for (int i = 0; i < 100; ++i) {
        const auto draw = gen::random_form_a_conjugate(rng);
        rec.instance([&]() -> std::string {
            const auto r = recognize_canonical_A(draw.map);
            if (!r) return describe("not recognized", draw.map);
            if (conjugate(build_canonical_A(r->params), r->transform.inverse()) != draw.map)
                return describe("recognized form does not recompose", draw.map);
            return "";
        });
    }
    return rec.finish();
}

SuiteResult form_b_system(std::uint64_t seed) {
    Recorder rec("form B nilpotency system");
    gen::Engine rng(seed);
    for (int i = 0; i < 200; ++i) {
        const auto form = gen::random_form_b(rng, 4 + i % 2, i % 2 == 0);
        rec.instance([&]() -> std::string {
            const bool vanish = all_zero(nilpotency_system_general(form));
            return vanish == is_nilpotent(form.map) ? "" : describe("system and nilpotency disagree", form.map);
        });
    }
    return rec.finish();
}

SuiteResult keller_equivalence(std::uint64_t seed) {
    Recorder rec("four dimensional Keller equivalence");
    gen::Engine rng(seed);
    for (int i = 0; i < 200; ++i) {
        const auto r = gen::random_reduced_4d(rng, i % 2 == 0);
        rec.instance([&]() -> std::string {
            return keller_parameterized_check(r) == is_nilpotent(r.realize())
                       ? ""
                       : describe("Keller check and nilpotency disagree", r.realize());
        });
    }
    return rec.finish();
}

SuiteResult four_dim_transform(std::uint64_t seed) {
    Recorder rec("four dimensional dependent transform");
    gen::Engine rng(seed);
    const std::size_t x_or_y[] = {0, 1}, y_only[] = {1};
    for (int i = 0; i < 100; ++i) {
        const Rational lambda = gen::random_integer(rng, 3);
        const bool nilpotent = i % 2 == 0;
        ReducedForm4D h;
        if (nilpotent) {
            // (z + p, w + lambda p, q, 0) in the coordinates y' = y + lambda x is nilpotent by
            // triangularity; pull back along y -> y - lambda x.
            const Polynomial p = gen::random_polynomial(rng, 2, y_only, 2, 2);
            const Polynomial q = gen::random_polynomial(rng, 2, y_only, 2, 2);
            const std::vector<Polynomial> back{var(2, 0), var(2, 1) - var(2, 0) * lambda};
            h.h1 = p.substitute(back);
            h.h2 = (p * lambda).substitute(back);
            h.h3 = q.substitute(back);
        } else {
            h.h1 = gen::random_polynomial(rng, 2, x_or_y, 2, 3);
            h.h2 = gen::random_polynomial(rng, 2, x_or_y, 2, 3);
            h.h3 = gen::random_polynomial(rng, 2, x_or_y, 2, 3);
        }
        h.h4 = h.h3 * lambda;
        rec.instance([&]() -> std::string {
            if (nilpotent && !is_nilpotent(h.realize())) return describe("constructed draw is not nilpotent", h.realize());
            const auto c = theorem_4_1_transform(h, lambda);
            std::vector<Polynomial> shift(4, Polynomial(4));
            shift[1] = var(4, 3);
            const PolyMap reduced = c.map - PolyMap(shift);
            if (!reduced[3].is_zero()) return describe("fourth component survives", h.realize());
            if (nilpotent && !is_nilpotent(reduced)) return describe("reduced map is not nilpotent", h.realize());
            return "";
        });
    }
    return rec.finish();
}

SuiteResult tameness(std::uint64_t seed) {
    Recorder rec("tame decomposition and inversion", 120.0);
    gen::Engine rng(seed);
    for (int i = 0; i < 50; ++i) {
        PolyMap h = PolyMap::zero(1);
        switch (i % 5) {
            case 0:
            case 1:
                h = gen::random_form_a_conjugate(rng).map;
                break;
            case 2:
                h = gen::random_form_b(rng, 4, true).map;
                break;
            case 3:
                h = gen::random_form_b(rng, 5, true).map;
                break;
            default:
                h = gen::reduction_instance(rng, 4 + (i / 5) % 2, gen::random_integer(rng, 3, true)).map;
                break;
        }
        const PolyMap id = PolyMap::identity(h.dimension());
        const PolyMap f = id + h;
        rec.instance([&]() -> std::string {
            const auto d = classify_and_decompose(f);
            if (compose_factorization(d.factorization) != f) return describe("factors do not recompose", h);
            const auto g = formal_inverse(f);
            if (!g) return describe("no formal inverse within the bound", h);
            if (compose_map(f, *g) != id || compose_map(*g, f) != id) return describe("inverse check failed", h);
            return "";
        });
    }
    return rec.finish();
}

SuiteResult conjugation_invariance(std::uint64_t seed) {
    Recorder rec("conjugation invariance");
    gen::Engine rng(seed);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + i % 3;
        PolyMap h = PolyMap::zero(n);
        switch (i % 4) {
            case 0:
                h = gen::random_map(rng, n, 3);
                break;
            case 1:
                h = gen::random_nilpotent_member(rng, n);
                break;
            case 2: {
                // Dependent by construction: the last component repeats a combination of the others.
                std::vector<Polynomial> comps = gen::random_map(rng, n, 2).components();
                comps[n - 1] = comps[0] * gen::random_integer(rng, 2) + comps[1] * gen::random_integer(rng, 2);
                h = PolyMap(std::move(comps));
                break;
            }
            default:
                h = gen::random_triangular_nilpotent(rng, n, 2);
                break;
        }
        const LinearMap t = gen::random_linear_map(rng, n);
        rec.instance([&]() -> std::string {
            const PolyMap g = conjugate(h, t);
            if (is_nilpotent(h) != is_nilpotent(g)) return describe("nilpotency changed under conjugation", h);
            if (linear_dependence(h.components()).has_value() != linear_dependence(g.components()).has_value())
                return describe("dependence changed under conjugation", h);
            return "";
        });
    }
    return rec.finish();
}

const std::vector<Suite>& all() {
    static const std::vector<Suite> suites{
        {"nilpotency-oracle", nilpotency_oracle},
        {"z-free-equations", z_free_equations},
        {"coefficient-comparison", coefficient_comparison},
        {"dependence-certificates", dependence_certificates},
        {"canonical-round-trip", canonical_round_trip},
        {"form-b-system", form_b_system},
        {"keller-equivalence", keller_equivalence},
        {"four-dim-transform", four_dim_transform},
        {"tameness", tameness},
        {"conjugation-invariance", conjugation_invariance},
    };
    return suites;
}

}  // namespace nilmap::suites
