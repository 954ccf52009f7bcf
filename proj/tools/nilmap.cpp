// nilmap: command-line front end for the nilpotent-Jacobian toolkit.
//
// Exit codes: 0 success or property holds, 1 property false, 2 parse/validation error,
// 3 TheoremViolation, 4 internal construction mismatch.

#include "nilmap/classification.hpp"
#include "nilmap/errors.hpp"
#include "nilmap/json_io.hpp"
#include "nilmap/suites.hpp"
#include "nilmap/tame.hpp"
#include "nilmap/text.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace nilmap;
using json_io::json;

namespace {

enum Exit { Ok = 0, False = 1, Invalid = 2, Violation = 3, Internal = 4 };

struct Options {
    std::string file;
    std::string text;
    bool json = false;
    std::uint64_t seed = 20240601;
    std::optional<int> degree_bound;
    std::string alias;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string read_input(const Options& o) {
    if (!o.text.empty()) return o.text;
    std::stringstream buf;
    if (!o.file.empty() && o.file != "-") {
        std::ifstream in(o.file);
        if (!in) throw UsageError("cannot read '" + o.file + "'");
        buf << in.rdbuf();
    } else {
        buf << std::cin.rdbuf();
    }
    return buf.str();
}

VarNames names_for(const Options& o, std::size_t n) {
    return o.alias.empty() ? VarNames::standard(n) : VarNames::from_alias(o.alias, n);
}

PolyMap read_map(const Options& o) {
    return parse_map(read_input(o), std::nullopt, o.alias.empty() ? std::nullopt : std::optional<std::string>(o.alias));
}

void emit(const Options& o, const json& j, const std::string& plain) {
    if (o.json)
        std::cout << j.dump(2) << '\n';
    else
        std::cout << plain;
}

std::string matrix_text(const RationalMatrix& m) {
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += "  [";
        for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? ", " : "") + m(r, c).to_string();
        out += "]\n";
    }
    return out;
}

std::string map_lines(const PolyMap& map, const VarNames& names) {
    std::string out;
    for (std::size_t i = 0; i < map.dimension(); ++i)
        out += "  H" + std::to_string(i + 1) + " = " + format_polynomial(map[i], names) + "\n";
    return out;
}

// "a,b;c,d" or "a,b c,d" with rational entries.
RationalMatrix parse_matrix(std::string text) {
    std::replace(text.begin(), text.end(), ';', ' ');
    std::vector<RationalVector> rows;
    std::stringstream rs(text);
    std::string row;
    while (rs >> row) {
        RationalVector r;
        std::stringstream cs(row);
        std::string cell;
        while (std::getline(cs, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t"), e = cell.find_last_not_of(" \t");
            if (b == std::string::npos) throw UsageError("empty matrix entry");
            r.push_back(Rational::parse(cell.substr(b, e - b + 1)));
        }
        if (!rows.empty() && r.size() != rows[0].size()) throw UsageError("matrix rows differ in length");
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw UsageError("empty matrix");
    return RationalMatrix::from_rows(rows);
}

int cmd_jacobian(const Options& o) {
    const PolyMap h = read_map(o);
    const VarNames names = names_for(o, h.dimension());
    const PolyMatrix j = jacobian(h);
    std::string plain;
    for (std::size_t r = 0; r < j.rows(); ++r) {
        plain += "  [";
        for (std::size_t c = 0; c < j.cols(); ++c) plain += (c ? ", " : "") + format_polynomial(j(r, c), names);
        plain += "]\n";
    }
    emit(o, json{{"jacobian", json_io::to_json(j, names)}}, plain);
    return Ok;
}

int cmd_nilpotent(const Options& o) {
    const PolyMap h = read_map(o);
    const VarNames names = names_for(o, h.dimension());
    const auto report = nilpotency_equations(h);
    std::string plain = report.nilpotent ? "nilpotent\n" : "not nilpotent\n";
    for (std::size_t k = 0; k < report.sigma.size(); ++k)
        plain += "  sigma_" + std::to_string(k + 1) + " = " + format_polynomial(report.sigma[k], names) + "\n";
    emit(o, json_io::to_json(report, names), plain);
    return report.nilpotent ? Ok : False;
}

int cmd_rank(const Options& o) {
    const PolyMap h = read_map(o);
    const auto r = poly_matrix_rank(jacobian(h));
    emit(o, json{{"rank", r}}, "rank " + std::to_string(r) + "\n");
    return Ok;
}

int cmd_depend(const Options& o) {
    const PolyMap h = read_map(o);
    const auto cert = linear_dependence(h.components());
    if (!cert) {
        emit(o, json{{"dependent", false}}, "independent\n");
        return False;
    }
    json j = json_io::to_json(*cert);
    j["dependent"] = true;
    std::string plain = "dependent: (";
    for (std::size_t i = 0; i < cert->coefficients.size(); ++i) plain += (i ? ", " : "") + cert->coefficients[i].to_string();
    emit(o, j, plain + ")\n");
    return Ok;
}

int cmd_conjugate(const Options& o, const std::string& matrix) {
    const PolyMap h = read_map(o);
    const LinearMap t(parse_matrix(matrix));
    if (t.matrix().rows() != h.dimension()) throw DimensionMismatch("transform size differs from the map dimension");
    const PolyMap g = conjugate(h, t);
    const VarNames names = names_for(o, h.dimension());
    emit(o, json{{"T", json_io::to_json(t.matrix())}, {"map", json_io::to_json(g, names)}}, map_lines(g, names));
    return Ok;
}

bool is_form_a_shape(const PolyMap& h) {
    return h.dimension() == 3 && !h[2].depends_on(2) && h[1].degree_in(2) <= 1;
}

int cmd_classify(const Options& o) {
    const PolyMap h = read_map(o);
    const std::size_t n = h.dimension();
    const VarNames names = names_for(o, n);
    const auto report = nilpotency_equations(h);
    if (!report.nilpotent) {
        json j{{"nilpotent", false}, {"witness", json_io::to_json(report, names)["witness"]}};
        emit(o, j,
             "not nilpotent: sigma_" + std::to_string(report.witness->first) + " = " +
                 format_polynomial(report.witness->second, names) + "\n");
        return False;
    }

    json j{{"nilpotent", true}};
    std::string plain = "nilpotent\n";
    if (const auto cert = linear_dependence(h.components())) {
        j["certificates"]["dependence"] = json_io::to_json(*cert)["coefficients"];
    } else {
        j["certificates"]["dependence"] = nullptr;
    }

    auto put_transform = [&](const std::string& family, const std::string& status, const LinearMap& t, const PolyMap& g) {
        j["family"] = family;
        j["status"] = status;
        j["T"] = json_io::to_json(t.matrix());
        j["map"] = json_io::to_json(g, names);
        plain += "family " + family + ", status " + status + "\nT =\n" + matrix_text(t.matrix()) + "conjugated map:\n" +
                 map_lines(g, names);
    };

    auto attempt = [](auto&& fn) {
        try {
            return fn();
        } catch (const PreconditionError&) {
            return false;
        }
    };
    const bool done =
        (n == 3 && attempt([&] {
             auto rec = recognize_canonical_A(h);
             if (!rec) return false;
             put_transform("form-A", "canonical", rec->transform, build_canonical_A(rec->params));
             j["params"] = json_io::to_json(rec->params);
             return true;
         })) ||
        (is_form_a_shape(h) && h.fixes_origin() &&
         (attempt([&] {
              const auto r = normalize_theorem_2_5(FormAInstance::from_map(h), IndependencePolicy::Skip);
              put_transform("form-A", to_string(r.status), r.transform, r.map);
              return true;
          }) ||
          attempt([&] {
              const auto cert = certify_theorem_2_3(FormAInstance::from_map(h));
              j["certificates"]["dependence"] = json_io::to_json(cert)["coefficients"];
              put_transform("form-A", "dependent", LinearMap::identity(n), h);
              return true;
          }))) ||
        (n >= 3 && attempt([&] {
             const auto r = reduce_theorem_3_3(GeneralizedFormB::from_map(h), IndependencePolicy::Skip);
             put_transform("form-B", to_string(r.status), r.transform, r.map);
             return true;
         })) ||
        attempt([&] {
            auto t = linear_triangularization(h);
            if (!t) return false;
            put_transform("general", "triangularizable", *t, conjugate(h, *t));
            return true;
        });
    if (!done) {
        j["family"] = "general";
        j["status"] = "unclassified";
        plain += "family general, status unclassified\n";
    }
    emit(o, j, plain);
    return Ok;
}

int cmd_build_canonical(const Options& o, const std::vector<std::string>& parts) {
    const VarNames z = VarNames::from_alias("z", 1), tz = VarNames::from_alias("tz", 2);
    CanonicalFormA p{parse_polynomial(parts[0], z), parse_polynomial(parts[1], z), parse_polynomial(parts[2], z),
                     parse_polynomial(parts[3], z), parse_polynomial(parts[4], tz)};
    const PolyMap h = build_canonical_A(p);
    const VarNames names = names_for(o, 3);
    emit(o, json{{"params", json_io::to_json(p)}, {"map", json_io::to_json(h, names)}}, format_map(h, names) + "\n");
    return Ok;
}

int cmd_invert(const Options& o) {
    const PolyMap f = read_map(o);
    const VarNames names = names_for(o, f.dimension());
    const auto g = formal_inverse(f, o.degree_bound);
    if (!g) {
        emit(o, json{{"invertible", false}}, "no polynomial inverse within the degree bound\n");
        return False;
    }
    emit(o, json{{"invertible", true}, {"inverse", json_io::to_json(*g, names)}}, format_map(*g, names) + "\n");
    return Ok;
}

int cmd_decompose(const Options& o) {
    const PolyMap f = read_map(o);
    const VarNames names = names_for(o, f.dimension());
    ClassifiedDecomposition d;
    try {
        d = classify_and_decompose(f);
    } catch (const NotTriangularizable& e) {
        emit(o, json{{"tame", false}, {"reason", e.what()}}, std::string("not decomposed: ") + e.what() + "\n");
        return False;
    }
    json j = json_io::to_json(d.factorization, names);
    j["route"] = d.route;
    j["tame"] = true;
    std::string plain = "route " + d.route + ", " + std::to_string(d.factorization.factors.size()) + " factors\n";
    for (const auto& factor : d.factorization.factors) {
        if (const auto* e = std::get_if<ElementaryMap>(&factor))
            plain += "  elementary " + names[e->index()] + " += " + format_polynomial(e->q(), names) + "\n";
        else
            plain += "  linear\n" + matrix_text(std::get<LinearMap>(factor).matrix());
    }
    emit(o, j, plain);
    return Ok;
}

int cmd_keller4d(const Options& o, const std::optional<std::string>& lambda_text) {
    const PolyMap h = read_map(o);
    if (h.dimension() != 4) throw ShapeError("keller4d needs a map (z + h1, w + h2, h3, h4) in four variables");
    const std::size_t xy[] = {0, 1};
    const Polynomial z = Polynomial::variable(4, 2), w = Polynomial::variable(4, 3);
    ReducedForm4D r;
    Polynomial* slots[] = {&r.h1, &r.h2, &r.h3, &r.h4};
    const Polynomial parts[] = {h[0] - z, h[1] - w, h[2], h[3]};
    for (std::size_t i = 0; i < 4; ++i) {
        auto p = restrict_to(parts[i], xy);
        if (!p) throw ShapeError("h" + std::to_string(i + 1) + " must lie in Q[x, y]");
        *slots[i] = *p;
    }
    const bool keller = keller_parameterized_check(r);
    const bool nilpotent = is_nilpotent(h);
    json j{{"keller", keller}, {"nilpotent", nilpotent}, {"reduced", json_io::to_json(r)}};
    std::string plain = std::string("Keller over Q[t]: ") + (keller ? "yes" : "no") + "\nnilpotent: " + (nilpotent ? "yes" : "no") + "\n";
    if (lambda_text) {
        const Rational lambda = Rational::parse(*lambda_text);
        const auto c = theorem_4_1_transform(r, lambda);
        const VarNames names = names_for(o, 4);
        j["transform"] = json_io::to_json(c, names);
        plain += "T =\n" + matrix_text(c.transform.matrix()) + "conjugated map:\n" + map_lines(c.map, names);
    }
    emit(o, j, plain);
    return keller ? Ok : False;
}

int cmd_verify(const Options& o, const std::string& only) {
    json results = json::array();
    std::string plain;
    bool all_passed = true, matched = false;
    for (const auto& suite : suites::all()) {
        if (!only.empty() && suite.name != only) continue;
        matched = true;
        const auto r = suite.run(o.seed);
        all_passed = all_passed && r.passed();
        // Timings go to stderr so stdout depends only on the seed.
        std::cerr << suite.name << ": " << r.seconds << " s\n";
        json entry{{"suite", suite.name}, {"passed", r.passed()}, {"instances", r.instances}, {"failures", r.failures}};
        if (!r.first_failure.empty()) entry["first_failure"] = r.first_failure;
        results.push_back(std::move(entry));
        std::ostringstream line;
        line << (r.passed() ? "PASS " : "FAIL ") << suite.name << ": " << r.instances << " instances, " << r.failures
             << " failures\n";
        plain += line.str();
        if (!r.first_failure.empty()) plain += "  " + r.first_failure + "\n";
    }
    if (!matched) throw UsageError("unknown suite '" + only + "'");
    emit(o, json{{"seed", o.seed}, {"passed", all_passed}, {"suites", std::move(results)}}, plain);
    return all_passed ? Ok : False;
}

int report_error(const Options& o, int code, const std::string& kind, const std::string& message) {
    if (o.json)
        std::cout << json{{"error", kind}, {"message", message}}.dump(2) << '\n';
    else
        std::cerr << "nilmap: " << message << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact toolkit for polynomial maps with nilpotent Jacobian"};
    app.require_subcommand(1);
    Options o;
    std::string matrix, suite;
    std::vector<std::string> canonical(5);
    std::optional<std::string> lambda;

    auto input_opts = [&](CLI::App* sub) {
        sub->add_option("-f,--file", o.file, "map file ('-' for stdin)");
        sub->add_option("map", o.text, "map text, components separated by ';'");
        sub->add_option("--var-alias", o.alias, "one letter per variable, e.g. xyzw");
    };
    app.add_flag("--json", o.json, "machine-readable output");
    app.add_option("--seed", o.seed, "seed for randomized suites");
    app.add_option("--degree-bound", o.degree_bound, "inverse degree bound");

    std::map<std::string, std::function<int()>> handlers;
    auto add = [&](const std::string& name, const std::string& help, std::function<int()> fn, bool takes_map = true) {
        CLI::App* sub = app.add_subcommand(name, help);
        if (takes_map) input_opts(sub);
        sub->add_flag("--json", o.json, "machine-readable output");
        handlers[name] = std::move(fn);
        return sub;
    };
    add("jacobian", "print the Jacobian matrix", [&] { return cmd_jacobian(o); });
    add("nilpotent", "principal minor sums and nilpotency", [&] { return cmd_nilpotent(o); });
    add("rank", "rank of the Jacobian over Q(x)", [&] { return cmd_rank(o); });
    add("depend", "linear dependence certificate of the components", [&] { return cmd_depend(o); });
    add("conjugate", "T^-1 H(T x)", [&] { return cmd_conjugate(o, matrix); })
        ->add_option("-t,--transform", matrix, "rows separated by ';' or spaces, entries by ','")
        ->required();
    add("classify", "classify a nilpotent map and report the conjugation", [&] { return cmd_classify(o); });
    CLI::App* build = add("build-canonical", "build (a2 h(s, z) + c1, -a1 h(s, z) + c2, 0)",
                          [&] { return cmd_build_canonical(o, canonical); }, false);
    build->add_option("--a1", canonical[0], "a1(z)")->default_val("1");
    build->add_option("--a2", canonical[1], "a2(z)")->default_val("1");
    build->add_option("--c1", canonical[2], "c1(z)")->default_val("0");
    build->add_option("--c2", canonical[3], "c2(z)")->default_val("0");
    build->add_option("--poly", canonical[4], "h(t, z)")->required();
    build->add_option("--var-alias", o.alias, "output variable names");
    add("invert", "polynomial inverse of F = x + H", [&] { return cmd_invert(o); })
        ->add_option("--degree-bound", o.degree_bound, "inverse degree bound");
    add("decompose", "tame factorization of F = x + H", [&] { return cmd_decompose(o); });
    add("keller4d", "Keller check for (z + h1, w + h2, h3, h4)", [&] { return cmd_keller4d(o, lambda); })
        ->add_option("--lambda", lambda, "apply the transform for h4 = lambda h3");
    CLI::App* verify = add("verify", "run the randomized property suites", [&] { return cmd_verify(o, suite); }, false);
    verify->add_option("--suite", suite, "run a single suite");
    verify->add_option("--seed", o.seed, "seed for randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Invalid;
    }

    try {
        for (const auto& [name, fn] : handlers)
            if (app.got_subcommand(name)) return fn();
    } catch (const TheoremViolation& e) {
        if (o.json)
            std::cout << json_io::to_json(e).dump(2) << '\n';
        else
            std::cerr << "nilmap: theorem violation in " << e.result() << ": " << e.what() << "\ninstance: " << e.instance()
                      << '\n';
        return Violation;
    } catch (const ParseError& e) {
        return report_error(o, Invalid, "ParseError", e.what());
    } catch (const std::invalid_argument& e) {
        return report_error(o, Invalid, "InvalidInput", e.what());
    } catch (const std::out_of_range& e) {
        return report_error(o, Invalid, "InvalidInput", e.what());
    } catch (const ConstructionMismatch& e) {
        return report_error(o, Internal, "ConstructionMismatch", e.what());
    } catch (const std::exception& e) {
        return report_error(o, Internal, "Error", e.what());
    }
    return Invalid;
}
