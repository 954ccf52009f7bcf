#include "nilmap/text.hpp"

#include "nilmap/errors.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

namespace nilmap {

VarNames VarNames::indexed(std::size_t nvars) {
    VarNames v;
    for (std::size_t i = 0; i < nvars; ++i) v.names_.push_back("x" + std::to_string(i + 1));
    return v;
}

VarNames VarNames::standard(std::size_t nvars) {
    if (nvars > 4) return indexed(nvars);
    return from_alias("xyzw", nvars);
}

VarNames VarNames::from_alias(std::string_view letters, std::size_t nvars) {
    if (letters.size() < nvars)
        throw std::invalid_argument("alias string '" + std::string(letters) + "' names fewer than " +
                                    std::to_string(nvars) + " variables");
    VarNames v;
    for (std::size_t i = 0; i < nvars; ++i) {
        if (!std::isalpha(static_cast<unsigned char>(letters[i])))
            throw std::invalid_argument("variable aliases must be letters");
        v.names_.emplace_back(1, letters[i]);
    }
    return v;
}

std::optional<std::size_t> VarNames::lookup(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    if (name.size() >= 2 && name[0] == 'x') {
        std::size_t idx = 0;
        for (char c : name.substr(1)) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            idx = idx * 10 + static_cast<std::size_t>(c - '0');
            if (idx > names_.size()) return std::nullopt;
        }
        if (name[1] != '0' && idx >= 1 && idx <= names_.size()) return idx - 1;
    }
    return std::nullopt;
}

namespace {

std::string format_monomial(const Exponents& e, const VarNames& names) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += names[i];
        if (e[i] > 1) out += '^' + std::to_string(e[i]);
    }
    return out;
}

}  // namespace

std::string format_polynomial(const Polynomial& p, const VarNames& names) {
    if (names.size() != p.nvars()) throw DimensionMismatch("variable names do not match the ring");
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        const bool negative = c.sign() < 0;
        const Rational mag = c.abs();
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        const std::string mono = format_monomial(e, names);
        if (mono.empty())
            out += mag.to_string();
        else if (mag.is_one())
            out += mono;
        else
            out += mag.to_string() + "*" + mono;
    }
    return out;
}

std::string format_polynomial(const Polynomial& p) { return format_polynomial(p, VarNames::standard(p.nvars())); }

std::string format_map(const PolyMap& map, const VarNames& names) {
    std::string out;
    for (std::size_t i = 0; i < map.dimension(); ++i) {
        if (i > 0) out += "; ";
        out += format_polynomial(map[i], names);
    }
    return out;
}

std::string format_map(const PolyMap& map) { return format_map(map, VarNames::standard(map.dimension())); }

namespace {

// Recursive-descent parser over a text buffer; tracks line/column for diagnostics.
class Parser {
public:
    Parser(std::string_view text, const VarNames& names) : text_(text), names_(names) {}

    Polynomial parse_component() {
        skip_space();
        if (at_end() || peek() == ';') fail("expected a polynomial");
        Polynomial p = expr();
        skip_space();
        return p;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (!at_end()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) {
                advance();
            } else if (peek() == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

private:
    std::size_t nvars() const { return names_.size(); }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            skip_space();
            if (at_end()) return acc;
            const char c = peek();
            if (c != '+' && c != '-') return acc;
            advance();
            Polynomial rhs = term();
            if (c == '+')
                acc += rhs;
            else
                acc -= rhs;
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        for (;;) {
            skip_space();
            if (at_end() || peek() != '*') return acc;
            advance();
            acc *= unary();
        }
    }

    Polynomial unary() {
        skip_space();
        if (!at_end() && (peek() == '-' || peek() == '+')) {
            const bool neg = peek() == '-';
            advance();
            Polynomial p = unary();
            return neg ? -p : p;
        }
        return power();
    }

    Polynomial power() {
        Polynomial base = primary();
        skip_space();
        if (at_end() || peek() != '^') return base;
        advance();
        skip_space();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected a non-negative integer exponent after '^'");
        const std::string digits = read_digits();
        if (digits.size() > 6) fail("exponent too large");
        return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }

    std::string read_digits() {
        std::string s;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            s += peek();
            advance();
        }
        return s;
    }

    Polynomial primary() {
        skip_space();
        if (at_end()) fail("unexpected end of input");
        const char c = peek();
        if (c == '(') {
            advance();
            Polynomial inner = expr();
            skip_space();
            if (at_end() || peek() != ')') fail("expected ')'");
            advance();
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string lit = read_digits();
            if (!at_end() && peek() == '/') {
                advance();
                if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
                    fail("expected a denominator after '/' (division is only allowed in rational literals)");
                const auto l = line_;
                const auto col = col_;
                const std::string den = read_digits();
                if (den.find_first_not_of('0') == std::string::npos) throw ParseError("zero denominator", l, col);
                lit += "/" + den;
            }
            return Polynomial::constant(nvars(), Rational::parse(lit));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const auto l = line_;
            const auto col = col_;
            std::string name;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
                name += peek();
                advance();
            }
            auto idx = names_.lookup(name);
            if (!idx) throw ParseError("unknown variable '" + name + "'", l, col);
            return Polynomial::variable(nvars(), *idx);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    const VarNames& names_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

std::size_t count_components(std::string_view text) {
    std::size_t separators = 0;
    bool in_comment = false;
    bool trailing_content = false;
    for (char c : text) {
        if (in_comment) {
            if (c == '\n') in_comment = false;
            continue;
        }
        if (c == '#') {
            in_comment = true;
        } else if (c == ';') {
            ++separators;
            trailing_content = false;
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            trailing_content = true;
        }
    }
    return separators + (trailing_content ? 1 : 0);
}

VarNames names_for(std::size_t n, const std::optional<std::string>& alias) {
    if (alias) return VarNames::from_alias(*alias, n);
    return VarNames::standard(n);
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VarNames& names) {
    Parser parser(text, names);
    Polynomial p = parser.parse_component();
    if (!parser.at_end()) parser.fail(std::string("unexpected '") + parser.peek() + "'");
    return p;
}

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
    return parse_polynomial(text, VarNames::standard(nvars));
}

PolyMap parse_map(std::string_view text, std::optional<std::size_t> expected_dimension,
                  std::optional<std::string> alias) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("invalid JSON map document: ") + e.what(), 1, e.byte);
        }
        if (!doc.contains("components") || !doc["components"].is_array())
            throw ParseError("JSON map document needs a \"components\" array", 1, 1);
        const auto& comps = doc["components"];
        const std::size_t n = doc.contains("n") ? doc["n"].get<std::size_t>() : comps.size();
        if (comps.size() != n)
            throw ParseError("\"n\" is " + std::to_string(n) + " but " + std::to_string(comps.size()) +
                                 " components were given",
                             1, 1);
        if (expected_dimension && *expected_dimension != n)
            throw ParseError("expected " + std::to_string(*expected_dimension) + " components, found " +
                                 std::to_string(n),
                             1, 1);
        if (doc.contains("aliases") && !alias) alias = doc["aliases"].get<std::string>();
        const VarNames names = names_for(n, alias);
        std::vector<Polynomial> out;
        for (std::size_t i = 0; i < n; ++i) {
            try {
                out.push_back(parse_polynomial(comps[i].get<std::string>(), names));
            } catch (const ParseError& e) {
                throw ParseError("component " + std::to_string(i + 1) + ": " + e.what(), e.line(), e.column());
            }
        }
        return PolyMap(std::move(out));
    }

    const std::size_t n = count_components(text);
    if (n == 0) throw ParseError("empty map", 1, 1);
    if (expected_dimension && *expected_dimension != n)
        throw ParseError("expected " + std::to_string(*expected_dimension) + " components, found " +
                             std::to_string(n),
                         1, 1);
    const VarNames names = names_for(n, alias);
    Parser parser(text, names);
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(parser.parse_component());
        if (parser.at_end()) break;
        if (parser.peek() != ';') parser.fail(std::string("unexpected '") + parser.peek() + "'");
        parser.advance();
    }
    parser.skip_space();
    if (!parser.at_end()) parser.fail("trailing input after the last component");
    if (out.size() != n) throw ParseError("missing component", 1, 1);
    return PolyMap(std::move(out));
}

}  // namespace nilmap
