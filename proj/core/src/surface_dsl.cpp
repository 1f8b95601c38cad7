#include "minksurf/surface_dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>

namespace minksurf {

namespace {

std::optional<UnaryOp> lookup_function(std::string_view name) {
    if (name == "sin") return UnaryOp::Sin;
    if (name == "cos") return UnaryOp::Cos;
    if (name == "sinh") return UnaryOp::Sinh;
    if (name == "cosh") return UnaryOp::Cosh;
    if (name == "exp") return UnaryOp::Exp;
    if (name == "sqrt") return UnaryOp::Sqrt;
    if (name == "log") return UnaryOp::Log;
    return std::nullopt;
}

std::string located(const std::string& what, int line, int column) {
    return what + " at line " + std::to_string(line) + ", column " + std::to_string(column);
}

// Recursive-descent parser over one statement's text. Columns are reported
// relative to the full source line.
class ExprParser {
public:
    ExprParser(std::string_view text, int line, int column_offset)
        : text_(text), line_(line), offset_(column_offset) {}

    ExprPtr parse_expression() {
        ExprPtr lhs = parse_term();
        for (;;) {
            skip_space();
            if (peek() == '+' || peek() == '-') {
                const BinaryOp op = peek() == '+' ? BinaryOp::Add : BinaryOp::Sub;
                ++pos_;
                lhs = Expr::make_binary(op, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    /// Parses an expression that must not reference u, v or parameters.
    double parse_constant() {
        const std::size_t start = pos_;
        const ExprPtr e = parse_expression();
        try {
            return evaluate(*e, 0.0, 0.0, ParamMap{});
        } catch (const Error&) {
            throw SyntaxError("expected a numeric constant", line_, column(start));
        }
    }

    void expect(char c) {
        skip_space();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect_end() {
        skip_space();
        if (pos_ < text_.size()) fail("unexpected trailing input");
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw SyntaxError(message, line_, column(pos_));
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    int column(std::size_t pos) const { return offset_ + static_cast<int>(pos) + 1; }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        for (;;) {
            skip_space();
            if (peek() == '*' || peek() == '/') {
                const BinaryOp op = peek() == '*' ? BinaryOp::Mul : BinaryOp::Div;
                ++pos_;
                lhs = Expr::make_binary(op, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_unary() {
        skip_space();
        if (peek() == '-') {
            ++pos_;
            return Expr::make_unary(UnaryOp::Neg, parse_unary());
        }
        if (peek() == '+') {
            ++pos_;
            return parse_unary();
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        skip_space();
        if (peek() != '^') return base;
        ++pos_;
        skip_space();
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be an integer literal");
        int exponent = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            exponent = exponent * 10 + (peek() - '0');
            if (exponent > 1000) fail("exponent too large");
            ++pos_;
        }
        if (peek() == '.' || peek() == 'e' || peek() == 'E') fail("exponent must be an integer literal");
        return Expr::power(base, negative ? -exponent : exponent);
    }

    ExprPtr parse_primary() {
        skip_space();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            ExprPtr inner = parse_expression();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        if (c == '\0') fail("unexpected end of expression");
        fail(std::string("unexpected character '") + c + "'");
    }

    ExprPtr parse_number() {
        const std::size_t start = pos_;
        bool digits = false;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_, digits = true;
        if (peek() == '.') {
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_, digits = true;
        }
        if (!digits) fail("malformed number");
        if (peek() == 'e' || peek() == 'E') {
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        const std::string literal(text_.substr(start, pos_ - start));
        return Expr::constant(std::strtod(literal.c_str(), nullptr));
    }

    ExprPtr parse_identifier() {
        const std::size_t start = pos_;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        const auto fn = lookup_function(name);
        skip_space();
        if (peek() == '(') {
            if (!fn) {
                throw Error(ErrorKind::UnknownIdentifier,
                            located("unknown function '" + name + "'", line_, column(start)));
            }
            ++pos_;
            std::vector<ExprPtr> args;
            skip_space();
            if (peek() != ')') {
                args.push_back(parse_expression());
                while (accept(',')) args.push_back(parse_expression());
            }
            expect(')');
            if (args.size() != 1) {
                throw Error(ErrorKind::ArityError,
                            located(name + " takes 1 argument, got " + std::to_string(args.size()), line_,
                                    column(start)));
            }
            return Expr::make_unary(*fn, args.front());
        }
        if (fn) {
            throw Error(ErrorKind::ArityError,
                        located(name + " takes 1 argument, got 0", line_, column(start)));
        }
        if (name == "u" || name == "v") return Expr::variable(name);
        positions_.emplace_back(name, column(start));
        return Expr::parameter(name);
    }

public:
    // Parameter references with their columns, for later validation.
    std::vector<std::pair<std::string, int>> positions_;

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
    int offset_;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

struct ParamReference {
    std::string name;
    int line;
    int column;
};

}  // namespace

bool equal(const SurfaceSpec& a, const SurfaceSpec& b) {
    if (a.name != b.name || a.params != b.params || !(a.domain == b.domain) ||
        a.expected_tags != b.expected_tags || a.notes != b.notes) {
        return false;
    }
    for (std::size_t i = 0; i < 4; ++i) {
        if (!a.components[i] || !b.components[i] || !equal(*a.components[i], *b.components[i])) return false;
    }
    return true;
}

ExprPtr parse_expression(std::string_view text) {
    ExprParser parser(text, 1, 0);
    ExprPtr e = parser.parse_expression();
    parser.expect_end();
    return e;
}

SurfaceSpec parse_surface(std::string_view text) {
    SurfaceSpec spec;
    std::array<bool, 4> seen{};
    std::vector<ParamReference> references;
    int line_no = 0;
    int last_column = 1;

    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        std::string_view line = text.substr(line_start, line_end - line_start);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        last_column = static_cast<int>(line.size()) + 1;

        std::size_t stmt_start = 0;
        while (stmt_start <= line.size()) {
            std::size_t stmt_end = line.find(';', stmt_start);
            if (stmt_end == std::string_view::npos) stmt_end = line.size();
            const std::string_view stmt = line.substr(stmt_start, stmt_end - stmt_start);
            const int stmt_column = static_cast<int>(stmt_start);

            const std::size_t eq = stmt.find('=');
            std::string_view key = trim(stmt.substr(0, eq == std::string_view::npos ? stmt.size() : eq));
            if (!key.empty() || eq != std::string_view::npos) {
                const int key_column = stmt_column + static_cast<int>(stmt.find_first_not_of(" \t")) + 1;
                if (eq == std::string_view::npos) {
                    throw SyntaxError("expected '=' in statement", line_no,
                                      stmt_column + static_cast<int>(stmt.size()) + 1);
                }
                const std::string_view rhs = stmt.substr(eq + 1);
                const int rhs_column = stmt_column + static_cast<int>(eq) + 1;

                if (key == "name") {
                    spec.name = std::string(trim(rhs));
                } else if (key == "notes") {
                    spec.notes = std::string(trim(rhs));
                } else if (key == "tags") {
                    std::string_view rest = rhs;
                    while (!rest.empty()) {
                        const std::size_t comma = rest.find(',');
                        const std::string_view tag = trim(rest.substr(0, comma));
                        if (!tag.empty()) spec.expected_tags.emplace(tag);
                        if (comma == std::string_view::npos) break;
                        rest = rest.substr(comma + 1);
                    }
                } else if (key.substr(0, 6) == "param " || key.substr(0, 6) == "param\t") {
                    const std::string_view id = trim(key.substr(6));
                    if (!is_identifier(id) || id == "u" || id == "v" || lookup_function(id)) {
                        throw SyntaxError("invalid parameter name '" + std::string(id) + "'", line_no, key_column);
                    }
                    ExprParser parser(rhs, line_no, rhs_column);
                    const double value = parser.parse_constant();
                    parser.expect_end();
                    spec.params[std::string(id)] = value;
                } else if (key == "domain") {
                    ExprParser parser(rhs, line_no, rhs_column);
                    parser.expect('[');
                    spec.domain.u_min = parser.parse_constant();
                    parser.expect(',');
                    spec.domain.u_max = parser.parse_constant();
                    parser.expect(']');
                    if (!parser.accept('x') && !parser.accept('X')) parser.fail("expected 'x' between ranges");
                    parser.expect('[');
                    spec.domain.v_min = parser.parse_constant();
                    parser.expect(',');
                    spec.domain.v_max = parser.parse_constant();
                    parser.expect(']');
                    parser.expect_end();
                    if (!(spec.domain.u_min < spec.domain.u_max) || !(spec.domain.v_min < spec.domain.v_max)) {
                        throw SyntaxError("empty domain", line_no, rhs_column + 1);
                    }
                } else if (key.size() == 2 && key[0] == 'x' && key[1] >= '1' && key[1] <= '4') {
                    const int idx = key[1] - '1';
                    if (seen[idx]) throw SyntaxError("duplicate component " + std::string(key), line_no, key_column);
                    ExprParser parser(rhs, line_no, rhs_column);
                    spec.components[idx] = parser.parse_expression();
                    parser.expect_end();
                    seen[idx] = true;
                    for (const auto& [name, col] : parser.positions_) references.push_back({name, line_no, col});
                } else {
                    throw SyntaxError("unknown statement '" + std::string(key) + "'", line_no, key_column);
                }
            }
            if (stmt_end == line.size()) break;
            stmt_start = stmt_end + 1;
        }
        if (line_end == text.size()) break;
        line_start = line_end + 1;
    }

    for (int i = 0; i < 4; ++i) {
        if (!seen[i]) {
            throw SyntaxError("missing component x" + std::to_string(i + 1), line_no, last_column);
        }
    }
    for (const auto& ref : references) {
        if (!spec.params.count(ref.name)) {
            throw Error(ErrorKind::UnknownIdentifier,
                        located("unknown identifier '" + ref.name + "'", ref.line, ref.column));
        }
    }
    return spec;
}

std::string serialize_surface(const SurfaceSpec& spec) {
    auto number = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    std::ostringstream out;
    out << "name = " << spec.name << '\n';
    if (!spec.notes.empty()) out << "notes = " << spec.notes << '\n';
    for (const auto& [k, v] : spec.params) out << "param " << k << " = " << number(v) << '\n';
    out << "domain = [" << number(spec.domain.u_min) << ',' << number(spec.domain.u_max) << "]x["
        << number(spec.domain.v_min) << ',' << number(spec.domain.v_max) << "]\n";
    if (!spec.expected_tags.empty()) {
        out << "tags = ";
        bool first = true;
        for (const auto& t : spec.expected_tags) {
            out << (first ? "" : ", ") << t;
            first = false;
        }
        out << '\n';
    }
    for (std::size_t i = 0; i < 4; ++i) out << 'x' << i + 1 << " = " << to_string(*spec.components[i]) << '\n';
    return out.str();
}

std::array<Jet, 4> evaluate_immersion(const SurfaceSpec& spec, double u, double v, int order) {
    if (!spec.domain.contains(u, v)) {
        std::ostringstream msg;
        msg << "point (" << u << ", " << v << ") outside the domain of " << spec.name;
        throw Error(ErrorKind::DomainError, msg.str());
    }
    const Jet ju = Jet::variable(Jet::Variable::U, u, order);
    const Jet jv = Jet::variable(Jet::Variable::V, v, order);
    std::array<Jet, 4> x;
    for (std::size_t i = 0; i < 4; ++i) x[i] = evaluate(*spec.components[i], ju, jv, spec.params);
    return x;
}

AmbientVector evaluate_position(const SurfaceSpec& spec, double u, double v) {
    AmbientVector x;
    for (std::size_t i = 0; i < 4; ++i) x[i] = evaluate(*spec.components[i], u, v, spec.params);
    return x;
}

}  // namespace minksurf
