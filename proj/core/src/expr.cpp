#include "minksurf/expr.hpp"

#include <cstdio>
#include <cstring>

namespace minksurf {

ExprPtr Expr::constant(double value) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Constant;
    e->value = value;
    return e;
}

ExprPtr Expr::variable(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Variable;
    e->name = std::move(name);
    return e;
}

ExprPtr Expr::parameter(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Parameter;
    e->name = std::move(name);
    return e;
}

ExprPtr Expr::make_unary(UnaryOp op, ExprPtr operand) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Unary;
    e->unary = op;
    e->lhs = std::move(operand);
    return e;
}

ExprPtr Expr::make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->binary = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

ExprPtr Expr::power(ExprPtr base, int exponent) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->binary = BinaryOp::Pow;
    e->exponent = exponent;
    e->lhs = std::move(base);
    return e;
}

bool equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Constant: return std::memcmp(&a.value, &b.value, sizeof(double)) == 0;
        case Expr::Kind::Variable:
        case Expr::Kind::Parameter: return a.name == b.name;
        case Expr::Kind::Unary: return a.unary == b.unary && equal(*a.lhs, *b.lhs);
        case Expr::Kind::Binary:
            if (a.binary != b.binary || !equal(*a.lhs, *b.lhs)) return false;
            if (a.binary == BinaryOp::Pow) return a.exponent == b.exponent;
            return equal(*a.rhs, *b.rhs);
    }
    return false;
}

std::string_view function_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::Neg: return "-";
        case UnaryOp::Sin: return "sin";
        case UnaryOp::Cos: return "cos";
        case UnaryOp::Sinh: return "sinh";
        case UnaryOp::Cosh: return "cosh";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Sqrt: return "sqrt";
        case UnaryOp::Log: return "log";
    }
    return "?";
}

namespace {

// Binding strength; higher binds tighter.
int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable:
        case Expr::Kind::Parameter: return 5;
        case Expr::Kind::Unary: return e.unary == UnaryOp::Neg ? 3 : 5;
        case Expr::Kind::Binary:
            switch (e.binary) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 4;
            }
    }
    return 0;
}

std::string wrap(const Expr& e, bool parens) {
    return parens ? "(" + to_string(e) + ")" : to_string(e);
}

}  // namespace

std::string to_string(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Constant: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e.value);
            return buf;
        }
        case Expr::Kind::Variable:
        case Expr::Kind::Parameter: return e.name;
        case Expr::Kind::Unary:
            if (e.unary == UnaryOp::Neg) return "-" + wrap(*e.lhs, precedence(*e.lhs) < 3);
            return std::string(function_name(e.unary)) + "(" + to_string(*e.lhs) + ")";
        case Expr::Kind::Binary: {
            const int p = precedence(e);
            if (e.binary == BinaryOp::Pow) {
                return wrap(*e.lhs, precedence(*e.lhs) < 5) + "^" + std::to_string(e.exponent);
            }
            static constexpr const char* kSymbols[] = {" + ", " - ", "*", "/"};
            // Operators parse left-associatively, so an equal-precedence right
            // operand keeps its parentheses.
            return wrap(*e.lhs, precedence(*e.lhs) < p) + kSymbols[static_cast<int>(e.binary)] +
                   wrap(*e.rhs, precedence(*e.rhs) <= p);
        }
    }
    return "?";
}

}  // namespace minksurf
