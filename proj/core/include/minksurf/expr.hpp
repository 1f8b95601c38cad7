#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <type_traits>

#include "minksurf/error.hpp"
#include "minksurf/jet.hpp"

namespace minksurf {

enum class UnaryOp { Neg, Sin, Cos, Sinh, Cosh, Exp, Sqrt, Log };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;
using ParamMap = std::map<std::string, double>;

/// Immutable expression tree node. Pow carries an integer literal exponent
/// and no right operand.
struct Expr {
    enum class Kind { Constant, Variable, Parameter, Unary, Binary };

    Kind kind = Kind::Constant;
    double value = 0.0;  // Constant
    std::string name;    // Variable ("u" or "v") or Parameter
    UnaryOp unary = UnaryOp::Neg;
    BinaryOp binary = BinaryOp::Add;
    int exponent = 0;
    ExprPtr lhs;
    ExprPtr rhs;

    static ExprPtr constant(double value);
    static ExprPtr variable(std::string name);
    static ExprPtr parameter(std::string name);
    static ExprPtr make_unary(UnaryOp op, ExprPtr operand);
    static ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
    static ExprPtr power(ExprPtr base, int exponent);
};

/// Structural equality (constants compared bitwise).
bool equal(const Expr& a, const Expr& b);

/// Infix text with the minimal parentheses that re-parse to the same tree.
std::string to_string(const Expr& e);

std::string_view function_name(UnaryOp op);

namespace detail {

inline double constant_like(double, double value) { return value; }
inline Jet constant_like(const Jet& like, double value) { return Jet(value, like.order()); }

}  // namespace detail

template <class S>
S evaluate(const Expr& e, const S& u, const S& v, const ParamMap& params) {
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sinh;
    using std::sqrt;
    switch (e.kind) {
        case Expr::Kind::Constant: return detail::constant_like(u, e.value);
        case Expr::Kind::Variable: return e.name == "u" ? u : v;
        case Expr::Kind::Parameter: {
            const auto it = params.find(e.name);
            if (it == params.end()) throw Error(ErrorKind::MissingParameter, e.name);
            return detail::constant_like(u, it->second);
        }
        case Expr::Kind::Unary: {
            const S x = evaluate(*e.lhs, u, v, params);
            switch (e.unary) {
                case UnaryOp::Neg: return -x;
                case UnaryOp::Sin: return sin(x);
                case UnaryOp::Cos: return cos(x);
                case UnaryOp::Sinh: return sinh(x);
                case UnaryOp::Cosh: return cosh(x);
                case UnaryOp::Exp: return exp(x);
                case UnaryOp::Sqrt:
                    if (value_of(x) < 0.0) throw Error(ErrorKind::DomainError, "sqrt of negative value");
                    return sqrt(x);
                case UnaryOp::Log:
                    if (!(value_of(x) > 0.0)) throw Error(ErrorKind::DomainError, "log of non-positive value");
                    return log(x);
            }
            break;
        }
        case Expr::Kind::Binary: {
            const S a = evaluate(*e.lhs, u, v, params);
            switch (e.binary) {
                case BinaryOp::Add: return a + evaluate(*e.rhs, u, v, params);
                case BinaryOp::Sub: return a - evaluate(*e.rhs, u, v, params);
                case BinaryOp::Mul: return a * evaluate(*e.rhs, u, v, params);
                case BinaryOp::Div: {
                    const S b = evaluate(*e.rhs, u, v, params);
                    if (value_of(b) == 0.0) throw Error(ErrorKind::DivisionByZeroValue, "division by zero");
                    return a / b;
                }
                case BinaryOp::Pow: {
                    if constexpr (std::is_same_v<S, double>) {
                        return std::pow(a, e.exponent);
                    } else {
                        return pow(a, e.exponent);
                    }
                }
            }
            break;
        }
    }
    throw Error(ErrorKind::SyntaxError, "malformed expression node");
}

}  // namespace minksurf
