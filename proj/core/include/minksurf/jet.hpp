#pragma once

#include <array>
#include <cstddef>

namespace minksurf {

/// Bivariate truncated Taylor expansion in (u, v) about a base point.
///
/// Coefficients are Taylor-normalized: coeff(i, j) is
/// d^{i+j} f / du^i dv^j divided by i! j!, so multiplication is a plain
/// truncated Cauchy product. Binary operations between jets of different
/// order truncate to the smaller order; this is what lets derivative jets
/// (order k-1, k-2, ...) mix with the frame jets they are built from.
class Jet {
public:
    static constexpr int kMaxOrder = 4;
    static constexpr std::size_t kCapacity = (kMaxOrder + 1) * (kMaxOrder + 2) / 2;

    enum class Variable { U, V };

    Jet() = default;
    /// Constant jet: all non-(0,0) coefficients are zero.
    Jet(double value, int order = kMaxOrder);

    /// Independent variable u or v at the given value. Only orders 3 and 4
    /// are accepted here; lower orders arise internally from differentiation.
    static Jet variable(Variable which, double value, int order);

    int order() const noexcept { return order_; }
    double value() const noexcept { return coeffs_[0]; }

    double coeff(int i, int j) const;
    void set_coeff(int i, int j, double c);

    /// Raw partial derivative d^{i+j}/du^i dv^j at the base point.
    double partial(int i, int j) const;

    /// Derivative jets; the order drops by one.
    Jet d_du() const;
    Jet d_dv() const;

    /// Same jet truncated to a lower order.
    Jet truncated(int order) const;

    Jet& operator+=(const Jet& rhs);
    Jet& operator-=(const Jet& rhs);
    Jet& operator*=(const Jet& rhs);
    Jet& operator/=(const Jet& rhs);
    Jet& operator*=(double s);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
    friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
    friend Jet operator+(Jet a, double s);
    friend Jet operator+(double s, Jet a) { return a + s; }
    friend Jet operator-(Jet a, double s) { return a + (-s); }
    friend Jet operator-(double s, const Jet& a) { return -a + s; }
    Jet operator-() const;

private:
    static constexpr std::size_t index(int i, int j) noexcept {
        const int d = i + j;
        return static_cast<std::size_t>(d * (d + 1) / 2 + j);
    }

    void zero_tail() noexcept;

    int order_ = kMaxOrder;
    std::array<double, kCapacity> coeffs_{};
};

enum class JetOp { Add, Sub, Mul, Div, PowInt };
enum class ElementaryFunction { Sin, Cos, Sinh, Cosh, Exp, Sqrt, Log };

/// Arithmetic on jets of equal order (the second operand is a jet for the
/// four field operations).
Jet jet_combine(JetOp op, const Jet& a, const Jet& b);
/// Integer power; negative exponents go through series inversion.
Jet jet_combine(JetOp op, const Jet& a, int exponent);

Jet jet_elementary(ElementaryFunction f, const Jet& a);

/// 1/a by composing the geometric series of 1/(a0 + t) with the
/// non-constant part of a.
Jet reciprocal(const Jet& a);
Jet pow(const Jet& a, int exponent);

Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet exp(const Jet& a);
Jet sqrt(const Jet& a);
Jet log(const Jet& a);

inline double value_of(double x) noexcept { return x; }
inline double value_of(const Jet& x) noexcept { return x.value(); }

}  // namespace minksurf
