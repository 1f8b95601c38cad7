#include "minksurf/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "minksurf/error.hpp"

namespace minksurf {

namespace {

void check_index(const Jet& a, int i, int j) {
    if (i < 0 || j < 0 || i + j > a.order()) {
        throw Error(ErrorKind::OrderExceeded, "coefficient (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ") beyond jet order " +
                                                  std::to_string(a.order()));
    }
}

// Evaluates sum_n series[n] * t^n where t has zero constant term, so t^n
// vanishes beyond the jet order and the series can be cut at that order.
Jet compose(const std::array<double, Jet::kMaxOrder + 1>& series, const Jet& a) {
    Jet t = a;
    t.set_coeff(0, 0, 0.0);
    Jet result(series[a.order()], a.order());
    for (int n = a.order() - 1; n >= 0; --n) {
        result = result * t + series[n];
    }
    return result;
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace

Jet::Jet(double value, int order) : order_(order) {
    if (order < 0 || order > kMaxOrder) {
        throw Error(ErrorKind::UnsupportedOrder, "jet order " + std::to_string(order));
    }
    coeffs_[0] = value;
}

Jet Jet::variable(Variable which, double value, int order) {
    if (order != 3 && order != 4) {
        throw Error(ErrorKind::UnsupportedOrder,
                    "jet order must be 3 or 4, got " + std::to_string(order));
    }
    Jet x(value, order);
    if (which == Variable::U) {
        x.coeffs_[index(1, 0)] = 1.0;
    } else {
        x.coeffs_[index(0, 1)] = 1.0;
    }
    return x;
}

double Jet::coeff(int i, int j) const {
    check_index(*this, i, j);
    return coeffs_[index(i, j)];
}

void Jet::set_coeff(int i, int j, double c) {
    check_index(*this, i, j);
    coeffs_[index(i, j)] = c;
}

double Jet::partial(int i, int j) const { return factorial(i) * factorial(j) * coeff(i, j); }

Jet Jet::d_du() const {
    if (order_ == 0) throw Error(ErrorKind::OrderExceeded, "cannot differentiate an order-0 jet");
    Jet r(0.0, order_ - 1);
    for (int d = 0; d < order_; ++d) {
        for (int j = 0; j <= d; ++j) {
            const int i = d - j;
            r.coeffs_[index(i, j)] = (i + 1) * coeffs_[index(i + 1, j)];
        }
    }
    return r;
}

Jet Jet::d_dv() const {
    if (order_ == 0) throw Error(ErrorKind::OrderExceeded, "cannot differentiate an order-0 jet");
    Jet r(0.0, order_ - 1);
    for (int d = 0; d < order_; ++d) {
        for (int j = 0; j <= d; ++j) {
            const int i = d - j;
            r.coeffs_[index(i, j)] = (j + 1) * coeffs_[index(i, j + 1)];
        }
    }
    return r;
}

void Jet::zero_tail() noexcept {
    std::fill(coeffs_.begin() + index(0, order_) + 1, coeffs_.end(), 0.0);
}

Jet Jet::truncated(int order) const {
    if (order >= order_) return *this;
    Jet r(0.0, order);
    std::copy_n(coeffs_.begin(), index(0, order) + 1, r.coeffs_.begin());
    return r;
}

Jet& Jet::operator+=(const Jet& rhs) {
    order_ = std::min(order_, rhs.order_);
    for (std::size_t n = 0; n < kCapacity; ++n) coeffs_[n] += rhs.coeffs_[n];
    zero_tail();
    return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
    order_ = std::min(order_, rhs.order_);
    for (std::size_t n = 0; n < kCapacity; ++n) coeffs_[n] -= rhs.coeffs_[n];
    zero_tail();
    return *this;
}

Jet& Jet::operator*=(const Jet& rhs) {
    const int k = std::min(order_, rhs.order_);
    Jet r(0.0, k);
    for (int d = 0; d <= k; ++d) {
        for (int j = 0; j <= d; ++j) {
            const int i = d - j;
            double s = 0.0;
            for (int a = 0; a <= i; ++a) {
                for (int b = 0; b <= j; ++b) {
                    s += coeffs_[index(a, b)] * rhs.coeffs_[index(i - a, j - b)];
                }
            }
            r.coeffs_[index(i, j)] = s;
        }
    }
    *this = r;
    return *this;
}

Jet& Jet::operator/=(const Jet& rhs) { return *this *= reciprocal(rhs); }

Jet& Jet::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    return *this;
}

Jet operator+(Jet a, double s) {
    a.coeffs_[0] += s;
    return a;
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (double& c : r.coeffs_) c = -c;
    return r;
}

Jet reciprocal(const Jet& a) {
    const double a0 = a.value();
    if (a0 == 0.0) {
        throw Error(ErrorKind::DivisionByZeroValue, "division by a jet with zero value");
    }
    std::array<double, Jet::kMaxOrder + 1> series{};
    double term = 1.0 / a0;
    for (int n = 0; n <= Jet::kMaxOrder; ++n) {
        series[n] = term;
        term *= -1.0 / a0;
    }
    return compose(series, a);
}

Jet pow(const Jet& a, int exponent) {
    if (exponent < 0) return pow(reciprocal(a), -exponent);
    Jet result(1.0, a.order());
    Jet base = a;
    for (int e = exponent; e > 0; e >>= 1) {
        if (e & 1) result *= base;
        if (e > 1) base *= base;
    }
    return result;
}

Jet jet_combine(JetOp op, const Jet& a, const Jet& b) {
    if (a.order() != b.order()) {
        throw Error(ErrorKind::UnsupportedOrder, "jet_combine requires equal orders");
    }
    switch (op) {
        case JetOp::Add: return a + b;
        case JetOp::Sub: return a - b;
        case JetOp::Mul: return a * b;
        case JetOp::Div: return a / b;
        case JetOp::PowInt: break;
    }
    throw Error(ErrorKind::UnsupportedOrder, "PowInt takes an integer exponent");
}

Jet jet_combine(JetOp op, const Jet& a, int exponent) {
    if (op != JetOp::PowInt) {
        return jet_combine(op, a, Jet(static_cast<double>(exponent), a.order()));
    }
    return pow(a, exponent);
}

Jet jet_elementary(ElementaryFunction f, const Jet& a) {
    const double x = a.value();
    std::array<double, Jet::kMaxOrder + 1> s{};
    switch (f) {
        case ElementaryFunction::Sin:
        case ElementaryFunction::Cos: {
            // Derivatives of sin cycle through sin, cos, -sin, -cos.
            const double cyc[4] = {std::sin(x), std::cos(x), -std::sin(x), -std::cos(x)};
            const int shift = f == ElementaryFunction::Cos ? 1 : 0;
            for (int n = 0; n <= Jet::kMaxOrder; ++n) s[n] = cyc[(n + shift) % 4] / factorial(n);
            break;
        }
        case ElementaryFunction::Sinh:
        case ElementaryFunction::Cosh: {
            const double cyc[2] = {std::sinh(x), std::cosh(x)};
            const int shift = f == ElementaryFunction::Cosh ? 1 : 0;
            for (int n = 0; n <= Jet::kMaxOrder; ++n) s[n] = cyc[(n + shift) % 2] / factorial(n);
            break;
        }
        case ElementaryFunction::Exp: {
            const double e = std::exp(x);
            for (int n = 0; n <= Jet::kMaxOrder; ++n) s[n] = e / factorial(n);
            break;
        }
        case ElementaryFunction::Sqrt: {
            if (!(x > 0.0)) throw Error(ErrorKind::DomainError, "sqrt of non-positive value");
            // binomial(1/2, n) * x^(1/2 - n)
            double binom = 1.0;
            double power = std::sqrt(x);
            for (int n = 0; n <= Jet::kMaxOrder; ++n) {
                s[n] = binom * power;
                binom *= (0.5 - n) / (n + 1);
                power /= x;
            }
            break;
        }
        case ElementaryFunction::Log: {
            if (!(x > 0.0)) throw Error(ErrorKind::DomainError, "log of non-positive value");
            s[0] = std::log(x);
            double inv = 1.0;
            for (int n = 1; n <= Jet::kMaxOrder; ++n) {
                inv /= x;
                s[n] = (n % 2 == 1 ? 1.0 : -1.0) * inv / n;
            }
            break;
        }
    }
    return compose(s, a);
}

Jet sin(const Jet& a) { return jet_elementary(ElementaryFunction::Sin, a); }
Jet cos(const Jet& a) { return jet_elementary(ElementaryFunction::Cos, a); }
Jet sinh(const Jet& a) { return jet_elementary(ElementaryFunction::Sinh, a); }
Jet cosh(const Jet& a) { return jet_elementary(ElementaryFunction::Cosh, a); }
Jet exp(const Jet& a) { return jet_elementary(ElementaryFunction::Exp, a); }
Jet sqrt(const Jet& a) { return jet_elementary(ElementaryFunction::Sqrt, a); }
Jet log(const Jet& a) { return jet_elementary(ElementaryFunction::Log, a); }

}  // namespace minksurf
