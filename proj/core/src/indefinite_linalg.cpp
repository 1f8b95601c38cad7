#include "minksurf/indefinite_linalg.hpp"

#include <cmath>
#include <sstream>

namespace minksurf {

std::string_view to_string(CausalClass c) {
    switch (c) {
        case CausalClass::Spacelike: return "SPACELIKE";
        case CausalClass::Timelike: return "TIMELIKE";
        case CausalClass::Lightlike: return "LIGHTLIKE";
        case CausalClass::Zero: return "ZERO";
    }
    return "?";
}

double euclidean_norm(const AmbientVector& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

double euclidean_norm(const Bivector& b) {
    double s = 0.0;
    for (double x : b.p) s += x * x;
    return std::sqrt(s);
}

double det4(const AmbientVector& a, const AmbientVector& b, const AmbientVector& c,
            const AmbientVector& d) {
    // Laplace expansion over the first two columns.
    const Bivector ab = wedge(a, b);
    const Bivector cd = wedge(c, d);
    double r = 0.0;
    for (std::size_t k = 0; k < 6; ++k) {
        const auto [i, j] = kBivectorBasis[k];
        const auto [p, q] = kBivectorBasis[5 - k];
        r += detail::permutation_sign({i, j, p, q}) * ab[k] * cd[5 - k];
    }
    return r;
}

CausalClass causal_character(const AmbientVector& v, double tol) {
    const double n = euclidean_norm(v);
    if (n <= tol) return CausalClass::Zero;
    const double q = minkowski_inner(v, v);
    if (std::abs(q) <= tol * (1.0 + n * n)) return CausalClass::Lightlike;
    return q > 0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

namespace detail {

void check_spacelike_plane(double g11, double g12, double g22, double tol) {
    const double gram = g11 * g22 - g12 * g12;
    const double scale = 1.0 + std::abs(g11) + std::abs(g22);
    if (!(g11 > 0) || !(gram > tol * scale * scale)) {
        std::ostringstream msg;
        msg << "tangent plane not space-like or degenerate (g11=" << g11 << ", gram=" << gram << ")";
        throw Error(ErrorKind::DegeneratePlane, msg.str());
    }
}

}  // namespace detail

}  // namespace minksurf
