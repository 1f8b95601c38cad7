#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>

#include "minksurf/error.hpp"
#include "minksurf/jet.hpp"

namespace minksurf {

/// Vector in Minkowski space E^4_1, signature (-,+,+,+); component 0 is
/// the time-like coordinate. S is double or Jet.
template <class S>
struct BasicAmbientVector {
    std::array<S, 4> c{};

    S& operator[](std::size_t i) { return c[i]; }
    const S& operator[](std::size_t i) const { return c[i]; }

    BasicAmbientVector& operator+=(const BasicAmbientVector& o) {
        for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
        return *this;
    }
    BasicAmbientVector& operator-=(const BasicAmbientVector& o) {
        for (std::size_t i = 0; i < 4; ++i) c[i] -= o.c[i];
        return *this;
    }
    template <class T>
    BasicAmbientVector& operator*=(const T& s) {
        for (auto& x : c) x *= s;
        return *this;
    }

    friend BasicAmbientVector operator+(BasicAmbientVector a, const BasicAmbientVector& b) { return a += b; }
    friend BasicAmbientVector operator-(BasicAmbientVector a, const BasicAmbientVector& b) { return a -= b; }
    friend BasicAmbientVector operator-(BasicAmbientVector a) { return a *= -1.0; }
    friend BasicAmbientVector operator*(const S& s, BasicAmbientVector a) { return a *= s; }
    friend BasicAmbientVector operator*(BasicAmbientVector a, const S& s) { return a *= s; }
};

/// Element of the second exterior power, components in the fixed basis
/// order (12, 13, 14, 23, 24, 34) of f1..f4. Inner product signs on that
/// basis are (-,-,-,+,+,+).
template <class S>
struct BasicBivector {
    std::array<S, 6> p{};

    S& operator[](std::size_t i) { return p[i]; }
    const S& operator[](std::size_t i) const { return p[i]; }

    BasicBivector& operator+=(const BasicBivector& o) {
        for (std::size_t i = 0; i < 6; ++i) p[i] += o.p[i];
        return *this;
    }
    BasicBivector& operator-=(const BasicBivector& o) {
        for (std::size_t i = 0; i < 6; ++i) p[i] -= o.p[i];
        return *this;
    }
    template <class T>
    BasicBivector& operator*=(const T& s) {
        for (auto& x : p) x *= s;
        return *this;
    }

    friend BasicBivector operator+(BasicBivector a, const BasicBivector& b) { return a += b; }
    friend BasicBivector operator-(BasicBivector a, const BasicBivector& b) { return a -= b; }
    friend BasicBivector operator-(BasicBivector a) { return a *= -1.0; }
    friend BasicBivector operator*(const S& s, BasicBivector a) { return a *= s; }
    friend BasicBivector operator*(BasicBivector a, const S& s) { return a *= s; }
};

using AmbientVector = BasicAmbientVector<double>;
using Bivector = BasicBivector<double>;
using JetVector = BasicAmbientVector<Jet>;
using JetBivector = BasicBivector<Jet>;

inline constexpr std::array<double, 4> kMetricSigns = {-1.0, 1.0, 1.0, 1.0};
inline constexpr std::array<std::array<int, 2>, 6> kBivectorBasis = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
inline constexpr std::array<double, 6> kBivectorSigns = {-1.0, -1.0, -1.0, 1.0, 1.0, 1.0};

/// Default scale-aware tolerance for causal classification and degeneracy.
inline constexpr double kDefaultLinalgTolerance = 1e-9;

enum class CausalClass { Spacelike, Timelike, Lightlike, Zero };

std::string_view to_string(CausalClass c);

inline AmbientVector basis_vector(std::size_t i) {
    AmbientVector e;
    e[i] = 1.0;
    return e;
}

inline AmbientVector values(const JetVector& v) {
    return {{v[0].value(), v[1].value(), v[2].value(), v[3].value()}};
}

inline Bivector values(const JetBivector& b) {
    Bivector r;
    for (std::size_t i = 0; i < 6; ++i) r[i] = b[i].value();
    return r;
}

template <class S>
S minkowski_inner(const BasicAmbientVector<S>& a, const BasicAmbientVector<S>& b) {
    S r = a[1] * b[1];
    r += a[2] * b[2];
    r += a[3] * b[3];
    r -= a[0] * b[0];
    return r;
}

template <class S>
BasicBivector<S> wedge(const BasicAmbientVector<S>& a, const BasicAmbientVector<S>& b) {
    BasicBivector<S> w;
    for (std::size_t k = 0; k < 6; ++k) {
        const auto [i, j] = kBivectorBasis[k];
        w[k] = a[i] * b[j] - a[j] * b[i];
    }
    return w;
}

/// Induced inner product: det of the 2x2 Gram matrix on decomposables,
/// which is diagonal with kBivectorSigns on the component basis.
template <class S>
S bivector_inner(const BasicBivector<S>& a, const BasicBivector<S>& b) {
    S r = a[3] * b[3];
    r += a[4] * b[4];
    r += a[5] * b[5];
    r -= a[0] * b[0];
    r -= a[1] * b[1];
    r -= a[2] * b[2];
    return r;
}

/// Plücker defect p12 p34 - p13 p24 + p14 p23; zero for decomposables.
template <class S>
S plucker_defect(const BasicBivector<S>& b) {
    return b[0] * b[5] - b[1] * b[4] + b[2] * b[3];
}

double euclidean_norm(const AmbientVector& v);
double euclidean_norm(const Bivector& b);

/// Euclidean determinant of the matrix with columns a, b, c, d.
double det4(const AmbientVector& a, const AmbientVector& b, const AmbientVector& c,
            const AmbientVector& d);

CausalClass causal_character(const AmbientVector& v, double tol = kDefaultLinalgTolerance);

namespace detail {

inline int permutation_sign(std::array<int, 4> perm) {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (perm[i] > perm[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

// Coefficient relating the dual component at basis slot k to the tangent
// component at the complementary slot 5 - k.
inline double dual_coefficient(std::size_t k) {
    const auto [a, b] = kBivectorBasis[k];
    const auto [c, d] = kBivectorBasis[5 - k];
    return kBivectorSigns[k] * permutation_sign({c, d, a, b});
}

template <class S>
S abs_sqrt(const S& q) {
    using std::sqrt;
    return value_of(q) >= 0.0 ? sqrt(q) : sqrt(-q);
}

void check_spacelike_plane(double g11, double g12, double g22, double tol);

}  // namespace detail

/// Unit Gauss-map bivector of the normal plane of span(t1, t2).
///
/// Computed as the normalized dual N of t1^t2, where <N, a^b> equals
/// det[t1 t2 a b]. With that choice nu = e3^e4 for the normal frame with
/// e3 space-like, e4 time-like and det[e1 e2 e3 e4] > 0, and <nu,nu> = -1.
template <class S>
BasicBivector<S> dual_unit_normal_bivector(const BasicAmbientVector<S>& t1,
                                           const BasicAmbientVector<S>& t2,
                                           double tol = kDefaultLinalgTolerance) {
    using std::sqrt;
    detail::check_spacelike_plane(value_of(minkowski_inner(t1, t1)), value_of(minkowski_inner(t1, t2)),
                                  value_of(minkowski_inner(t2, t2)), tol);
    const BasicBivector<S> t = wedge(t1, t2);
    BasicBivector<S> n;
    for (std::size_t k = 0; k < 6; ++k) n[k] = t[5 - k] * detail::dual_coefficient(k);
    // -<N,N> equals the Gram determinant <t,t> of the tangent plane.
    const S scale = sqrt(-bivector_inner(n, n));
    for (std::size_t k = 0; k < 6; ++k) n[k] = -n[k] / scale;
    return n;
}

template <class S>
struct NormalFrame {
    BasicAmbientVector<S> e3;  // <e3,e3> = +1
    BasicAmbientVector<S> e4;  // <e4,e4> = -1
    /// +1 if e3^e4 equals dual_unit_normal_bivector, -1 if it is the negative.
    int orientation = 1;
};

/// Orthonormal frame (e1, e2) of span(t1, t2) by Gram-Schmidt.
template <class S>
std::array<BasicAmbientVector<S>, 2> orthonormal_tangent_frame(const BasicAmbientVector<S>& t1,
                                                               const BasicAmbientVector<S>& t2,
                                                               double tol = kDefaultLinalgTolerance) {
    using std::sqrt;
    const S g11 = minkowski_inner(t1, t1);
    const S g12 = minkowski_inner(t1, t2);
    const S g22 = minkowski_inner(t2, t2);
    detail::check_spacelike_plane(value_of(g11), value_of(g12), value_of(g22), tol);
    const S n1 = sqrt(g11);
    BasicAmbientVector<S> e1 = t1;
    for (auto& x : e1.c) x = x / n1;
    BasicAmbientVector<S> w = t2;
    const S proj = g12 / g11;
    for (std::size_t i = 0; i < 4; ++i) w[i] -= proj * t1[i];
    const S n2 = sqrt(g22 - g12 * proj);
    for (auto& x : w.c) x = x / n2;
    return {e1, w};
}

/// Normal frame from explicit seed vectors: each seed is projected onto
/// the normal plane, the projection with the largest |<p,p>| is the first
/// pivot, and the second comes from indefinite Gram-Schmidt against it.
template <class S>
NormalFrame<S> orthonormal_normal_frame(const BasicAmbientVector<S>& t1,
                                        const BasicAmbientVector<S>& t2,
                                        std::span<const AmbientVector> seeds,
                                        double tol = kDefaultLinalgTolerance) {
    constexpr double kPivotFloor = 1e-12;
    const auto [e1, e2] = orthonormal_tangent_frame(t1, t2, tol);

    std::array<BasicAmbientVector<S>, 4> proj{};
    std::array<double, 4> norm2{};
    const std::size_t count = std::min<std::size_t>(seeds.size(), 4);
    for (std::size_t a = 0; a < count; ++a) {
        BasicAmbientVector<S> p;
        for (std::size_t i = 0; i < 4; ++i) p[i] = S(seeds[a][i]);
        const S c1 = minkowski_inner(p, e1);
        const S c2 = minkowski_inner(p, e2);
        for (std::size_t i = 0; i < 4; ++i) p[i] -= c1 * e1[i] + c2 * e2[i];
        proj[a] = p;
        norm2[a] = std::abs(value_of(minkowski_inner(p, p)));
    }

    std::size_t first = 0;
    for (std::size_t a = 1; a < count; ++a)
        if (norm2[a] > norm2[first]) first = a;
    if (count == 0 || norm2[first] <= kPivotFloor) {
        throw Error(ErrorKind::NullPivot, "every seed projects to a null normal vector");
    }
    const S q1 = minkowski_inner(proj[first], proj[first]);
    const double eps1 = value_of(q1) > 0 ? 1.0 : -1.0;
    BasicAmbientVector<S> n1 = proj[first];
    const S s1 = detail::abs_sqrt(q1);
    for (auto& x : n1.c) x = x / s1;

    BasicAmbientVector<S> n2;
    double best = -1.0;
    S q2_best{};
    for (std::size_t a = 0; a < count; ++a) {
        if (a == first) continue;
        BasicAmbientVector<S> q = proj[a];
        const S c = minkowski_inner(q, n1) * eps1;
        for (std::size_t i = 0; i < 4; ++i) q[i] -= c * n1[i];
        const S qq = minkowski_inner(q, q);
        if (std::abs(value_of(qq)) > best) {
            best = std::abs(value_of(qq));
            n2 = q;
            q2_best = qq;
        }
    }
    if (best <= kPivotFloor) {
        throw Error(ErrorKind::NullPivot, "no seed completes the normal frame");
    }
    const double eps2 = value_of(q2_best) > 0 ? 1.0 : -1.0;
    if (eps1 * eps2 > 0) {
        throw Error(ErrorKind::NullPivot, "normal plane is not Lorentzian");
    }
    const S s2 = detail::abs_sqrt(q2_best);
    for (auto& x : n2.c) x = x / s2;

    NormalFrame<S> frame;
    frame.e3 = eps1 > 0 ? n1 : n2;
    frame.e4 = eps1 > 0 ? n2 : n1;
    const S align = bivector_inner(wedge(frame.e3, frame.e4), dual_unit_normal_bivector(t1, t2, tol));
    frame.orientation = value_of(align) < 0 ? 1 : -1;
    return frame;
}

/// Normal frame seeded with the standard basis f1..f4.
template <class S>
NormalFrame<S> orthonormal_normal_frame(const BasicAmbientVector<S>& t1,
                                        const BasicAmbientVector<S>& t2,
                                        double tol = kDefaultLinalgTolerance) {
    static const std::array<AmbientVector, 4> kStandard = {basis_vector(0), basis_vector(1),
                                                           basis_vector(2), basis_vector(3)};
    return orthonormal_normal_frame(t1, t2, std::span<const AmbientVector>(kStandard), tol);
}

}  // namespace minksurf
