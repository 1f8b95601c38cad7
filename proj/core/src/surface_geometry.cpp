#include "minksurf/surface_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace minksurf {

namespace {

JetVector d_du(const JetVector& v) {
    JetVector r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = v[i].d_du();
    return r;
}

JetVector d_dv(const JetVector& v) {
    JetVector r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = v[i].d_dv();
    return r;
}

JetVector scaled(const JetVector& v, const Jet& s) {
    JetVector r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = v[i] * s;
    return r;
}

Mat2 matmul(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

double det2(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

double det3(const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Vector h(e_i, e_j) = sum_b eps_b h^b_ij e_b at the base point.
AmbientVector h_vector(const PointGeometry& pg, int i, int j) {
    AmbientVector r;
    for (int b = 0; b < 2; ++b) r += (kFrameSigns[2 + b] * pg.h[b][i][j].value()) * values(pg.frame[2 + b]);
    return r;
}

}  // namespace

Jet frame_derivative(const PointGeometry& pg, int i, const Jet& f) {
    return pg.frame_coeffs[i][0] * f.d_du() + pg.frame_coeffs[i][1] * f.d_dv();
}

JetVector frame_derivative(const PointGeometry& pg, int i, const JetVector& f) {
    JetVector r;
    for (std::size_t c = 0; c < 4; ++c) r[c] = frame_derivative(pg, i, f[c]);
    return r;
}

AmbientVector normal_part(const PointGeometry& pg, const AmbientVector& v) {
    AmbientVector r;
    for (int b = 2; b < 4; ++b) {
        const AmbientVector e = values(pg.frame[b]);
        r += (kFrameSigns[b] * minkowski_inner(v, e)) * e;
    }
    return r;
}

FirstFundamentalForm first_fundamental_form(const std::array<Jet, 4>& x) {
    JetVector xj{x};
    const AmbientVector xu = values(d_du(xj));
    const AmbientVector xv = values(d_dv(xj));
    FirstFundamentalForm f;
    f.g[0][0] = minkowski_inner(xu, xu);
    f.g[0][1] = f.g[1][0] = minkowski_inner(xu, xv);
    f.g[1][1] = minkowski_inner(xv, xv);
    const double det = det2(f.g);
    if (std::abs(det) < 1e-12) throw Error(ErrorKind::DegeneratePlane, "Gram determinant below 1e-12");
    f.spacelike = f.g[0][0] > 0 && det > 0;
    if (!f.spacelike) {
        // Eigenvalues of the symmetric 2x2 metric.
        const double tr = f.g[0][0] + f.g[1][1];
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
        const double l1 = tr / 2 + disc, l2 = tr / 2 - disc;
        auto sign = [](double l) { return l > 0 ? "+" : (l < 0 ? "-" : "0"); };
        std::ostringstream msg;
        msg << "induced metric has eigenvalue signs (" << sign(l1) << "," << sign(l2) << ")";
        throw Error(ErrorKind::NotSpacelike, msg.str());
    }
    return f;
}

PointGeometry adapted_frame(const std::array<Jet, 4>& x, double u, double v) {
    PointGeometry pg;
    pg.u = u;
    pg.v = v;
    pg.order = x[0].order();
    if (pg.order < 3) {
        throw Error(ErrorKind::OrderExceeded, "adapted frame needs position jets of order >= 3");
    }
    pg.x = x;
    const FirstFundamentalForm fff = first_fundamental_form(x);
    pg.g = fff.g;
    const double det = det2(pg.g);
    pg.g_inv = {{{pg.g[1][1] / det, -pg.g[0][1] / det}, {-pg.g[1][0] / det, pg.g[0][0] / det}}};

    const JetVector xj{x};
    const JetVector xu = d_du(xj);
    const JetVector xv = d_dv(xj);
    pg.tangents = {xu, xv};
    pg.metric = {minkowski_inner(xu, xu), minkowski_inner(xu, xv), minkowski_inner(xv, xv)};

    const Jet& E = pg.metric.E;
    const Jet& F = pg.metric.F;
    const Jet& G = pg.metric.G;
    const Jet len1 = sqrt(E);
    const Jet len2 = sqrt(G - F * F / E);
    const Jet zero(0.0, len1.order());
    pg.frame_coeffs[0] = {1.0 / len1, zero};
    pg.frame_coeffs[1] = {-(F / E) / len2, 1.0 / len2};

    pg.frame[0] = scaled(xu, pg.frame_coeffs[0][0]);
    pg.frame[1] = scaled(xu, pg.frame_coeffs[1][0]) + scaled(xv, pg.frame_coeffs[1][1]);
    const NormalFrame<Jet> nf = orthonormal_normal_frame(xu, xv);
    pg.normal_orientation = nf.orientation;
    pg.frame[2] = nf.e3;
    pg.frame[3] = nf.orientation > 0 ? nf.e4 : -nf.e4;

    for (int k = 0; k < 2; ++k) {
        pg.omega12[k] = minkowski_inner(frame_derivative(pg, k, pg.frame[0]), pg.frame[1]).value();
        pg.omega34[k] = minkowski_inner(frame_derivative(pg, k, pg.frame[2]), pg.frame[3]).value();
    }

    const std::array<std::array<JetVector, 2>, 2> second = {
        {{d_du(xu), d_dv(xu)}, {d_du(xv), d_dv(xv)}}};
    for (int b = 0; b < 2; ++b) {
        std::array<std::array<Jet, 2>, 2> coord;  // <x_{alpha gamma}, e_b>
        for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c) coord[a][c] = minkowski_inner(second[a][c], pg.frame[2 + b]);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                Jet s = coord[0][0] * pg.frame_coeffs[i][0] * pg.frame_coeffs[j][0];
                s += coord[0][1] * pg.frame_coeffs[i][0] * pg.frame_coeffs[j][1];
                s += coord[1][0] * pg.frame_coeffs[i][1] * pg.frame_coeffs[j][0];
                s += coord[1][1] * pg.frame_coeffs[i][1] * pg.frame_coeffs[j][1];
                pg.h[b][i][j] = s;
            }
        }
    }
    return pg;
}

SecondFundamentalForm second_fundamental_form(const PointGeometry& pg) {
    SecondFundamentalForm s;
    for (int b = 0; b < 2; ++b) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s.coeffs[b][i][j] = pg.h[b][i][j].value();
        // A_b e_i = sum_j h^b_ij e_j; the matrix is symmetric.
        s.shape[b] = s.coeffs[b];
        s.asymmetry = std::max(s.asymmetry, std::abs(s.coeffs[b][0][1] - s.coeffs[b][1][0]));
    }
    return s;
}

JetVector mean_curvature_jet(const PointGeometry& pg) {
    JetVector H;
    for (int b = 0; b < 2; ++b) {
        const Jet tr = pg.h[b][0][0] + pg.h[b][1][1];
        H += scaled(pg.frame[2 + b], tr * (0.5 * kFrameSigns[2 + b]));
    }
    return H;
}

MeanCurvature mean_curvature_vector(const PointGeometry& pg, double tol) {
    MeanCurvature m;
    m.H = values(mean_curvature_jet(pg));
    m.HH = minkowski_inner(m.H, m.H);
    m.causal = causal_character(m.H, tol);
    return m;
}

Jet squared_second_fundamental_form_jet(const PointGeometry& pg) {
    Jet s(0.0, pg.h[0][0][0].order());
    for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s += kFrameSigns[2 + b] * pg.h[b][i][j] * pg.h[b][j][i];
    return s;
}

double squared_second_fundamental_form(const PointGeometry& pg) {
    return squared_second_fundamental_form_jet(pg).value();
}

GaussianCurvature gaussian_curvature(const PointGeometry& pg) {
    const SecondFundamentalForm s = second_fundamental_form(pg);
    GaussianCurvature k;
    k.gauss = kFrameSigns[2] * (det2(s.shape[0]) - det2(s.shape[1]));
    const MeanCurvature m = mean_curvature_vector(pg);
    k.formula = 2 * m.HH - squared_second_fundamental_form(pg) / 2;

    // Brioschi formula.
    const Jet& E = pg.metric.E;
    const Jet& F = pg.metric.F;
    const Jet& G = pg.metric.G;
    const double e = E.value(), f = F.value(), g = G.value();
    const double Eu = E.partial(1, 0), Ev = E.partial(0, 1);
    const double Fu = F.partial(1, 0), Fv = F.partial(0, 1);
    const double Gu = G.partial(1, 0), Gv = G.partial(0, 1);
    const double Evv = E.partial(0, 2), Fuv = F.partial(1, 1), Guu = G.partial(2, 0);
    const std::array<std::array<double, 3>, 3> m1 = {{{-Evv / 2 + Fuv - Guu / 2, Eu / 2, Fu - Ev / 2},
                                                      {Fv - Gu / 2, e, f},
                                                      {Gv / 2, f, g}}};
    const std::array<std::array<double, 3>, 3> m2 = {{{0.0, Ev / 2, Gu / 2}, {Ev / 2, e, f}, {Gu / 2, f, g}}};
    const double w = e * g - f * f;
    k.intrinsic = (det3(m1) - det3(m2)) / (w * w);
    return k;
}

double normal_curvature_RD(const PointGeometry& pg) {
    const SecondFundamentalForm s = second_fundamental_form(pg);
    const Mat2 a = matmul(s.shape[0], s.shape[1]);
    const Mat2 b = matmul(s.shape[1], s.shape[0]);
    return a[1][0] - b[1][0];
}

double parallel_H_residual(const PointGeometry& pg) {
    const JetVector H = mean_curvature_jet(pg);
    double total = 0.0;
    for (int k = 0; k < 2; ++k) total += euclidean_norm(normal_part(pg, values(frame_derivative(pg, k, H))));
    return total;
}

double codazzi_residual(const PointGeometry& pg) {
    // omega_AB for tangent (0,1) and normal (0,1 -> e3,e4) index pairs.
    auto omega_t = [&](int a, int b, int k) {
        if (a == b) return 0.0;
        return a == 0 ? pg.omega12[k] : -pg.omega12[k];
    };
    auto omega_n = [&](int a, int b, int k) {
        if (a == b) return 0.0;
        return a == 0 ? pg.omega34[k] : -pg.omega34[k];
    };
    // t[b][i][j][k] = h^b_{ij,k}
    double t[2][2][2][2];
    for (int b = 0; b < 2; ++b) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) {
                    double s = frame_derivative(pg, k, pg.h[b][i][j]).value();
                    for (int c = 0; c < 2; ++c) s += kFrameSigns[2 + c] * pg.h[c][i][j].value() * omega_n(c, b, k);
                    for (int l = 0; l < 2; ++l) {
                        s -= omega_t(i, l, k) * pg.h[b][l][j].value() + omega_t(j, l, k) * pg.h[b][i][l].value();
                    }
                    t[b][i][j][k] = s;
                }
            }
        }
    }
    double worst = 0.0;
    for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) worst = std::max(worst, std::abs(t[b][i][j][k] - t[b][j][k][i]));
    return worst;
}

Jet laplace_beltrami(const Jet& f, const MetricJets& m) {
    const Jet det = m.E * m.G - m.F * m.F;
    const Jet root = sqrt(det);
    const Jet fu = f.d_du();
    const Jet fv = f.d_dv();
    const Jet flux_u = (m.G * fu - m.F * fv) / root;
    const Jet flux_v = (m.E * fv - m.F * fu) / root;
    return -(flux_u.d_du() + flux_v.d_dv()) / root;
}

PositionLaplacian position_laplacian(const PointGeometry& pg, bool want_bilaplacian) {
    if (want_bilaplacian && pg.order < 4) {
        throw Error(ErrorKind::OrderExceeded, "Delta^2 x needs position jets of order 4");
    }
    PositionLaplacian r;
    std::array<Jet, 4> lap;
    for (std::size_t c = 0; c < 4; ++c) {
        lap[c] = laplace_beltrami(pg.x[c], pg.metric);
        r.delta_x[c] = lap[c].value();
    }
    if (want_bilaplacian) {
        AmbientVector bi;
        for (std::size_t c = 0; c < 4; ++c) bi[c] = laplace_beltrami(lap[c], pg.metric).value();
        r.bilaplacian_residual = euclidean_norm(bi);
    }
    return r;
}

double frame_orthonormality_residual(const PointGeometry& pg) {
    double worst = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const double expected = a == b ? kFrameSigns[a] : 0.0;
            worst = std::max(worst, std::abs(minkowski_inner(values(pg.frame[a]), values(pg.frame[b])) - expected));
        }
    }
    return worst;
}

std::set<std::string> classify_point(const PointGeometry& pg, double tol) {
    std::set<std::string> labels;
    const MeanCurvature m = mean_curvature_vector(pg, tol);
    if (euclidean_norm(m.H) <= tol) labels.insert("MAXIMAL");
    if (m.causal == CausalClass::Lightlike) labels.insert("MARGINALLY-TRAPPED");
    if (std::abs(gaussian_curvature(pg).gauss) <= tol) labels.insert("FLAT");
    if (std::abs(normal_curvature_RD(pg)) <= tol) labels.insert("FLAT-NORMAL-BUNDLE");
    if (parallel_H_residual(pg) <= tol) labels.insert("PARALLEL-H");

    const AmbientVector h11 = h_vector(pg, 0, 0);
    const AmbientVector h12 = h_vector(pg, 0, 1);
    const AmbientVector h22 = h_vector(pg, 1, 1);
    if (std::abs(minkowski_inner(h12, m.H)) <= tol &&
        std::abs(minkowski_inner(h11, m.H) - minkowski_inner(h22, m.H)) <= tol) {
        labels.insert("PSEUDO-UMBILICAL");
    }
    if (euclidean_norm(h11 - m.H) <= tol && euclidean_norm(h22 - m.H) <= tol && euclidean_norm(h12) <= tol) {
        labels.insert("TOTALLY-UMBILICAL");
    }
    return labels;
}

}  // namespace minksurf
