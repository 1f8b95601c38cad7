#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>

#include "minksurf/indefinite_linalg.hpp"
#include "minksurf/jet.hpp"

namespace minksurf {

using Mat2 = std::array<std::array<double, 2>, 2>;

/// Sign conventions used throughout: eps = (1, 1, 1, -1) for (e1, e2, e3, e4),
/// so e3 is the space-like and e4 the time-like unit normal.
inline constexpr std::array<double, 4> kFrameSigns = {1.0, 1.0, 1.0, -1.0};

inline constexpr double kDefaultResidualTolerance = 1e-8;

/// Metric coefficients E = <x_u,x_u>, F = <x_u,x_v>, G = <x_v,x_v> as jets.
struct MetricJets {
    Jet E, F, G;
};

struct FirstFundamentalForm {
    Mat2 g{};
    bool spacelike = false;
};

/// Frame, connection and second-fundamental-form data at one parameter
/// point. The jet fields are what every derived quantity is computed from;
/// the scalar fields are their values at the base point.
struct PointGeometry {
    double u = 0.0;
    double v = 0.0;
    int order = 3;

    std::array<Jet, 4> x;  // position components
    std::array<JetVector, 2> tangents;  // x_u, x_v
    MetricJets metric;
    Mat2 g{};
    Mat2 g_inv{};

    /// e_i = frame_coeffs[i][0] x_u + frame_coeffs[i][1] x_v for i = 0, 1.
    std::array<std::array<Jet, 2>, 2> frame_coeffs;
    /// e1, e2, e3, e4 as jet fields.
    std::array<JetVector, 4> frame;
    /// Orientation reported by the normal-frame construction before e4 was
    /// flipped to make e3^e4 the Gauss map.
    int normal_orientation = 1;

    /// omega12(e_k) = <D_{e_k} e1, e2> and omega34(e_k) = <D_{e_k} e3, e4>.
    std::array<double, 2> omega12{};
    std::array<double, 2> omega34{};

    /// h[b][i][j] = <h(e_i, e_j), e_{3+b}> as jets.
    std::array<std::array<std::array<Jet, 2>, 2>, 2> h;
};

/// Directional derivative e_i(f) of a scalar jet field.
Jet frame_derivative(const PointGeometry& pg, int i, const Jet& f);
JetVector frame_derivative(const PointGeometry& pg, int i, const JetVector& f);

/// Component of v normal to the surface.
AmbientVector normal_part(const PointGeometry& pg, const AmbientVector& v);

FirstFundamentalForm first_fundamental_form(const std::array<Jet, 4>& x);

/// Builds the adapted frame, connection forms and second fundamental form
/// jets from position jets of order 3 or 4.
PointGeometry adapted_frame(const std::array<Jet, 4>& x, double u = 0.0, double v = 0.0);

struct SecondFundamentalForm {
    /// coeffs[b][i][j] = h^{3+b}_{ij}
    std::array<Mat2, 2> coeffs{};
    /// Shape operators A3, A4 in the basis (e1, e2).
    std::array<Mat2, 2> shape{};
    /// max |h^b_12 - h^b_21|
    double asymmetry = 0.0;
};

SecondFundamentalForm second_fundamental_form(const PointGeometry& pg);

struct MeanCurvature {
    AmbientVector H;
    double HH = 0.0;
    CausalClass causal = CausalClass::Zero;
};

MeanCurvature mean_curvature_vector(const PointGeometry& pg, double tol = kDefaultLinalgTolerance);
/// H as a jet field (one order below the h-coefficients' order).
JetVector mean_curvature_jet(const PointGeometry& pg);

double squared_second_fundamental_form(const PointGeometry& pg);
/// Same quantity as a jet field.
Jet squared_second_fundamental_form_jet(const PointGeometry& pg);

struct GaussianCurvature {
    double gauss = 0.0;      // eps3 (det A3 - det A4)
    double formula = 0.0;    // 2<H,H> - |h|^2/2
    double intrinsic = 0.0;  // Brioschi formula on g
};

GaussianCurvature gaussian_curvature(const PointGeometry& pg);

/// R^D(e1, e2; e3, e4) = <[A3, A4] e1, e2>.
double normal_curvature_RD(const PointGeometry& pg);

/// Sum over i of the Euclidean norm of the normal part of D_{e_i} H.
double parallel_H_residual(const PointGeometry& pg);

/// max |h^b_{ij,k} - h^b_{jk,i}| with the covariant derivative expanded in
/// the stored connection forms.
double codazzi_residual(const PointGeometry& pg);

struct PositionLaplacian {
    AmbientVector delta_x;
    /// Euclidean norm of Delta^2 x; only with order-4 jets.
    std::optional<double> bilaplacian_residual;
};

/// Delta = -(1/sqrt det g) d_i (sqrt det g g^{ij} d_j), so Delta x = -2H.
PositionLaplacian position_laplacian(const PointGeometry& pg, bool want_bilaplacian);

/// Laplace-Beltrami (with the sign above) of a scalar jet field; the
/// result has order f.order() - 2.
Jet laplace_beltrami(const Jet& f, const MetricJets& metric);

/// max |<e_A, e_B> - eps_A delta_AB|
double frame_orthonormality_residual(const PointGeometry& pg);

/// Pointwise labels: MAXIMAL, MARGINALLY-TRAPPED, FLAT, FLAT-NORMAL-BUNDLE,
/// PARALLEL-H, PSEUDO-UMBILICAL, TOTALLY-UMBILICAL. Containment labels need
/// the whole grid and come from classify_grid.
std::set<std::string> classify_point(const PointGeometry& pg, double tol = kDefaultResidualTolerance);

}  // namespace minksurf
