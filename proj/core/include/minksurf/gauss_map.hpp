#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "minksurf/surface_dsl.hpp"
#include "minksurf/surface_geometry.hpp"

namespace minksurf {

/// nu = e3^e4 as a jet field. With the frame from adapted_frame this is
/// dual_unit_normal_bivector(x_u, x_v).
JetBivector gauss_map_jet(const PointGeometry& pg);
Bivector gauss_map(const PointGeometry& pg);

/// Componentwise Laplace-Beltrami of the six components of nu.
Bivector laplacian_gauss_direct(const PointGeometry& pg);
Bivector laplacian_gauss_direct(const SurfaceSpec& spec, double u, double v, int order = 3);

/// Same surface point with (e3, e4) replaced by (e3, -e4); nu changes sign.
PointGeometry flip_normal_gauge(const PointGeometry& pg);

/// Term indices for GaussLaplacianDecomposition::assemble.
enum GaussTerm : std::size_t { kTermNu, kTermNormalCurvature, kTermGradTrA3, kTermGradTrA4, kTermOmega34, kTermCount };

/// The Laplacian of nu split into its structural terms:
///   Delta nu = |h|^2 nu + 2 R^D e1^e2 + grad(trA3)^e4 + e3^grad(trA4)
///              + 2 sum_j omega34(e_j) H^e_j
struct GaussLaplacianDecomposition {
    Bivector nu;
    Bivector delta_nu;  // direct route
    Bivector delta_nu_formula;

    double c_nu = 0.0;    // |h|^2
    double c_norm = 0.0;  // 2 R^D
    std::array<double, 2> grad_trA3{};  // (e1(trA3), e2(trA3))
    std::array<double, 2> grad_trA4{};
    std::array<double, 2> omega34_coeffs{};  // 2 omega34(e_j)

    std::array<Bivector, kTermCount> terms{};

    double residual_first_kind = 0.0;  // |Delta nu - |h|^2 nu|
    double residual_harmonic = 0.0;    // |Delta nu|

    /// Sum of the terms, each multiplied by its scale.
    Bivector assemble(const std::array<double, kTermCount>& scales) const;
};

GaussLaplacianDecomposition laplacian_gauss_formula(const PointGeometry& pg);

struct FirstKindResiduals {
    double residual_first_kind = 0.0;
    double residual_harmonic = 0.0;
    double f_estimate = 0.0;  // -<Delta nu, nu>
};

FirstKindResiduals first_kind_residuals(const GaussLaplacianDecomposition& d);

/// |Delta nu_direct - Delta nu_formula| / (1 + |Delta nu_direct|) at one point.
double route_error(const GaussLaplacianDecomposition& d,
                   const std::array<double, kTermCount>& scales = {1, 1, 1, 1, 1});

/// Gradient relations for f = |h|^2 on a maximal surface with flat normal
/// bundle, minimized over the eigenframe sign. Throws NotApplicable
/// otherwise.
double lemma42_residual(const PointGeometry& pg, double tol = kDefaultResidualTolerance);

struct Grid {
    std::vector<std::pair<double, double>> points;
    int nu = 0;  // 0 for an explicit point list
    int nv = 0;

    /// Cell centers of an nu x nv subdivision of the domain.
    static Grid cell_centers(const Domain& d, int nu, int nv);
    static Grid explicit_points(std::vector<std::pair<double, double>> pts);
};

struct EvalOptions {
    int order = 3;
    double tol = kDefaultResidualTolerance;
    unsigned jobs = 0;  // 0: hardware concurrency
};

/// Everything computed at one grid point.
struct PointEvaluation {
    double u = 0.0;
    double v = 0.0;
    bool ok = false;
    std::optional<ErrorKind> error_kind;
    std::string error;

    AmbientVector position;
    Mat2 g{};
    MeanCurvature H;
    double h_squared = 0.0;
    std::array<Mat2, 2> h{};
    GaussianCurvature K;
    double RD = 0.0;
    std::array<double, 2> omega12{};
    std::array<double, 2> omega34{};
    AmbientVector e3;
    AmbientVector e4;

    GaussLaplacianDecomposition gauss;
    FirstKindResiduals first_kind;
    double route_error = 0.0;

    double dh_residual = 0.0;
    double codazzi_residual = 0.0;
    double frame_residual = 0.0;
    double nu_norm_defect = 0.0;  // |<nu,nu> + 1|
    double beltrami_residual = 0.0;  // |Delta x + 2H|
    AmbientVector delta_x;
    std::optional<double> bilaplacian_residual;
    std::optional<double> lemma42;

    std::set<std::string> labels;
};

PointEvaluation evaluate_point(const SurfaceSpec& spec, double u, double v, const EvalOptions& opt = {});

/// Evaluates every grid point on a worker pool; results are in grid order
/// regardless of the number of workers.
std::vector<PointEvaluation> evaluate_grid(const SurfaceSpec& spec, const Grid& grid, const EvalOptions& opt = {});

/// max over the grid of route_error; failed points are skipped.
double route_agreement(const SurfaceSpec& spec, const Grid& grid, const EvalOptions& opt = {},
                       const std::array<double, kTermCount>& scales = {1, 1, 1, 1, 1});

struct ContainmentCheck {
    double mean = 0.0;  // mean of <x,x>
    double stddev = 0.0;
    bool first_coordinate_positive = false;
};

ContainmentCheck containment(const std::vector<PointEvaluation>& evals);

/// Labels holding on the whole grid: the intersection of the pointwise
/// labels plus IN-S31, IN-H3, IN-LIGHTCONE, HARMONIC-GAUSS-MAP,
/// POINTWISE-1-TYPE-FIRST-KIND, GLOBAL-1-TYPE-FIRST-KIND and BIHARMONIC.
std::set<std::string> classify_grid(const std::vector<PointEvaluation>& evals, double tol = kDefaultResidualTolerance);

struct VerdictCheck {
    std::string name;
    std::vector<double> values;  // per point; empty for grid-level checks
    double max = 0.0;
    double mean = 0.0;
    double threshold = 0.0;
    bool holds = false;
};

struct VerdictGroup {
    std::string name;
    std::vector<VerdictCheck> checks;
    bool holds = false;  // all checks hold
};

struct VerdictSide {
    std::string statement;
    std::vector<VerdictGroup> groups;
    bool holds = false;  // any group holds
};

struct TheoremVerdict {
    std::string theorem;
    bool applicable = true;
    std::string precondition;
    VerdictSide side_a;
    VerdictSide side_b;
    bool consistent = true;
    std::vector<std::pair<double, double>> points;
    std::size_t failed_points = 0;
    std::string evidence;
    std::vector<std::string> notes;
};

const std::vector<std::string>& theorem_ids();

TheoremVerdict theorem_verdict(const std::string& theorem_id, const std::vector<PointEvaluation>& evals,
                               double tol = kDefaultResidualTolerance);
TheoremVerdict theorem_verdict(const std::string& theorem_id, const SurfaceSpec& spec, const Grid& grid,
                               double tol = kDefaultResidualTolerance, const EvalOptions& opt = {});

}  // namespace minksurf
