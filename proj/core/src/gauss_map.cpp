#include "minksurf/gauss_map.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <thread>

namespace minksurf {

namespace {

Bivector scaled(const Bivector& b, double s) {
    Bivector r = b;
    r *= s;
    return r;
}

AmbientVector frame_value(const PointGeometry& pg, int a) { return values(pg.frame[a]); }

double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double stddev_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size()));
}

}  // namespace

JetBivector gauss_map_jet(const PointGeometry& pg) { return wedge(pg.frame[2], pg.frame[3]); }

Bivector gauss_map(const PointGeometry& pg) { return values(gauss_map_jet(pg)); }

Bivector laplacian_gauss_direct(const PointGeometry& pg) {
    const JetBivector nu = gauss_map_jet(pg);
    Bivector r;
    for (std::size_t k = 0; k < 6; ++k) r[k] = laplace_beltrami(nu[k], pg.metric).value();
    return r;
}

Bivector laplacian_gauss_direct(const SurfaceSpec& spec, double u, double v, int order) {
    return laplacian_gauss_direct(adapted_frame(evaluate_immersion(spec, u, v, order), u, v));
}

PointGeometry flip_normal_gauge(const PointGeometry& pg) {
    PointGeometry r = pg;
    r.frame[3] = -r.frame[3];
    r.normal_orientation = -r.normal_orientation;
    for (auto& w : r.omega34) w = -w;
    for (auto& row : r.h[1])
        for (auto& c : row) c = -c;
    return r;
}

Bivector GaussLaplacianDecomposition::assemble(const std::array<double, kTermCount>& scales) const {
    Bivector sum;
    for (std::size_t t = 0; t < kTermCount; ++t) sum += scaled(terms[t], scales[t]);
    return sum;
}

GaussLaplacianDecomposition laplacian_gauss_formula(const PointGeometry& pg) {
    GaussLaplacianDecomposition d;
    d.nu = gauss_map(pg);
    d.delta_nu = laplacian_gauss_direct(pg);

    const AmbientVector e1 = frame_value(pg, 0), e2 = frame_value(pg, 1);
    const AmbientVector e3 = frame_value(pg, 2), e4 = frame_value(pg, 3);
    const MeanCurvature H = mean_curvature_vector(pg);

    d.c_nu = squared_second_fundamental_form(pg);
    d.c_norm = 2 * normal_curvature_RD(pg);
    const Jet tr3 = pg.h[0][0][0] + pg.h[0][1][1];
    const Jet tr4 = pg.h[1][0][0] + pg.h[1][1][1];
    AmbientVector grad3, grad4;
    const std::array<AmbientVector, 2> tangent = {e1, e2};
    Bivector omega_term;
    for (int i = 0; i < 2; ++i) {
        d.grad_trA3[i] = frame_derivative(pg, i, tr3).value();
        d.grad_trA4[i] = frame_derivative(pg, i, tr4).value();
        grad3 += d.grad_trA3[i] * tangent[i];
        grad4 += d.grad_trA4[i] * tangent[i];
        d.omega34_coeffs[i] = 2 * pg.omega34[i];
        omega_term += scaled(wedge(H.H, tangent[i]), d.omega34_coeffs[i]);
    }

    d.terms[kTermNu] = scaled(d.nu, d.c_nu);
    d.terms[kTermNormalCurvature] = scaled(wedge(e1, e2), d.c_norm);
    d.terms[kTermGradTrA3] = wedge(grad3, e4);
    d.terms[kTermGradTrA4] = wedge(e3, grad4);
    d.terms[kTermOmega34] = omega_term;
    d.delta_nu_formula = d.assemble({1, 1, 1, 1, 1});

    d.residual_first_kind = euclidean_norm(d.delta_nu - d.terms[kTermNu]);
    d.residual_harmonic = euclidean_norm(d.delta_nu);
    return d;
}

FirstKindResiduals first_kind_residuals(const GaussLaplacianDecomposition& d) {
    return {d.residual_first_kind, d.residual_harmonic, -bivector_inner(d.delta_nu, d.nu)};
}

double route_error(const GaussLaplacianDecomposition& d, const std::array<double, kTermCount>& scales) {
    return euclidean_norm(d.delta_nu - d.assemble(scales)) / (1 + euclidean_norm(d.delta_nu));
}

double lemma42_residual(const PointGeometry& pg, double tol) {
    const MeanCurvature H = mean_curvature_vector(pg, tol);
    const double rd = normal_curvature_RD(pg);
    if (euclidean_norm(H.H) > tol || std::abs(rd) > tol) {
        throw Error(ErrorKind::NotApplicable, "gradient relations need a maximal point with flat normal bundle");
    }
    const Jet f = squared_second_fundamental_form_jet(pg);
    const double fv = f.value();
    const double e1f = frame_derivative(pg, 0, f).value();
    const double e2f = frame_derivative(pg, 1, f).value();
    double best = INFINITY;
    for (double eps : {-1.0, 1.0}) {
        const double r = std::max(std::abs(e1f + 4 * eps * pg.omega12[1] * fv),
                                  std::abs(e2f - 4 * eps * pg.omega12[0] * fv));
        best = std::min(best, r);
    }
    return best;
}

Grid Grid::cell_centers(const Domain& d, int nu, int nv) {
    if (nu < 2 || nv < 2) throw Error(ErrorKind::InvalidConfig, "grid needs at least 2 points per axis");
    Grid g;
    g.nu = nu;
    g.nv = nv;
    const double du = (d.u_max - d.u_min) / nu;
    const double dv = (d.v_max - d.v_min) / nv;
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) g.points.emplace_back(d.u_min + (i + 0.5) * du, d.v_min + (j + 0.5) * dv);
    return g;
}

Grid Grid::explicit_points(std::vector<std::pair<double, double>> pts) {
    if (pts.empty()) throw Error(ErrorKind::InvalidConfig, "empty point list");
    Grid g;
    g.points = std::move(pts);
    return g;
}

PointEvaluation evaluate_point(const SurfaceSpec& spec, double u, double v, const EvalOptions& opt) {
    PointEvaluation pe;
    pe.u = u;
    pe.v = v;
    try {
        const std::array<Jet, 4> x = evaluate_immersion(spec, u, v, opt.order);
        for (std::size_t c = 0; c < 4; ++c) pe.position[c] = x[c].value();
        const PointGeometry pg = adapted_frame(x, u, v);

        pe.g = pg.g;
        pe.H = mean_curvature_vector(pg);
        pe.h_squared = squared_second_fundamental_form(pg);
        pe.h = second_fundamental_form(pg).coeffs;
        pe.K = gaussian_curvature(pg);
        pe.RD = normal_curvature_RD(pg);
        pe.omega12 = pg.omega12;
        pe.omega34 = pg.omega34;
        pe.e3 = values(pg.frame[2]);
        pe.e4 = values(pg.frame[3]);

        pe.gauss = laplacian_gauss_formula(pg);
        pe.first_kind = first_kind_residuals(pe.gauss);
        pe.route_error = route_error(pe.gauss);

        pe.dh_residual = parallel_H_residual(pg);
        pe.codazzi_residual = codazzi_residual(pg);
        pe.frame_residual = frame_orthonormality_residual(pg);
        pe.nu_norm_defect = std::abs(bivector_inner(pe.gauss.nu, pe.gauss.nu) + 1);
        const PositionLaplacian lap = position_laplacian(pg, opt.order >= 4);
        pe.delta_x = lap.delta_x;
        pe.bilaplacian_residual = lap.bilaplacian_residual;
        pe.beltrami_residual = euclidean_norm(lap.delta_x + 2.0 * pe.H.H);
        try {
            pe.lemma42 = lemma42_residual(pg, opt.tol);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotApplicable) throw;
        }
        pe.labels = classify_point(pg, opt.tol);
        pe.ok = true;
    } catch (const Error& e) {
        pe.ok = false;
        pe.error_kind = e.kind();
        pe.error = e.what();
    }
    return pe;
}

std::vector<PointEvaluation> evaluate_grid(const SurfaceSpec& spec, const Grid& grid, const EvalOptions& opt) {
    const std::size_t n = grid.points.size();
    std::vector<PointEvaluation> out(n);
    unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            out[i] = evaluate_point(spec, grid.points[i].first, grid.points[i].second, opt);
        }
    };
    if (jobs <= 1) {
        worker();
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

double route_agreement(const SurfaceSpec& spec, const Grid& grid, const EvalOptions& opt,
                       const std::array<double, kTermCount>& scales) {
    double worst = 0.0;
    for (const auto& pe : evaluate_grid(spec, grid, opt)) {
        if (pe.ok) worst = std::max(worst, route_error(pe.gauss, scales));
    }
    return worst;
}

ContainmentCheck containment(const std::vector<PointEvaluation>& evals) {
    std::vector<double> q;
    ContainmentCheck c;
    c.first_coordinate_positive = true;
    for (const auto& pe : evals) {
        if (!pe.ok) continue;
        q.push_back(minkowski_inner(pe.position, pe.position));
        if (pe.position[0] <= 0) c.first_coordinate_positive = false;
    }
    c.mean = mean_of(q);
    c.stddev = stddev_of(q);
    return c;
}

std::set<std::string> classify_grid(const std::vector<PointEvaluation>& evals, double tol) {
    std::set<std::string> labels;
    bool first = true;
    bool harmonic = true, first_kind = true, biharmonic = true;
    std::vector<double> f;
    for (const auto& pe : evals) {
        if (!pe.ok) continue;
        if (first) {
            labels = pe.labels;
            first = false;
        } else {
            std::set<std::string> both;
            std::set_intersection(labels.begin(), labels.end(), pe.labels.begin(), pe.labels.end(),
                                  std::inserter(both, both.begin()));
            labels = std::move(both);
        }
        harmonic = harmonic && pe.first_kind.residual_harmonic <= tol;
        first_kind = first_kind && pe.first_kind.residual_first_kind <= tol;
        biharmonic = biharmonic && pe.bilaplacian_residual && *pe.bilaplacian_residual <= tol;
        f.push_back(pe.first_kind.f_estimate);
    }
    if (first) return labels;

    const ContainmentCheck c = containment(evals);
    if (c.stddev <= 1e-8) {
        if (std::abs(c.mean) <= 1e-8) {
            labels.insert("IN-LIGHTCONE");
        } else if (c.mean > 0) {
            labels.insert("IN-S31");
        } else if (c.first_coordinate_positive) {
            labels.insert("IN-H3");
        }
    }
    if (harmonic) labels.insert("HARMONIC-GAUSS-MAP");
    if (first_kind) {
        labels.insert("POINTWISE-1-TYPE-FIRST-KIND");
        if (stddev_of(f) <= 1e-6 * std::max(1.0, std::abs(mean_of(f)))) labels.insert("GLOBAL-1-TYPE-FIRST-KIND");
    }
    if (biharmonic) labels.insert("BIHARMONIC");
    return labels;
}

namespace {

VerdictCheck point_check(const std::vector<const PointEvaluation*>& pts, std::string name, double threshold,
                         const std::function<double(const PointEvaluation&)>& fn) {
    VerdictCheck c;
    c.name = std::move(name);
    c.threshold = threshold;
    for (const auto* p : pts) c.values.push_back(fn(*p));
    c.max = c.values.empty() ? 0.0 : *std::max_element(c.values.begin(), c.values.end());
    c.mean = mean_of(c.values);
    c.holds = c.max <= threshold;
    return c;
}

// Grid-level constancy: standard deviation against a relative bound.
VerdictCheck constancy_check(const std::vector<const PointEvaluation*>& pts, std::string name,
                             const std::function<double(const PointEvaluation&)>& fn) {
    std::vector<double> xs;
    for (const auto* p : pts) xs.push_back(fn(*p));
    VerdictCheck c;
    c.name = std::move(name);
    c.mean = mean_of(xs);
    c.max = stddev_of(xs);
    c.threshold = 1e-6 * std::max(1.0, std::abs(c.mean));
    c.holds = c.max <= c.threshold;
    return c;
}

VerdictGroup group(std::string name, std::vector<VerdictCheck> checks) {
    VerdictGroup g;
    g.name = std::move(name);
    g.checks = std::move(checks);
    g.holds = std::all_of(g.checks.begin(), g.checks.end(), [](const VerdictCheck& c) { return c.holds; });
    return g;
}

VerdictSide side(std::string statement, std::vector<VerdictGroup> groups) {
    VerdictSide s;
    s.statement = std::move(statement);
    s.groups = std::move(groups);
    s.holds = std::any_of(s.groups.begin(), s.groups.end(), [](const VerdictGroup& g) { return g.holds; });
    return s;
}

double h_max(const PointEvaluation& p) {
    double m = 0.0;
    for (const auto& mat : p.h)
        for (const auto& row : mat)
            for (double x : row) m = std::max(m, std::abs(x));
    return m;
}

AmbientVector unit_direction(const AmbientVector& a) {
    AmbientVector r = a;
    r *= 1.0 / euclidean_norm(a);
    return r;
}

double direction_distance(const AmbientVector& a, const AmbientVector& b) {
    return std::min(euclidean_norm(a - b), euclidean_norm(a + b));
}

// Distance of each point's null normal directions to one fixed null
// direction, taken from the first point.
std::vector<double> constant_null_normal(const std::vector<const PointEvaluation*>& pts) {
    std::vector<double> best;
    if (pts.empty()) return best;
    for (double s : {-1.0, 1.0}) {
        const AmbientVector d = unit_direction(pts.front()->e3 + s * pts.front()->e4);
        std::vector<double> dist;
        for (const auto* p : pts) {
            dist.push_back(std::min(direction_distance(d, unit_direction(p->e3 + p->e4)),
                                    direction_distance(d, unit_direction(p->e3 - p->e4))));
        }
        if (best.empty() || *std::max_element(dist.begin(), dist.end()) < *std::max_element(best.begin(), best.end())) {
            best = dist;
        }
    }
    return best;
}

VerdictCheck values_check(std::string name, std::vector<double> values, double threshold) {
    VerdictCheck c;
    c.name = std::move(name);
    c.values = std::move(values);
    c.max = c.values.empty() ? 0.0 : *std::max_element(c.values.begin(), c.values.end());
    c.mean = mean_of(c.values);
    c.threshold = threshold;
    c.holds = c.max <= threshold;
    return c;
}

VerdictCheck quadric_check(const std::vector<const PointEvaluation*>& pts, std::string name, int sign) {
    std::vector<double> q;
    bool x1_positive = true;
    for (const auto* p : pts) {
        q.push_back(minkowski_inner(p->position, p->position));
        x1_positive = x1_positive && p->position[0] > 0;
    }
    VerdictCheck c;
    c.name = std::move(name);
    c.mean = mean_of(q);
    c.max = stddev_of(q);
    c.threshold = 1e-8;
    c.holds = c.max <= c.threshold && sign * c.mean > 1e-8 && (sign > 0 || x1_positive);
    return c;
}

}  // namespace

const std::vector<std::string>& theorem_ids() {
    static const std::vector<std::string> kIds = {"T3.4", "T3.5", "T3.7", "T3.11", "T4.1",
                                                  "T4.3", "T4.4", "T4.6", "T4.8"};
    return kIds;
}

TheoremVerdict theorem_verdict(const std::string& id, const std::vector<PointEvaluation>& evals, double tol) {
    const auto& ids = theorem_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
        throw Error(ErrorKind::UnknownTheorem, "unknown theorem id '" + id + "'");
    }
    TheoremVerdict tv;
    tv.theorem = id;
    std::vector<const PointEvaluation*> pts;
    for (const auto& pe : evals) {
        if (pe.ok) {
            pts.push_back(&pe);
            tv.points.emplace_back(pe.u, pe.v);
        } else {
            ++tv.failed_points;
        }
    }
    if (pts.empty()) throw Error(ErrorKind::DegeneratePlane, "no grid point could be evaluated");

    auto norm_H = [](const PointEvaluation& p) { return euclidean_norm(p.H.H); };
    const bool maximal = std::all_of(pts.begin(), pts.end(), [&](auto* p) { return norm_H(*p) <= tol; });
    const bool non_maximal = std::all_of(pts.begin(), pts.end(), [&](auto* p) { return norm_H(*p) > tol; });
    const bool lightlike_H = non_maximal && std::all_of(pts.begin(), pts.end(), [&](auto* p) {
                                 return std::abs(p->H.HH) <= tol;
                             });

    auto harmonic = [&] {
        return point_check(pts, "|Delta nu|", tol,
                           [](const PointEvaluation& p) { return p.first_kind.residual_harmonic; });
    };
    auto first_kind = [&] {
        return point_check(pts, "|Delta nu - |h|^2 nu|", tol,
                           [](const PointEvaluation& p) { return p.first_kind.residual_first_kind; });
    };
    auto f_constant = [&] {
        return constancy_check(pts, "std(f)", [](const PointEvaluation& p) { return p.first_kind.f_estimate; });
    };
    auto flat = [&] { return point_check(pts, "|K|", tol, [](const PointEvaluation& p) { return std::abs(p.K.gauss); }); };
    auto flat_normal = [&] {
        return point_check(pts, "|R^D|", tol, [](const PointEvaluation& p) { return std::abs(p.RD); });
    };
    auto parallel = [&] {
        return point_check(pts, "|DH|", tol, [](const PointEvaluation& p) { return p.dh_residual; });
    };
    auto null_H = [&] {
        return point_check(pts, "|<H,H>|", tol, [](const PointEvaluation& p) { return std::abs(p.H.HH); });
    };

    if (id == "T3.4") {
        tv.applicable = maximal;
        tv.precondition = "maximal (|H| <= tol at every point)";
        tv.side_a = side("Gauss map harmonic", {group("harmonic", {harmonic()})});
        tv.side_b = side("flat with flat normal bundle", {group("flat, flat normal bundle", {flat(), flat_normal()})});
    } else if (id == "T3.5") {
        tv.applicable = non_maximal;
        tv.precondition = "non-maximal (|H| > tol at every point)";
        tv.side_a = side("Gauss map harmonic", {group("harmonic", {harmonic()})});
        tv.side_b = side("flat with light-like parallel H",
                         {group("flat, light-like H, parallel H", {flat(), null_H(), parallel()})});
    } else if (id == "T3.7" || id == "T3.11") {
        tv.precondition = "none";
        tv.side_a = side("Gauss map harmonic", {group("harmonic", {harmonic()})});
        std::vector<VerdictGroup> types;
        types.push_back(group("space-like plane", {point_check(pts, "max |h^b_ij|", tol, h_max)}));
        types.push_back(group("graph over a degenerate hyperplane with constant Laplacian",
                              {flat(), values_check("constant null normal", constant_null_normal(pts), 1e-6),
                               parallel()}));
        types.push_back(group("flat surface in the light cone",
                              {flat(), point_check(pts, "|<x,x>|", tol, [](const PointEvaluation& p) {
                                   return std::abs(minkowski_inner(p.position, p.position));
                               })}));
        types.push_back(group("flat marginally trapped surface in de Sitter space",
                              {flat(), null_H(), parallel(), quadric_check(pts, "<x,x> constant > 0", 1)}));
        types.push_back(group("flat marginally trapped surface in hyperbolic space",
                              {flat(), null_H(), parallel(), quadric_check(pts, "<x,x> constant < 0, x1 > 0", -1)}));
        tv.side_b = side("one of the six harmonic types", std::move(types));
    } else if (id == "T4.1") {
        tv.applicable = maximal;
        tv.precondition = "maximal (|H| <= tol at every point)";
        tv.side_a = side("pointwise 1-type Gauss map of the first kind", {group("first kind", {first_kind()})});
        tv.side_b = side("flat normal bundle", {group("flat normal bundle", {flat_normal()})});
    } else if (id == "T4.4") {
        tv.applicable = non_maximal;
        tv.precondition = "non-maximal (|H| > tol at every point)";
        tv.side_a = side("pointwise 1-type Gauss map of the first kind", {group("first kind", {first_kind()})});
        tv.side_b = side("parallel mean curvature vector", {group("parallel H", {parallel()})});
    } else if (id == "T4.3" || id == "T4.6") {
        if (id == "T4.3") {
            tv.applicable = maximal;
            tv.precondition = "maximal (|H| <= tol at every point)";
        } else {
            tv.applicable = lightlike_H;
            tv.precondition = "light-like H (|<H,H>| <= tol, |H| > tol at every point)";
        }
        tv.side_a = side("global 1-type Gauss map of the first kind",
                         {group("first kind, constant f", {first_kind(), f_constant()})});
        tv.side_b = side("Gauss map harmonic", {group("harmonic", {harmonic()})});
    } else {  // T4.8
        tv.applicable = non_maximal;
        tv.precondition = "non-maximal (|H| > tol at every point)";
        tv.side_a = side("global 1-type Gauss map of the first kind",
                         {group("first kind, constant f", {first_kind(), f_constant()})});
        tv.side_b = side("parallel H and constant Gaussian curvature",
                         {group("parallel H, constant K",
                                {parallel(), constancy_check(pts, "std(K)", [](const PointEvaluation& p) {
                                     return p.K.gauss;
                                 })})});
    }

    tv.consistent = !tv.applicable || tv.side_a.holds == tv.side_b.holds;
    char buf[96];
    std::snprintf(buf, sizeof buf, "numerical evidence at tolerance %.3g on %zu points", tol, pts.size());
    tv.evidence = buf;
    if (!tv.applicable) tv.notes.push_back("precondition not met on the grid; equivalence not tested");
    if (tv.failed_points) tv.notes.push_back("some grid points could not be evaluated and were skipped");
    tv.notes.push_back("only-if directions are not claimed beyond the sampled points");
    return tv;
}

TheoremVerdict theorem_verdict(const std::string& id, const SurfaceSpec& spec, const Grid& grid, double tol,
                               const EvalOptions& opt) {
    const auto& ids = theorem_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
        throw Error(ErrorKind::UnknownTheorem, "unknown theorem id '" + id + "'");
    }
    EvalOptions o = opt;
    o.tol = tol;
    return theorem_verdict(id, evaluate_grid(spec, grid, o), tol);
}

}  // namespace minksurf
