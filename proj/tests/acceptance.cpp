// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "minksurf/gauss_map.hpp"
#include "minksurf/report.hpp"

using namespace minksurf;

namespace {

struct Named {
    std::string name;
    ParamMap params;
};

const std::vector<Named>& catalog_cases() {
    static const std::vector<Named> cases = {
        {"plane", {}},
        {"graph(u*v)", {}},
        {"graph(u^2 - v^2)", {}},
        {"graph(exp(u)*cos(v))", {}},
        {"type-i", {{"b", 0}}},
        {"type-i", {{"b", 0.5}}},
        {"type-ii", {{"a", 1}}},
        {"s31-flat", {{"r", 1}}},
        {"h3-flat", {{"r", 1}}},
        {"example52", {}},
        {"product", {{"a", 1}, {"b", 2}}},
        {"product", {{"a", 3}, {"b", 4}}},
    };
    return cases;
}

std::string label(const Named& n) {
    std::string s = n.name;
    for (const auto& [k, v] : n.params) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " %s=%g", k.c_str(), v);
        s += buf;
    }
    return s;
}

Grid grid7(const SurfaceSpec& s) { return Grid::cell_centers(s.domain, 7, 7); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

char buf[256];

Outcome criterion1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const SurfaceSpec s = catalog_lookup("example52", {});
    std::vector<std::pair<double, double>> pts;
    for (double u : {0.5, 1.0, 2.0})
        for (double v : {-0.5, 0.0, 0.5}) pts.emplace_back(u, v);
    double worst = 0.0;
    for (const auto& p : evaluate_grid(s, Grid::explicit_points(pts), {3, 1e-8, 1})) {
        o.require(p.ok, "evaluation failed");
        const double k = std::pow(p.u, -4);
        for (double K : {p.K.gauss, p.K.formula, p.K.intrinsic}) worst = std::max(worst, std::abs(K - k) / k);
        worst = std::max(worst, std::abs(p.h_squared + 2 * k) / (2 * k));
    }
    const double t = seconds_since(t0);
    o.require(worst <= 1e-6, "relative error too large");
    o.require(t < 1.0, "too slow");
    std::snprintf(buf, sizeof buf, "max relative error %.2e, %.3f s", worst, t);
    if (o.pass) o.detail = buf;
    else o.detail += std::string(" (") + buf + ")";
    return o;
}

Outcome criterion2() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const auto& c : catalog_cases()) {
        const SurfaceSpec s = catalog_lookup(c.name, c.params);
        const double a = route_agreement(s, grid7(s));
        worst = std::max(worst, a);
        o.require(a <= 1e-6, label(c));
    }
    const double t = seconds_since(t0);
    o.require(t < 10.0, "too slow");
    std::snprintf(buf, sizeof buf, "max normalized route disagreement %.2e over %zu surfaces, %.3f s", worst,
                  catalog_cases().size(), t);
    if (o.pass) o.detail = buf;
    return o;
}

Outcome criterion3() {
    Outcome o;
    const std::vector<Named> typed = {
        {"type-i", {{"b", 0}}}, {"type-i", {{"b", 0.5}}}, {"type-ii", {{"a", 1}}},
        {"s31-flat", {{"r", 1}}}, {"h3-flat", {{"r", 1}}},
    };
    const std::vector<Named> graphs = {{"graph(u*v)", {}}, {"graph(u^2 - v^2)", {}}, {"graph(exp(u)*cos(v))", {}}};
    double worst = 0.0;
    auto check = [&](const Named& c, bool typed_surface) {
        const SurfaceSpec s = catalog_lookup(c.name, c.params);
        const auto evals = evaluate_grid(s, grid7(s));
        for (const auto& p : evals) {
            o.require(p.ok, label(c) + ": evaluation failed");
            worst = std::max(worst, p.first_kind.residual_harmonic);
            o.require(p.first_kind.residual_harmonic <= 1e-8, label(c) + ": |Delta nu| too large");
        }
        const auto labels = classify_grid(evals);
        o.require(labels.count("FLAT"), label(c) + ": FLAT missing");
        if (typed_surface) {
            o.require(labels.count("MARGINALLY-TRAPPED"), label(c) + ": MARGINALLY-TRAPPED missing");
            o.require(labels.count("PARALLEL-H"), label(c) + ": PARALLEL-H missing");
        }
    };
    for (const auto& c : typed) check(c, true);
    for (const auto& c : graphs) check(c, false);
    std::snprintf(buf, sizeof buf, "max |Delta nu| %.2e on 8 surfaces", worst);
    if (o.pass) o.detail = buf;
    return o;
}

Outcome criterion4() {
    Outcome o;
    double worst_fk = 0.0;
    {
        const SurfaceSpec s = catalog_lookup("example52", {});
        for (const auto& p : evaluate_grid(s, grid7(s))) {
            o.require(p.ok, "example52: evaluation failed");
            worst_fk = std::max(worst_fk, p.first_kind.residual_first_kind);
            const double f = -2 * std::pow(p.u, -4);
            o.require(std::abs(p.first_kind.f_estimate - f) <= 1e-6 * std::abs(f), "example52: f differs from -2u^-4");
        }
    }
    double worst_std = 0.0;
    for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{3.0, 4.0}}) {
        const SurfaceSpec s = catalog_lookup("product", {{"a", a}, {"b", b}});
        const double f0 = 1 / (b * b) - 1 / (a * a);
        std::vector<double> f;
        for (const auto& p : evaluate_grid(s, grid7(s))) {
            o.require(p.ok, "product: evaluation failed");
            worst_fk = std::max(worst_fk, p.first_kind.residual_first_kind);
            f.push_back(p.first_kind.f_estimate);
            o.require(std::abs(p.first_kind.f_estimate - f0) <= 1e-8, "product: f differs from 1/b^2 - 1/a^2");
        }
        double mean = 0.0, var = 0.0;
        for (double x : f) mean += x / f.size();
        for (double x : f) var += (x - mean) * (x - mean) / f.size();
        worst_std = std::max(worst_std, std::sqrt(var));
    }
    o.require(worst_fk <= 1e-8, "first-kind residual too large");
    o.require(worst_std <= 1e-9, "f not grid-constant on the product surface");
    std::snprintf(buf, sizeof buf, "max first-kind residual %.2e, product std(f) %.2e", worst_fk, worst_std);
    if (o.pass) o.detail = buf;
    return o;
}

Outcome criterion5() {
    Outcome o;
    const SurfaceSpec cubic = catalog_lookup("graph(u^3)", {});
    double min_fk = INFINITY, min_dh = INFINITY;
    for (const auto& p : evaluate_grid(cubic, grid7(cubic))) {
        o.require(p.ok, "graph(u^3): evaluation failed");
        if (std::abs(p.u) < 0.1) continue;  // u = 0 is a maximal line of this surface
        min_fk = std::min(min_fk, p.first_kind.residual_first_kind);
        min_dh = std::min(min_dh, p.dh_residual);
    }
    o.require(min_fk > 1e-3, "graph(u^3): first-kind residual not detected");
    o.require(min_dh > 1e-3, "graph(u^3): DH residual not detected");
    const TheoremVerdict v = theorem_verdict("T4.4", cubic, Grid::cell_centers({0.1, 1, -1, 1}, 7, 7));
    o.require(v.applicable && !v.side_a.holds && !v.side_b.holds && v.consistent,
              "graph(u^3): equivalence not reported as consistent with both sides failing");

    const SurfaceSpec generic = fixtures::generic_surface();
    double min_break = INFINITY;
    for (std::size_t t = 0; t < kTermCount; ++t) {
        std::array<double, kTermCount> scales = {1, 1, 1, 1, 1};
        scales[t] = 1.01;
        const double a = route_agreement(generic, grid7(generic), {}, scales);
        min_break = std::min(min_break, a);
        o.require(a > 1e-6, "a 1% mutation of term " + std::to_string(t) + " went undetected");
    }
    std::snprintf(buf, sizeof buf, "min residuals %.2e / %.2e; weakest 1%% mutation gives %.2e", min_fk, min_dh,
                  min_break);
    if (o.pass) o.detail = buf;
    return o;
}

Outcome criterion6() {
    Outcome o;
    double cod = 0, kag = 0, nn = 0, fr = 0, bel = 0;
    for (const auto& c : catalog_cases()) {
        const SurfaceSpec s = catalog_lookup(c.name, c.params);
        for (const auto& p : evaluate_grid(s, grid7(s))) {
            o.require(p.ok, label(c) + ": evaluation failed");
            cod = std::max(cod, p.codazzi_residual);
            const double scale = 1 + std::abs(p.K.gauss);
            kag = std::max({kag, std::abs(p.K.gauss - p.K.formula) / scale, std::abs(p.K.gauss - p.K.intrinsic) / scale});
            nn = std::max(nn, p.nu_norm_defect);
            fr = std::max(fr, p.frame_residual);
            bel = std::max(bel, p.beltrami_residual);
        }
    }
    o.require(cod <= 1e-8, "Codazzi residual");
    o.require(kag <= 1e-8, "curvature routes disagree");
    o.require(nn <= 1e-10, "<nu,nu> + 1");
    o.require(fr <= 1e-10, "frame orthonormality");
    o.require(bel <= 1e-8, "Delta x + 2H");
    std::snprintf(buf, sizeof buf, "codazzi %.1e, K %.1e, nu %.1e, frame %.1e, beltrami %.1e", cod, kag, nn, fr, bel);
    if (o.pass) o.detail = buf;
    return o;
}

Outcome criterion7() {
    Outcome o;
    double worst = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
        for (const char* name : {"s31-flat", "h3-flat"}) {
            const double target = (name[0] == 's' ? 1 : -1) / (r * r);
            const SurfaceSpec s = catalog_lookup(name, {{"r", r}});
            for (const auto& p : evaluate_grid(s, grid7(s))) {
                worst = std::max(worst, std::abs(minkowski_inner(p.position, p.position) - target));
            }
            RunConfig cfg;
            cfg.command = Command::Verify;
            cfg.theorem = "T3.5";
            cfg.catalog = name;
            cfg.params = {{"r", r}};
            const RunResult res = run(cfg);
            o.require(res.exit_code == 0, std::string(name) + ": verify T3.5 exit " + std::to_string(res.exit_code));
            o.require(theorem_verdict("T3.5", s, grid7(s)).applicable, std::string(name) + ": T3.5 not applicable");
        }
    }
    o.require(worst <= 1e-10, "quadric containment");
    std::snprintf(buf, sizeof buf, "max |<x,x> -+ r^-2| %.2e; verify T3.5 exit 0 for all six", worst);
    if (o.pass) o.detail = buf;
    return o;
}

Outcome criterion8() {
    Outcome o;
    double bi = 0.0, dx = 0.0;
    for (double b : {0.0, 0.5}) {
        const SurfaceSpec s = catalog_lookup("type-i", {{"b", b}});
        for (const auto& p : evaluate_grid(s, grid7(s), {4, 1e-8, 0})) {
            o.require(p.ok && p.bilaplacian_residual.has_value(), "order-4 evaluation failed");
            if (!p.bilaplacian_residual) continue;
            bi = std::max(bi, *p.bilaplacian_residual);
            dx = std::max(dx, std::abs(euclidean_norm(p.delta_x) - 2 * std::sqrt(2.0)));
            o.require(euclidean_norm(p.delta_x - AmbientVector{{-2, 0, 0, -2}}) <= 1e-8, "Delta x != -2(1,0,0,1)");
        }
    }
    o.require(bi <= 1e-8, "|Delta^2 x| too large");
    o.require(dx <= 1e-8, "|Delta x| != 2 sqrt 2");
    std::snprintf(buf, sizeof buf, "max |Delta^2 x| %.2e, max ||Delta x| - 2 sqrt 2| %.2e", bi, dx);
    if (o.pass) o.detail = buf;
    return o;
}

Outcome criterion9() {
    Outcome o;
    double worst = 0.0;
    for (const char* name : {"graph(u*v)", "graph(u^2 - v^2)"}) {
        const SurfaceSpec s = catalog_lookup(name, {});
        for (const auto& p : evaluate_grid(s, grid7(s))) {
            o.require(p.lemma42.has_value(), std::string(name) + ": gradient relations not applicable");
            if (p.lemma42) worst = std::max(worst, *p.lemma42);
        }
    }
    o.require(worst <= 1e-6, "gradient relation residual too large");
    std::snprintf(buf, sizeof buf, "max gradient-relation residual %.2e", worst);
    if (o.pass) o.detail = buf;
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"marginally trapped example: K = u^-4, |h|^2 = -2u^-4", criterion1},
        {"direct and structural Laplacian of nu agree on the catalog", criterion2},
        {"harmonic Gauss map suite", criterion3},
        {"pointwise 1-type of the first kind suite", criterion4},
        {"negative controls and single-term mutations", criterion5},
        {"self-consistency invariants", criterion6},
        {"de Sitter and hyperbolic containment", criterion7},
        {"biharmonic type-i surfaces", criterion8},
        {"gradient relations on maximal graphs", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = e.what();
        }
        std::printf("%s criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str());
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
