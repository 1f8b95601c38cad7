#include "minksurf/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace minksurf {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <std::size_t N>
ordered_json array_json(const std::array<double, N>& a) {
    ordered_json j = ordered_json::array();
    for (double x : a) j.push_back(x);
    return j;
}

ordered_json vec_json(const AmbientVector& v) { return array_json(v.c); }
ordered_json biv_json(const Bivector& b) { return array_json(b.p); }

ordered_json mat_json(const Mat2& m) { return ordered_json::array({array_json(m[0]), array_json(m[1])}); }

ordered_json conventions() {
    ordered_json c;
    c["metric_signature"] = "(-,+,+,+), first coordinate time-like";
    c["frame_signs"] = array_json(kFrameSigns);
    c["normal_frame"] = "e3 space-like, e4 time-like, det[e1 e2 e3 e4] > 0";
    c["gauss_map"] = "nu = e3^e4, the unit dual of x_u^x_v, <nu,nu> = -1";
    c["bivector_basis"] = {"12", "13", "14", "23", "24", "34"};
    c["bivector_signs"] = array_json(kBivectorSigns);
    c["laplacian"] = "Delta = -(1/sqrt det g) d_i(sqrt det g g^ij d_j), so Delta x = -2H";
    c["connection_forms"] = "omega_AB(X) = <D_X e_A, e_B>";
    c["second_fundamental_form"] = "h^b_ij = <h(e_i,e_j), e_b>, H = (trA3 e3 - trA4 e4)/2";
    c["residual_norm"] = "Euclidean norm of the components";
    return c;
}

ordered_json surface_json(const SurfaceSpec& spec) {
    ordered_json s;
    s["name"] = spec.name;
    ordered_json comps = ordered_json::array();
    for (const auto& c : spec.components) comps.push_back(to_string(*c));
    s["components"] = comps;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : spec.params) params[k] = v;
    s["params"] = params;
    s["domain"] = {spec.domain.u_min, spec.domain.u_max, spec.domain.v_min, spec.domain.v_max};
    s["expected_tags"] = spec.expected_tags;
    if (!spec.notes.empty()) s["notes"] = spec.notes;
    return s;
}

ordered_json grid_json(const Grid& grid, const RunConfig& cfg) {
    ordered_json g;
    if (grid.nu) {
        g["kind"] = "cell-centers";
        g["nu"] = grid.nu;
        g["nv"] = grid.nv;
    } else {
        g["kind"] = "explicit";
    }
    g["points"] = grid.points.size();
    g["order"] = cfg.order;
    g["tol"] = cfg.tol;
    return g;
}

ordered_json header(const char* command, const SurfaceSpec& spec, const Grid& grid, const RunConfig& cfg) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = command;
    j["conventions"] = conventions();
    j["surface"] = surface_json(spec);
    j["grid"] = grid_json(grid, cfg);
    return j;
}

ordered_json point_json(const PointEvaluation& p) {
    ordered_json j;
    j["u"] = p.u;
    j["v"] = p.v;
    j["ok"] = p.ok;
    if (!p.ok) {
        j["error"] = p.error;
        return j;
    }
    j["position"] = vec_json(p.position);
    j["g"] = mat_json(p.g);
    j["H"] = vec_json(p.H.H);
    j["HH"] = p.H.HH;
    j["causal"] = std::string(to_string(p.H.causal));
    j["h_squared"] = p.h_squared;
    j["h"] = {{"e3", mat_json(p.h[0])}, {"e4", mat_json(p.h[1])}};
    j["K"] = {{"gauss", p.K.gauss}, {"formula", p.K.formula}, {"intrinsic", p.K.intrinsic}};
    j["RD"] = p.RD;
    j["omega12"] = array_json(p.omega12);
    j["omega34"] = array_json(p.omega34);
    j["nu"] = biv_json(p.gauss.nu);
    j["delta_nu"] = biv_json(p.gauss.delta_nu);
    j["delta_nu_formula"] = biv_json(p.gauss.delta_nu_formula);
    j["decomposition"] = {{"c_nu", p.gauss.c_nu},
                          {"c_norm", p.gauss.c_norm},
                          {"grad_trA3", array_json(p.gauss.grad_trA3)},
                          {"grad_trA4", array_json(p.gauss.grad_trA4)},
                          {"omega34_coeffs", array_json(p.gauss.omega34_coeffs)}};
    j["delta_x"] = vec_json(p.delta_x);
    ordered_json r;
    r["first_kind"] = p.first_kind.residual_first_kind;
    r["harmonic"] = p.first_kind.residual_harmonic;
    r["f_estimate"] = p.first_kind.f_estimate;
    r["route"] = p.route_error;
    r["parallel_H"] = p.dh_residual;
    r["codazzi"] = p.codazzi_residual;
    r["frame"] = p.frame_residual;
    r["nu_norm"] = p.nu_norm_defect;
    r["beltrami"] = p.beltrami_residual;
    if (p.bilaplacian_residual) r["bilaplacian"] = *p.bilaplacian_residual;
    if (p.lemma42) r["lemma42"] = *p.lemma42;
    j["residuals"] = r;
    j["labels"] = p.labels;
    return j;
}

// Flat column view of a point, shared by the CSV writer.
std::vector<std::pair<std::string, double>> point_columns(const PointEvaluation& p) {
    std::vector<std::pair<std::string, double>> c;
    auto add = [&](std::string name, double x) { c.emplace_back(std::move(name), x); };
    auto add_array = [&](const std::string& name, const auto& arr) {
        for (std::size_t i = 0; i < arr.size(); ++i) add(name + "_" + std::to_string(i), arr[i]);
    };
    add("u", p.u);
    add("v", p.v);
    add_array("x", p.position.c);
    add("g11", p.g[0][0]);
    add("g12", p.g[0][1]);
    add("g22", p.g[1][1]);
    add_array("H", p.H.H.c);
    add("HH", p.H.HH);
    add("h_squared", p.h_squared);
    add("K_gauss", p.K.gauss);
    add("K_formula", p.K.formula);
    add("K_intrinsic", p.K.intrinsic);
    add("RD", p.RD);
    add_array("omega12", p.omega12);
    add_array("omega34", p.omega34);
    add_array("nu", p.gauss.nu.p);
    add_array("delta_nu", p.gauss.delta_nu.p);
    add_array("delta_nu_formula", p.gauss.delta_nu_formula.p);
    add("c_nu", p.gauss.c_nu);
    add("c_norm", p.gauss.c_norm);
    add_array("grad_trA3", p.gauss.grad_trA3);
    add_array("grad_trA4", p.gauss.grad_trA4);
    add_array("omega34_coeffs", p.gauss.omega34_coeffs);
    add("residual_first_kind", p.first_kind.residual_first_kind);
    add("residual_harmonic", p.first_kind.residual_harmonic);
    add("f_estimate", p.first_kind.f_estimate);
    add("route_error", p.route_error);
    add("parallel_H", p.dh_residual);
    add("codazzi", p.codazzi_residual);
    add("frame", p.frame_residual);
    add("nu_norm", p.nu_norm_defect);
    add("beltrami", p.beltrami_residual);
    return c;
}

std::string join(const std::set<std::string>& xs, char sep) {
    std::string out;
    for (const auto& x : xs) {
        if (!out.empty()) out += sep;
        out += x;
    }
    return out;
}

struct Summary {
    std::size_t ok = 0;
    std::size_t failed = 0;
};

Summary count(const std::vector<PointEvaluation>& evals) {
    Summary s;
    for (const auto& p : evals) (p.ok ? s.ok : s.failed)++;
    return s;
}

ordered_json summary_json(const std::vector<PointEvaluation>& evals, double tol) {
    const Summary s = count(evals);
    ordered_json j;
    j["points"] = evals.size();
    j["failed"] = s.failed;
    if (!s.ok) return j;
    auto stats = [&](auto fn) {
        double mx = -INFINITY, sum = 0.0;
        for (const auto& p : evals) {
            if (!p.ok) continue;
            const double x = fn(p);
            mx = std::max(mx, x);
            sum += x;
        }
        return ordered_json{{"max", mx}, {"mean", sum / static_cast<double>(s.ok)}};
    };
    j["residual_first_kind"] = stats([](const PointEvaluation& p) { return p.first_kind.residual_first_kind; });
    j["residual_harmonic"] = stats([](const PointEvaluation& p) { return p.first_kind.residual_harmonic; });
    j["route_error"] = stats([](const PointEvaluation& p) { return p.route_error; });
    j["parallel_H"] = stats([](const PointEvaluation& p) { return p.dh_residual; });
    j["codazzi"] = stats([](const PointEvaluation& p) { return p.codazzi_residual; });
    j["frame"] = stats([](const PointEvaluation& p) { return p.frame_residual; });
    j["nu_norm"] = stats([](const PointEvaluation& p) { return p.nu_norm_defect; });
    j["beltrami"] = stats([](const PointEvaluation& p) { return p.beltrami_residual; });
    j["K_agreement"] = stats([](const PointEvaluation& p) {
        return std::max(std::abs(p.K.gauss - p.K.formula), std::abs(p.K.gauss - p.K.intrinsic)) /
               (1 + std::abs(p.K.gauss));
    });
    j["labels"] = classify_grid(evals, tol);
    return j;
}

std::string csv_points(const std::vector<PointEvaluation>& evals) {
    std::ostringstream out;
    bool header_done = false;
    for (const auto& p : evals) {
        const auto cols = point_columns(p);
        if (!header_done) {
            for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].first;
            out << ",ok,labels\n";
            header_done = true;
        }
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << fmt(cols[i].second);
        out << ',' << (p.ok ? 1 : 0) << ',' << join(p.labels, '|') << '\n';
    }
    return out.str();
}

int degenerate_exit(const std::vector<PointEvaluation>& evals) {
    return count(evals).ok == 0 ? kExitDegenerate : kExitConsistent;
}

std::string degenerate_message(const std::vector<PointEvaluation>& evals) {
    if (count(evals).ok) return "";
    return "every grid point failed; first error: " + (evals.empty() ? std::string() : evals.front().error) + "\n";
}

ordered_json check_json(const VerdictCheck& c) {
    ordered_json j;
    j["name"] = c.name;
    j["max"] = c.max;
    j["mean"] = c.mean;
    j["threshold"] = c.threshold;
    j["holds"] = c.holds;
    return j;
}

ordered_json side_json(const VerdictSide& s) {
    ordered_json j;
    j["statement"] = s.statement;
    j["holds"] = s.holds;
    ordered_json groups = ordered_json::array();
    for (const auto& g : s.groups) {
        ordered_json gj;
        gj["name"] = g.name;
        gj["holds"] = g.holds;
        ordered_json checks = ordered_json::array();
        for (const auto& c : g.checks) checks.push_back(check_json(c));
        gj["checks"] = checks;
        groups.push_back(gj);
    }
    j["groups"] = groups;
    return j;
}

// Per-point columns of a verdict: every per-point check of both sides.
std::vector<std::pair<std::string, const std::vector<double>*>> verdict_columns(const TheoremVerdict& tv) {
    std::vector<std::pair<std::string, const std::vector<double>*>> cols;
    for (const auto* s : {&tv.side_a, &tv.side_b}) {
        for (const auto& g : s->groups) {
            for (const auto& c : g.checks) {
                if (c.values.empty()) continue;
                bool seen = false;
                for (const auto& col : cols) seen = seen || col.first == c.name;
                if (!seen) cols.emplace_back(c.name, &c.values);
            }
        }
    }
    return cols;
}

std::string equivalence(const TheoremVerdict& tv) {
    if (!tv.applicable) return "NOT-APPLICABLE";
    return tv.consistent ? "CONSISTENT" : "INCONSISTENT";
}

}  // namespace

void RunConfig::validate() const {
    if (command != Command::Catalog) {
        if (catalog.has_value() == surface_file.has_value()) {
            throw Error(ErrorKind::InvalidConfig, "give exactly one of --catalog and --surface-file");
        }
        if (surface_file && !params.empty()) {
            throw Error(ErrorKind::InvalidConfig, "--param applies to catalog surfaces only");
        }
    }
    if (points.empty() && (nu < 2 || nv < 2)) throw Error(ErrorKind::InvalidConfig, "grid needs at least 2 points per axis");
    if (order != 3 && order != 4) throw Error(ErrorKind::InvalidConfig, "order must be 3 or 4");
    if (!(tol > 0)) throw Error(ErrorKind::InvalidConfig, "tolerance must be positive");
    if (domain && !(domain->u_min < domain->u_max && domain->v_min < domain->v_max)) {
        throw Error(ErrorKind::InvalidConfig, "empty domain");
    }
    if (command == Command::Verify && theorem.empty()) throw Error(ErrorKind::InvalidConfig, "verify needs a theorem id");
}

SurfaceSpec load_surface(const RunConfig& cfg) {
    SurfaceSpec spec;
    if (cfg.catalog) {
        spec = catalog_lookup(*cfg.catalog, cfg.params);
    } else {
        std::ifstream in(*cfg.surface_file);
        if (!in) throw Error(ErrorKind::InvalidConfig, "cannot read surface file '" + *cfg.surface_file + "'");
        std::ostringstream text;
        text << in.rdbuf();
        spec = parse_surface(text.str());
    }
    if (cfg.domain) spec.domain = *cfg.domain;
    return spec;
}

Grid make_grid(const RunConfig& cfg, const SurfaceSpec& spec) {
    if (cfg.points.empty()) return Grid::cell_centers(spec.domain, cfg.nu, cfg.nv);
    for (const auto& [u, v] : cfg.points) {
        if (!spec.domain.contains(u, v)) {
            throw Error(ErrorKind::InvalidConfig, "point (" + fmt(u) + ", " + fmt(v) + ") is outside the domain");
        }
    }
    return Grid::explicit_points(cfg.points);
}

namespace {

struct Prepared {
    SurfaceSpec spec;
    Grid grid;
    std::vector<PointEvaluation> evals;
};

Prepared prepare(const RunConfig& cfg) {
    cfg.validate();
    Prepared p;
    p.spec = load_surface(cfg);
    p.grid = make_grid(cfg, p.spec);
    p.evals = evaluate_grid(p.spec, p.grid, {cfg.order, cfg.tol, cfg.jobs});
    return p;
}

}  // namespace

RunResult run_analyze(const RunConfig& cfg) {
    const Prepared p = prepare(cfg);
    RunResult r;
    r.exit_code = degenerate_exit(p.evals);
    r.diagnostics = degenerate_message(p.evals);
    if (cfg.format == OutputFormat::Csv) {
        r.output = csv_points(p.evals);
        return r;
    }
    ordered_json j = header("analyze", p.spec, p.grid, cfg);
    ordered_json pts = ordered_json::array();
    for (const auto& e : p.evals) pts.push_back(point_json(e));
    j["points"] = pts;
    j["summary"] = summary_json(p.evals, cfg.tol);
    r.output = j.dump(2) + "\n";
    return r;
}

RunResult run_classify(const RunConfig& cfg) {
    const Prepared p = prepare(cfg);
    RunResult r;
    r.exit_code = degenerate_exit(p.evals);
    r.diagnostics = degenerate_message(p.evals);
    const std::set<std::string> labels = classify_grid(p.evals, cfg.tol);
    std::set<std::string> missing;
    for (const auto& t : p.spec.expected_tags) {
        if (!labels.count(t)) missing.insert(t);
    }
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "u,v,ok,labels\n";
        for (const auto& e : p.evals) out << fmt(e.u) << ',' << fmt(e.v) << ',' << (e.ok ? 1 : 0) << ',' << join(e.labels, '|') << '\n';
        out << "grid,grid,1," << join(labels, '|') << '\n';
        r.output = out.str();
        return r;
    }
    ordered_json j = header("classify", p.spec, p.grid, cfg);
    ordered_json pts = ordered_json::array();
    for (const auto& e : p.evals) {
        ordered_json pj{{"u", e.u}, {"v", e.v}, {"ok", e.ok}, {"labels", e.labels}};
        if (!e.ok) pj["error"] = e.error;
        pts.push_back(pj);
    }
    j["points"] = pts;
    const ContainmentCheck c = containment(p.evals);
    j["summary"] = {{"labels", labels},
                    {"missing_expected_tags", missing},
                    {"position_norm", {{"mean", c.mean}, {"stddev", c.stddev}}},
                    {"failed", count(p.evals).failed}};
    r.output = j.dump(2) + "\n";
    return r;
}

RunResult run_verify(const RunConfig& cfg) {
    const auto& ids = theorem_ids();
    if (std::find(ids.begin(), ids.end(), cfg.theorem) == ids.end()) {
        throw Error(ErrorKind::UnknownTheorem, "unknown theorem id '" + cfg.theorem + "'");
    }
    const Prepared p = prepare(cfg);
    RunResult r;
    if (count(p.evals).ok == 0) {
        r.exit_code = kExitDegenerate;
        r.diagnostics = degenerate_message(p.evals);
        return r;
    }
    const TheoremVerdict tv = theorem_verdict(cfg.theorem, p.evals, cfg.tol);
    r.exit_code = tv.consistent ? kExitConsistent : kExitInconsistent;
    r.diagnostics = tv.theorem + ": " + equivalence(tv) + " (" + tv.evidence + ")\n";
    const auto cols = verdict_columns(tv);

    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "u,v";
        for (const auto& c : cols) out << ',' << c.first;
        out << '\n';
        for (std::size_t i = 0; i < tv.points.size(); ++i) {
            out << fmt(tv.points[i].first) << ',' << fmt(tv.points[i].second);
            for (const auto& c : cols) out << ',' << fmt((*c.second)[i]);
            out << '\n';
        }
        r.output = out.str();
        return r;
    }

    ordered_json j = header("verify", p.spec, p.grid, cfg);
    ordered_json v;
    v["theorem"] = tv.theorem;
    v["applicable"] = tv.applicable;
    v["precondition"] = tv.precondition;
    v["equivalence"] = equivalence(tv);
    v["consistent"] = tv.consistent;
    v["side_a"] = side_json(tv.side_a);
    v["side_b"] = side_json(tv.side_b);
    v["evidence"] = tv.evidence;
    v["notes"] = tv.notes;
    ordered_json table = ordered_json::array();
    for (std::size_t i = 0; i < tv.points.size(); ++i) {
        ordered_json row{{"u", tv.points[i].first}, {"v", tv.points[i].second}};
        for (const auto& c : cols) row[c.first] = (*c.second)[i];
        table.push_back(row);
    }
    v["table"] = table;
    j["verdict"] = v;
    j["summary"] = summary_json(p.evals, cfg.tol);
    r.output = j.dump(2) + "\n";
    return r;
}

RunResult run_catalog(const RunConfig& cfg) {
    RunResult r;
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "name,params,description\n";
        for (const auto& e : catalog_entries()) {
            std::string params;
            for (const auto& p : e.required_params) params += (params.empty() ? "" : "|") + p;
            out << e.name << ',' << params << ",\"" << e.description << "\"\n";
        }
        r.output = out.str();
        return r;
    }
    ordered_json j;
    j["schema"] = 1;
    j["command"] = "catalog";
    ordered_json entries = ordered_json::array();
    for (const auto& e : catalog_entries()) {
        entries.push_back({{"name", e.name}, {"params", e.required_params}, {"description", e.description}});
    }
    j["surfaces"] = entries;
    j["theorems"] = theorem_ids();
    r.output = j.dump(2) + "\n";
    return r;
}

RunResult run(const RunConfig& cfg) {
    try {
        switch (cfg.command) {
            case Command::Analyze: return run_analyze(cfg);
            case Command::Classify: return run_classify(cfg);
            case Command::Verify: return run_verify(cfg);
            case Command::Catalog: return run_catalog(cfg);
        }
    } catch (const Error& e) {
        RunResult r;
        r.exit_code = kExitUsage;
        r.diagnostics = std::string(e.what()) + "\n";
        return r;
    }
    return {};
}

}  // namespace minksurf
