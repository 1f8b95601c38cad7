#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "minksurf/report.hpp"

using namespace minksurf;

namespace {

double parse_number(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorKind::InvalidConfig, "bad number '" + s + "' in " + what);
    return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, sep);) parts.push_back(item);
    return parts;
}

struct RawOptions {
    std::string catalog;
    std::string surface_file;
    std::vector<std::string> params;
    std::string grid = "7x7";
    std::string domain;
    std::string points;
    int order = 3;
    double tol = kDefaultResidualTolerance;
    std::string format = "json";
    std::string out;
    unsigned jobs = 0;
};

void add_common(CLI::App* sub, RawOptions& o, bool surface) {
    if (surface) {
        sub->add_option("--catalog", o.catalog, "catalog surface, e.g. example52 or graph(u*v)");
        sub->add_option("--surface-file", o.surface_file, "surface description file");
        sub->add_option("--param", o.params, "catalog parameter k=v (repeatable)");
        sub->add_option("--grid", o.grid, "grid size NxM (cell centers)");
        sub->add_option("--domain", o.domain, "domain override umin,umax,vmin,vmax");
        sub->add_option("--points", o.points, "explicit points u,v;u,v;...");
        sub->add_option("--order", o.order, "jet order (3, or 4 for the bilaplacian)");
        sub->add_option("--tol", o.tol, "residual tolerance");
        sub->add_option("--jobs", o.jobs, "worker threads (0: all cores)");
    }
    sub->add_option("--format", o.format, "json or csv");
    sub->add_option("--out", o.out, "output file (default stdout)");
}

RunConfig to_config(Command cmd, const RawOptions& o) {
    RunConfig cfg;
    cfg.command = cmd;
    if (!o.catalog.empty()) cfg.catalog = o.catalog;
    if (!o.surface_file.empty()) cfg.surface_file = o.surface_file;
    for (const auto& p : o.params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::InvalidConfig, "--param expects k=v, got '" + p + "'");
        cfg.params[p.substr(0, eq)] = parse_number(p.substr(eq + 1), "--param");
    }
    const auto x = o.grid.find('x');
    if (x == std::string::npos) throw Error(ErrorKind::InvalidConfig, "--grid expects NxM");
    cfg.nu = static_cast<int>(parse_number(o.grid.substr(0, x), "--grid"));
    cfg.nv = static_cast<int>(parse_number(o.grid.substr(x + 1), "--grid"));
    if (!o.domain.empty()) {
        const auto parts = split(o.domain, ',');
        if (parts.size() != 4) throw Error(ErrorKind::InvalidConfig, "--domain expects umin,umax,vmin,vmax");
        cfg.domain = Domain{parse_number(parts[0], "--domain"), parse_number(parts[1], "--domain"),
                            parse_number(parts[2], "--domain"), parse_number(parts[3], "--domain")};
    }
    for (const auto& pt : split(o.points, ';')) {
        if (pt.empty()) continue;
        const auto uv = split(pt, ',');
        if (uv.size() != 2) throw Error(ErrorKind::InvalidConfig, "--points expects u,v;u,v;...");
        cfg.points.emplace_back(parse_number(uv[0], "--points"), parse_number(uv[1], "--points"));
    }
    cfg.order = o.order;
    cfg.tol = o.tol;
    if (o.format == "json") {
        cfg.format = OutputFormat::Json;
    } else if (o.format == "csv") {
        cfg.format = OutputFormat::Csv;
    } else {
        throw Error(ErrorKind::InvalidConfig, "--format must be json or csv");
    }
    cfg.jobs = o.jobs;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Space-like surfaces in Minkowski space E^4_1 and their Gauss map"};
    app.require_subcommand(1);

    RawOptions analyze_opts, classify_opts, verify_opts, catalog_opts;
    std::string theorem;
    auto* analyze = app.add_subcommand("analyze", "per-point geometry and residuals");
    add_common(analyze, analyze_opts, true);
    auto* classify = app.add_subcommand("classify", "grid-level labels");
    add_common(classify, classify_opts, true);
    auto* verify = app.add_subcommand("verify", "check a theorem's equivalence on the grid");
    verify->add_option("theorem", theorem, "theorem id, e.g. T4.4")->required();
    add_common(verify, verify_opts, true);
    auto* catalog = app.add_subcommand("catalog", "list catalog surfaces and theorem ids");
    add_common(catalog, catalog_opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    RunResult result;
    std::string out_path;
    try {
        RunConfig cfg;
        if (*analyze) {
            cfg = to_config(Command::Analyze, analyze_opts);
            out_path = analyze_opts.out;
        } else if (*classify) {
            cfg = to_config(Command::Classify, classify_opts);
            out_path = classify_opts.out;
        } else if (*verify) {
            cfg = to_config(Command::Verify, verify_opts);
            cfg.theorem = theorem;
            out_path = verify_opts.out;
        } else {
            cfg = to_config(Command::Catalog, catalog_opts);
            out_path = catalog_opts.out;
        }
        result = run(cfg);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    if (!result.output.empty()) {
        if (out_path.empty()) {
            std::cout << result.output;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) {
                std::cerr << "cannot write '" << out_path << "'\n";
                return kExitUsage;
            }
            f << result.output;
        }
    }
    std::cerr << result.diagnostics;
    return result.exit_code;
}
