#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "minksurf/surface_dsl.hpp"

namespace minksurf {

namespace {

struct CatalogEntry {
    CatalogEntryInfo info;
    std::string domain;
    std::string tags;
    std::string notes;
    std::array<std::string, 4> components;
    std::function<void(const ParamMap&)> validate;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw Error(ErrorKind::InvalidConfig, message);
}

const std::vector<CatalogEntry>& entries() {
    static const std::vector<CatalogEntry> kEntries = {
        {{"plane", {}, "totally geodesic space-like plane x = (0, u, v, 0)"},
         "[-1,1]x[-1,1]",
         "FLAT, FLAT-NORMAL-BUNDLE, HARMONIC-GAUSS-MAP, MAXIMAL",
         "",
         {"0", "u", "v", "0"},
         nullptr},
        {{"graph", {"phi"}, "x = (phi, u, v, phi) in the degenerate hyperplane x1 = x4; use graph(<expr>)"},
         "[-1,1]x[-1,1]",
         "FLAT, FLAT-NORMAL-BUNDLE",
         "",
         {"$phi", "u", "v", "$phi"},
         nullptr},
        {{"type-i", {"b"}, "flat parallel biharmonic marginally trapped surface"},
         "[-1,1]x[-1,1]",
         "BIHARMONIC, FLAT, FLAT-NORMAL-BUNDLE, HARMONIC-GAUSS-MAP, MARGINALLY-TRAPPED, PARALLEL-H",
         "",
         {"(1 - b)/2*u^2 + (1 + b)/2*v^2", "u", "v", "(1 - b)/2*u^2 + (1 + b)/2*v^2"},
         nullptr},
        {{"type-ii", {"a"}, "flat parallel marginally trapped surface a(cosh u, sinh u, cos v, sin v)"},
         "[-1,1]x[-1,1]",
         "FLAT, FLAT-NORMAL-BUNDLE, HARMONIC-GAUSS-MAP, IN-LIGHTCONE, MARGINALLY-TRAPPED, PARALLEL-H",
         "source text reads a(cosh u, sinh u, cos u, sin u), a curve, so the surface uses v in the last two slots",
         {"a*cosh(u)", "a*sinh(u)", "a*cos(v)", "a*sin(v)"},
         [](const ParamMap& p) { require(p.at("a") > 0, "type-ii requires a > 0"); }},
        {{"s31-flat", {"r"}, "flat marginally trapped surface in de Sitter space S^3_1(r^2)"},
         "[-1,1]x[-1,1]",
         "FLAT, FLAT-NORMAL-BUNDLE, HARMONIC-GAUSS-MAP, IN-S31, MARGINALLY-TRAPPED, PARALLEL-H",
         "",
         {"r/2*(u^2 + v^2)", "u", "v", "r/2*(u^2 + v^2) - 1/r"},
         [](const ParamMap& p) { require(p.at("r") > 0, "s31-flat requires r > 0"); }},
        {{"h3-flat", {"r"}, "flat marginally trapped surface in hyperbolic space H^3(-r^2)"},
         "[-1,1]x[-1,1]",
         "FLAT, FLAT-NORMAL-BUNDLE, HARMONIC-GAUSS-MAP, IN-H3, MARGINALLY-TRAPPED, PARALLEL-H",
         "",
         {"1/r + r/2*(u^2 + v^2)", "u", "v", "r/2*(u^2 + v^2)"},
         [](const ParamMap& p) { require(p.at("r") > 0, "h3-flat requires r > 0"); }},
        {{"example52", {}, "marginally trapped surface with parallel H, K = u^-4"},
         "[0.5,2]x[-1,1]",
         "FLAT-NORMAL-BUNDLE, MARGINALLY-TRAPPED, PARALLEL-H, POINTWISE-1-TYPE-FIRST-KIND",
         "singular at u = 0",
         {"1/sqrt(2)*(u*cosh(sqrt(2)*v))", "1/sqrt(2)*(u*sinh(sqrt(2)*v))",
          "1/sqrt(2)*(sqrt(2)*sin(sqrt(2)*u) - u*cos(sqrt(2)*u))",
          "1/sqrt(2)*(sqrt(2)*cos(sqrt(2)*u) + u*sin(sqrt(2)*u))"},
         nullptr},
        {{"product", {"a", "b"}, "H^1 x S^1 product a(cosh u, sinh u) x b(cos v, sin v)"},
         "[-1,1]x[-1,1]",
         "FLAT, FLAT-NORMAL-BUNDLE, GLOBAL-1-TYPE-FIRST-KIND, PARALLEL-H, POINTWISE-1-TYPE-FIRST-KIND",
         "",
         {"a*cosh(u)", "a*sinh(u)", "b*cos(v)", "b*sin(v)"},
         [](const ParamMap& p) {
             const double a = p.at("a"), b = p.at("b");
             require(a * b != 0, "product requires ab != 0");
             require(b * b - a * a != 0, "product requires b^2 - a^2 != 0");
         }},
    };
    return kEntries;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
        s.replace(pos, from.size(), to);
    }
    return s;
}

void collect_parameters(const Expr& e, std::set<std::string>& out) {
    if (e.kind == Expr::Kind::Parameter) out.insert(e.name);
    if (e.lhs) collect_parameters(*e.lhs, out);
    if (e.rhs) collect_parameters(*e.rhs, out);
}

}  // namespace

const std::vector<CatalogEntryInfo>& catalog_entries() {
    static const std::vector<CatalogEntryInfo> kInfo = [] {
        std::vector<CatalogEntryInfo> info;
        for (const auto& e : entries()) info.push_back(e.info);
        return info;
    }();
    return kInfo;
}

SurfaceSpec catalog_lookup(std::string_view name, const ParamMap& params) {
    std::string base(name);
    std::string phi;
    if (const auto open = base.find('('); open != std::string::npos) {
        if (base.back() != ')') throw Error(ErrorKind::UnknownSurface, std::string(name));
        phi = base.substr(open + 1, base.size() - open - 2);
        base = base.substr(0, open);
    }
    const CatalogEntry* entry = nullptr;
    for (const auto& e : entries()) {
        if (e.info.name == base) entry = &e;
    }
    if (!entry) throw Error(ErrorKind::UnknownSurface, std::string(name));
    if (!phi.empty() && base != "graph") throw Error(ErrorKind::UnknownSurface, std::string(name));

    for (const auto& p : entry->info.required_params) {
        if (p == "phi") {
            if (phi.empty()) throw Error(ErrorKind::MissingParameter, "graph needs graph(<phi expression>)");
        } else if (!params.count(p)) {
            throw Error(ErrorKind::MissingParameter, base + " requires parameter '" + p + "'");
        }
    }
    if (entry->validate) entry->validate(params);

    std::ostringstream text;
    text << "name = " << (phi.empty() ? base : base + "(" + phi + ")") << '\n';
    if (!entry->notes.empty()) text << "notes = " << entry->notes << '\n';
    for (const auto& [k, v] : params) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        text << "param " << k << " = " << buf << '\n';
    }
    text << "domain = " << entry->domain << '\n';
    text << "tags = " << entry->tags << '\n';
    for (std::size_t i = 0; i < 4; ++i) {
        text << 'x' << i + 1 << " = " << replace_all(entry->components[i], "$phi", "(" + phi + ")") << '\n';
    }
    SurfaceSpec spec = parse_surface(text.str());

    std::set<std::string> used;
    for (const auto& c : spec.components) collect_parameters(*c, used);
    for (const auto& [k, v] : params) {
        if (!used.count(k)) throw Error(ErrorKind::InvalidConfig, "parameter '" + k + "' is not used by " + base);
    }
    return spec;
}

}  // namespace minksurf
