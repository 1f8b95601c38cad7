#pragma once

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "minksurf/expr.hpp"
#include "minksurf/indefinite_linalg.hpp"
#include "minksurf/jet.hpp"

namespace minksurf {

struct Domain {
    double u_min = -1.0;
    double u_max = 1.0;
    double v_min = -1.0;
    double v_max = 1.0;

    bool contains(double u, double v) const {
        return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
    }
    friend bool operator==(const Domain&, const Domain&) = default;
};

/// Immersion x(u,v) into E^4_1 given by four component expressions.
struct SurfaceSpec {
    std::string name;
    std::array<ExprPtr, 4> components;
    ParamMap params;
    Domain domain;
    std::set<std::string> expected_tags;
    std::string notes;
};

bool equal(const SurfaceSpec& a, const SurfaceSpec& b);

/// Parses the surface-definition text format:
///
///     # comment
///     name = graph-uv
///     param a = 1.5
///     domain = [0.5,2]x[-1,1]
///     tags = FLAT, MAXIMAL
///     x1 = u*v
///     x2 = u
///     x3 = v
///     x4 = u*v
///
/// Statements are separated by newlines or ';'. Throws SyntaxError (with
/// line/column), UnknownIdentifier, or ArityError.
SurfaceSpec parse_surface(std::string_view text);

/// Parses a single expression; identifiers other than u and v become
/// parameters.
ExprPtr parse_expression(std::string_view text);

std::string serialize_surface(const SurfaceSpec& spec);

/// Built-in surfaces. `name` is one of catalog_entries(); the graph surface
/// is addressed as "graph(<phi expression>)".
SurfaceSpec catalog_lookup(std::string_view name, const ParamMap& params);

struct CatalogEntryInfo {
    std::string name;
    std::vector<std::string> required_params;
    std::string description;
};

const std::vector<CatalogEntryInfo>& catalog_entries();

/// Components of x and all their derivatives up to `order` at (u, v).
std::array<Jet, 4> evaluate_immersion(const SurfaceSpec& spec, double u, double v, int order);

/// Value-only evaluation of x(u, v), no domain check.
AmbientVector evaluate_position(const SurfaceSpec& spec, double u, double v);

}  // namespace minksurf
