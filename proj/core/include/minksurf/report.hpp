#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minksurf/gauss_map.hpp"
#include "minksurf/surface_dsl.hpp"

namespace minksurf {

enum class Command { Analyze, Classify, Verify, Catalog };
enum class OutputFormat { Json, Csv };

struct RunConfig {
    Command command = Command::Analyze;
    std::string theorem;  // verify only

    std::optional<std::string> catalog;
    ParamMap params;
    std::optional<std::string> surface_file;

    std::optional<Domain> domain;  // overrides the surface's domain
    int nu = 7;
    int nv = 7;
    std::vector<std::pair<double, double>> points;  // non-empty: explicit grid

    int order = 3;
    double tol = kDefaultResidualTolerance;
    OutputFormat format = OutputFormat::Json;
    unsigned jobs = 0;

    /// Throws InvalidConfig on bad values.
    void validate() const;
};

inline constexpr int kExitConsistent = 0;
inline constexpr int kExitInconsistent = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDegenerate = 3;

struct RunResult {
    std::string output;
    std::string diagnostics;  // for stderr
    int exit_code = kExitConsistent;
};

SurfaceSpec load_surface(const RunConfig& cfg);
Grid make_grid(const RunConfig& cfg, const SurfaceSpec& spec);

RunResult run_analyze(const RunConfig& cfg);
RunResult run_classify(const RunConfig& cfg);
RunResult run_verify(const RunConfig& cfg);
RunResult run_catalog(const RunConfig& cfg);

/// Dispatches on cfg.command and maps library errors to exit codes.
RunResult run(const RunConfig& cfg);

}  // namespace minksurf
