#pragma once

#include <cstdio>
#include <random>
#include <string>

#include "minksurf/surface_dsl.hpp"

namespace fixtures {

// A surface with no symmetry: non-flat, non-parallel H, curved normal
// bundle and omega34 != 0 in the constructed gauge, so every term of the
// Gauss-map Laplacian is active.
inline minksurf::SurfaceSpec generic_surface() {
    return minksurf::parse_surface(
        "name = generic\n"
        "x1 = 0.3*u*v + 0.1*sin(u)\n"
        "x2 = u + 0.2*v^2\n"
        "x3 = v + 0.1*u^3\n"
        "x4 = 0.2*cos(u + v) + 0.3*u^2*v\n");
}

// Small random perturbation of the plane (0, u, v, 0); space-like on
// [-1,1]^2 for the coefficient ranges used here.
inline minksurf::SurfaceSpec random_surface(std::mt19937& rng) {
    std::uniform_real_distribution<double> c(-0.1, 0.1);
    auto num = [&] {
        char buf[40];
        std::snprintf(buf, sizeof buf, "(%.6f)", c(rng));
        return std::string(buf);
    };
    std::string text = "name = random\n";
    text += "x1 = " + num() + "*u*v + " + num() + "*sin(u) + " + num() + "*v^3\n";
    text += "x2 = u + " + num() + "*v^2 + " + num() + "*exp(u*v)\n";
    text += "x3 = v + " + num() + "*u^3 + " + num() + "*cos(u - v)\n";
    text += "x4 = " + num() + "*cosh(u + v) + " + num() + "*u^2*v + " + num() + "*sin(2*v)\n";
    return minksurf::parse_surface(text);
}

}  // namespace fixtures
