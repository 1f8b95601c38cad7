#pragma once

#include <functional>

namespace minksurf {

using ScalarField = std::function<double(double u, double v)>;

/// Central-difference estimate of d^{i+j} f / du^i dv^j for i + j <= 2,
/// Richardson-extrapolated once (steps h and h/2). Cross-check use only;
/// the geometry pipeline differentiates with jets.
double fd_partial(const ScalarField& f, double u, double v, int i, int j, double h = 1e-4);

}  // namespace minksurf
