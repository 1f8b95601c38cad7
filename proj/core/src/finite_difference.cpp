#include "minksurf/finite_difference.hpp"

#include <string>

#include "minksurf/error.hpp"

namespace minksurf {

namespace {

double central(const ScalarField& f, double u, double v, int i, int j, double h) {
    if (i == 0 && j == 0) return f(u, v);
    if (i == 1 && j == 0) return (f(u + h, v) - f(u - h, v)) / (2 * h);
    if (i == 0 && j == 1) return (f(u, v + h) - f(u, v - h)) / (2 * h);
    if (i == 2 && j == 0) return (f(u + h, v) - 2 * f(u, v) + f(u - h, v)) / (h * h);
    if (i == 0 && j == 2) return (f(u, v + h) - 2 * f(u, v) + f(u, v - h)) / (h * h);
    // i == 1 && j == 1
    return (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4 * h * h);
}

}  // namespace

double fd_partial(const ScalarField& f, double u, double v, int i, int j, double h) {
    if (i < 0 || j < 0 || i + j > 2) {
        throw Error(ErrorKind::OrderExceeded,
                    "finite differences support total order <= 2, got " + std::to_string(i + j));
    }
    if (i + j == 0) return f(u, v);
    const double coarse = central(f, u, v, i, j, h);
    const double fine = central(f, u, v, i, j, h / 2);
    // Both stencils have an O(h^2) leading error term.
    return (4 * fine - coarse) / 3;
}

}  // namespace minksurf
