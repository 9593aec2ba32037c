#include "bmofem/quadrature.hpp"

namespace bmofem {

void check_quadrature_tolerance(double rel_tol) {
    if (!(rel_tol >= 1e-12 && rel_tol <= 1e-4)) {
        throw BoundsError("quadrature relative tolerance " + std::to_string(rel_tol) +
                          " outside [1e-12, 1e-4]");
    }
}

}  // namespace bmofem
