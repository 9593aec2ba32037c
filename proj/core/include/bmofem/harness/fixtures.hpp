#pragma once

#include <string>
#include <vector>

#include "bmofem/coeff.hpp"
#include "bmofem/fem.hpp"
#include "bmofem/harness/config.hpp"

namespace bmofem::harness {

const std::vector<std::string>& coefficient_names();
const std::vector<std::string>& rhs_names();
const std::vector<std::string>& scalar_names();

/// identity | scaled-identity (kappa) | smooth | log-singular (beta, x0) |
/// checkerboard (kappa) | grid (coeff_file).
CoefficientField make_coefficient(const ExperimentConfig& config);

/// sincos:      (sin pi x, cos pi y)
/// grad-sinsin: gradient of sin(pi x) sin(pi y)
/// grad-hat:    gradient of the level-1 hat at (1/2, 1/2)
/// unit-x:      (1, 0)
VectorFieldFn make_rhs(const std::string& name);

/// log:        log(1/|x - x0|)
/// indicator:  indicator of [0, 1/2]^2
/// constant:   1
/// coeff-a11:  the (1,1) entry of the configured coefficient
/// wave:       sin(2 pi x) cos(2 pi y)
ScalarField make_scalar(const ExperimentConfig& config);

}  // namespace bmofem::harness
