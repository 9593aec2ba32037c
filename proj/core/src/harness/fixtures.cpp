#include "bmofem/harness/fixtures.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bmofem/errors.hpp"
#include "bmofem/mesh.hpp"

namespace bmofem::harness {

namespace {

constexpr double pi = std::numbers::pi;

Point x0_of(const ExperimentConfig& c) {
    if (c.x0.size() != 2) {
        throw ConfigError("x0 must have two coordinates");
    }
    return Point(c.x0[0], c.x0[1]);
}

}  // namespace

const std::vector<std::string>& coefficient_names() {
    static const std::vector<std::string> names = {"identity", "scaled-identity", "smooth",
                                                   "log-singular", "checkerboard", "grid"};
    return names;
}

const std::vector<std::string>& rhs_names() {
    static const std::vector<std::string> names = {"sincos", "grad-sinsin", "grad-hat", "unit-x"};
    return names;
}

const std::vector<std::string>& scalar_names() {
    static const std::vector<std::string> names = {"log", "indicator", "constant", "coeff-a11", "wave"};
    return names;
}

CoefficientField make_coefficient(const ExperimentConfig& c) {
    if (c.coeff == "identity") {
        return identity_coefficient();
    }
    if (c.coeff == "scaled-identity") {
        if (!(c.kappa > 0.0)) {
            throw ConfigError("scaled-identity needs kappa > 0");
        }
        return constant_coefficient(c.kappa * Mat2::Identity());
    }
    if (c.coeff == "smooth") {
        return smooth_coefficient();
    }
    if (c.coeff == "log-singular") {
        return log_singular_coefficient(c.beta, x0_of(c));
    }
    if (c.coeff == "checkerboard") {
        return checkerboard_coefficient(c.kappa);
    }
    if (c.coeff == "grid") {
        return load_sampled_coefficient(c.coeff_file);
    }
    throw ConfigError("unknown coefficient fixture '" + c.coeff + "'");
}

VectorFieldFn make_rhs(const std::string& name) {
    if (name == "sincos") {
        return [](const Point& x) { return Vec2(std::sin(pi * x.x()), std::cos(pi * x.y())); };
    }
    if (name == "grad-sinsin") {
        return [](const Point& x) {
            return Vec2(pi * std::cos(pi * x.x()) * std::sin(pi * x.y()),
                        pi * std::sin(pi * x.x()) * std::cos(pi * x.y()));
        };
    }
    if (name == "grad-hat") {
        auto coarse = make_uniform_mesh(1);
        const std::size_t center = 4;  // (1/2, 1/2) on the 3x3 vertex grid
        auto grad = gradient(P1Function::hat(coarse, center));
        return [coarse, grad](const Point& x) {
            const auto cells = coarse->cells_containing(x);
            if (cells.size() != 1) {
                // On a coarse edge the field is two-valued; report it as singular.
                return Vec2(std::numeric_limits<double>::quiet_NaN(), 0.0);
            }
            return grad.values[cells.front()];
        };
    }
    if (name == "unit-x") {
        return [](const Point&) { return Vec2(1.0, 0.0); };
    }
    throw ConfigError("unknown right-hand side fixture '" + name + "'");
}

ScalarField make_scalar(const ExperimentConfig& c) {
    if (c.scalar == "log") {
        const Point x0 = x0_of(c);
        return [x0](const Point& x) { return std::log(1.0 / (x - x0).norm()); };
    }
    if (c.scalar == "indicator") {
        return [](const Point& x) { return (x.x() <= 0.5 && x.y() <= 0.5) ? 1.0 : 0.0; };
    }
    if (c.scalar == "constant") {
        return [](const Point&) { return 1.0; };
    }
    if (c.scalar == "coeff-a11") {
        auto coeff = make_coefficient(c);
        return [coeff](const Point& x) { return coeff.evaluate(x)(0, 0); };
    }
    if (c.scalar == "wave") {
        return [](const Point& x) {
            return std::sin(2.0 * std::numbers::pi * x.x()) * std::cos(2.0 * std::numbers::pi * x.y());
        };
    }
    throw ConfigError("unknown scalar fixture '" + c.scalar + "'");
}

}  // namespace bmofem::harness
