#include "bmofem/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <sstream>

#include "bmofem/errors.hpp"
#include "bmofem/quadrature.hpp"

namespace bmofem {

std::string to_string(CoefficientKind kind) {
    switch (kind) {
        case CoefficientKind::constant: return "constant";
        case CoefficientKind::smooth: return "smooth";
        case CoefficientKind::log_singular: return "log-singular";
        case CoefficientKind::checkerboard: return "checkerboard";
        case CoefficientKind::sampled_grid: return "sampled-grid";
    }
    return "unknown";
}

double min_eigenvalue(const Mat2& m) {
    const double a = m(0, 0);
    const double d = m(1, 1);
    const double b = 0.5 * (m(0, 1) + m(1, 0));
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), b);
    return mean - radius;
}

CoefficientField constant_coefficient(const Mat2& value) {
    if (value(0, 1) != value(1, 0)) {
        throw InvariantError("constant coefficient is not symmetric");
    }
    const double alpha = min_eigenvalue(value);
    if (!(alpha > 0.0)) {
        throw InvariantError("constant coefficient is not positive definite");
    }
    return {[value](const Point&) { return value; }, alpha, CoefficientKind::constant, {}};
}

CoefficientField smooth_coefficient() {
    return {[](const Point& x) {
                Mat2 m = Mat2::Zero();
                m(0, 0) = 2.0 + std::sin(std::numbers::pi * x.x());
                m(1, 1) = 2.0 + std::cos(std::numbers::pi * x.y());
                return m;
            },
            1.0, CoefficientKind::smooth, {}};
}

CoefficientField log_singular_coefficient(double beta, const Point& x0) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw BoundsError("log-singular amplitude beta must be finite and nonnegative");
    }
    return {[beta, x0](const Point& x) {
                const double s = 1.0 + beta * std::abs(std::log((x - x0).norm()));
                return Mat2(s * Mat2::Identity());
            },
            1.0,
            CoefficientKind::log_singular,
            {{"beta", beta}, {"x0", x0.x()}, {"y0", x0.y()}}};
}

CoefficientField checkerboard_coefficient(double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw BoundsError("checkerboard contrast kappa must be positive");
    }
    return {[kappa](const Point& x) {
                const bool same = (x.x() < 0.5) == (x.y() < 0.5);
                return Mat2((same ? 1.0 : kappa) * Mat2::Identity());
            },
            std::min(1.0, kappa),
            CoefficientKind::checkerboard,
            {{"kappa", kappa}}};
}

namespace {

struct SampledGrid {
    std::vector<double> xs;
    std::vector<double> ys;
    // Row-major in y: entry (i, j) at j * xs.size() + i.
    std::vector<Mat2> values;

    Mat2 operator()(const Point& p) const {
        auto bracket = [](const std::vector<double>& axis, double t) {
            const double clamped = std::clamp(t, axis.front(), axis.back());
            auto it = std::upper_bound(axis.begin(), axis.end(), clamped);
            std::size_t hi = static_cast<std::size_t>(it - axis.begin());
            hi = std::clamp<std::size_t>(hi, 1, axis.size() - 1);
            const std::size_t lo = hi - 1;
            const double w = (clamped - axis[lo]) / (axis[hi] - axis[lo]);
            return std::pair{lo, w};
        };
        const auto [i, wx] = bracket(xs, p.x());
        const auto [j, wy] = bracket(ys, p.y());
        const std::size_t nx = xs.size();
        const Mat2& v00 = values[j * nx + i];
        const Mat2& v10 = values[j * nx + i + 1];
        const Mat2& v01 = values[(j + 1) * nx + i];
        const Mat2& v11 = values[(j + 1) * nx + i + 1];
        return (1 - wx) * (1 - wy) * v00 + wx * (1 - wy) * v10 + (1 - wx) * wy * v01 + wx * wy * v11;
    }
};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

CoefficientField read_sampled_coefficient(std::istream& in) {
    double alpha = -1.0;
    bool header_seen = false;
    struct Row {
        double x, y, a11, a12, a22;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) {
            continue;
        }
        if (t.front() == '#') {
            const auto eq = t.find("alpha=");
            if (eq != std::string::npos) {
                try {
                    alpha = std::stod(t.substr(eq + 6));
                } catch (const std::exception&) {
                    throw ConfigError("line " + std::to_string(line_no) + ": malformed alpha");
                }
            }
            continue;
        }
        if (!header_seen) {
            std::string compact;
            std::remove_copy_if(t.begin(), t.end(), std::back_inserter(compact),
                                [](char c) { return c == ' '; });
            if (compact != "x,y,a11,a12,a22") {
                throw ConfigError("sampled coefficient header must be x,y,a11,a12,a22");
            }
            header_seen = true;
            continue;
        }
        std::stringstream ss(t);
        Row r{};
        double* fields[] = {&r.x, &r.y, &r.a11, &r.a12, &r.a22};
        std::string cell;
        int count = 0;
        while (std::getline(ss, cell, ',')) {
            if (count == 5) {
                throw ConfigError("line " + std::to_string(line_no) + ": too many fields");
            }
            try {
                std::size_t used = 0;
                *fields[count] = std::stod(cell, &used);
                if (trim(cell.substr(used)).size() != 0) {
                    throw std::invalid_argument(cell);
                }
            } catch (const std::exception&) {
                throw ConfigError("line " + std::to_string(line_no) + ": bad number '" + cell + "'");
            }
            ++count;
        }
        if (count != 5) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 5 fields");
        }
        rows.push_back(r);
    }
    if (!header_seen) {
        throw ConfigError("sampled coefficient: missing header");
    }
    if (!(alpha > 0.0)) {
        throw ConfigError("sampled coefficient: missing or nonpositive '# alpha=<value>'");
    }
    SampledGrid grid;
    for (const Row& r : rows) {
        grid.xs.push_back(r.x);
        grid.ys.push_back(r.y);
    }
    for (auto* axis : {&grid.xs, &grid.ys}) {
        std::sort(axis->begin(), axis->end());
        axis->erase(std::unique(axis->begin(), axis->end()), axis->end());
    }
    const std::size_t nx = grid.xs.size();
    const std::size_t ny = grid.ys.size();
    if (nx < 2 || ny < 2 || rows.size() != nx * ny) {
        throw ConfigError("sampled coefficient: rows do not form a full tensor grid");
    }
    grid.values.assign(nx * ny, Mat2::Constant(std::numeric_limits<double>::quiet_NaN()));
    for (const Row& r : rows) {
        const auto i = static_cast<std::size_t>(
            std::lower_bound(grid.xs.begin(), grid.xs.end(), r.x) - grid.xs.begin());
        const auto j = static_cast<std::size_t>(
            std::lower_bound(grid.ys.begin(), grid.ys.end(), r.y) - grid.ys.begin());
        Mat2 m;
        m << r.a11, r.a12, r.a12, r.a22;
        if (min_eigenvalue(m) < alpha) {
            throw ConfigError("sampled coefficient: node (" + std::to_string(r.x) + ", " +
                              std::to_string(r.y) + ") violates the declared alpha");
        }
        if (grid.values[j * nx + i].allFinite()) {
            throw ConfigError("sampled coefficient: node (" + std::to_string(r.x) + ", " +
                              std::to_string(r.y) + ") appears twice");
        }
        grid.values[j * nx + i] = m;
    }
    if (grid.xs.front() > 0.0 || grid.xs.back() < 1.0 || grid.ys.front() > 0.0 ||
        grid.ys.back() < 1.0) {
        throw ConfigError("sampled coefficient: grid must cover the unit square");
    }
    return {grid, alpha, CoefficientKind::sampled_grid,
            {{"nx", static_cast<double>(nx)}, {"ny", static_cast<double>(ny)}}};
}

CoefficientField load_sampled_coefficient(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open coefficient file '" + path + "'");
    }
    return read_sampled_coefficient(in);
}

PiecewiseConstantMatrixField project_coefficient(const CoefficientField& coeff, const MeshPtr& mesh,
                                                 double rel_tol) {
    check_quadrature_tolerance(rel_tol);
    PiecewiseConstantMatrixField out{mesh, {}};
    out.values.reserve(mesh->num_cells());
    for (std::size_t k = 0; k < mesh->num_cells(); ++k) {
        Mat2 avg;
        try {
            avg = triangle_average(coeff.evaluate, mesh->corners(k), rel_tol);
        } catch (const QuadratureError&) {
            // Singularities off the mesh vertices defeat uniform refinement.
            avg = triangle_average_refined(coeff.evaluate, mesh->corners(k), rel_tol);
        }
        const double off = 0.5 * (avg(0, 1) + avg(1, 0));
        avg(0, 1) = off;
        avg(1, 0) = off;
        out.values.push_back(avg);
    }
    return out;
}

double coercivity_of_projection(const PiecewiseConstantMatrixField& field) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < field.values.size(); ++k) {
        const Mat2& m = field.values[k];
        if (m(0, 1) != m(1, 0)) {
            throw InvariantError("projected coefficient on cell " + std::to_string(k) +
                                 " is not symmetric");
        }
        lo = std::min(lo, min_eigenvalue(m));
    }
    return lo;
}

double coefficient_error(const CoefficientField& coeff, const PiecewiseConstantMatrixField& field,
                         double r, double rel_tol) {
    if (!(r >= 1.1 && r <= 10.0)) {
        throw BoundsError("exponent r=" + std::to_string(r) + " outside [1.1, 10]");
    }
    check_quadrature_tolerance(rel_tol);
    const Mesh& mesh = *field.mesh;
    if (field.values.size() != mesh.num_cells()) {
        throw InvariantError("projected coefficient is not aligned with its mesh");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < mesh.num_cells(); ++k) {
        const Mat2& cell_value = field.values[k];
        auto integrand = [&](const Point& x) {
            return std::pow((coeff.evaluate(x) - cell_value).norm(), r);
        };
        total += mesh.area(k) * triangle_average_refined(integrand, mesh.corners(k), rel_tol);
    }
    return std::pow(total, 1.0 / r);
}

}  // namespace bmofem
