#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "bmofem/types.hpp"

namespace bmofem {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside its documented range (levels, exponents, tolerances).
class BoundsError : public Error {
public:
    using Error::Error;
};

/// Degenerate or inverted cell.
class GeometryError : public Error {
public:
    GeometryError(std::size_t cell, const std::string& what)
        : Error("cell " + std::to_string(cell) + ": " + what), cell_(cell) {}
    std::size_t cell() const noexcept { return cell_; }

private:
    std::size_t cell_;
};

/// Non-finite evaluation of a field at a quadrature or sample point.
class SingularityError : public Error {
public:
    explicit SingularityError(const Point& x)
        : Error("non-finite evaluation at (" + std::to_string(x.x()) + ", " +
                std::to_string(x.y()) + ")"),
          point_(x) {}
    const Point& point() const noexcept { return point_; }

private:
    Point point_;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

/// A data invariant (symmetry, alignment, trace) does not hold.
class InvariantError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

class NotSpdError : public SolverError {
public:
    using SolverError::SolverError;
};

class ConvergenceError : public SolverError {
public:
    ConvergenceError(const std::string& what, double residual)
        : SolverError(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class DomainTooCoarseError : public Error {
public:
    using Error::Error;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Meshes are not related by refinement.
class LineageError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace bmofem
