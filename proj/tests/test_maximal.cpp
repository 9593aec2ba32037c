#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bmofem/errors.hpp"
#include "bmofem/maximal.hpp"
#include "oracles.hpp"

namespace bmofem {
namespace {

double log_inverse(const Point& x) { return std::log(1.0 / x.norm()); }
double lower_left_quarter(const Point& x) { return (x.x() <= 0.5 && x.y() <= 0.5) ? 1.0 : 0.0; }

TEST(DyadicSquare, GeometryAndClosedContainment) {
    const DyadicSquare q{2, 1, 3};
    EXPECT_EQ(q.side(), 0.25);
    EXPECT_EQ(q.origin(), Point(0.25, 0.75));
    EXPECT_TRUE(q.contains(Point(0.25, 1.0)));
    EXPECT_TRUE(q.contains(Point(0.4, 0.8)));
    EXPECT_FALSE(q.contains(Point(0.6, 0.8)));
}

TEST(DyadicSquaresContaining, CornersOfTheGridBelongToSeveralSquares) {
    EXPECT_EQ(dyadic_squares_containing(Point(0.3, 0.3), 2).size(), 1u);
    EXPECT_EQ(dyadic_squares_containing(Point(0.5, 0.3), 2).size(), 2u);
    EXPECT_EQ(dyadic_squares_containing(Point(0.5, 0.5), 2).size(), 4u);
    EXPECT_EQ(dyadic_squares_containing(Point(1.0, 1.0), 3).size(), 1u);
    EXPECT_THROW(dyadic_squares_containing(Point(1.2, 0.5), 1), BoundsError);
}

TEST(MeshMaximal, ConstantGivesItsAbsoluteValue) {
    const Mesh mesh = build_uniform_mesh(2);
    const ScalarField w = [](const Point&) { return -2.5; };
    for (const Point& x : {Point(0.1, 0.2), Point(0.5, 0.5), Point(1.0, 0.0)}) {
        EXPECT_NEAR(mesh_maximal(w, mesh, x), 2.5, 1e-15);
    }
}

TEST(MeshMaximal, IndicatorOfTheHostCellAveragesToOne) {
    auto mesh = make_uniform_mesh(2);
    const Point x(0.3, 0.1);
    const auto hosts = mesh->cells_containing(x);
    ASSERT_EQ(hosts.size(), 1u);
    const ScalarField w = [mesh, k = hosts.front()](const Point& z) {
        const auto cells = mesh->cells_containing(z, 0.0);
        return std::find(cells.begin(), cells.end(), k) != cells.end() ? 1.0 : 0.0;
    };
    EXPECT_NEAR(mesh_maximal(w, *mesh, x), 1.0, 1e-15);
}

TEST(MeshMaximal, SharedEdgeTakesTheLargerCellAverage) {
    // Level 0: the two cells share the rising diagonal.
    const Mesh mesh = build_uniform_mesh(0);
    const ScalarField w = [](const Point& z) { return z.y() < z.x() ? 0.2 : 0.6; };
    EXPECT_NEAR(mesh_maximal(w, mesh, Point(0.5, 0.5)), 0.6, 1e-15);
    EXPECT_NEAR(mesh_maximal(w, mesh, Point(0.7, 0.2)), 0.2, 1e-15);
}

TEST(MeshMaximal, SingularNodeIsReported) {
    const Mesh mesh = build_uniform_mesh(0);
    const ScalarField w = [](const Point&) { return std::numeric_limits<double>::infinity(); };
    EXPECT_THROW(mesh_maximal(w, mesh, Point(0.5, 0.5)), SingularityError);
}

TEST(DyadicMaximal, ConstantIsOneEverywhere) {
    const ScalarField w = [](const Point&) { return 1.0; };
    for (int depth : {1, 3, 5}) {
        EXPECT_NEAR(dyadic_maximal(w, depth, Point(0.3, 0.7)), 1.0, 1e-15);
    }
}

TEST(DyadicMaximal, IndicatorOfLowerLeftQuarter) {
    for (int depth = 1; depth <= 4; ++depth) {
        EXPECT_NEAR(dyadic_maximal(lower_left_quarter, depth, Point(0.25, 0.25)), 1.0, 1e-15);
    }
    for (int depth = 0; depth <= 4; ++depth) {
        EXPECT_NEAR(dyadic_maximal(lower_left_quarter, depth, Point(0.75, 0.75)), 0.25, 1e-15);
    }
}

TEST(DyadicMaximal, DepthBoundIsEnforced) {
    EXPECT_THROW(dyadic_maximal(lower_left_quarter, 11, Point(0.5, 0.5)), BoundsError);
    EXPECT_THROW(dyadic_maximal(lower_left_quarter, -1, Point(0.5, 0.5)), BoundsError);
}

TEST(DyadicAverageTable, AgreesWithDirectMaximal) {
    const DyadicAverageTable table(log_inverse, 4);
    for (const Point& x : {Point(0.1, 0.1), Point(0.5, 0.5), Point(0.9, 0.3), Point(0.0, 0.0)}) {
        EXPECT_DOUBLE_EQ(table.maximal(x), dyadic_maximal(log_inverse, 4, x)) << x.transpose();
    }
    EXPECT_THROW(table.average({5, 0, 0}), BoundsError);
}

TEST(BmoEstimate, ConstantHasNoOscillation) {
    const ScalarField w = [](const Point&) { return 4.0; };
    EXPECT_LE(bmo_seminorm_estimate(w, 4), 1e-12);
}

TEST(BmoEstimate, LeftHalfIndicatorAtDepthZero) {
    const ScalarField w = [](const Point& x) { return x.x() <= 0.5 ? 1.0 : 0.0; };
    EXPECT_GE(bmo_seminorm_estimate(w, 0), 0.5 - 1e-12);
    EXPECT_NEAR(bmo_profile(w, 3).front(), 0.5, 1e-12);
}

TEST(BmoEstimate, LogMatchesGaussOracleOnTheUnitSquare) {
    // The unit square is two triangles of equal area.
    const double mean = 1.5 - std::numbers::pi / 4.0 - 0.5 * std::log(2.0);
    auto deviation = [mean](const Point& x) { return std::abs(log_inverse(x) - mean); };
    const double expected =
        0.5 * (oracle::gauss_triangle_average(deviation, {Point(0, 0), Point(1, 0), Point(1, 1)}, 8) +
               oracle::gauss_triangle_average(deviation, {Point(0, 0), Point(1, 1), Point(0, 1)}, 8));
    EXPECT_NEAR(bmo_profile(log_inverse, 0).front(), expected, 1e-5);
}

TEST(BmoEstimate, LogSaturatesWithDepth) {
    const auto profile = bmo_profile(log_inverse, 6);
    ASSERT_EQ(profile.size(), 7u);
    for (std::size_t j = 1; j < profile.size(); ++j) {
        EXPECT_GE(profile[j], profile[j - 1]);
    }
    EXPECT_LE(profile[6] - profile[3], 0.2 * profile[3]);
    EXPECT_LE(profile[6] - profile[5], 0.1 * profile[5]);
    EXPECT_GT(profile[0], 0.0);
}

TEST(BmoEstimate, DepthBoundIsEnforced) { EXPECT_THROW(bmo_profile(log_inverse, 9), BoundsError); }

TEST(JohnNirenberg, ConstantHasEmptyTails) {
    const ScalarField w = [](const Point&) { return 1.0; };
    for (const auto& point : john_nirenberg_check(w, {0, 0, 0}, {0.1, 1.0, 2.0}, 6)) {
        EXPECT_EQ(point.fraction, 0.0);
    }
}

TEST(JohnNirenberg, TinyThresholdCoversAlmostEverything) {
    const auto points = john_nirenberg_check(log_inverse, {0, 0, 0}, {1e-15}, 8);
    EXPECT_GE(points.front().fraction, 0.999);
}

TEST(JohnNirenberg, LogFractionsMatchSamplingOracleAndDecayExponentially) {
    const std::vector<double> lambdas{1.0, 2.0, 3.0, 4.0};
    const auto points = john_nirenberg_check(log_inverse, {0, 0, 0}, lambdas, 10);
    ASSERT_EQ(points.size(), lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        EXPECT_EQ(points[i].lambda, lambdas[i]);
        EXPECT_NEAR(points[i].fraction,
                    oracle::distribution_fraction(log_inverse, Point(0, 0), 1.0, 10, lambdas[i]), 1e-12);
    }
    std::vector<double> slopes;
    for (std::size_t i = 1; i < points.size(); ++i) {
        ASSERT_GT(points[i].fraction, 0.0);
        EXPECT_LT(points[i].fraction, points[i - 1].fraction);
        slopes.push_back(std::log(points[i - 1].fraction) - std::log(points[i].fraction));
    }
    const auto [lo, hi] = std::minmax_element(slopes.begin(), slopes.end());
    EXPECT_LE(*hi, 3.0 * *lo);
}

TEST(JohnNirenberg, SkipsIsolatedSingularSamplesButRejectsMany) {
    // Infinite on one column of samples: 1 of 2^6 columns > 0.1%.
    const ScalarField column = [](const Point& x) {
        return x.x() < 1.0 / 64.0 ? std::numeric_limits<double>::infinity() : x.y();
    };
    EXPECT_THROW(john_nirenberg_check(column, {0, 0, 0}, {0.1}, 6), SingularityError);
    // Infinite at a single sample of 2^20: tolerated.
    const ScalarField single = [](const Point& x) {
        return (x - Point(0.5 / 1024, 0.5 / 1024)).norm() < 1e-12 ? std::nan("") : x.y();
    };
    EXPECT_NO_THROW(john_nirenberg_check(single, {0, 0, 0}, {0.1}, 10));
    EXPECT_THROW(john_nirenberg_check(single, {0, 0, 0}, {0.0}, 4), BoundsError);
}

TEST(MaximalBound, MeshMaximalIsDominatedByTwiceTheDyadicMaximal) {
    const std::vector<ScalarField> fixtures{
        log_inverse, lower_left_quarter, [](const Point&) { return 1.0; },
        [](const Point& x) { return std::sin(2.0 * std::numbers::pi * x.x()) * std::cos(2.0 * std::numbers::pi * x.y()); }};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int level = 2; level <= 3; ++level) {
        const Mesh mesh = build_uniform_mesh(level);
        for (const auto& w : fixtures) {
            const DyadicAverageTable table(w, level);
            for (int i = 0; i < 40; ++i) {
                const Point x(unit(rng), unit(rng));
                EXPECT_LE(mesh_maximal(w, mesh, x), 2.0 * table.maximal(x) + 1e-6) << x.transpose();
            }
        }
    }
}

}  // namespace
}  // namespace bmofem
