#pragma once

#include <Eigen/Core>

namespace bmofem {

using Point = Eigen::Vector2d;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

}  // namespace bmofem
