#pragma once

#include <Eigen/Dense>

namespace qiav
{

using Point = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Value of a scalar (q = 1) or 2-vector (q = 2) field at a point.
using Value = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 2, 1>;

/// q x 2 Jacobian of a field.
using Gradient = Eigen::Matrix<double, Eigen::Dynamic, 2, 0, 2, 2>;

/// The three element families: H1 (g), H(curl) (c), H(div) (d).
enum class Family
{
  g,
  c,
  d
};

inline char family_char(Family f)
{
  switch (f)
  {
  case Family::g:
    return 'g';
  case Family::c:
    return 'c';
  default:
    return 'd';
  }
}

} // namespace qiav
