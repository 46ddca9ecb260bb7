#pragma once

#include <array>
#include <functional>

#include "refelem.h"
#include "types.h"

namespace qiav
{

/// Affine geometry T_K(xhat) = b + J xhat of one cell plus the field
/// transformation matrices A_K of the three families:
///   g: A = 1,   c: A = J^T,   d: A = det(J) J^{-1}.
class CellMap
{
public:
  CellMap() = default;
  /// Vertices in counterclockwise order; vertex 0 is the image of (0,0).
  CellMap(const Point& v0, const Point& v1, const Point& v2);

  const Mat2& jacobian() const { return J_; }
  const Mat2& jacobian_inverse() const { return Jinv_; }
  const Point& translation() const { return b_; }
  double det() const { return det_; }

  Point to_physical(const Point& xhat) const { return b_ + J_ * xhat; }
  Point to_reference(const Point& x) const { return Jinv_ * (x - b_); }

  /// A_K for the family (1x1 for g, 2x2 otherwise).
  const Eigen::MatrixXd& A(Family f) const { return A_[index(f)]; }
  const Eigen::MatrixXd& A_inverse(Family f) const { return Ainv_[index(f)]; }

  double norm_J() const { return normJ_; }
  double norm_J_inverse() const { return normJinv_; }
  double norm_A(Family f) const { return normA_[index(f)]; }
  double norm_A_inverse(Family f) const { return normAinv_[index(f)]; }

private:
  static int index(Family f) { return static_cast<int>(f); }

  Mat2 J_ = Mat2::Identity();
  Mat2 Jinv_ = Mat2::Identity();
  Point b_ = Point::Zero();
  double det_ = 1.0;
  std::array<Eigen::MatrixXd, 3> A_, Ainv_;
  std::array<double, 3> normA_{}, normAinv_{};
  double normJ_ = 1.0, normJinv_ = 1.0;
};

/// Largest singular value of a 2x2 matrix, closed form.
double spectral_norm(const Mat2& m);

using PhysicalFunction = std::function<Value(const Point&)>;
using ReferenceFunction = std::function<Value(const Point&)>;

/// psi_K(v) = A_K (v o T_K).
ReferenceFunction pullback(Family family, const CellMap& map, PhysicalFunction v);

/// psi_K^{-1}(phat) = A_K^{-1} (phat o T_K^{-1}).
PhysicalFunction pushforward(Family family, const CellMap& map, ReferenceFunction phat);

/// Applies A_K (resp. A_K^{-1}) to a value.
Value apply_A(Family family, const CellMap& map, const Value& v);
Value apply_A_inverse(Family family, const CellMap& map, const Value& v);

} // namespace qiav
