#include "qiav/maps.h"

#include <cmath>

namespace qiav
{

double spectral_norm(const Mat2& m)
{
  // sigma_max^2 = (|m|_F^2 + sqrt(|m|_F^4 - 4 det^2)) / 2
  const double f2 = m.squaredNorm();
  const double det = m.determinant();
  const double disc = std::max(0.0, f2 * f2 - 4.0 * det * det);
  return std::sqrt(0.5 * (f2 + std::sqrt(disc)));
}

CellMap::CellMap(const Point& v0, const Point& v1, const Point& v2)
{
  b_ = v0;
  J_.col(0) = v1 - v0;
  J_.col(1) = v2 - v0;
  det_ = J_.determinant();
  Jinv_ = J_.inverse();
  normJ_ = spectral_norm(J_);
  normJinv_ = spectral_norm(Jinv_);

  A_[index(Family::g)] = Eigen::MatrixXd::Ones(1, 1);
  Ainv_[index(Family::g)] = Eigen::MatrixXd::Ones(1, 1);
  A_[index(Family::c)] = J_.transpose();
  Ainv_[index(Family::c)] = Jinv_.transpose();
  A_[index(Family::d)] = det_ * Jinv_;
  Ainv_[index(Family::d)] = J_ / det_;

  normA_[index(Family::g)] = normAinv_[index(Family::g)] = 1.0;
  normA_[index(Family::c)] = normJ_;
  normAinv_[index(Family::c)] = normJinv_;
  normA_[index(Family::d)] = std::abs(det_) * normJinv_;
  normAinv_[index(Family::d)] = normJ_ / std::abs(det_);
}

Value apply_A(Family family, const CellMap& map, const Value& v)
{
  if (family == Family::g)
    return v;
  const Eigen::MatrixXd& a = map.A(family);
  Value out(2);
  out << a(0, 0) * v(0) + a(0, 1) * v(1), a(1, 0) * v(0) + a(1, 1) * v(1);
  return out;
}

Value apply_A_inverse(Family family, const CellMap& map, const Value& v)
{
  if (family == Family::g)
    return v;
  const Eigen::MatrixXd& a = map.A_inverse(family);
  Value out(2);
  out << a(0, 0) * v(0) + a(0, 1) * v(1), a(1, 0) * v(0) + a(1, 1) * v(1);
  return out;
}

ReferenceFunction pullback(Family family, const CellMap& map, PhysicalFunction v)
{
  return [family, map, v = std::move(v)](const Point& xhat) {
    return apply_A(family, map, v(map.to_physical(xhat)));
  };
}

PhysicalFunction pushforward(Family family, const CellMap& map, ReferenceFunction phat)
{
  return [family, map, phat = std::move(phat)](const Point& x) {
    return apply_A_inverse(family, map, phat(map.to_reference(x)));
  };
}

} // namespace qiav
