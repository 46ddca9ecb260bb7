#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "functions.h"
#include "maps.h"
#include "quadrature.h"
#include "refelem.h"

namespace qiav
{

class FeSpace;
class BrokenField;

/// Riesz representatives rho_i = sum_j R(i, j) theta_j of the dofs with respect
/// to the mean-weighted L2 product, so that mean_Khat(rho_i . p) = sigma_i(p)
/// for every p in the shape space.
struct RieszBasis
{
  Eigen::MatrixXd R;
  Eigen::MatrixXd mass; ///< M(i, j) = mean_Khat(theta_i . theta_j)
};

/// `rule` must be exact to twice the polynomial degree of the element.
RieszBasis riesz_representatives(const ReferenceElement& ref, const QuadratureRule& rule);

/// Quadrature degree used by the extended dofs on non-polynomial input.
int sharp_quadrature_degree(const ReferenceElement& ref);

/// Extended dofs with the representatives tabulated once at the quadrature
/// points of the fixed rule.
class SharpEvaluator
{
public:
  SharpEvaluator(const ReferenceElement& ref, const RieszBasis& riesz);

  const QuadratureRule& rule() const { return rule_; }

  /// sigma#_i(v) = mean_Khat(rho_i . psi_K(v)), unsigned reference orientation.
  /// Throws EvaluationError(cell) on non-finite values of v.
  Eigen::VectorXd apply(const CellMap& map, const PhysicalFunction& v, std::size_t cell = 0) const;

private:
  Family family_;
  int q_;
  int nf_;
  QuadratureRule rule_;
  std::vector<std::vector<Value>> rho_; // [point][dof]
};

Eigen::VectorXd sigma_sharp(const ReferenceElement& ref, const RieszBasis& riesz, const CellMap& map,
                            const PhysicalFunction& v);

/// Coefficients of I#_K(v) in the unsigned local basis psi_K^{-1}(theta_i).
Eigen::VectorXd interp_sharp_local(const ReferenceElement& ref, const RieszBasis& riesz, const CellMap& map,
                                   const PhysicalFunction& v);

/// Cell-wise I#_K over the whole mesh, in the sign-corrected local bases.
BrokenField interp_sharp_global(const std::shared_ptr<const FeSpace>& space, const Function& v);

} // namespace qiav
