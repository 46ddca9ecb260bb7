#include "qiav/sharp.h"

#include <cmath>

#include "qiav/errors.h"
#include "qiav/space.h"

namespace qiav
{

RieszBasis riesz_representatives(const ReferenceElement& ref, const QuadratureRule& rule)
{
  const int nf = ref.num_dofs();
  std::vector<std::vector<Value>> theta(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k)
    for (int i = 0; i < nf; ++i)
      theta[k].push_back(ref.eval_shape(i, rule.point(k)));

  RieszBasis rb;
  rb.mass = Eigen::MatrixXd::Zero(nf, nf);
  for (std::size_t k = 0; k < rule.size(); ++k)
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < nf; ++j)
        rb.mass(i, j) += rule.weights[k] * theta[k][i].dot(theta[k][j]);
  rb.mass /= reference_area;

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(rb.mass);
  if (!(std::abs(lu.determinant()) > 1e-14))
    throw InternalError("singular reference mass matrix; the element is not unisolvent");
  rb.R = lu.inverse();
  return rb;
}

int sharp_quadrature_degree(const ReferenceElement& ref) { return 2 * ref.polynomial_degree() + 4; }

SharpEvaluator::SharpEvaluator(const ReferenceElement& ref, const RieszBasis& riesz)
    : family_(ref.family()),
      q_(ref.value_size()),
      nf_(ref.num_dofs()),
      rule_(simplex_quadrature(sharp_quadrature_degree(ref)))
{
  rho_.resize(rule_.size());
  for (std::size_t k = 0; k < rule_.size(); ++k)
  {
    std::vector<Value> theta;
    for (int j = 0; j < nf_; ++j)
      theta.push_back(ref.eval_shape(j, rule_.point(k)));
    for (int i = 0; i < nf_; ++i)
    {
      Value r = Value::Zero(q_);
      for (int j = 0; j < nf_; ++j)
        r += riesz.R(i, j) * theta[j];
      rho_[k].push_back(r);
    }
  }
}

Eigen::VectorXd SharpEvaluator::apply(const CellMap& map, const PhysicalFunction& v, std::size_t cell) const
{
  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(nf_);
  for (std::size_t k = 0; k < rule_.size(); ++k)
  {
    const Value val = v(map.to_physical(rule_.point(k)));
    if (!val.allFinite())
      throw EvaluationError(cell, "non-finite function value at a quadrature point");
    const Value pulled = apply_A(family_, map, val);
    for (int i = 0; i < nf_; ++i)
      sigma[i] += rule_.weights[k] * rho_[k][i].dot(pulled);
  }
  return sigma / reference_area;
}

Eigen::VectorXd sigma_sharp(const ReferenceElement& ref, const RieszBasis& riesz, const CellMap& map,
                            const PhysicalFunction& v)
{
  return SharpEvaluator(ref, riesz).apply(map, v);
}

Eigen::VectorXd interp_sharp_local(const ReferenceElement& ref, const RieszBasis& riesz, const CellMap& map,
                                   const PhysicalFunction& v)
{
  return sigma_sharp(ref, riesz, map, v);
}

BrokenField interp_sharp_global(const std::shared_ptr<const FeSpace>& space, const Function& v)
{
  if (v.value_size() != space->value_size())
    throw CapabilityError("function value size does not match the element");
  BrokenField out(space);
  const Mesh& mesh = space->mesh();
  const Connectivity& conn = space->connectivity();
  for (std::size_t k = 0; k < mesh.num_cells(); ++k)
  {
    const Eigen::VectorXd s = space->sharp().apply(mesh.map(k), [&](const Point& x) { return v(k, x); }, k);
    for (int i = 0; i < space->num_local(); ++i)
      out(k, i) = conn.sign(k, i) * s[i];
  }
  return out;
}

} // namespace qiav
