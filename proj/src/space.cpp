#include "qiav/space.h"

#include "qiav/errors.h"

namespace qiav
{

FeSpace::FeSpace(std::shared_ptr<const Mesh> mesh, Family family, int degree)
    : mesh_(std::move(mesh)),
      ref_(make_reference_element(family, degree)),
      riesz_(riesz_representatives(ref_, simplex_quadrature(2 * ref_.polynomial_degree()))),
      conn_(build_connectivity(*mesh_, ref_)),
      sharp_(ref_, riesz_)
{
}

Value FeSpace::shape_value(std::size_t cell, int i, const Point& xhat) const
{
  const Value v = apply_A_inverse(family(), mesh_->map(cell), ref_.eval_shape(i, xhat));
  return conn_.sign(cell, i) * v;
}

Gradient FeSpace::shape_gradient(std::size_t cell, int i, const Point& xhat) const
{
  const CellMap& map = mesh_->map(cell);
  const Gradient g = ref_.eval_shape_gradient(i, xhat);
  return double(conn_.sign(cell, i)) * (map.A_inverse(family()) * g * map.jacobian_inverse());
}

std::shared_ptr<const FeSpace> make_space(std::shared_ptr<const Mesh> mesh, Family family, int degree)
{
  return std::make_shared<const FeSpace>(std::move(mesh), family, degree);
}

BrokenField::BrokenField(std::shared_ptr<const FeSpace> space)
    : space_(std::move(space)),
      nf_(space_->num_local()),
      u_(Eigen::VectorXd::Zero(Eigen::Index(space_->num_cells()) * nf_))
{
}

BrokenField::BrokenField(std::shared_ptr<const FeSpace> space, Eigen::VectorXd coefficients)
    : space_(std::move(space)), nf_(space_->num_local()), u_(std::move(coefficients))
{
  if (u_.size() != Eigen::Index(space_->num_cells()) * nf_)
    throw Error("broken coefficient vector has the wrong length");
}

Value BrokenField::eval(std::size_t cell, const Point& xhat) const
{
  Value v = Value::Zero(space_->value_size());
  for (int i = 0; i < nf_; ++i)
    v += (*this)(cell, i) * space_->shape_value(cell, i, xhat);
  return v;
}

Value BrokenField::eval_physical(std::size_t cell, const Point& x) const
{
  return eval(cell, space_->mesh().map(cell).to_reference(x));
}

Gradient BrokenField::gradient(std::size_t cell, const Point& xhat) const
{
  Gradient g = Gradient::Zero(space_->value_size(), 2);
  for (int i = 0; i < nf_; ++i)
    g += (*this)(cell, i) * space_->shape_gradient(cell, i, xhat);
  return g;
}

std::vector<Polynomial> BrokenField::local_polynomial(std::size_t cell) const
{
  const ReferenceElement& ref = space_->element();
  const Connectivity& conn = space_->connectivity();
  const CellMap& map = space_->mesh().map(cell);
  const int q = ref.value_size();
  const int deg = ref.polynomial_degree();

  std::vector<Polynomial> ref_poly(q, Polynomial(deg));
  for (int i = 0; i < nf_; ++i)
  {
    const double c = (*this)(cell, i) * conn.sign(cell, i);
    for (int r = 0; r < q; ++r)
      ref_poly[r] += ref.shape(i)[r] * c;
  }
  // xhat = Jinv z
  const Mat2& Ji = map.jacobian_inverse();
  for (auto& p : ref_poly)
    p = p.linear_substitute(Ji(0, 0), Ji(0, 1), Ji(1, 0), Ji(1, 1));

  const Eigen::MatrixXd& Ainv = map.A_inverse(space_->family());
  std::vector<Polynomial> out(q, Polynomial(deg));
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < q; ++c)
      out[r] += ref_poly[c] * Ainv(r, c);
  return out;
}

ConformingField::ConformingField(std::shared_ptr<const FeSpace> space)
    : space_(std::move(space)), u_(Eigen::VectorXd::Zero(Eigen::Index(space_->num_global())))
{
}

ConformingField::ConformingField(std::shared_ptr<const FeSpace> space, Eigen::VectorXd coefficients)
    : space_(std::move(space)), u_(std::move(coefficients))
{
  if (u_.size() != Eigen::Index(space_->num_global()))
    throw Error("conforming coefficient vector has the wrong length");
}

BrokenField ConformingField::to_broken() const
{
  BrokenField b(space_);
  const Connectivity& conn = space_->connectivity();
  for (std::size_t k = 0; k < space_->num_cells(); ++k)
    for (int i = 0; i < space_->num_local(); ++i)
      b(k, i) = u_[Eigen::Index(conn.global(k, i))];
  return b;
}

Value ConformingField::eval(std::size_t cell, const Point& xhat) const
{
  const Connectivity& conn = space_->connectivity();
  Value v = Value::Zero(space_->value_size());
  for (int i = 0; i < space_->num_local(); ++i)
    v += u_[Eigen::Index(conn.global(cell, i))] * space_->shape_value(cell, i, xhat);
  return v;
}

Function as_function(const BrokenField& field)
{
  const int q = field.space().value_size();
  const int order = field.space().element().polynomial_degree() + 1;
  return Function(q, order, [field, q](std::size_t cell, const Point& x, int dx, int dy) -> Value {
    const int m = dx + dy;
    const Point xhat = field.space().mesh().map(cell).to_reference(x);
    if (m == 0)
      return field.eval(cell, xhat);
    if (m == 1)
      return field.gradient(cell, xhat).col(dx == 1 ? 0 : 1);
    const auto polys = field.local_polynomial(cell);
    const Point z = x - field.space().mesh().map(cell).translation();
    Value v(q);
    for (int r = 0; r < q; ++r)
      v(r) = polys[r].derivative(dx, dy)(z.x(), z.y());
    return v;
  });
}

Function as_function(const ConformingField& field) { return as_function(field.to_broken()); }

} // namespace qiav
