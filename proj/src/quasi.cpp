#include "qiav/quasi.h"

#include <cmath>

#include "qiav/averaging.h"
#include "qiav/errors.h"
#include "qiav/quadrature.h"

namespace qiav
{

ConformingField quasi_interpolate(const std::shared_ptr<const FeSpace>& space, const Function& v)
{
  return average(interp_sharp_global(space, v));
}

ConformingField quasi_interpolate_zero_bc(const std::shared_ptr<const FeSpace>& space, const Function& v)
{
  return average_zero_bc(interp_sharp_global(space, v));
}

Value eval_field(const BrokenField& field, std::size_t cell, const Point& xhat) { return field.eval(cell, xhat); }

Value eval_field(const ConformingField& field, std::size_t cell, const Point& xhat)
{
  return field.eval(cell, xhat);
}

double TraceSpec::operator()(const Value& v, const Face& face) const
{
  switch (family)
  {
  case Family::g:
    return v(0);
  case Family::c:
    return v.dot(face.tangent());
  case Family::d:
    return v.dot(face.normal);
  }
  throw InternalError("unknown family");
}

Point face_point(const Mesh& mesh, const Face& face, double t)
{
  const Point& a = mesh.vertex(face.vertices[0]);
  const Point& b = mesh.vertex(face.vertices[1]);
  return a + t * (b - a);
}

std::vector<double> face_samples(int degree)
{
  const QuadratureRule rule = edge_quadrature(2 * degree + 2);
  std::vector<double> t{0.0};
  for (std::size_t k = 0; k < rule.size(); ++k)
    t.push_back(rule.parameter(k));
  t.push_back(1.0);
  return t;
}

std::vector<double> jump_norm_samples()
{
  std::vector<double> t{0.0};
  for (int k = 1; k <= 10; ++k)
    t.push_back(double(k) / 11.0);
  t.push_back(1.0);
  return t;
}

std::vector<double> gamma_trace(const BrokenField& field, std::size_t cell, std::size_t face,
                                const std::vector<double>& samples)
{
  const Mesh& mesh = field.space().mesh();
  const Face& f = mesh.face(face);
  const TraceSpec trace{field.space().family()};
  std::vector<double> out;
  out.reserve(samples.size());
  for (double t : samples)
    out.push_back(trace(field.eval_physical(cell, face_point(mesh, f, t)), f));
  return out;
}

std::vector<double> gamma_jump(const BrokenField& field, std::size_t face, const std::vector<double>& samples)
{
  const Face& f = field.space().mesh().face(face);
  std::vector<double> out = gamma_trace(field, f.left, face, samples);
  if (!f.boundary())
  {
    const std::vector<double> r = gamma_trace(field, f.right, face, samples);
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] -= r[k];
  }
  return out;
}

double jump_sup(const BrokenField& field, std::size_t face)
{
  double m = 0.0;
  for (double j : gamma_jump(field, face, jump_norm_samples()))
    m = std::max(m, std::abs(j));
  return m;
}

} // namespace qiav
