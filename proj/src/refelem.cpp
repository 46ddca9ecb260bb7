#include "qiav/refelem.h"

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "qiav/errors.h"
#include "qiav/quadrature.h"

namespace qiav
{

namespace
{
using Rational = boost::multiprecision::cpp_rational;
using RPoly = BasicPolynomial<Rational>;
using RVecPoly = std::vector<RPoly>;

struct RPoint
{
  Rational x, y;
};

RPoint rational_vertex(int i)
{
  switch (i)
  {
  case 0:
    return {0, 0};
  case 1:
    return {1, 0};
  default:
    return {0, 1};
  }
}

Rational factorial(int n)
{
  Rational r = 1;
  for (int k = 2; k <= n; ++k)
    r *= k;
  return r;
}

// int_{Khat} x^a y^b = a! b! / (a + b + 2)!
Rational monomial_integral(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

Rational eval(const RPoly& p, const RPoint& x) { return p(x.x, x.y); }

// int_0^1 p(start + t * dir) dt, exact.
Rational line_integral(const RPoly& p, const RPoint& start, const RPoint& dir)
{
  // Univariate polynomials in t stored in the x-slot of RPoly.
  RPoly lx(1), ly(1);
  lx.coeff(0, 0) = start.x;
  lx.coeff(1, 0) = dir.x;
  ly.coeff(0, 0) = start.y;
  ly.coeff(1, 0) = dir.y;
  std::vector<RPoly> xp{RPoly::constant(1)}, yp{RPoly::constant(1)};
  for (int k = 1; k <= p.degree(); ++k)
  {
    xp.push_back(xp.back() * lx);
    yp.push_back(yp.back() * ly);
  }
  Rational total = 0;
  p.for_each([&](int a, int b, const Rational& c) {
    if (c == 0)
      return;
    const RPoly u = xp[a] * yp[b];
    u.for_each([&](int m, int n, const Rational& cu) {
      if (n == 0)
        total += c * cu / Rational(m + 1);
    });
  });
  return total;
}

struct RationalDof
{
  DofKind kind;
  RPoint node{0, 0};
  int edge = -1;
  RPoly weight;
};

Rational apply_rational_dof(const RationalDof& dof, const RVecPoly& v)
{
  switch (dof.kind)
  {
  case DofKind::point_evaluation:
    return eval(v[0], dof.node);
  case DofKind::edge_tangential_moment:
  case DofKind::edge_normal_moment:
  {
    const auto ev = reference_edge(dof.edge);
    const RPoint a = rational_vertex(ev[0]);
    const RPoint b = rational_vertex(ev[1]);
    const RPoint d{b.x - a.x, b.y - a.y};
    // t ds = d dt; n ds = (d_y, -d_x) dt for counterclockwise edges.
    const Rational wx = dof.kind == DofKind::edge_tangential_moment ? d.x : d.y;
    const Rational wy = dof.kind == DofKind::edge_tangential_moment ? d.y : Rational(-d.x);
    return line_integral(v[0] * wx + v[1] * wy, a, d);
  }
  case DofKind::interior_moment:
  {
    const RPoly prod = v[0] * dof.weight;
    Rational total = 0;
    prod.for_each([&](int a, int b, const Rational& c) { total += c * monomial_integral(a, b); });
    return total * 2; // divided by |Khat| = 1/2
  }
  }
  throw InternalError("unknown dof kind");
}

RVecPoly scalar(const RPoly& p) { return {p}; }
RVecPoly vec(const RPoly& px, const RPoly& py) { return {px, py}; }

// Gauss-Jordan inverse in exact arithmetic.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a)
{
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col)
  {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0)
      ++piv;
    if (piv == n)
      throw InternalError("reference element: dof matrix is singular (element not unisolvent)");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational d = a[col][col];
    for (std::size_t j = 0; j < n; ++j)
    {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r)
    {
      if (r == col || a[r][col] == 0)
        continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j)
      {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

Polynomial to_double(const RPoly& p)
{
  return p.convert<double>([](const Rational& r) { return static_cast<double>(r); });
}

} // namespace

Point reference_vertex(int i)
{
  switch (i)
  {
  case 0:
    return {0.0, 0.0};
  case 1:
    return {1.0, 0.0};
  default:
    return {0.0, 1.0};
  }
}

std::array<int, 2> reference_edge(int j) { return {(j + 1) % 3, (j + 2) % 3}; }

ReferenceElement make_reference_element(Family family, int degree)
{
  const bool supported = (family == Family::g && degree >= 1 && degree <= 3)
                         || (family != Family::g && degree == 0);
  if (!supported)
    throw CapabilityError(std::string("unsupported element (") + family_char(family) + ","
                          + std::to_string(degree)
                          + "); supported pairs: (g,1) (g,2) (g,3) (c,0) (d,0)");

  ReferenceElement el;
  el.family_ = family;
  el.degree_ = degree;

  std::vector<RVecPoly> basis;
  std::vector<RationalDof> rdofs;
  std::vector<DofEntity> entities;

  if (family == Family::g)
  {
    el.q_ = 1;
    el.poly_degree_ = degree;
    el.dofs_per_edge_ = degree - 1;
    for (int t = 0; t <= degree; ++t)
      for (int b = 0; b <= t; ++b)
        basis.push_back(scalar(RPoly::monomial(t - b, b)));
    for (int v = 0; v < 3; ++v)
    {
      rdofs.push_back({DofKind::point_evaluation, rational_vertex(v), -1, {}});
      entities.push_back({EntityType::vertex, v, 0});
    }
    for (int e = 0; e < 3; ++e)
    {
      const auto ev = reference_edge(e);
      const RPoint a = rational_vertex(ev[0]);
      const RPoint b = rational_vertex(ev[1]);
      for (int s = 0; s < degree - 1; ++s)
      {
        const Rational t = Rational(s + 1, degree);
        rdofs.push_back({DofKind::point_evaluation, {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}, e, {}});
        entities.push_back({EntityType::edge, e, s});
      }
    }
    if (degree == 3)
    {
      // 60 lambda_0 lambda_1 lambda_2, normalized so that constants map to themselves.
      RPoly l0(1);
      l0.coeff(0, 0) = 1;
      l0.coeff(1, 0) = -1;
      l0.coeff(0, 1) = -1;
      const RPoly bubble = l0 * RPoly::monomial(1, 1) * Rational(60);
      rdofs.push_back({DofKind::interior_moment, {0, 0}, -1, bubble});
      entities.push_back({EntityType::interior, 0, 0});
    }
  }
  else
  {
    el.q_ = 2;
    el.poly_degree_ = 1;
    el.dofs_per_edge_ = 1;
    const RPoly one = RPoly::constant(1), zero = RPoly::constant(0);
    basis.push_back(vec(one, zero));
    basis.push_back(vec(zero, one));
    if (family == Family::d)
      basis.push_back(vec(RPoly::monomial(1, 0), RPoly::monomial(0, 1)));
    else
      basis.push_back(vec(RPoly::monomial(0, 1, -1), RPoly::monomial(1, 0)));
    const DofKind kind = family == Family::d ? DofKind::edge_normal_moment : DofKind::edge_tangential_moment;
    for (int e = 0; e < 3; ++e)
    {
      rdofs.push_back({kind, {0, 0}, e, {}});
      entities.push_back({EntityType::edge, e, 0});
    }
  }

  const std::size_t nf = basis.size();
  std::vector<std::vector<Rational>> vdm(nf, std::vector<Rational>(nf));
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = 0; j < nf; ++j)
      vdm[i][j] = apply_rational_dof(rdofs[i], basis[j]);
  const auto coef = invert(vdm);

  el.shape_.resize(nf);
  for (std::size_t j = 0; j < nf; ++j)
  {
    for (int c = 0; c < el.q_; ++c)
    {
      RPoly p(el.poly_degree_);
      for (std::size_t m = 0; m < nf; ++m)
        p += basis[m][c] * coef[m][j];
      el.shape_[j].push_back(to_double(p.raised(el.poly_degree_)));
    }
  }
  for (const auto& rd : rdofs)
  {
    DofFunctional df;
    df.kind = rd.kind;
    df.node = Point(static_cast<double>(rd.node.x), static_cast<double>(rd.node.y));
    df.edge = rd.edge;
    df.weight = to_double(rd.weight);
    el.dofs_.push_back(df);
  }
  el.entities_ = std::move(entities);
  for (const auto& shape : el.shape_)
  {
    std::vector<std::array<Polynomial, 2>> g;
    for (const Polynomial& p : shape)
      g.push_back({p.derivative(1, 0), p.derivative(0, 1)});
    el.gradient_.push_back(std::move(g));
  }
  return el;
}

Value ReferenceElement::eval_shape(int i, const Point& xhat) const
{
  Value v(q_);
  for (int c = 0; c < q_; ++c)
    v(c) = shape_[i][c](xhat.x(), xhat.y());
  return v;
}

Gradient ReferenceElement::eval_shape_gradient(int i, const Point& xhat) const
{
  Gradient g(q_, 2);
  for (int c = 0; c < q_; ++c)
  {
    g(c, 0) = gradient_[i][c][0](xhat.x(), xhat.y());
    g(c, 1) = gradient_[i][c][1](xhat.x(), xhat.y());
  }
  return g;
}

double ReferenceElement::apply_dof(int i, const std::function<Value(const Point&)>& f, int quad_degree) const
{
  const DofFunctional& dof = dofs_[i];
  switch (dof.kind)
  {
  case DofKind::point_evaluation:
    return f(dof.node)(0);
  case DofKind::edge_tangential_moment:
  case DofKind::edge_normal_moment:
  {
    const auto ev = reference_edge(dof.edge);
    const Point a = reference_vertex(ev[0]);
    const Point d = reference_vertex(ev[1]) - a;
    const Point w = dof.kind == DofKind::edge_tangential_moment ? d : Point(d.y(), -d.x());
    const QuadratureRule rule = edge_quadrature(quad_degree);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k)
    {
      const Value v = f(a + rule.parameter(k) * d);
      sum += rule.weights[k] * (v(0) * w.x() + v(1) * w.y());
    }
    return sum;
  }
  case DofKind::interior_moment:
  {
    const QuadratureRule rule = simplex_quadrature(quad_degree);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k)
    {
      const Point x = rule.point(k);
      sum += rule.weights[k] * f(x)(0) * dof.weight(x.x(), x.y());
    }
    return sum / reference_area;
  }
  }
  throw InternalError("unknown dof kind");
}

double ReferenceElement::apply_dof(int i, const std::vector<Polynomial>& p) const
{
  int deg = 0;
  for (const auto& c : p)
    deg = std::max(deg, c.degree());
  deg += dofs_[i].weight.degree() + 1;
  return apply_dof(
      i,
      [&](const Point& x) {
        Value v(q_);
        for (int c = 0; c < q_; ++c)
          v(c) = p[c](x.x(), x.y());
        return v;
      },
      std::min(deg, max_quadrature_degree));
}

} // namespace qiav
