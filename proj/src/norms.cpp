#include "qiav/norms.h"

#include <cmath>
#include <numeric>

#include "qiav/errors.h"
#include "qiav/quadrature.h"

namespace qiav
{

namespace
{
CellSet all_cells(const Mesh& mesh, const CellSet& region)
{
  if (!region.empty())
    return region;
  CellSet cells(mesh.num_cells());
  std::iota(cells.begin(), cells.end(), std::size_t(0));
  return cells;
}

/// Accumulates sum |x|^p or max |x|.
class Accumulator
{
public:
  explicit Accumulator(double p) : p_(p) {}

  void add(double weight, double magnitude, std::size_t cell)
  {
    if (!std::isfinite(magnitude))
      throw EvaluationError(cell, "non-finite integrand");
    if (std::isinf(p_))
      acc_ = std::max(acc_, magnitude);
    else
      acc_ += weight * std::pow(magnitude, p_);
  }

  double result() const { return std::isinf(p_) ? acc_ : std::pow(acc_, 1.0 / p_); }

private:
  double p_;
  double acc_ = 0.0;
};

void check_exponent(double p)
{
  if (!(p >= 1.0))
    throw CapabilityError("exponent p must lie in [1, inf]");
}

// integrates f(cell, xhat) -> magnitude over the region
template <typename F>
double integrate_norm(const Mesh& mesh, double p, const CellSet& region, int quad_degree, F&& f)
{
  check_exponent(p);
  const QuadratureRule rule = simplex_quadrature(quad_degree);
  Accumulator acc(p);
  for (std::size_t k : all_cells(mesh, region))
  {
    const double scale = mesh.area(k) / reference_area;
    for (std::size_t q = 0; q < rule.size(); ++q)
      acc.add(scale * rule.weights[q], f(k, rule.point(q)), k);
  }
  return acc.result();
}

std::vector<std::array<int, 2>> multi_indices(int m)
{
  std::vector<std::array<int, 2>> out;
  for (int b = 0; b <= m; ++b)
    out.push_back({m - b, b});
  return out;
}

Polynomial translate(const Polynomial& p, const Point& c)
{
  // p(x - c)
  Polynomial out(p.degree());
  std::vector<std::vector<double>> binom(p.degree() + 1, std::vector<double>(p.degree() + 1, 0.0));
  for (int n = 0; n <= p.degree(); ++n)
  {
    binom[n][0] = 1.0;
    for (int k = 1; k <= n; ++k)
      binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0.0);
  }
  p.for_each([&](int a, int b, double coef) {
    for (int i = 0; i <= a; ++i)
      for (int j = 0; j <= b; ++j)
        out.coeff(i, j) += coef * binom[a][i] * std::pow(-c.x(), a - i) * binom[b][j] * std::pow(-c.y(), b - j);
  });
  return out;
}
} // namespace

double lp_norm(const Mesh& mesh, const Function& u, double p, const CellSet& region, int quad_degree)
{
  return integrate_norm(mesh, p, region, quad_degree, [&](std::size_t k, const Point& xhat) {
    return u(k, mesh.map(k).to_physical(xhat)).norm();
  });
}

double lp_error(const Function& u, const BrokenField& field, double p, const CellSet& region, int quad_degree)
{
  const Mesh& mesh = field.space().mesh();
  return integrate_norm(mesh, p, region, quad_degree, [&](std::size_t k, const Point& xhat) {
    return (u(k, mesh.map(k).to_physical(xhat)) - field.eval(k, xhat)).norm();
  });
}

double lp_error(const Function& u, const ConformingField& field, double p, const CellSet& region, int quad_degree)
{
  return lp_error(u, field.to_broken(), p, region, quad_degree);
}

double lp_norm(const BrokenField& field, double p, const CellSet& region)
{
  return integrate_norm(field.space().mesh(), p, region, default_norm_degree,
                        [&](std::size_t k, const Point& xhat) { return field.eval(k, xhat).norm(); });
}

double broken_seminorm(const BrokenField& field, int m, double p, const CellSet& region)
{
  check_exponent(p);
  const Mesh& mesh = field.space().mesh();
  const QuadratureRule rule = simplex_quadrature(default_norm_degree);
  const int q = field.space().value_size();
  Accumulator acc(p);
  for (std::size_t k : all_cells(mesh, region))
  {
    const double scale = mesh.area(k) / reference_area;
    const CellMap& map = mesh.map(k);
    std::vector<Polynomial> derivs;
    if (m >= 2)
    {
      const auto polys = field.local_polynomial(k);
      for (const auto& alpha : multi_indices(m))
        for (int r = 0; r < q; ++r)
          derivs.push_back(polys[r].derivative(alpha[0], alpha[1]));
    }
    for (std::size_t j = 0; j < rule.size(); ++j)
    {
      const Point xhat = rule.point(j);
      const double w = scale * rule.weights[j];
      if (m == 0)
        acc.add(w, field.eval(k, xhat).norm(), k);
      else if (m == 1)
      {
        const Gradient g = field.gradient(k, xhat);
        for (int c = 0; c < 2; ++c)
          acc.add(w, g.col(c).norm(), k);
      }
      else
      {
        const Point z = map.jacobian() * xhat;
        for (std::size_t a = 0; a < derivs.size(); a += q)
        {
          double sq = 0.0;
          for (int r = 0; r < q; ++r)
            sq += std::pow(derivs[a + r](z.x(), z.y()), 2);
          acc.add(w, std::sqrt(sq), k);
        }
      }
    }
  }
  return acc.result();
}

double broken_seminorm(const Mesh& mesh, const Function& u, int m, double p, const CellSet& region,
                       int quad_degree)
{
  check_exponent(p);
  const QuadratureRule rule = simplex_quadrature(quad_degree);
  Accumulator acc(p);
  for (std::size_t k : all_cells(mesh, region))
  {
    const double scale = mesh.area(k) / reference_area;
    for (std::size_t j = 0; j < rule.size(); ++j)
    {
      const Point x = mesh.map(k).to_physical(rule.point(j));
      for (const auto& alpha : multi_indices(m))
        acc.add(scale * rule.weights[j], u.derivative(k, x, alpha[0], alpha[1]).norm(), k);
    }
  }
  return acc.result();
}

double face_lp_norm(const Mesh& mesh, const Function& u, std::size_t cell, std::size_t face, double p,
                    int quad_degree)
{
  check_exponent(p);
  const Face& f = mesh.face(face);
  const Point& a = mesh.vertex(f.vertices[0]);
  const Point& b = mesh.vertex(f.vertices[1]);
  const QuadratureRule rule = edge_quadrature(quad_degree);
  Accumulator acc(p);
  for (std::size_t j = 0; j < rule.size(); ++j)
    acc.add(f.length * rule.weights[j], u(cell, a + rule.parameter(j) * (b - a)).norm(), cell);
  return acc.result();
}

std::vector<Polynomial> moment_poly(const Mesh& mesh, const Function& v, const CellSet& region, int l,
                                    int quad_degree)
{
  if (l < 0 || l > 3)
    throw CapabilityError("moment_poly supports 0 <= l <= 3");
  const CellSet cells = all_cells(mesh, region);
  const QuadratureRule rule = simplex_quadrature(quad_degree);
  const QuadratureRule edge_rule = edge_quadrature(quad_degree);
  const int q = v.value_size();

  double area = 0.0;
  Point center = Point::Zero();
  for (std::size_t k : cells)
  {
    area += mesh.area(k);
    center += mesh.area(k) * mesh.centroid(k);
  }
  center /= area;

  std::vector<std::array<int, 2>> alphas;
  for (int m = 0; m <= l; ++m)
    for (const auto& a : multi_indices(m))
      alphas.push_back(a);
  const int n = int(alphas.size());

  // Phi(alpha, beta) = int_O d^alpha (x - c)^beta
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, q);
  for (std::size_t k : cells)
  {
    const CellMap& map = mesh.map(k);
    const double scale = mesh.area(k) / reference_area;
    for (std::size_t j = 0; j < rule.size(); ++j)
    {
      const Point x = map.to_physical(rule.point(j));
      const Point z = x - center;
      const double w = scale * rule.weights[j];
      for (int ia = 0; ia < n; ++ia)
      {
        const auto [ax, ay] = alphas[ia];
        for (int ib = 0; ib < n; ++ib)
        {
          const auto [bx, by] = alphas[ib];
          if (ax > bx || ay > by)
            continue;
          double c = 1.0;
          for (int t = 0; t < ax; ++t)
            c *= bx - t;
          for (int t = 0; t < ay; ++t)
            c *= by - t;
          phi(ia, ib) += w * c * std::pow(z.x(), bx - ax) * std::pow(z.y(), by - ay);
        }
        if (ax + ay <= v.max_order())
          rhs.row(ia) += w * v.derivative(k, x, ax, ay).transpose();
      }
    }
    // divergence theorem for moments beyond the available derivative order
    for (int ia = 0; ia < n; ++ia)
    {
      const auto [ax, ay] = alphas[ia];
      if (ax + ay <= v.max_order())
        continue;
      const bool along_x = ax > 0;
      const int rx = along_x ? ax - 1 : ax;
      const int ry = along_x ? ay : ay - 1;
      if (rx + ry > v.max_order())
        throw CapabilityError("function lacks derivatives needed by moment_poly");
      const auto& c = mesh.cell(k);
      for (int e = 0; e < 3; ++e)
      {
        const Point& p0 = mesh.vertex(c[(e + 1) % 3]);
        const Point& p1 = mesh.vertex(c[(e + 2) % 3]);
        const Point d = p1 - p0;
        const double nx = d.y(), ny = -d.x(); // outward normal times length
        for (std::size_t j = 0; j < edge_rule.size(); ++j)
        {
          const Point x = p0 + edge_rule.parameter(j) * d;
          rhs.row(ia) += edge_rule.weights[j] * (along_x ? nx : ny) * v.derivative(k, x, rx, ry).transpose();
        }
      }
    }
  }

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(phi);
  if (!lu.isInvertible())
    throw InternalError("singular moment system");
  const Eigen::MatrixXd coef = lu.solve(rhs);

  std::vector<Polynomial> out;
  for (int r = 0; r < q; ++r)
  {
    Polynomial centered(l);
    for (int ib = 0; ib < n; ++ib)
      centered.coeff(alphas[ib][0], alphas[ib][1]) = coef(ib, r);
    out.push_back(translate(centered, center));
  }
  return out;
}

RateFit fit_rate(const std::vector<double>& h, const std::vector<double>& errors)
{
  if (h.size() != errors.size() || h.size() < 3)
    throw CapabilityError("fit_rate needs at least three levels");
  RateFit fit;
  const std::size_t first = h.size() - 3;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = first; i < h.size(); ++i)
  {
    if (!(errors[i] > 0.0))
    {
      fit.exactly_reproduced = true;
      return fit;
    }
    const double x = std::log(h[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = 3.0;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

} // namespace qiav
