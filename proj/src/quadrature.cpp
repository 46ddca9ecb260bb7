#include "qiav/quadrature.h"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qiav/errors.h"

namespace qiav
{

// Golub-Welsch on [-1, 1] for the Jacobi weight (1 - x)^alpha, mapped to [0, 1].
void gauss_jacobi_unit(int n, int alpha, std::vector<double>& nodes, std::vector<double>& weights)
{
  const double a = alpha;
  const double b = 0.0;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k)
  {
    const double kk = k;
    const double s = 2 * kk + a + b;
    T(k, k) = (s == 0.0) ? (b - a) / (a + b + 2) : (b * b - a * a) / (s * (s + 2));
    if (k + 1 < n)
    {
      const double k1 = kk + 1;
      const double s1 = 2 * k1 + a + b;
      const double num = 4 * k1 * (k1 + a) * (k1 + b) * (k1 + a + b);
      const double den = s1 * s1 * (s1 + 1) * (s1 - 1);
      T(k, k + 1) = T(k + 1, k) = std::sqrt(num / den);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(T);
  // mu0 = int_{-1}^{1} (1-x)^a dx
  const double mu0 = std::pow(2.0, a + 1) / (a + 1);
  nodes.resize(n);
  weights.resize(n);
  for (int k = 0; k < n; ++k)
  {
    const double x = eig.eigenvalues()(k);
    const double v0 = eig.eigenvectors()(0, k);
    nodes[k] = 0.5 * (x + 1.0);
    // (1 - x)^a = 2^a (1 - t)^a and dx = 2 dt
    weights[k] = mu0 * v0 * v0 / std::pow(2.0, a + 1);
  }
}

namespace
{
QuadratureRule build_simplex_rule(int exact_degree)
{
  QuadratureRule rule;
  rule.exact_degree = exact_degree;
  const int m = exact_degree / 2 + 1;
  std::vector<double> s, ws, t, wt;
  gauss_jacobi_unit(m, 1, s, ws);
  gauss_jacobi_unit(m, 0, t, wt);
  // x = s, y = t (1 - s); dx dy = (1 - s) ds dt
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
    {
      const double x = s[i];
      const double y = t[j] * (1.0 - s[i]);
      rule.barycentric.push_back({1.0 - x - y, x, y});
      rule.weights.push_back(ws[i] * wt[j]);
    }
  return rule;
}

QuadratureRule build_edge_rule(int exact_degree)
{
  QuadratureRule rule;
  rule.exact_degree = exact_degree;
  const int m = exact_degree / 2 + 1;
  std::vector<double> t, w;
  gauss_jacobi_unit(m, 0, t, w);
  for (int i = 0; i < m; ++i)
  {
    rule.barycentric.push_back({1.0 - t[i], t[i], 0.0});
    rule.weights.push_back(w[i]);
  }
  return rule;
}

// Rules of every supported degree, built once.
template <QuadratureRule (*Build)(int)>
const QuadratureRule& cached(int exact_degree, const char* what)
{
  static const std::vector<QuadratureRule> table = [] {
    std::vector<QuadratureRule> t;
    for (int d = 0; d <= max_quadrature_degree; ++d)
      t.push_back(Build(d));
    return t;
  }();
  if (exact_degree < 0 || exact_degree > max_quadrature_degree)
    throw CapabilityError(std::string(what) + " quadrature: degree " + std::to_string(exact_degree)
                          + " outside supported range 0.." + std::to_string(max_quadrature_degree));
  return table[std::size_t(exact_degree)];
}
} // namespace

QuadratureRule simplex_quadrature(int exact_degree) { return cached<build_simplex_rule>(exact_degree, "simplex"); }

QuadratureRule edge_quadrature(int exact_degree) { return cached<build_edge_rule>(exact_degree, "edge"); }

} // namespace qiav
