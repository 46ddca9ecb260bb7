#pragma once

#include <array>
#include <vector>

#include "types.h"

namespace qiav
{

/// Quadrature rule on the reference triangle (barycentric points, weights
/// summing to 1/2) or on the unit interval (points stored as (1 - t, t),
/// weights summing to 1).
struct QuadratureRule
{
  std::vector<std::array<double, 3>> barycentric;
  std::vector<double> weights;
  int exact_degree = 0;

  std::size_t size() const { return weights.size(); }

  /// Cartesian coordinates on the reference triangle: (lambda_1, lambda_2).
  Point point(std::size_t i) const { return {barycentric[i][1], barycentric[i][2]}; }
  /// Parameter on the unit interval for edge rules.
  double parameter(std::size_t i) const { return barycentric[i][1]; }
};

/// Largest degree supported by the rule tables.
inline constexpr int max_quadrature_degree = 20;

/// Collapsed (Stroud conical product) rule, exact for all polynomials of total
/// degree <= exact_degree on the reference triangle. Positive weights, interior
/// points. Throws CapabilityError beyond max_quadrature_degree.
QuadratureRule simplex_quadrature(int exact_degree);

/// Gauss-Legendre rule on [0, 1] exact to the given degree.
QuadratureRule edge_quadrature(int exact_degree);

/// Gauss-Jacobi nodes/weights on [0, 1] for the weight (1 - t)^alpha, alpha in {0, 1}.
void gauss_jacobi_unit(int npoints, int alpha, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace qiav
