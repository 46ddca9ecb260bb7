#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "functions.h"
#include "mesh.h"
#include "polynomial.h"
#include "space.h"

namespace qiav
{

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// A set of cells; empty means the whole mesh.
using CellSet = std::vector<std::size_t>;

/// Default quadrature degree of the norm routines.
inline constexpr int default_norm_degree = 12;

/// ||u||_{L^p(region)}, p in [1, inf]. p = inf takes the max over quadrature points.
double lp_norm(const Mesh& mesh, const Function& u, double p, const CellSet& region = {},
               int quad_degree = default_norm_degree);

/// ||u - field||_{L^p(region)}. Throws EvaluationError on a non-finite integrand.
double lp_error(const Function& u, const BrokenField& field, double p, const CellSet& region = {},
                int quad_degree = default_norm_degree);
double lp_error(const Function& u, const ConformingField& field, double p, const CellSet& region = {},
                int quad_degree = default_norm_degree);

double lp_norm(const BrokenField& field, double p, const CellSet& region = {});

/// (sum_K sum_{|alpha| = m} ||d^alpha v||^p_{L^p(K)})^{1/p} with the Euclidean
/// norm of vector values. p = inf takes the max.
double broken_seminorm(const BrokenField& field, int m, double p, const CellSet& region = {});
double broken_seminorm(const Mesh& mesh, const Function& u, int m, double p, const CellSet& region = {},
                       int quad_degree = default_norm_degree);

/// ||u||_{L^p(F)} of a function restricted to the face, seen from `cell`.
double face_lp_norm(const Mesh& mesh, const Function& u, std::size_t cell, std::size_t face, double p,
                    int quad_degree = default_norm_degree);

/// Polynomial pi of degree <= l (per component) with int_O d^alpha (v - pi) = 0
/// for all |alpha| <= l, l <= 3. Derivative moments fall back to the divergence
/// theorem on each cell when v lacks derivatives of order |alpha|.
std::vector<Polynomial> moment_poly(const Mesh& mesh, const Function& v, const CellSet& region, int l,
                                    int quad_degree = default_norm_degree);

/// Least-squares slope of log(error) against log(h) over the finest three levels.
struct RateFit
{
  bool exactly_reproduced = false;
  double slope = 0.0;
};
RateFit fit_rate(const std::vector<double>& h, const std::vector<double>& errors);

} // namespace qiav
