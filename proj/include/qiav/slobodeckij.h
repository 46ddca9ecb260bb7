#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "functions.h"
#include "mesh.h"
#include "norms.h"

namespace qiav
{

struct SlobodeckijOptions
{
  double tolerance = 1e-3;      ///< relative update that stops the refinement
  int max_levels = 12;
  double near_factor = 1.0;     ///< pairs closer than this times their diameter are subdivided
  int quad_degree = 5;          ///< per-simplex Gauss rule of far pairs
  std::size_t max_pairs = 40'000'000;
};

struct SlobodeckijResult
{
  double value = 0.0;          ///< |v|_{W^{s,p}(O)}
  double integral = 0.0;       ///< the double integral, value^p
  double error_estimate = 0.0; ///< last update of the integral
  int levels = 0;
};

using Triangle = std::array<Point, 3>;

/// Sobolev-Slobodeckij seminorm
///   |v|^p = int_O int_O |v(x) - v(y)|^p / |x - y|^{sp + 2} dx dy
/// over a union of triangles. Near pairs are subdivided level by level,
/// the diagonal is dropped at the finest level and the sequence is
/// extrapolated with the self-similar rate 2^{-p(1-s)}. Throws AccuracyError
/// when the tolerance is not met within max_levels.
SlobodeckijResult slobodeckij_seminorm(const std::vector<Triangle>& region,
                                       const std::function<Value(const Point&)>& v, double s, double p,
                                       const SlobodeckijOptions& options = {});

/// Region given by mesh cells; v is evaluated cell-aware.
SlobodeckijResult slobodeckij_seminorm(const Mesh& mesh, const Function& v, const CellSet& cells, double s,
                                       double p, const SlobodeckijOptions& options = {});

/// One-dimensional variant on the interval (a, b), kernel |x - y|^{sp + 1}.
SlobodeckijResult slobodeckij_seminorm_1d(const std::function<double(double)>& v, double a, double b, double s,
                                          double p, const SlobodeckijOptions& options = {});

} // namespace qiav
