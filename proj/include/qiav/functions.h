#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "types.h"

namespace qiav
{

/// A (possibly piecewise) function on the domain. The cell index lets
/// discontinuous finite element fields be sampled unambiguously at points
/// interior to a cell; analytic functions ignore it.
class Function
{
public:
  using Eval = std::function<Value(std::size_t cell, const Point& x, int dx, int dy)>;

  Function() = default;
  Function(int value_size, int max_order, Eval eval)
      : q_(value_size), max_order_(max_order), eval_(std::move(eval))
  {
  }

  int value_size() const { return q_; }
  /// Highest derivative order available through derivative().
  int max_order() const { return max_order_; }

  Value operator()(std::size_t cell, const Point& x) const { return eval_(cell, x, 0, 0); }
  Value operator()(const Point& x) const { return eval_(0, x, 0, 0); }
  /// Partial derivative d^{dx+dy} / dx^dx dy^dy. Throws CapabilityError above max_order().
  Value derivative(std::size_t cell, const Point& x, int dx, int dy) const;

private:
  int q_ = 1;
  int max_order_ = 0;
  Eval eval_;
};

/// Wraps a cell-independent function; `f(x, dx, dy)` returns the derivative.
Function analytic(int value_size, int max_order, std::function<Value(const Point&, int, int)> f);

Function constant_one();
/// x + 2y
Function linear_xy();
/// sin(pi x) sin(pi y); vanishes on the boundary of the unit square.
Function smooth_sine();
/// (sin(pi x) cos(pi y), cos(2 pi x) sin(pi y))
Function vector_smooth();
/// |x - center|^alpha; derivatives up to order 2.
Function radial_alpha(double alpha, const Point& center);
/// |x - center|^alpha (1, 1/2)
Function vector_radial(double alpha, const Point& center);

/// Name-based factory used by the CLI: smooth_sine, radial_alpha, constant_one,
/// linear_xy, vector_smooth, vector_radial. `q` is the value size of the target
/// element; scalar names with q = 2 and vector names with q = 1 are rejected.
Function make_test_function(const std::string& name, int q, double alpha, const Point& center);

/// Default singular point of the radial test functions.
inline Point default_radial_center() { return Point(0.5, 0.5); }

} // namespace qiav
