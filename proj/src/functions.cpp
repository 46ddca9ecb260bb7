#include "qiav/functions.h"

#include <cmath>
#include <numbers>

#include "qiav/errors.h"

namespace qiav
{

namespace
{
constexpr double pi = std::numbers::pi;

// d^n/dt^n sin(w t) and cos(w t)
double dsin(double w, double t, int n) { return std::pow(w, n) * std::sin(w * t + n * pi / 2); }
double dcos(double w, double t, int n) { return std::pow(w, n) * std::cos(w * t + n * pi / 2); }

double radial_derivative(double alpha, const Point& z, int dx, int dy)
{
  const double r2 = z.squaredNorm();
  const double r = std::sqrt(r2);
  const int order = dx + dy;
  if (order == 0)
    return std::pow(r, alpha);
  if (order == 1)
    return alpha * std::pow(r, alpha - 2) * (dx == 1 ? z.x() : z.y());
  const double zi = dx >= 1 ? z.x() : z.y();
  const double zj = dy >= 1 ? z.y() : z.x();
  const double delta = (dx == 2 || dy == 2) ? 1.0 : 0.0;
  return alpha * std::pow(r, alpha - 2) * delta + alpha * (alpha - 2) * std::pow(r, alpha - 4) * zi * zj;
}

Value scalar(double v)
{
  Value out(1);
  out(0) = v;
  return out;
}
} // namespace

Value Function::derivative(std::size_t cell, const Point& x, int dx, int dy) const
{
  if (dx + dy > max_order_)
    throw CapabilityError("function derivative of order " + std::to_string(dx + dy)
                          + " requested, only up to " + std::to_string(max_order_) + " available");
  return eval_(cell, x, dx, dy);
}

Function analytic(int value_size, int max_order, std::function<Value(const Point&, int, int)> f)
{
  return Function(value_size, max_order,
                  [f = std::move(f)](std::size_t, const Point& x, int dx, int dy) { return f(x, dx, dy); });
}

Function constant_one()
{
  return analytic(1, 100, [](const Point&, int dx, int dy) { return scalar(dx + dy == 0 ? 1.0 : 0.0); });
}

Function linear_xy()
{
  return analytic(1, 100, [](const Point& x, int dx, int dy) {
    if (dx + dy == 0)
      return scalar(x.x() + 2 * x.y());
    if (dx + dy == 1)
      return scalar(dx == 1 ? 1.0 : 2.0);
    return scalar(0.0);
  });
}

Function smooth_sine()
{
  return analytic(1, 100, [](const Point& x, int dx, int dy) {
    return scalar(dsin(pi, x.x(), dx) * dsin(pi, x.y(), dy));
  });
}

Function vector_smooth()
{
  return analytic(2, 100, [](const Point& x, int dx, int dy) {
    Value v(2);
    v(0) = dsin(pi, x.x(), dx) * dcos(pi, x.y(), dy);
    v(1) = dcos(2 * pi, x.x(), dx) * dsin(pi, x.y(), dy);
    return v;
  });
}

Function radial_alpha(double alpha, const Point& center)
{
  return analytic(1, 2, [alpha, center](const Point& x, int dx, int dy) {
    return scalar(radial_derivative(alpha, x - center, dx, dy));
  });
}

Function vector_radial(double alpha, const Point& center)
{
  return analytic(2, 2, [alpha, center](const Point& x, int dx, int dy) {
    const double r = radial_derivative(alpha, x - center, dx, dy);
    Value v(2);
    v(0) = r;
    v(1) = 0.5 * r;
    return v;
  });
}

Function make_test_function(const std::string& name, int q, double alpha, const Point& center)
{
  const bool vector_name = name == "vector_smooth" || name == "vector_radial";
  const bool scalar_name = name == "smooth_sine" || name == "radial_alpha" || name == "constant_one"
                           || name == "linear_xy";
  if (!vector_name && !scalar_name)
    throw CapabilityError("unknown test function '" + name
                          + "' (smooth_sine|radial_alpha|constant_one|linear_xy|vector_smooth|vector_radial)");
  if (vector_name && q != 2)
    throw CapabilityError("test function '" + name + "' is vector-valued; use family c or d");
  if (scalar_name && q != 1)
    throw CapabilityError("test function '" + name + "' is scalar; use family g");
  if (name == "smooth_sine")
    return smooth_sine();
  if (name == "radial_alpha")
    return radial_alpha(alpha, center);
  if (name == "constant_one")
    return constant_one();
  if (name == "linear_xy")
    return linear_xy();
  if (name == "vector_smooth")
    return vector_smooth();
  return vector_radial(alpha, center);
}

} // namespace qiav
