#pragma once

#include <array>
#include <cassert>
#include <cstddef>
#include <vector>

#include "types.h"

namespace qiav
{

/// Bivariate polynomial stored by monomial coefficients x^a y^b, a + b <= degree,
/// in graded order: index(a, b) = t (t + 1) / 2 + b with t = a + b.
template <typename T>
class BasicPolynomial
{
public:
  BasicPolynomial() : degree_(0), coeffs_(1, T(0)) {}
  explicit BasicPolynomial(int degree) : degree_(degree), coeffs_(size(degree), T(0)) {}

  static std::size_t size(int degree) { return std::size_t(degree + 1) * (degree + 2) / 2; }
  static std::size_t index(int a, int b)
  {
    const int t = a + b;
    return std::size_t(t) * (t + 1) / 2 + b;
  }

  static BasicPolynomial constant(T c)
  {
    BasicPolynomial p(0);
    p.coeffs_[0] = c;
    return p;
  }
  static BasicPolynomial monomial(int a, int b, T c = T(1))
  {
    BasicPolynomial p(a + b);
    p.coeffs_[index(a, b)] = c;
    return p;
  }

  int degree() const { return degree_; }
  const T& coeff(int a, int b) const { return coeffs_[index(a, b)]; }
  T& coeff(int a, int b) { return coeffs_[index(a, b)]; }
  const std::vector<T>& coeffs() const { return coeffs_; }

  template <typename F>
  void for_each(F&& f) const
  {
    for (int t = 0; t <= degree_; ++t)
      for (int b = 0; b <= t; ++b)
        f(t - b, b, coeffs_[index(t - b, b)]);
  }

  BasicPolynomial raised(int degree) const
  {
    assert(degree >= degree_);
    BasicPolynomial r(degree);
    for_each([&](int a, int b, const T& c) { r.coeff(a, b) = c; });
    return r;
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o)
  {
    if (o.degree_ > degree_)
      *this = raised(o.degree_);
    o.for_each([&](int a, int b, const T& c) { coeff(a, b) += c; });
    return *this;
  }
  BasicPolynomial& operator*=(const T& s)
  {
    for (auto& c : coeffs_)
      c *= s;
    return *this;
  }
  friend BasicPolynomial operator+(BasicPolynomial l, const BasicPolynomial& r) { return l += r; }
  friend BasicPolynomial operator*(BasicPolynomial l, const T& s) { return l *= s; }
  friend BasicPolynomial operator*(const T& s, BasicPolynomial l) { return l *= s; }

  friend BasicPolynomial operator*(const BasicPolynomial& l, const BasicPolynomial& r)
  {
    BasicPolynomial p(l.degree_ + r.degree_);
    l.for_each([&](int a, int b, const T& c) {
      r.for_each([&](int a2, int b2, const T& c2) { p.coeff(a + a2, b + b2) += c * c2; });
    });
    return p;
  }

  template <typename S>
  S operator()(const S& x, const S& y) const
  {
    assert(degree_ < 24);
    S sum = S(0);
    S xa = S(1);
    std::array<S, 24> ypow;
    ypow[0] = S(1);
    for (int b = 1; b <= degree_; ++b)
      ypow[b] = ypow[b - 1] * y;
    for (int a = 0; a <= degree_; ++a)
    {
      for (int b = 0; a + b <= degree_; ++b)
        sum += S(coeffs_[index(a, b)]) * xa * ypow[b];
      xa *= x;
    }
    return sum;
  }

  BasicPolynomial derivative(int dx, int dy) const
  {
    if (dx + dy > degree_)
      return BasicPolynomial(0);
    BasicPolynomial d(degree_ - dx - dy);
    for_each([&](int a, int b, const T& c) {
      if (a < dx || b < dy)
        return;
      T f = c;
      for (int k = 0; k < dx; ++k)
        f *= T(a - k);
      for (int k = 0; k < dy; ++k)
        f *= T(b - k);
      d.coeff(a - dx, b - dy) += f;
    });
    return d;
  }

  /// Returns q(z) = p(M z) for a 2x2 matrix M.
  BasicPolynomial linear_substitute(const T& m00, const T& m01, const T& m10, const T& m11) const
  {
    BasicPolynomial lx(1), ly(1);
    lx.coeff(1, 0) = m00;
    lx.coeff(0, 1) = m01;
    ly.coeff(1, 0) = m10;
    ly.coeff(0, 1) = m11;
    std::vector<BasicPolynomial> xp{constant(T(1))}, yp{constant(T(1))};
    for (int k = 1; k <= degree_; ++k)
    {
      xp.push_back(xp.back() * lx);
      yp.push_back(yp.back() * ly);
    }
    BasicPolynomial r(degree_);
    for_each([&](int a, int b, const T& c) {
      if (c != T(0))
        r += (xp[a] * yp[b]) * c;
    });
    return r.raised(degree_);
  }

  template <typename U, typename Convert>
  BasicPolynomial<U> convert(Convert&& conv) const
  {
    BasicPolynomial<U> r(degree_);
    for_each([&](int a, int b, const T& c) { r.coeff(a, b) = conv(c); });
    return r;
  }

private:
  int degree_;
  std::vector<T> coeffs_;
};

using Polynomial = BasicPolynomial<double>;

/// Integral of x^a y^b over the reference triangle conv{(0,0),(1,0),(0,1)}:
/// a! b! / (a + b + 2)!.
inline double reference_monomial_integral(int a, int b)
{
  double r = 1.0;
  for (int k = 1; k <= a; ++k)
    r *= double(k) / double(b + 2 + k);
  // remaining: b! / (b+2)!
  return r / (double(b + 1) * double(b + 2));
}

} // namespace qiav
