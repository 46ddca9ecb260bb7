#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.h"
#include "qiav/maps.h"
#include "qiav/mesh.h"
#include "qiav/polynomial.h"
#include "qiav/quadrature.h"
#include "qiav/refelem.h"

using namespace qiav;

namespace
{

CellMap random_map(std::mt19937_64& gen)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;)
  {
    const Point a(u(gen), u(gen)), b(u(gen), u(gen)), c(u(gen), u(gen));
    const double det = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    if (det > 0.05)
      return CellMap(a, b, c);
  }
}

std::vector<Polynomial> random_poly(std::mt19937_64& gen, int q, int degree)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Polynomial> p(q, Polynomial(degree));
  for (auto& c : p)
    for (int t = 0; t <= degree; ++t)
      for (int b = 0; b <= t; ++b)
        c.coeff(t - b, b) = u(gen);
  return p;
}

Value eval(const std::vector<Polynomial>& p, const Point& x)
{
  Value v(int(p.size()));
  for (std::size_t c = 0; c < p.size(); ++c)
    v[c] = p[c](x.x(), x.y());
  return v;
}

Gradient grad(const std::vector<Polynomial>& p, const Point& x)
{
  Gradient g(int(p.size()), 2);
  for (std::size_t c = 0; c < p.size(); ++c)
  {
    g(c, 0) = p[c].derivative(1, 0)(x.x(), x.y());
    g(c, 1) = p[c].derivative(0, 1)(x.x(), x.y());
  }
  return g;
}

double accumulate(double acc, double v, double p) { return std::isinf(p) ? std::max(acc, v) : acc + std::pow(v, p); }
double finish(double acc, double p) { return std::isinf(p) ? acc : std::pow(acc, 1.0 / p); }

} // namespace

TEST_SUITE("maps")
{
  TEST_CASE("vertices map to the cell")
  {
    const CellMap m(Point(1, 2), Point(4, 2), Point(1, 6));
    CHECK(m.to_physical(Point(0, 0)).isApprox(Point(1, 2)));
    CHECK(m.to_physical(Point(1, 0)).isApprox(Point(4, 2)));
    CHECK(m.to_physical(Point(0, 1)).isApprox(Point(1, 6)));
    CHECK(m.det() == doctest::Approx(12.0));
    CHECK(m.to_reference(Point(2.5, 4)).isApprox(Point(0.5, 0.5)));
  }

  TEST_CASE("transformation matrices")
  {
    const CellMap twice(Point(0, 0), Point(2, 0), Point(0, 2));
    CHECK(twice.A(Family::g).rows() == 1);
    CHECK(twice.A(Family::g)(0, 0) == 1.0);
    CHECK((twice.A(Family::d) - 2.0 * Eigen::Matrix2d::Identity()).norm() < 1e-15);
    CHECK((twice.A(Family::c) - 2.0 * Eigen::Matrix2d::Identity()).norm() < 1e-15);

    std::mt19937_64 gen(5);
    for (int s = 0; s < 50; ++s)
    {
      const CellMap m = random_map(gen);
      const Mat2& J = m.jacobian();
      CHECK((m.A(Family::c) - Eigen::MatrixXd(J.transpose())).norm() < 1e-12);
      CHECK((m.A(Family::d) - Eigen::MatrixXd(m.det() * m.jacobian_inverse())).norm() < 1e-9);
      for (Family f : {Family::g, Family::c, Family::d})
      {
        CHECK((m.A(f) * m.A_inverse(f) - Eigen::MatrixXd::Identity(m.A(f).rows(), m.A(f).rows())).norm() < 1e-10);
        const double lhs = m.norm_A(f) * m.norm_A_inverse(f);
        CHECK(lhs <= m.norm_J() * m.norm_J_inverse() * (1 + 1e-10));
      }
      Eigen::JacobiSVD<Mat2> svd(J);
      CHECK(std::abs(spectral_norm(J) - svd.singularValues()[0]) < 1e-12 * svd.singularValues()[0]);
    }
  }

  TEST_CASE("identity geometry gives identity transforms")
  {
    const CellMap id(Point(0, 0), Point(1, 0), Point(0, 1));
    const PhysicalFunction v = [](const Point& x) {
      Value r(2);
      r << std::sin(x.x()), x.y() * x.y();
      return r;
    };
    for (Family f : {Family::c, Family::d})
    {
      const auto pv = pullback(f, id, v);
      CHECK((pv(Point(0.3, 0.2)) - v(Point(0.3, 0.2))).norm() < 1e-15);
    }
  }

  TEST_CASE("pullback of the scalar family is composition")
  {
    std::mt19937_64 gen(9);
    const CellMap m = random_map(gen);
    const PhysicalFunction v = [](const Point& x) { return Value::Constant(1, std::exp(x.x()) * x.y()); };
    const auto pv = pullback(Family::g, m, v);
    const Point xh(0.2, 0.7);
    CHECK(std::abs(pv(xh)[0] - v(m.to_physical(xh))[0]) < 1e-14);
    const CellMap twice(Point(0.5, 0.5), Point(2.5, 0.5), Point(0.5, 2.5));
    const PhysicalFunction w = [](const Point& x) { return Value(x); };
    const auto pw = pullback(Family::d, twice, w);
    CHECK((pw(xh) - 2.0 * twice.to_physical(xh)).norm() < 1e-14);
  }

  TEST_CASE("round trips")
  {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> u(0.0, 0.5);
    for (Family f : {Family::g, Family::c, Family::d})
      for (int s = 0; s < 20; ++s)
      {
        const CellMap m = random_map(gen);
        const int q = f == Family::g ? 1 : 2;
        const auto p = random_poly(gen, q, 3);
        const ReferenceFunction ph = [&](const Point& x) { return eval(p, x); };
        const auto back = pullback(f, m, pushforward(f, m, ph));
        const Point xh(u(gen), u(gen));
        CHECK((back(xh) - ph(xh)).norm() < 1e-12);
        const Value a = ph(xh);
        CHECK((apply_A(f, m, apply_A_inverse(f, m, a)) - a).norm() < 1e-12);
      }
  }

  TEST_CASE("Piola maps preserve fluxes and circulations")
  {
    std::mt19937_64 gen(17);
    const QuadratureRule rule = edge_quadrature(4);
    for (Family f : {Family::c, Family::d})
    {
      const ReferenceElement ref = make_reference_element(f, 0);
      for (int s = 0; s < 10; ++s)
      {
        const CellMap m = random_map(gen);
        for (int i = 0; i < 3; ++i)
        {
          const auto phys = pushforward(f, m, [&](const Point& x) { return ref.eval_shape(i, x); });
          for (int j = 0; j < 3; ++j)
          {
            const auto e = reference_edge(j);
            const Point a = m.to_physical(reference_vertex(e[0]));
            const Point b = m.to_physical(reference_vertex(e[1]));
            const double len = (b - a).norm();
            const Point t = (b - a) / len;
            const Point n(t.y(), -t.x());
            double flux = 0.0;
            for (std::size_t qp = 0; qp < rule.size(); ++qp)
            {
              const Value v = phys(a + rule.parameter(qp) * (b - a));
              flux += rule.weights[qp] * len * v.dot(f == Family::c ? t : n);
            }
            CHECK(std::abs(flux - (i == j)) < 1e-12);
          }
        }
      }
    }
  }

  TEST_CASE("scalar constants push forward to themselves")
  {
    std::mt19937_64 gen(19);
    const CellMap m = random_map(gen);
    const auto c = pushforward(Family::g, m, [](const Point&) { return Value::Constant(1, 3.5); });
    CHECK(c(Point(0.1, 0.2))[0] == 3.5);
  }

  TEST_CASE("seminorm transformation bounds are uniform in h")
  {
    std::mt19937_64 gen(23);
    const QuadratureRule rule = simplex_quadrature(10);
    for (Family f : {Family::g, Family::c, Family::d})
    {
      const int q = f == Family::g ? 1 : 2;
      for (int l : {0, 1})
        for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()})
        {
          std::vector<double> worst;
          for (int n : {2, 4, 8, 16})
          {
            const Mesh mesh = build_structured_mesh(n, Pattern::crisscross);
            double c = 0.0;
            for (std::size_t k = 0; k < mesh.num_cells(); k += 3)
            {
              const CellMap& m = mesh.map(k);
              const auto v = random_poly(gen, q, 2);
              double ref = 0.0, phys = 0.0;
              for (std::size_t qp = 0; qp < rule.size(); ++qp)
              {
                const Point xh = rule.point(qp);
                const Point x = m.to_physical(xh);
                const double w = std::isinf(p) ? 1.0 : rule.weights[qp];
                if (l == 0)
                {
                  ref = accumulate(ref, std::pow(w, 1 / p) * Value(m.A(f) * eval(v, x)).norm(), p);
                  phys = accumulate(phys, std::pow(w * m.det(), 1 / p) * eval(v, x).norm(), p);
                }
                else
                {
                  const Gradient gp = grad(v, x);
                  const Eigen::MatrixXd gr = m.A(f) * gp * m.jacobian();
                  for (int col = 0; col < 2; ++col)
                  {
                    ref = accumulate(ref, std::pow(w, 1 / p) * gr.col(col).norm(), p);
                    phys = accumulate(phys, std::pow(w * m.det(), 1 / p) * gp.col(col).norm(), p);
                  }
                }
              }
              const double bound = m.norm_A(f) * std::pow(m.norm_J(), l) * std::pow(m.det(), -1.0 / p);
              c = std::max(c, finish(ref, p) / (bound * finish(phys, p)));
            }
            worst.push_back(c);
          }
          CAPTURE(l);
          CAPTURE(p);
          for (double c : worst)
          {
            CHECK(c <= (l == 0 ? 1.0 + 1e-12 : 2.0));
            CHECK(c > 0.0);
          }
        }
    }
  }
}
