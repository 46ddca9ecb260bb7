#include "qiav/slobodeckij.h"

#include <cmath>
#include <cstdint>

#include "qiav/errors.h"
#include "qiav/quadrature.h"

namespace qiav
{

namespace
{

using CellFunction = std::function<Value(std::size_t, const Point&)>;

struct Piece
{
  std::array<Point, 3> vertex;
  std::size_t tag = 0;
  Point centroid;
  double radius = 0.0;
  double diameter = 0.0;
  std::vector<Point> points;
  std::vector<double> weights;
  std::vector<Value> values;
  std::uint32_t first_child = 0;
  bool refined = false;
};

struct Pair
{
  std::uint32_t a, b;
  double multiplicity;
};

/// Intervals (dim 1, vertices 0 and 1 used, y = 0) or triangles (dim 2).
class Engine
{
public:
  Engine(int dim, const CellFunction& v, double s, double p, const SlobodeckijOptions& opt)
      : dim_(dim), v_(v), s_(s), p_(p), kernel_exponent_(0.5 * (s * p + dim)), opt_(opt),
        rule_(dim == 2 ? simplex_quadrature(opt.quad_degree) : edge_quadrature(opt.quad_degree))
  {
  }

  std::uint32_t add_piece(const std::array<Point, 3>& vertex, std::size_t tag)
  {
    Piece piece;
    piece.vertex = vertex;
    piece.tag = tag;
    const int nv = dim_ + 1;
    piece.centroid = Point::Zero();
    for (int i = 0; i < nv; ++i)
      piece.centroid += vertex[i] / nv;
    for (int i = 0; i < nv; ++i)
    {
      piece.radius = std::max(piece.radius, (vertex[i] - piece.centroid).norm());
      for (int j = i + 1; j < nv; ++j)
        piece.diameter = std::max(piece.diameter, (vertex[i] - vertex[j]).norm());
    }
    double measure;
    if (dim_ == 2)
    {
      const Point e1 = vertex[1] - vertex[0], e2 = vertex[2] - vertex[0];
      measure = std::abs(e1.x() * e2.y() - e1.y() * e2.x()) / reference_area;
    }
    else
      measure = (vertex[1] - vertex[0]).norm();
    for (std::size_t k = 0; k < rule_.size(); ++k)
    {
      const auto& lam = rule_.barycentric[k];
      Point x = lam[0] * vertex[0] + lam[1] * vertex[1];
      if (dim_ == 2)
        x += lam[2] * vertex[2];
      Value val = v_(tag, x);
      if (!val.allFinite())
        throw EvaluationError(tag, "non-finite function value in the Slobodeckij quadrature");
      piece.points.push_back(x);
      piece.weights.push_back(rule_.weights[k] * measure);
      piece.values.push_back(std::move(val));
    }
    pieces_.push_back(std::move(piece));
    return std::uint32_t(pieces_.size() - 1);
  }

  SlobodeckijResult run()
  {
    const double rho = std::pow(2.0, -p_ * (1.0 - s_));
    std::vector<Pair> near;
    const std::uint32_t n0 = std::uint32_t(pieces_.size());
    for (std::uint32_t i = 0; i < n0; ++i)
      for (std::uint32_t j = i; j < n0; ++j)
        classify({i, j, i == j ? 1.0 : 2.0}, near);

    SlobodeckijResult result;
    double previous_sum = 0.0, previous_extrapolated = 0.0;
    for (int level = 0; level < opt_.max_levels; ++level)
    {
      double sum = far_sum_;
      for (const Pair& pr : near)
        if (pr.a != pr.b)
          sum += pr.multiplicity * gauss(pr);
      const double extrapolated = level == 0 ? sum : sum + (sum - previous_sum) * rho / (1.0 - rho);
      result.levels = level + 1;
      if (level >= 2)
      {
        const double update = std::abs(extrapolated - previous_extrapolated);
        if (update <= opt_.tolerance * std::abs(extrapolated))
        {
          result.integral = std::max(extrapolated, 0.0);
          result.error_estimate = update;
          result.value = std::pow(result.integral, 1.0 / p_);
          return result;
        }
      }
      previous_sum = sum;
      previous_extrapolated = extrapolated;
      if (level + 1 < opt_.max_levels)
        near = refine(near, previous_extrapolated);
    }
    throw AccuracyError("Slobodeckij refinement did not converge within " + std::to_string(opt_.max_levels)
                            + " levels",
                        previous_sum, previous_extrapolated);
  }

private:
  double gauss(const Pair& pr) const
  {
    const Piece& A = pieces_[pr.a];
    const Piece& B = pieces_[pr.b];
    double total = 0.0;
    for (std::size_t i = 0; i < A.points.size(); ++i)
    {
      double inner = 0.0;
      for (std::size_t j = 0; j < B.points.size(); ++j)
      {
        const double dist2 = (A.points[i] - B.points[j]).squaredNorm();
        const double diff2 = (A.values[i] - B.values[j]).squaredNorm();
        const double num = p_ == 2.0 ? diff2 : std::pow(diff2, 0.5 * p_);
        inner += B.weights[j] * num / std::pow(dist2, kernel_exponent_);
      }
      total += A.weights[i] * inner;
    }
    return total;
  }

  bool is_near(const Piece& A, const Piece& B) const
  {
    const double gap = (A.centroid - B.centroid).norm() - A.radius - B.radius;
    return gap < opt_.near_factor * std::max(A.diameter, B.diameter);
  }

  void classify(const Pair& pr, std::vector<Pair>& near)
  {
    if (pr.a == pr.b || is_near(pieces_[pr.a], pieces_[pr.b]))
      near.push_back(pr);
    else
      far_sum_ += pr.multiplicity * gauss(pr);
  }

  void ensure_children(std::uint32_t id)
  {
    if (pieces_[id].refined)
      return;
    const auto vertex = pieces_[id].vertex;
    const std::size_t tag = pieces_[id].tag;
    const std::uint32_t first = std::uint32_t(pieces_.size());
    if (dim_ == 2)
    {
      const Point m01 = 0.5 * (vertex[0] + vertex[1]);
      const Point m12 = 0.5 * (vertex[1] + vertex[2]);
      const Point m20 = 0.5 * (vertex[2] + vertex[0]);
      add_piece({vertex[0], m01, m20}, tag);
      add_piece({m01, vertex[1], m12}, tag);
      add_piece({m20, m12, vertex[2]}, tag);
      add_piece({m12, m20, m01}, tag);
    }
    else
    {
      const Point mid = 0.5 * (vertex[0] + vertex[1]);
      add_piece({vertex[0], mid, Point::Zero()}, tag);
      add_piece({mid, vertex[1], Point::Zero()}, tag);
    }
    pieces_[id].first_child = first;
    pieces_[id].refined = true;
  }

  std::vector<Pair> refine(const std::vector<Pair>& near, double last)
  {
    const std::uint32_t nchild = dim_ == 2 ? 4 : 2;
    std::vector<Pair> next;
    next.reserve(near.size() * nchild * 2);
    for (const Pair& pr : near)
    {
      ensure_children(pr.a);
      ensure_children(pr.b);
      const std::uint32_t ca = pieces_[pr.a].first_child;
      const std::uint32_t cb = pieces_[pr.b].first_child;
      for (std::uint32_t i = 0; i < nchild; ++i)
        for (std::uint32_t j = 0; j < nchild; ++j)
        {
          if (pr.a == pr.b)
          {
            if (j < i)
              continue;
            classify({ca + i, ca + j, i == j ? 1.0 : 2.0}, next);
          }
          else
            classify({ca + i, cb + j, pr.multiplicity}, next);
        }
      if (next.size() > opt_.max_pairs)
        throw AccuracyError("Slobodeckij pair budget exhausted", last, far_sum_);
    }
    return next;
  }

  int dim_;
  const CellFunction& v_;
  double s_;
  double p_;
  double kernel_exponent_; // (sp + d) / 2, applied to squared distances
  SlobodeckijOptions opt_;
  QuadratureRule rule_;
  std::vector<Piece> pieces_;
  double far_sum_ = 0.0;
};

void check_parameters(double s, double p)
{
  if (!(s > 0.0 && s < 1.0))
    throw CapabilityError("Slobodeckij order s must lie in (0, 1)");
  if (!(p >= 1.0) || std::isinf(p))
    throw CapabilityError("Slobodeckij exponent p must lie in [1, inf)");
}

} // namespace

SlobodeckijResult slobodeckij_seminorm(const std::vector<Triangle>& region,
                                       const std::function<Value(const Point&)>& v, double s, double p,
                                       const SlobodeckijOptions& options)
{
  check_parameters(s, p);
  const CellFunction f = [&](std::size_t, const Point& x) { return v(x); };
  Engine engine(2, f, s, p, options);
  for (const Triangle& t : region)
    engine.add_piece(t, 0);
  return engine.run();
}

SlobodeckijResult slobodeckij_seminorm(const Mesh& mesh, const Function& v, const CellSet& cells, double s,
                                       double p, const SlobodeckijOptions& options)
{
  check_parameters(s, p);
  const CellFunction f = [&](std::size_t k, const Point& x) { return v(k, x); };
  Engine engine(2, f, s, p, options);
  auto add = [&](std::size_t k) {
    const auto& c = mesh.cell(k);
    engine.add_piece({mesh.vertex(c[0]), mesh.vertex(c[1]), mesh.vertex(c[2])}, k);
  };
  if (cells.empty())
    for (std::size_t k = 0; k < mesh.num_cells(); ++k)
      add(k);
  else
    for (std::size_t k : cells)
      add(k);
  return engine.run();
}

SlobodeckijResult slobodeckij_seminorm_1d(const std::function<double(double)>& v, double a, double b, double s,
                                          double p, const SlobodeckijOptions& options)
{
  check_parameters(s, p);
  const CellFunction f = [&](std::size_t, const Point& x) {
    Value out(1);
    out(0) = v(x.x());
    return out;
  };
  Engine engine(1, f, s, p, options);
  engine.add_piece({Point(a, 0.0), Point(b, 0.0), Point::Zero()}, 0);
  return engine.run();
}

} // namespace qiav
