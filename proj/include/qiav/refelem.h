#pragma once

#include <array>
#include <functional>
#include <vector>

#include "polynomial.h"
#include "types.h"

namespace qiav
{

enum class EntityType
{
  vertex,
  edge,
  interior
};

/// Geometric entity a dof is attached to. `sub` orders several dofs on the
/// same entity (edge dofs are ordered along the local edge direction).
struct DofEntity
{
  EntityType type;
  int index;
  int sub;
};

enum class DofKind
{
  point_evaluation,       ///< v(node)
  edge_tangential_moment, ///< int_e v . t ds, t along the local edge direction
  edge_normal_moment,     ///< int_e v . n ds, n the outward unit normal
  interior_moment         ///< |K|^-1 int_K v w dx
};

struct DofFunctional
{
  DofKind kind;
  Point node = Point::Zero();
  int edge = -1;
  Polynomial weight;
};

/// Reference vertices (0,0), (1,0), (0,1).
Point reference_vertex(int i);

/// Local edge j is opposite vertex j and runs from vertex (j+1)%3 to (j+2)%3,
/// so the three edges are traversed counterclockwise.
std::array<int, 2> reference_edge(int j);

inline constexpr double reference_area = 0.5;

/// Reference finite element on the unit triangle.
class ReferenceElement
{
public:
  Family family() const { return family_; }
  /// Largest k with [P_k]^q contained in the shape space.
  int degree() const { return degree_; }
  /// Maximal total degree of the shape functions.
  int polynomial_degree() const { return poly_degree_; }
  int value_size() const { return q_; }
  int num_dofs() const { return int(shape_.size()); }
  int dofs_per_edge() const { return dofs_per_edge_; }

  const std::vector<Polynomial>& shape(int i) const { return shape_[i]; }
  const DofFunctional& dof(int i) const { return dofs_[i]; }
  const DofEntity& entity(int i) const { return entities_[i]; }

  Value eval_shape(int i, const Point& xhat) const;
  Gradient eval_shape_gradient(int i, const Point& xhat) const;

  /// Numerical application of dof i to an arbitrary function on the reference
  /// triangle. Edge and interior moments use rules of the given degree.
  double apply_dof(int i, const std::function<Value(const Point&)>& f, int quad_degree) const;

  /// Exact application of dof i to a q-vector polynomial.
  double apply_dof(int i, const std::vector<Polynomial>& p) const;

private:
  friend ReferenceElement make_reference_element(Family family, int degree);

  Family family_ = Family::g;
  int degree_ = 1;
  int poly_degree_ = 1;
  int q_ = 1;
  int dofs_per_edge_ = 0;
  std::vector<std::vector<Polynomial>> shape_;
  std::vector<std::vector<std::array<Polynomial, 2>>> gradient_;
  std::vector<DofFunctional> dofs_;
  std::vector<DofEntity> entities_;
};

/// Supported pairs: (g,1), (g,2), (g,3), (c,0), (d,0). Anything else throws
/// CapabilityError listing the supported pairs.
ReferenceElement make_reference_element(Family family, int degree);

} // namespace qiav
