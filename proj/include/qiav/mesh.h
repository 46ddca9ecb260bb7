#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "maps.h"
#include "types.h"

namespace qiav
{

inline constexpr std::size_t no_cell = std::numeric_limits<std::size_t>::max();

/// A mesh edge. Interior faces are oriented from `left` (the smaller cell index)
/// to `right`; boundary faces have right == no_cell and an outward normal.
struct Face
{
  std::array<std::size_t, 2> vertices; ///< ascending global vertex indices
  std::size_t left = no_cell;
  std::size_t right = no_cell;
  int left_local = -1; ///< local edge index of the face in `left`
  int right_local = -1;
  Point normal = Point::Zero(); ///< unit, pointing out of `left`
  double length = 0.0;

  bool boundary() const { return right == no_cell; }
  /// Unit tangent: the normal rotated counterclockwise.
  Point tangent() const { return Point(-normal.y(), normal.x()); }
};

enum class Pattern
{
  diagonal,
  crisscross
};

/// Matching triangulation of a polygonal domain. Immutable after construction.
class Mesh
{
public:
  /// Validates and builds the face structure. Clockwise cells are reoriented.
  /// Throws ValidationError on duplicate vertices, non-matching edges,
  /// degenerate cells or bad indices.
  Mesh(std::vector<Point> vertices, std::vector<std::array<std::size_t, 3>> cells);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_cells() const { return cells_.size(); }
  std::size_t num_faces() const { return faces_.size(); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(std::size_t v) const { return vertices_[v]; }
  const std::array<std::size_t, 3>& cell(std::size_t k) const { return cells_[k]; }
  const std::vector<std::array<std::size_t, 3>>& cells() const { return cells_; }

  const Face& face(std::size_t f) const { return faces_[f]; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<std::size_t>& interior_faces() const { return interior_faces_; }
  const std::vector<std::size_t>& boundary_faces() const { return boundary_faces_; }

  /// Face index of local edge j (opposite local vertex j) of cell k.
  std::size_t cell_face(std::size_t k, int j) const { return cell_faces_[k][j]; }
  bool vertex_on_boundary(std::size_t v) const { return vertex_on_boundary_[v]; }

  const CellMap& map(std::size_t k) const { return maps_[k]; }
  double area(std::size_t k) const { return area_[k]; }
  double diameter(std::size_t k) const { return diameter_[k]; }
  double inradius(std::size_t k) const { return inradius_[k]; }
  Point centroid(std::size_t k) const;

  double max_diameter() const;
  /// max_K h_K / rho_K with rho_K the inradius.
  double max_shape_ratio() const;

private:
  std::vector<Point> vertices_;
  std::vector<std::array<std::size_t, 3>> cells_;
  std::vector<Face> faces_;
  std::vector<std::size_t> interior_faces_, boundary_faces_;
  std::vector<std::array<std::size_t, 3>> cell_faces_;
  std::vector<bool> vertex_on_boundary_;
  std::vector<CellMap> maps_;
  std::vector<double> area_, diameter_, inradius_;
};

/// Triangulation of the unit square with n x n squares. Vertices are numbered
/// lexicographically by (y, x); crisscross centers follow the grid vertices.
/// Cells are numbered square by square (row-major), lower before upper
/// (diagonal) or bottom, right, top, left (crisscross).
Mesh build_structured_mesh(int n, Pattern pattern = Pattern::diagonal);

/// Parses the text format: header `dim nv nc`, nv lines `x y`, nc lines
/// `v0 v1 v2` (0-based); `#` starts a comment.
Mesh read_mesh(std::string_view text);
std::string write_mesh(const Mesh& mesh);

/// Text of the face/normal structure, used by the CLI.
std::string describe_mesh(const Mesh& mesh);

Pattern parse_pattern(std::string_view name);

} // namespace qiav
