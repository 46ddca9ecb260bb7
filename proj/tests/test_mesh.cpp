#include <doctest.h>

#include <cmath>

#include "oracles.h"
#include "qiav/errors.h"
#include "qiav/mesh.h"

using namespace qiav;

namespace
{

void check_counts(const Mesh& mesh, const oracle::MeshCounts& c)
{
  CHECK(mesh.num_cells() == std::size_t(c.cells));
  CHECK(mesh.num_vertices() == std::size_t(c.vertices));
  CHECK(mesh.interior_faces().size() == std::size_t(c.interior_faces));
  CHECK(mesh.boundary_faces().size() == std::size_t(c.boundary_faces));
}

std::string validation_kind(const std::string& text)
{
  try
  {
    read_mesh(text);
  }
  catch (const ValidationError& e)
  {
    return e.kind();
  }
  return "accepted";
}

} // namespace

TEST_SUITE("mesh")
{
  TEST_CASE("structured counts match enumeration")
  {
    check_counts(build_structured_mesh(1), {2, 4, 1, 4});
    check_counts(build_structured_mesh(2), {8, 9, 8, 8});
    for (int n : {1, 2, 3, 7, 16})
      check_counts(build_structured_mesh(n), oracle::diagonal_mesh_counts(n));
  }

  TEST_CASE("oracle enumeration of small grids")
  {
    const auto c = oracle::diagonal_mesh_counts(2);
    CHECK(c.cells == 8);
    CHECK(c.vertices == 9);
    CHECK(c.interior_faces == 8);
    CHECK(c.boundary_faces == 8);
  }

  TEST_CASE("shape ratio is 2 + 2 sqrt 2 on every level")
  {
    const double expected = oracle::right_isosceles_shape_ratio(0.37);
    CHECK(expected == doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-14));
    for (int n : {1, 2, 4, 8, 16, 32})
    {
      const Mesh mesh = build_structured_mesh(n);
      for (std::size_t k = 0; k < mesh.num_cells(); ++k)
        CHECK(mesh.diameter(k) / mesh.inradius(k) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(std::abs(mesh.max_shape_ratio() - expected) < 1e-12);
    }
  }

  TEST_CASE("crisscross shape ratio is level independent")
  {
    const double r4 = build_structured_mesh(4, Pattern::crisscross).max_shape_ratio();
    for (int n : {1, 2, 8, 16})
      CHECK(std::abs(build_structured_mesh(n, Pattern::crisscross).max_shape_ratio() - r4) < 1e-12);
  }

  TEST_CASE("areas sum to one and face lengths match vertices")
  {
    for (Pattern pat : {Pattern::diagonal, Pattern::crisscross})
      for (int n : {1, 3, 8})
      {
        const Mesh mesh = build_structured_mesh(n, pat);
        double total = 0.0;
        for (std::size_t k = 0; k < mesh.num_cells(); ++k)
        {
          total += mesh.area(k);
          CHECK(mesh.map(k).det() > 0.0);
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
        for (const Face& f : mesh.faces())
        {
          const double d = (mesh.vertex(f.vertices[1]) - mesh.vertex(f.vertices[0])).norm();
          CHECK(std::abs(f.length - d) < 1e-14);
          CHECK(std::abs(f.normal.norm() - 1.0) < 1e-14);
          CHECK(f.vertices[0] < f.vertices[1]);
          if (!f.boundary())
            CHECK(f.left < f.right);
        }
      }
  }

  TEST_CASE("normals point from left to right and outward on the boundary")
  {
    const Mesh mesh = build_structured_mesh(3, Pattern::crisscross);
    for (const Face& f : mesh.faces())
    {
      const Point mid = 0.5 * (mesh.vertex(f.vertices[0]) + mesh.vertex(f.vertices[1]));
      CHECK((mid - mesh.centroid(f.left)).dot(f.normal) > 0.0);
      if (f.boundary())
      {
        const Point probe = mid + 1e-3 * f.normal;
        const bool outside = probe.x() < 0 || probe.x() > 1 || probe.y() < 0 || probe.y() > 1;
        CHECK(outside);
      }
      else
        CHECK((mesh.centroid(f.right) - mid).dot(f.normal) > 0.0);
    }
  }

  TEST_CASE("vertex numbering is lexicographic in (y, x)")
  {
    const Mesh mesh = build_structured_mesh(2);
    CHECK(mesh.vertex(1).isApprox(Point(0.5, 0.0)));
    CHECK(mesh.vertex(3).isApprox(Point(0.0, 0.5)));
    CHECK(mesh.vertex(8).isApprox(Point(1.0, 1.0)));
    CHECK(!mesh.vertex_on_boundary(4));
    const Mesh cc = build_structured_mesh(2, Pattern::crisscross);
    CHECK(cc.num_vertices() == 13);
    CHECK(cc.vertex(9).isApprox(Point(0.25, 0.25)));
  }

  TEST_CASE("round trip through text")
  {
    const Mesh a = build_structured_mesh(1);
    const Mesh b = read_mesh(write_mesh(a));
    REQUIRE(b.num_faces() == a.num_faces());
    for (std::size_t k = 0; k < a.num_cells(); ++k)
      CHECK(a.cell(k) == b.cell(k));
    for (std::size_t f = 0; f < a.num_faces(); ++f)
    {
      CHECK(a.face(f).vertices == b.face(f).vertices);
      CHECK(a.face(f).left == b.face(f).left);
      CHECK(a.face(f).right == b.face(f).right);
      CHECK((a.face(f).normal - b.face(f).normal).norm() < 1e-15);
    }
  }

  TEST_CASE("clockwise cells are reoriented")
  {
    const Mesh mesh = read_mesh("# clockwise\n2 4 2\n0 0\n1 0\n0 1\n1 1\n0 3 1\n0 2 3\n");
    for (std::size_t k = 0; k < mesh.num_cells(); ++k)
      CHECK(mesh.map(k).det() > 0.0);
    CHECK(mesh.interior_faces().size() == 1);
  }

  TEST_CASE("invalid meshes name the violation")
  {
    CHECK(validation_kind("2 3 2\n0 0\n1 0\n0 1\n0 1 2\n0 1 2\n") == "non-matching");
    CHECK(validation_kind("2 4 1\n0 0\n1 0\n0 1\n0 0\n0 1 2\n") == "duplicate-vertex");
    CHECK(validation_kind("2 3 1\n0 0\n1 0\n2 0\n0 1 2\n") == "degenerate");
    CHECK(validation_kind("2 3 1\n0 0\n1 0\n0 1\n0 1 5\n") == "index");
    // hanging node: (0.5, 0) splits the bottom edge of one cell only
    CHECK(validation_kind("2 5 3\n0 0\n1 0\n0 1\n0.5 0\n0 -1\n0 1 2\n0 4 3\n3 4 1\n") == "non-matching");
    try
    {
      read_mesh("2 3 1\n0 0\n1 0\n2 0\n0 1 2\n");
    }
    catch (const ValidationError& e)
    {
      CHECK(e.entity() == 0);
    }
  }

  TEST_CASE("malformed text reports the line")
  {
    CHECK_THROWS_AS(read_mesh("3 3 1\n"), ParseError);
    try
    {
      read_mesh("2 3 1\n0 0\n1 zero\n0 1\n0 1 2\n");
      FAIL("accepted");
    }
    catch (const ParseError& e)
    {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(read_mesh("2 3 1\n0 0\n1 0\n"), ParseError);
  }

  TEST_CASE("pattern names")
  {
    CHECK(parse_pattern("diagonal") == Pattern::diagonal);
    CHECK(parse_pattern("crisscross") == Pattern::crisscross);
    CHECK_THROWS(parse_pattern("hexagonal"));
  }
}
