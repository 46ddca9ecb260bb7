#include "qiav/mesh.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "qiav/errors.h"

namespace qiav
{

namespace
{
constexpr double coordinate_tolerance = 1e-12;

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }
} // namespace

Mesh::Mesh(std::vector<Point> vertices, std::vector<std::array<std::size_t, 3>> cells)
    : vertices_(std::move(vertices)), cells_(std::move(cells))
{
  const std::size_t nv = vertices_.size();
  const std::size_t nc = cells_.size();

  for (std::size_t k = 0; k < nc; ++k)
    for (std::size_t v : cells_[k])
      if (v >= nv)
        throw ValidationError("index", k, "cell references vertex " + std::to_string(v) + " out of range");

  // Duplicate vertices: sweep in x order.
  {
    std::vector<std::size_t> order(nv);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return vertices_[a].x() < vertices_[b].x();
    });
    for (std::size_t i = 0; i < nv; ++i)
      for (std::size_t j = i + 1; j < nv; ++j)
      {
        const Point& p = vertices_[order[i]];
        const Point& q = vertices_[order[j]];
        if (q.x() - p.x() > coordinate_tolerance)
          break;
        if (std::abs(q.y() - p.y()) <= coordinate_tolerance)
          throw ValidationError("duplicate-vertex", std::max(order[i], order[j]),
                                "coincides with vertex " + std::to_string(std::min(order[i], order[j])));
      }
  }

  // Orientation and degeneracy.
  for (std::size_t k = 0; k < nc; ++k)
  {
    auto& c = cells_[k];
    const Point e1 = vertices_[c[1]] - vertices_[c[0]];
    const Point e2 = vertices_[c[2]] - vertices_[c[0]];
    const double det = cross(e1, e2);
    const double scale = std::max({e1.squaredNorm(), e2.squaredNorm(), (e2 - e1).squaredNorm()});
    if (c[0] == c[1] || c[1] == c[2] || c[0] == c[2] || std::abs(det) <= 1e-14 * scale)
      throw ValidationError("degenerate", k, "cell has zero area");
    if (det < 0)
      std::swap(c[1], c[2]);
  }

  // Repeated cells.
  {
    std::map<std::array<std::size_t, 3>, std::size_t> seen;
    for (std::size_t k = 0; k < nc; ++k)
    {
      auto key = cells_[k];
      std::sort(key.begin(), key.end());
      auto [it, inserted] = seen.emplace(key, k);
      if (!inserted)
        throw ValidationError("non-matching", k, "repeats cell " + std::to_string(it->second));
    }
  }

  // Faces.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_index;
  cell_faces_.assign(nc, {0, 0, 0});
  for (std::size_t k = 0; k < nc; ++k)
  {
    for (int j = 0; j < 3; ++j)
    {
      std::size_t a = cells_[k][(j + 1) % 3];
      std::size_t b = cells_[k][(j + 2) % 3];
      if (a > b)
        std::swap(a, b);
      auto [it, inserted] = edge_index.emplace(std::make_pair(a, b), faces_.size());
      if (inserted)
      {
        Face f;
        f.vertices = {a, b};
        f.left = k;
        f.left_local = j;
        faces_.push_back(f);
      }
      else
      {
        Face& f = faces_[it->second];
        if (f.right != no_cell)
          throw ValidationError("non-matching", k,
                                "edge (" + std::to_string(a) + "," + std::to_string(b)
                                    + ") shared by more than two cells");
        // The two opposite vertices must lie on opposite sides of the edge.
        const Point& pa = vertices_[a];
        const Point d = vertices_[b] - pa;
        const double s1 = cross(d, vertices_[cells_[f.left][f.left_local]] - pa);
        const double s2 = cross(d, vertices_[cells_[k][j]] - pa);
        if (s1 * s2 >= 0)
          throw ValidationError("non-matching", k,
                                "overlaps cell " + std::to_string(f.left) + " across edge ("
                                    + std::to_string(a) + "," + std::to_string(b) + ")");
        f.right = k;
        f.right_local = j;
      }
      cell_faces_[k][j] = it->second;
    }
  }

  vertex_on_boundary_.assign(nv, false);
  for (std::size_t fi = 0; fi < faces_.size(); ++fi)
  {
    Face& f = faces_[fi];
    const Point& pa = vertices_[f.vertices[0]];
    const Point& pb = vertices_[f.vertices[1]];
    const Point d = pb - pa;
    f.length = d.norm();
    Point n(d.y() / f.length, -d.x() / f.length);
    // Orient away from the left cell.
    const Point inside = vertices_[cells_[f.left][f.left_local]];
    if (n.dot(inside - pa) > 0)
      n = -n;
    f.normal = n;
    if (f.boundary())
    {
      boundary_faces_.push_back(fi);
      vertex_on_boundary_[f.vertices[0]] = vertex_on_boundary_[f.vertices[1]] = true;
    }
    else
      interior_faces_.push_back(fi);
  }

  // Hanging nodes: a vertex strictly inside a boundary edge.
  std::vector<bool> used(nv, false);
  for (const auto& c : cells_)
    for (std::size_t v : c)
      used[v] = true;
  for (std::size_t fi : boundary_faces_)
  {
    const Face& f = faces_[fi];
    const Point& pa = vertices_[f.vertices[0]];
    const Point d = vertices_[f.vertices[1]] - pa;
    for (std::size_t v = 0; v < nv; ++v)
    {
      if (!used[v] || v == f.vertices[0] || v == f.vertices[1])
        continue;
      const Point w = vertices_[v] - pa;
      const double t = w.dot(d) / d.squaredNorm();
      if (t <= 0 || t >= 1)
        continue;
      if (std::abs(cross(d, w)) / f.length <= coordinate_tolerance)
        throw ValidationError("non-matching", v,
                              "hanging node on edge (" + std::to_string(f.vertices[0]) + ","
                                  + std::to_string(f.vertices[1]) + ")");
    }
  }

  maps_.reserve(nc);
  area_.resize(nc);
  diameter_.resize(nc);
  inradius_.resize(nc);
  for (std::size_t k = 0; k < nc; ++k)
  {
    const auto& c = cells_[k];
    maps_.emplace_back(vertices_[c[0]], vertices_[c[1]], vertices_[c[2]]);
    area_[k] = 0.5 * maps_[k].det();
    double perimeter = 0.0, diam = 0.0;
    for (int j = 0; j < 3; ++j)
    {
      const double l = faces_[cell_faces_[k][j]].length;
      perimeter += l;
      diam = std::max(diam, l);
    }
    diameter_[k] = diam;
    inradius_[k] = 2.0 * area_[k] / perimeter;
  }
}

Point Mesh::centroid(std::size_t k) const
{
  const auto& c = cells_[k];
  return (vertices_[c[0]] + vertices_[c[1]] + vertices_[c[2]]) / 3.0;
}

double Mesh::max_diameter() const { return *std::max_element(diameter_.begin(), diameter_.end()); }

double Mesh::max_shape_ratio() const
{
  double r = 0.0;
  for (std::size_t k = 0; k < num_cells(); ++k)
    r = std::max(r, diameter_[k] / inradius_[k]);
  return r;
}

Mesh build_structured_mesh(int n, Pattern pattern)
{
  const std::size_t m = std::size_t(n) + 1;
  std::vector<Point> verts;
  verts.reserve(m * m + (pattern == Pattern::crisscross ? std::size_t(n) * n : 0));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i)
      verts.emplace_back(double(i) / n, double(j) / n);
  const std::size_t center0 = verts.size();
  if (pattern == Pattern::crisscross)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        verts.emplace_back((i + 0.5) / n, (j + 0.5) / n);

  std::vector<std::array<std::size_t, 3>> cells;
  for (std::size_t j = 0; j < std::size_t(n); ++j)
    for (std::size_t i = 0; i < std::size_t(n); ++i)
    {
      const std::size_t v00 = j * m + i, v10 = v00 + 1, v01 = v00 + m, v11 = v01 + 1;
      if (pattern == Pattern::diagonal)
      {
        cells.push_back({v00, v10, v11});
        cells.push_back({v00, v11, v01});
      }
      else
      {
        const std::size_t c = center0 + j * n + i;
        cells.push_back({v00, v10, c});
        cells.push_back({v10, v11, c});
        cells.push_back({v11, v01, c});
        cells.push_back({v01, v00, c});
      }
    }
  return Mesh(std::move(verts), std::move(cells));
}

namespace
{
std::vector<std::string_view> tokens_of(std::string_view line)
{
  if (auto hash = line.find('#'); hash != std::string_view::npos)
    line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size())
  {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i)
      out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line)
{
  T value{};
  if constexpr (std::is_floating_point_v<T>)
  {
    // from_chars for double is available in libstdc++ 11.
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value))
      throw ParseError("bad number '" + std::string(tok) + "'", line);
  }
  else
  {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError("bad integer '" + std::string(tok) + "'", line);
  }
  return value;
}
} // namespace

Mesh read_mesh(std::string_view text)
{
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> lines;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size())
  {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    ++lineno;
    auto toks = tokens_of(text.substr(pos, end - pos));
    if (!toks.empty())
      lines.emplace_back(lineno, std::move(toks));
    pos = end + 1;
  }
  if (lines.empty())
    throw ParseError("missing header 'dim nv nc'", lineno);
  const auto& [hline, header] = lines[0];
  if (header.size() != 3)
    throw ParseError("header must be 'dim nv nc'", hline);
  const int dim = parse_number<int>(header[0], hline);
  if (dim != 2)
    throw ParseError("only dim = 2 is supported", hline);
  const std::size_t nv = parse_number<std::size_t>(header[1], hline);
  const std::size_t nc = parse_number<std::size_t>(header[2], hline);
  if (lines.size() != 1 + nv + nc)
    throw ParseError("expected " + std::to_string(nv) + " vertex and " + std::to_string(nc)
                         + " cell lines, found " + std::to_string(lines.size() - 1),
                     lines.back().first);

  std::vector<Point> verts;
  for (std::size_t i = 0; i < nv; ++i)
  {
    const auto& [ln, t] = lines[1 + i];
    if (t.size() != 2)
      throw ParseError("vertex line must be 'x y'", ln);
    verts.emplace_back(parse_number<double>(t[0], ln), parse_number<double>(t[1], ln));
  }
  std::vector<std::array<std::size_t, 3>> cells;
  for (std::size_t i = 0; i < nc; ++i)
  {
    const auto& [ln, t] = lines[1 + nv + i];
    if (t.size() != 3)
      throw ParseError("cell line must be 'v0 v1 v2'", ln);
    cells.push_back({parse_number<std::size_t>(t[0], ln), parse_number<std::size_t>(t[1], ln),
                     parse_number<std::size_t>(t[2], ln)});
  }
  return Mesh(std::move(verts), std::move(cells));
}

std::string write_mesh(const Mesh& mesh)
{
  std::ostringstream out;
  out << "2 " << mesh.num_vertices() << ' ' << mesh.num_cells() << '\n';
  char buf[64];
  for (const Point& p : mesh.vertices())
  {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x(), p.y());
    out << buf;
  }
  for (const auto& c : mesh.cells())
    out << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  return out.str();
}

std::string describe_mesh(const Mesh& mesh)
{
  std::ostringstream out;
  out.precision(17);
  out << "# vertices " << mesh.num_vertices() << " cells " << mesh.num_cells() << " interior_faces "
      << mesh.interior_faces().size() << " boundary_faces " << mesh.boundary_faces().size() << '\n';
  out << "# max h_K/rho_K " << mesh.max_shape_ratio() << '\n';
  for (std::size_t fi = 0; fi < mesh.num_faces(); ++fi)
  {
    const Face& f = mesh.face(fi);
    out << "face " << fi << " (" << f.vertices[0] << ',' << f.vertices[1] << ") ";
    if (f.boundary())
      out << "bnd K=" << f.left;
    else
      out << "int Kl=" << f.left << " Kr=" << f.right;
    out << " n=(" << f.normal.x() << ',' << f.normal.y() << ") |F|=" << f.length << '\n';
  }
  return out.str();
}

Pattern parse_pattern(std::string_view name)
{
  if (name == "diagonal")
    return Pattern::diagonal;
  if (name == "crisscross")
    return Pattern::crisscross;
  throw CapabilityError("unknown mesh pattern '" + std::string(name) + "' (diagonal|crisscross)");
}

} // namespace qiav
