#include "qiav/connectivity.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace qiav
{

namespace
{
// (entity type, global entity id, global sub-index)
using EntityKey = std::tuple<int, std::size_t, int>;

bool local_edge_reversed(const Mesh& mesh, std::size_t k, int edge)
{
  const auto ev = reference_edge(edge);
  const auto& c = mesh.cell(k);
  return c[ev[0]] > c[ev[1]];
}
} // namespace

bool dof_on_face(const Mesh& mesh, const ReferenceElement& ref, std::size_t k, int i, std::size_t f)
{
  const DofEntity& e = ref.entity(i);
  const Face& face = mesh.face(f);
  switch (e.type)
  {
  case EntityType::vertex:
  {
    const std::size_t v = mesh.cell(k)[e.index];
    return v == face.vertices[0] || v == face.vertices[1];
  }
  case EntityType::edge:
    return mesh.cell_face(k, e.index) == f;
  default:
    return false;
  }
}

Connectivity build_connectivity(const Mesh& mesh, const ReferenceElement& ref)
{
  Connectivity conn;
  const int nf = ref.num_dofs();
  const std::size_t nc = mesh.num_cells();
  conn.nf_ = nf;
  conn.global_.assign(nc * nf, 0);
  conn.sign_.assign(nc * nf, 1);

  std::map<EntityKey, std::size_t> numbering;
  std::vector<bool> entity_on_boundary;
  for (std::size_t k = 0; k < nc; ++k)
  {
    for (int i = 0; i < nf; ++i)
    {
      const DofEntity& e = ref.entity(i);
      EntityKey key;
      bool on_boundary = false;
      int sign = 1;
      switch (e.type)
      {
      case EntityType::vertex:
      {
        const std::size_t v = mesh.cell(k)[e.index];
        key = {0, v, 0};
        on_boundary = mesh.vertex_on_boundary(v);
        break;
      }
      case EntityType::edge:
      {
        const std::size_t f = mesh.cell_face(k, e.index);
        const bool reversed = local_edge_reversed(mesh, k, e.index);
        const int sub = reversed ? ref.dofs_per_edge() - 1 - e.sub : e.sub;
        key = {1, f, sub};
        on_boundary = mesh.face(f).boundary();
        if (ref.family() == Family::c)
          sign = reversed ? -1 : 1;
        else if (ref.family() == Family::d)
          sign = mesh.face(f).left == k ? 1 : -1;
        break;
      }
      case EntityType::interior:
        key = {2, k, e.sub};
        break;
      }
      auto [it, inserted] = numbering.emplace(key, conn.classes_.size());
      if (inserted)
      {
        conn.classes_.emplace_back();
        entity_on_boundary.push_back(on_boundary);
      }
      conn.global_[k * nf + i] = it->second;
      conn.sign_[k * nf + i] = static_cast<signed char>(sign);
      conn.classes_[it->second].push_back({k, i});
    }
  }

  const std::size_t na = conn.classes_.size();
  conn.boundary_dof_ = entity_on_boundary;
  for (std::size_t a = 0; a < na; ++a)
    (conn.boundary_dof_[a] ? conn.boundary_dofs_ : conn.interior_dofs_).push_back(a);

  // F_a^int and F_a^bnd
  conn.faces_int_.assign(na, {});
  conn.faces_bnd_.assign(na, {});
  for (std::size_t a = 0; a < na; ++a)
  {
    const auto& cls = conn.classes_[a];
    if (cls.size() >= 2)
    {
      std::vector<std::size_t> cells;
      for (const auto& d : cls)
        cells.push_back(d.cell);
      std::sort(cells.begin(), cells.end());
      std::vector<std::size_t> faces;
      for (const auto& d : cls)
        for (int j = 0; j < 3; ++j)
        {
          const std::size_t f = mesh.cell_face(d.cell, j);
          const Face& face = mesh.face(f);
          if (face.boundary())
            continue;
          const std::size_t other = face.left == d.cell ? face.right : face.left;
          if (std::binary_search(cells.begin(), cells.end(), other))
            faces.push_back(f);
        }
      std::sort(faces.begin(), faces.end());
      faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
      conn.faces_int_[a] = std::move(faces);
    }
    if (conn.boundary_dof_[a])
    {
      std::vector<std::size_t> faces;
      for (const auto& d : cls)
        for (int j = 0; j < 3; ++j)
        {
          const std::size_t f = mesh.cell_face(d.cell, j);
          if (mesh.face(f).boundary() && dof_on_face(mesh, ref, d.cell, d.local, f))
            faces.push_back(f);
        }
      std::sort(faces.begin(), faces.end());
      faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
      conn.faces_bnd_[a] = std::move(faces);
    }
  }

  conn.patch_.assign(nc, {});
  conn.cell_bnd_.assign(nc, false);
  for (std::size_t k = 0; k < nc; ++k)
  {
    auto& patch = conn.patch_[k];
    for (int i = 0; i < nf; ++i)
    {
      const std::size_t a = conn.global(k, i);
      if (conn.boundary_dof_[a])
        conn.cell_bnd_[k] = true;
      for (const auto& d : conn.classes_[a])
        patch.push_back(d.cell);
    }
    std::sort(patch.begin(), patch.end());
    patch.erase(std::unique(patch.begin(), patch.end()), patch.end());
  }
  return conn;
}

BoundaryClassification classify_boundary(const Connectivity& conn, const Mesh& mesh)
{
  BoundaryClassification out;
  out.interior_dofs = conn.interior_dofs();
  out.boundary_dofs = conn.boundary_dofs();
  for (std::size_t k = 0; k < mesh.num_cells(); ++k)
    (conn.cell_on_boundary(k) ? out.boundary_cells : out.interior_cells).push_back(k);
  return out;
}

std::string dump_connectivity(const Connectivity& conn)
{
  std::ostringstream out;
  for (std::size_t a = 0; a < conn.num_global(); ++a)
  {
    out << a << ':';
    for (const auto& d : conn.dof_class(a))
      out << " (" << d.cell << ',' << d.local << ')';
    out << (conn.is_boundary_dof(a) ? " [bnd]" : " [int]") << '\n';
  }
  return out.str();
}

} // namespace qiav
