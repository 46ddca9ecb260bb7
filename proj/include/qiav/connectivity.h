#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mesh.h"
#include "refelem.h"

namespace qiav
{

/// Local dof (K, i).
struct LocalDof
{
  std::size_t cell;
  int local;
  bool operator==(const LocalDof&) const = default;
};

/// Connectivity array a(K, i), the classes C_a, orientation signs, the
/// interior/boundary split of global dofs and cells, and the cell patches.
///
/// Signs are folded into the local bases: the physical shape function of
/// (K, i) is sign(K, i) psi_K^{-1}(theta_i) and the local dof is
/// sign(K, i) sigma_i o psi_K, so merged dofs coincide on conforming fields.
class Connectivity
{
public:
  std::size_t num_cells() const { return nf_ == 0 ? 0 : global_.size() / nf_; }
  int num_local() const { return nf_; }
  std::size_t num_global() const { return classes_.size(); }

  std::size_t global(std::size_t cell, int i) const { return global_[cell * nf_ + i]; }
  int sign(std::size_t cell, int i) const { return sign_[cell * nf_ + i]; }

  /// C_a in ascending (K, i) order.
  const std::vector<LocalDof>& dof_class(std::size_t a) const { return classes_[a]; }
  bool is_boundary_dof(std::size_t a) const { return boundary_dof_[a]; }
  const std::vector<std::size_t>& interior_dofs() const { return interior_dofs_; }
  const std::vector<std::size_t>& boundary_dofs() const { return boundary_dofs_; }

  /// F_a^int: interior faces shared by two cells of C_a (empty if card(C_a) = 1).
  const std::vector<std::size_t>& class_interior_faces(std::size_t a) const { return faces_int_[a]; }
  /// F_a^bnd: boundary faces of cells of C_a on which the dof entity lies.
  const std::vector<std::size_t>& class_boundary_faces(std::size_t a) const { return faces_bnd_[a]; }

  /// T_K: cells sharing a global dof with K (ascending, includes K).
  const std::vector<std::size_t>& patch(std::size_t cell) const { return patch_[cell]; }
  bool cell_on_boundary(std::size_t cell) const { return cell_bnd_[cell]; }

private:
  friend Connectivity build_connectivity(const Mesh& mesh, const ReferenceElement& ref);

  int nf_ = 0;
  std::vector<std::size_t> global_;
  std::vector<signed char> sign_;
  std::vector<std::vector<LocalDof>> classes_;
  std::vector<bool> boundary_dof_;
  std::vector<std::size_t> interior_dofs_, boundary_dofs_;
  std::vector<std::vector<std::size_t>> faces_int_, faces_bnd_;
  std::vector<std::vector<std::size_t>> patch_;
  std::vector<bool> cell_bnd_;
};

/// Global numbering in order of first appearance over ascending (K, i).
/// Vertex dofs merge by vertex, edge dofs by edge (sub-index reversed when the
/// local edge runs against the global lower-to-higher direction), interior
/// dofs never merge.
Connectivity build_connectivity(const Mesh& mesh, const ReferenceElement& ref);

struct BoundaryClassification
{
  std::vector<std::size_t> interior_dofs;
  std::vector<std::size_t> boundary_dofs;
  std::vector<std::size_t> interior_cells; ///< T_h^int
  std::vector<std::size_t> boundary_cells; ///< T_h^bnd, covering D^bnd
};

BoundaryClassification classify_boundary(const Connectivity& conn, const Mesh& mesh);

/// True if the entity of local dof i of cell k lies on face f of that cell.
bool dof_on_face(const Mesh& mesh, const ReferenceElement& ref, std::size_t k, int i, std::size_t f);

/// Lines `a: (K,i) (K',i') ... [int|bnd]`.
std::string dump_connectivity(const Connectivity& conn);

} // namespace qiav
