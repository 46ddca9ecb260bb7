#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "connectivity.h"
#include "functions.h"
#include "mesh.h"
#include "refelem.h"
#include "sharp.h"

namespace qiav
{

/// A finite element space on a mesh: the reference element, its Riesz basis,
/// and the connectivity. Immutable once built.
class FeSpace
{
public:
  FeSpace(std::shared_ptr<const Mesh> mesh, Family family, int degree);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  const ReferenceElement& element() const { return ref_; }
  const RieszBasis& riesz() const { return riesz_; }
  const Connectivity& connectivity() const { return conn_; }
  const SharpEvaluator& sharp() const { return sharp_; }

  Family family() const { return ref_.family(); }
  int value_size() const { return ref_.value_size(); }
  int num_local() const { return ref_.num_dofs(); }
  std::size_t num_cells() const { return mesh_->num_cells(); }
  std::size_t num_global() const { return conn_.num_global(); }

  /// Physical shape function sign(K, i) psi_K^{-1}(theta_i) at T_K(xhat).
  Value shape_value(std::size_t cell, int i, const Point& xhat) const;
  /// Its physical Jacobian (q x 2).
  Gradient shape_gradient(std::size_t cell, int i, const Point& xhat) const;

private:
  std::shared_ptr<const Mesh> mesh_;
  ReferenceElement ref_;
  RieszBasis riesz_;
  Connectivity conn_;
  SharpEvaluator sharp_;
};

std::shared_ptr<const FeSpace> make_space(std::shared_ptr<const Mesh> mesh, Family family, int degree);

/// Member of the broken space: one coefficient vector per cell, in the
/// sign-corrected local bases.
class BrokenField
{
public:
  explicit BrokenField(std::shared_ptr<const FeSpace> space);
  BrokenField(std::shared_ptr<const FeSpace> space, Eigen::VectorXd coefficients);

  const FeSpace& space() const { return *space_; }
  const std::shared_ptr<const FeSpace>& space_ptr() const { return space_; }

  double& operator()(std::size_t cell, int i) { return u_[cell * nf_ + i]; }
  double operator()(std::size_t cell, int i) const { return u_[cell * nf_ + i]; }
  const Eigen::VectorXd& coefficients() const { return u_; }
  Eigen::VectorXd& coefficients() { return u_; }

  Value eval(std::size_t cell, const Point& xhat) const;
  Value eval_physical(std::size_t cell, const Point& x) const;
  Gradient gradient(std::size_t cell, const Point& xhat) const;

  /// Components of v|_K as polynomials in z = x - b_K.
  std::vector<Polynomial> local_polynomial(std::size_t cell) const;

private:
  std::shared_ptr<const FeSpace> space_;
  int nf_;
  Eigen::VectorXd u_;
};

/// Member of the conforming space: one coefficient per global dof.
class ConformingField
{
public:
  explicit ConformingField(std::shared_ptr<const FeSpace> space);
  ConformingField(std::shared_ptr<const FeSpace> space, Eigen::VectorXd coefficients);

  const FeSpace& space() const { return *space_; }
  const std::shared_ptr<const FeSpace>& space_ptr() const { return space_; }

  double& operator[](std::size_t a) { return u_[a]; }
  double operator[](std::size_t a) const { return u_[a]; }
  const Eigen::VectorXd& coefficients() const { return u_; }
  Eigen::VectorXd& coefficients() { return u_; }

  /// Embedding into the broken space: (K, i) takes the coefficient of a(K, i).
  BrokenField to_broken() const;
  Value eval(std::size_t cell, const Point& xhat) const;

private:
  std::shared_ptr<const FeSpace> space_;
  Eigen::VectorXd u_;
};

/// Views a field as a cell-aware function, e.g. to feed it back into an interpolant.
Function as_function(const BrokenField& field);
Function as_function(const ConformingField& field);

} // namespace qiav
