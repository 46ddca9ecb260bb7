#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "functions.h"
#include "space.h"

namespace qiav
{

/// I_h^av(v) = average(I_h^#(v)).
ConformingField quasi_interpolate(const std::shared_ptr<const FeSpace>& space, const Function& v);

/// I_h0^av(v) = average_zero_bc(I_h^#(v)).
ConformingField quasi_interpolate_zero_bc(const std::shared_ptr<const FeSpace>& space, const Function& v);

Value eval_field(const BrokenField& field, std::size_t cell, const Point& xhat);
Value eval_field(const ConformingField& field, std::size_t cell, const Point& xhat);

/// The trace whose continuity defines conformity: the value (g), the
/// tangential component v . t_F (c) or the normal component v . n_F (d).
/// t_F is n_F rotated counterclockwise.
struct TraceSpec
{
  Family family;
  int dimension = 1;

  double operator()(const Value& v, const Face& face) const;
};

/// Points x(t) = x0 + t (x1 - x0) on a face, x0/x1 its lower/higher vertex.
Point face_point(const Mesh& mesh, const Face& face, double t);

/// Endpoints plus Gauss points exact to degree 2k + 2.
std::vector<double> face_samples(int degree);

/// Ten equispaced interior points plus both endpoints.
std::vector<double> jump_norm_samples();

/// gamma_{K_l}(v) - gamma_{K_r}(v) at the samples of an interior face;
/// gamma_{K_F}(v) on a boundary face.
std::vector<double> gamma_jump(const BrokenField& field, std::size_t face, const std::vector<double>& samples);

/// Trace of v|_K on face f, K one of its cells.
std::vector<double> gamma_trace(const BrokenField& field, std::size_t cell, std::size_t face,
                                const std::vector<double>& samples);

/// max |[[v]]_F| over jump_norm_samples().
double jump_sup(const BrokenField& field, std::size_t face);

} // namespace qiav
