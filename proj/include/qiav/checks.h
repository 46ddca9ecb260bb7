#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "functions.h"
#include "space.h"

namespace qiav
{

/// Seeded generator for the randomized property checks.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double a = -1.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(engine_); }
  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

BrokenField random_broken_field(const std::shared_ptr<const FeSpace>& space, Rng& rng);
/// Random coefficients repeated with the cell index modulo `period`; on the
/// structured meshes (period = cells per square) the local configurations
/// are then identical on every level.
BrokenField periodic_broken_field(const std::shared_ptr<const FeSpace>& space, Rng& rng, std::size_t period);
ConformingField random_conforming_field(const std::shared_ptr<const FeSpace>& space, Rng& rng,
                                        bool zero_bc = false);
/// Random trigonometric function with bounded derivatives.
Function random_smooth_function(int value_size, Rng& rng);

/// max |v| over the quadrature points, vertices and edge midpoints of the cells.
double sup_norm(const BrokenField& v, const std::vector<std::size_t>& cells = {});

/// A constant measured on each level of a refinement sequence.
struct ConstantSeries
{
  std::string name;
  std::vector<int> levels;
  std::vector<double> values;

  bool finite() const;
  /// max / min - 1
  double spread() const;
};

/// Measured constants of the local estimates; each is the maximum ratio of the
/// left- to the right-hand side over the mesh (and over the given fields).
double dof_jump_constant(const BrokenField& v);             ///< |sigma_K - sigma_K'| vs min|A| |[[v]]|_inf
double boundary_dof_constant(const BrokenField& v);         ///< |sigma_K| vs |A_K| |gamma(v)|_inf on boundary faces
double averaging_constant(const BrokenField& v, bool zero_bc); ///< |v - J v|_inf(K) vs sum of face jumps
double averaging_stability_constant(const BrokenField& v, double p); ///< |J v|_p(K) vs |v|_p(D_K)
double sharp_stability_constant(const std::shared_ptr<const FeSpace>& space, const Function& v, double p);
double quasi_stability_constant(const std::shared_ptr<const FeSpace>& space, const Function& v, int m, double p);
double patch_poincare_constant(const FeSpace& space, const Function& v, double p);
double trace_constant(const Mesh& mesh, const Function& v, double p);

/// RHS / LHS of the fractional Poincare inequality on the reference triangle.
double fractional_poincare_ratio(const Function& v, double s, double p);

/// Measures `constant(space, rng)` on structured meshes with the given subdivisions.
ConstantSeries measure_constant(const std::string& name, Family family, int degree, const std::vector<int>& levels,
                                std::uint64_t seed,
                                const std::function<double(const std::shared_ptr<const FeSpace>&, Rng&)>& constant);

struct CheckLine
{
  bool pass;
  std::string name;
  std::string detail;
};

struct CheckReport
{
  std::vector<CheckLine> lines;

  void add(bool pass, std::string name, std::string detail = {});
  bool all_pass() const;
  /// One `PASS|FAIL <name> <detail>` line per property.
  std::string format() const;
};

/// Property suites: invariance, commutation, poincare, jumps, stability,
/// averaging, patch, mesh, all. Unknown names throw CapabilityError.
CheckReport run_suite(const std::string& suite, std::uint64_t seed);
const std::vector<std::string>& suite_names();

} // namespace qiav
