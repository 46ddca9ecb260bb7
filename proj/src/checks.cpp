#include "qiav/checks.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qiav/averaging.h"
#include "qiav/errors.h"
#include "qiav/norms.h"
#include "qiav/quadrature.h"
#include "qiav/quasi.h"
#include "qiav/slobodeckij.h"

namespace qiav
{

namespace
{
constexpr double pi = std::numbers::pi;

const std::vector<Point>& cell_samples()
{
  static const std::vector<Point> pts = [] {
    std::vector<Point> out;
    const QuadratureRule rule = simplex_quadrature(6);
    for (std::size_t k = 0; k < rule.size(); ++k)
      out.push_back(rule.point(k));
    for (int i = 0; i < 3; ++i)
    {
      out.push_back(reference_vertex(i));
      out.push_back(0.5 * (reference_vertex(i) + reference_vertex((i + 1) % 3)));
    }
    return out;
  }();
  return pts;
}

double ratio(double lhs, double rhs)
{
  if (rhs > 0.0)
    return lhs / rhs;
  return lhs > 1e-13 ? infinity : 0.0;
}

std::string fmt(double v)
{
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string series_detail(const ConstantSeries& s)
{
  std::ostringstream os;
  os.precision(5);
  for (std::size_t i = 0; i < s.levels.size(); ++i)
    os << (i ? " " : "") << "n" << s.levels[i] << "=" << s.values[i];
  os << " spread=" << s.spread();
  return os.str();
}

std::shared_ptr<const Mesh> structured(int n) { return std::make_shared<const Mesh>(build_structured_mesh(n)); }

struct Element
{
  Family family;
  int degree;
  std::string label() const { return std::string(1, family_char(family)) + std::to_string(degree); }
};

const std::vector<Element>& all_elements()
{
  static const std::vector<Element> e{{Family::g, 1}, {Family::g, 2}, {Family::g, 3}, {Family::c, 0}, {Family::d, 0}};
  return e;
}

double lp_cell(const Mesh& mesh, const Function& v, double p, std::size_t k)
{
  return lp_norm(mesh, v, p, {k}, 8);
}

// Combines per-cell L^p norms into the norm over a union of cells.
double combine(const std::vector<double>& per_cell, const std::vector<std::size_t>& cells, double p)
{
  double acc = 0.0;
  for (std::size_t k : cells)
    acc = std::isinf(p) ? std::max(acc, per_cell[k]) : acc + std::pow(per_cell[k], p);
  return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

Function scalar_function(std::function<double(const Point&, int, int)> f)
{
  return analytic(1, 2, [f = std::move(f)](const Point& x, int dx, int dy) {
    Value v(1);
    v(0) = f(x, dx, dy);
    return v;
  });
}

// x, x^2 and sin(pi x) cos(pi y) with derivatives up to order 2
const std::vector<std::pair<std::string, Function>>& poincare_functions()
{
  static const std::vector<std::pair<std::string, Function>> f{
      {"x", scalar_function([](const Point& x, int dx, int dy) {
         if (dy > 0)
           return 0.0;
         return dx == 0 ? x.x() : (dx == 1 ? 1.0 : 0.0);
       })},
      {"x^2", scalar_function([](const Point& x, int dx, int dy) {
         if (dy > 0)
           return 0.0;
         return dx == 0 ? x.x() * x.x() : (dx == 1 ? 2 * x.x() : 2.0);
       })},
      {"sin(pi x)cos(pi y)", scalar_function([](const Point& x, int dx, int dy) {
         return std::pow(pi, dx + dy) * std::sin(pi * x.x() + dx * pi / 2) * std::cos(pi * x.y() + dy * pi / 2);
       })},
  };
  return f;
}

const std::vector<int> constant_levels{8, 16, 32, 64};
constexpr double stable_spread = 0.25;
constexpr int fields_per_level = 8;

} // namespace

BrokenField random_broken_field(const std::shared_ptr<const FeSpace>& space, Rng& rng)
{
  BrokenField v(space);
  for (Eigen::Index j = 0; j < v.coefficients().size(); ++j)
    v.coefficients()[j] = rng.uniform();
  return v;
}

BrokenField periodic_broken_field(const std::shared_ptr<const FeSpace>& space, Rng& rng, std::size_t period)
{
  const int nf = space->num_local();
  std::vector<double> table(period * std::size_t(nf));
  for (double& t : table)
    t = rng.uniform();
  BrokenField v(space);
  for (std::size_t k = 0; k < space->num_cells(); ++k)
    for (int i = 0; i < nf; ++i)
      v(k, i) = table[(k % period) * std::size_t(nf) + std::size_t(i)];
  return v;
}

ConformingField random_conforming_field(const std::shared_ptr<const FeSpace>& space, Rng& rng, bool zero_bc)
{
  ConformingField v(space);
  for (std::size_t a = 0; a < space->num_global(); ++a)
    v[a] = (zero_bc && space->connectivity().is_boundary_dof(a)) ? 0.0 : rng.uniform();
  return v;
}

Function random_smooth_function(int value_size, Rng& rng)
{
  struct Wave
  {
    double amp, kx, ky, phase;
  };
  std::vector<std::vector<Wave>> waves(value_size);
  for (auto& comp : waves)
    for (int j = 0; j < 3; ++j)
      comp.push_back({rng.uniform(), rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(0, 2 * pi)});
  return analytic(value_size, 100, [waves](const Point& x, int dx, int dy) {
    Value v = Value::Zero(Eigen::Index(waves.size()));
    for (std::size_t r = 0; r < waves.size(); ++r)
      for (const Wave& w : waves[r])
        v(Eigen::Index(r)) += w.amp * std::pow(w.kx, dx) * std::pow(w.ky, dy)
                              * std::sin(w.kx * x.x() + w.ky * x.y() + w.phase + (dx + dy) * pi / 2);
    return v;
  });
}

double sup_norm(const BrokenField& v, const std::vector<std::size_t>& cells)
{
  double m = 0.0;
  auto visit = [&](std::size_t k) {
    for (const Point& x : cell_samples())
      m = std::max(m, v.eval(k, x).norm());
  };
  if (cells.empty())
    for (std::size_t k = 0; k < v.space().num_cells(); ++k)
      visit(k);
  else
    for (std::size_t k : cells)
      visit(k);
  return m;
}

bool ConstantSeries::finite() const
{
  return !values.empty() && std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double ConstantSeries::spread() const
{
  if (values.empty())
    return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo <= 0.0)
    return *hi <= 0.0 ? 0.0 : infinity;
  return *hi / *lo - 1.0;
}

double dof_jump_constant(const BrokenField& v)
{
  const FeSpace& space = v.space();
  const Mesh& mesh = space.mesh();
  const Connectivity& conn = space.connectivity();
  const Family fam = space.family();
  double c = 0.0;
  for (std::size_t f : mesh.interior_faces())
  {
    const Face& face = mesh.face(f);
    const double jump = jump_sup(v, f);
    const double a_min = std::min(mesh.map(face.left).norm_A(fam), mesh.map(face.right).norm_A(fam));
    for (int i = 0; i < space.num_local(); ++i)
    {
      if (!dof_on_face(mesh, space.element(), face.left, i, f))
        continue;
      const std::size_t a = conn.global(face.left, i);
      for (int j = 0; j < space.num_local(); ++j)
        if (conn.global(face.right, j) == a)
          c = std::max(c, ratio(std::abs(v(face.left, i) - v(face.right, j)), a_min * jump));
    }
  }
  return c;
}

double boundary_dof_constant(const BrokenField& v)
{
  const FeSpace& space = v.space();
  const Mesh& mesh = space.mesh();
  double c = 0.0;
  for (std::size_t f : mesh.boundary_faces())
  {
    const std::size_t k = mesh.face(f).left;
    const double trace = jump_sup(v, f);
    for (int i = 0; i < space.num_local(); ++i)
      if (dof_on_face(mesh, space.element(), k, i, f))
        c = std::max(c, ratio(std::abs(v(k, i)), mesh.map(k).norm_A(space.family()) * trace));
  }
  return c;
}

double averaging_constant(const BrokenField& v, bool zero_bc)
{
  const FeSpace& space = v.space();
  const Mesh& mesh = space.mesh();
  const Connectivity& conn = space.connectivity();
  BrokenField diff = (zero_bc ? average_zero_bc(v) : average(v)).to_broken();
  diff.coefficients() = v.coefficients() - diff.coefficients();

  std::vector<double> jump(mesh.num_faces(), 0.0);
  for (std::size_t f = 0; f < mesh.num_faces(); ++f)
    jump[f] = jump_sup(v, f);

  double c = 0.0;
  for (std::size_t k = 0; k < mesh.num_cells(); ++k)
  {
    std::vector<std::size_t> faces;
    for (int i = 0; i < space.num_local(); ++i)
    {
      const std::size_t a = conn.global(k, i);
      faces.insert(faces.end(), conn.class_interior_faces(a).begin(), conn.class_interior_faces(a).end());
      if (zero_bc)
        faces.insert(faces.end(), conn.class_boundary_faces(a).begin(), conn.class_boundary_faces(a).end());
    }
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    double rhs = 0.0;
    for (std::size_t f : faces)
      rhs += jump[f];
    c = std::max(c, ratio(sup_norm(diff, {k}), rhs));
  }
  return c;
}

double averaging_stability_constant(const BrokenField& v, double p)
{
  const FeSpace& space = v.space();
  const BrokenField jv = average(v).to_broken();
  const std::size_t nc = space.num_cells();
  std::vector<double> norm_v(nc), norm_jv(nc);
  for (std::size_t k = 0; k < nc; ++k)
  {
    norm_v[k] = lp_norm(v, p, {k});
    norm_jv[k] = lp_norm(jv, p, {k});
  }
  double c = 0.0;
  for (std::size_t k = 0; k < nc; ++k)
    c = std::max(c, ratio(norm_jv[k], combine(norm_v, space.connectivity().patch(k), p)));
  return c;
}

double sharp_stability_constant(const std::shared_ptr<const FeSpace>& space, const Function& v, double p)
{
  const BrokenField iv = interp_sharp_global(space, v);
  const Mesh& mesh = space->mesh();
  double c = 0.0;
  for (std::size_t k = 0; k < mesh.num_cells(); ++k)
    c = std::max(c, ratio(lp_norm(iv, p, {k}), lp_norm(mesh, v, p, {k})));
  return c;
}

double quasi_stability_constant(const std::shared_ptr<const FeSpace>& space, const Function& v, int m, double p)
{
  const BrokenField iv = quasi_interpolate(space, v).to_broken();
  const Mesh& mesh = space->mesh();
  const std::size_t nc = mesh.num_cells();
  std::vector<double> semi_v(nc);
  for (std::size_t k = 0; k < nc; ++k)
    semi_v[k] = broken_seminorm(mesh, v, m, p, {k});
  double c = 0.0;
  for (std::size_t k = 0; k < nc; ++k)
    c = std::max(c, ratio(broken_seminorm(iv, m, p, {k}), combine(semi_v, space->connectivity().patch(k), p)));
  return c;
}

double patch_poincare_constant(const FeSpace& space, const Function& v, double p)
{
  const Mesh& mesh = space.mesh();
  const std::size_t nc = mesh.num_cells();
  std::vector<double> semi(nc);
  for (std::size_t k = 0; k < nc; ++k)
    semi[k] = broken_seminorm(mesh, v, 1, p, {k}, 8);
  double c = 0.0;
  for (std::size_t k = 0; k < nc; ++k)
  {
    const auto& patch = space.connectivity().patch(k);
    const double mean = moment_poly(mesh, v, patch, 0, 8)[0].coeffs()[0];
    const Function centered(v.value_size(), 0, [&](std::size_t cell, const Point& x, int, int) {
      return Value(v(cell, x).array() - mean);
    });
    const double lhs = lp_norm(mesh, centered, p, patch, 8);
    c = std::max(c, ratio(lhs, mesh.diameter(k) * combine(semi, patch, p)));
  }
  return c;
}

double trace_constant(const Mesh& mesh, const Function& v, double p)
{
  double c = 0.0;
  for (std::size_t k = 0; k < mesh.num_cells(); ++k)
  {
    const double h = mesh.diameter(k);
    const double e = std::isinf(p) ? 0.0 : 1.0 / p;
    const double rhs = std::pow(h, -e) * lp_cell(mesh, v, p, k)
                       + std::pow(h, 1.0 - e) * broken_seminorm(mesh, v, 1, p, {k}, 8);
    for (int j = 0; j < 3; ++j)
      c = std::max(c, ratio(face_lp_norm(mesh, v, k, mesh.cell_face(k, j), p), rhs));
  }
  return c;
}

double fractional_poincare_ratio(const Function& v, double s, double p)
{
  const Mesh ref({reference_vertex(0), reference_vertex(1), reference_vertex(2)}, {{0, 1, 2}});
  const double mean = moment_poly(ref, v, {}, 0)[0].coeffs()[0];
  const Function centered(1, 0, [&](std::size_t cell, const Point& x, int, int) {
    return Value(v(cell, x).array() - mean);
  });
  const double lhs = lp_norm(ref, centered, p);
  const double h = ref.diameter(0);
  const double semi = slobodeckij_seminorm(ref, v, {}, s, p).value;
  const double rhs = std::pow(h, s) * std::pow(h * h / ref.area(0), 1.0 / p) * semi;
  return ratio(rhs, lhs);
}

ConstantSeries measure_constant(const std::string& name, Family family, int degree, const std::vector<int>& levels,
                                std::uint64_t seed,
                                const std::function<double(const std::shared_ptr<const FeSpace>&, Rng&)>& constant)
{
  ConstantSeries s;
  s.name = name;
  for (int n : levels)
  {
    Rng rng(seed);
    s.levels.push_back(n);
    s.values.push_back(constant(make_space(structured(n), family, degree), rng));
  }
  return s;
}

void CheckReport::add(bool pass, std::string name, std::string detail)
{
  lines.push_back({pass, std::move(name), std::move(detail)});
}

bool CheckReport::all_pass() const
{
  return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
}

std::string CheckReport::format() const
{
  std::ostringstream os;
  for (const CheckLine& l : lines)
  {
    os << (l.pass ? "PASS " : "FAIL ") << l.name;
    if (!l.detail.empty())
      os << " " << l.detail;
    os << "\n";
  }
  return os.str();
}

namespace
{

void add_series(CheckReport& r, const ConstantSeries& s, double tol = stable_spread)
{
  r.add(s.finite() && s.spread() < tol, s.name, series_detail(s));
}

// max over a fixed set of cell-periodic broken fields (two cells per square)
std::function<double(const std::shared_ptr<const FeSpace>&, Rng&)>
over_random_fields(std::function<double(const BrokenField&)> c)
{
  return [c = std::move(c)](const std::shared_ptr<const FeSpace>& space, Rng& rng) {
    double m = 0.0;
    for (int j = 0; j < fields_per_level; ++j)
      m = std::max(m, c(periodic_broken_field(space, rng, 2)));
    return m;
  };
}

void suite_invariance(CheckReport& r, std::uint64_t seed)
{
  const auto mesh = structured(4);
  for (const Element& e : all_elements())
  {
    const auto space = make_space(mesh, e.family, e.degree);
    Rng rng(seed);
    double invariance = 0.0, projection = 0.0, zero_invariance = 0.0, sharp = 0.0;
    for (int t = 0; t < 100; ++t)
    {
      const ConformingField v = random_conforming_field(space, rng);
      const BrokenField vb = v.to_broken();
      const double scale = sup_norm(vb);
      const BrokenField iv = quasi_interpolate(space, as_function(v)).to_broken();
      BrokenField d = iv;
      d.coefficients() -= vb.coefficients();
      invariance = std::max(invariance, sup_norm(d) / scale);

      BrokenField ds = interp_sharp_global(space, as_function(vb));
      ds.coefficients() -= vb.coefficients();
      sharp = std::max(sharp, sup_norm(ds) / scale);

      const ConformingField w = quasi_interpolate(space, random_smooth_function(space->value_size(), rng));
      const ConformingField ww = quasi_interpolate(space, as_function(w));
      projection = std::max(projection, (ww.coefficients() - w.coefficients()).lpNorm<Eigen::Infinity>()
                                            / std::max(1.0, w.coefficients().lpNorm<Eigen::Infinity>()));

      const ConformingField z = random_conforming_field(space, rng, true);
      const ConformingField iz = quasi_interpolate_zero_bc(space, as_function(z));
      zero_invariance = std::max(zero_invariance, (iz.coefficients() - z.coefficients()).lpNorm<Eigen::Infinity>()
                                                      / std::max(1e-300, z.coefficients().lpNorm<Eigen::Infinity>()));
    }
    r.add(invariance <= 1e-10, "invariance." + e.label(), "max_rel=" + fmt(invariance));
    r.add(sharp <= 1e-10, "sharp_invariance." + e.label(), "max_rel=" + fmt(sharp));
    r.add(projection <= 1e-12, "projection." + e.label(), "max=" + fmt(projection));
    r.add(zero_invariance <= 1e-10, "zero_bc_invariance." + e.label(), "max_rel=" + fmt(zero_invariance));
  }
  const auto space = make_space(mesh, Family::g, 1);
  const double err = lp_error(linear_xy(), quasi_interpolate(space, linear_xy()), infinity);
  r.add(err <= 1e-12, "reproduce_linear_xy.g1", "err=" + fmt(err));
}

void suite_commutation(CheckReport& r, std::uint64_t seed)
{
  const auto mesh = structured(4);
  const CellMap identity(reference_vertex(0), reference_vertex(1), reference_vertex(2));
  for (const Element& e : all_elements())
  {
    const auto space = make_space(mesh, e.family, e.degree);
    const ReferenceElement& ref = space->element();
    Rng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t)
    {
      const Function v = random_smooth_function(ref.value_size(), rng);
      const std::size_t k = std::size_t(rng.uniform(0, double(mesh->num_cells()))) % mesh->num_cells();
      const CellMap& map = mesh->map(k);
      const PhysicalFunction pv = [&](const Point& x) { return v(x); };
      // psi_K(I#_K v)
      const Eigen::VectorXd local = interp_sharp_local(ref, space->riesz(), map, pv);
      const PhysicalFunction ikv = [&](const Point& x) {
        const Point xhat = map.to_reference(x);
        Value s = Value::Zero(ref.value_size());
        for (int i = 0; i < ref.num_dofs(); ++i)
          s += local[i] * apply_A_inverse(e.family, map, ref.eval_shape(i, xhat));
        return s;
      };
      const ReferenceFunction lhs = pullback(e.family, map, ikv);
      // I#_Khat(psi_K v)
      const ReferenceFunction pulled = pullback(e.family, map, pv);
      const Eigen::VectorXd ref_dofs = sigma_sharp(ref, space->riesz(), identity, pulled);
      for (int j = 0; j < 5; ++j)
      {
        const double a = rng.uniform(0, 1), b = rng.uniform(0, 1);
        const Point xhat = a + b <= 1 ? Point(a, b) : Point(1 - a, 1 - b);
        Value rhs = Value::Zero(ref.value_size());
        for (int i = 0; i < ref.num_dofs(); ++i)
          rhs += ref_dofs[i] * ref.eval_shape(i, xhat);
        worst = std::max(worst, (lhs(xhat) - rhs).norm() / std::max(1.0, rhs.norm()));
      }
    }
    r.add(worst <= 1e-12, "commutation." + e.label(), "max=" + fmt(worst));
  }
}

void suite_poincare(CheckReport& r, std::uint64_t)
{
  for (const auto& [name, v] : poincare_functions())
    for (double s : {0.25, 0.5, 0.75})
    {
      const double q = fractional_poincare_ratio(v, s, 2.0);
      r.add(q >= 1.0 - 2e-3, "fractional_poincare." + name + ".s" + fmt(s), "rhs/lhs=" + fmt(q));
    }
  const Function trace_input = scalar_function([](const Point& x, int dx, int dy) {
    return (dx + dy == 0 ? 1.0 : 0.0)
           + std::pow(pi, dx + dy) * std::sin(pi * x.x() + dx * pi / 2) * std::cos(pi * x.y() + dy * pi / 2);
  });
  for (double p : {1.0, 2.0})
  {
    ConstantSeries s;
    s.name = "trace_constant.p" + fmt(p);
    for (int n : constant_levels)
    {
      s.levels.push_back(n);
      s.values.push_back(trace_constant(build_structured_mesh(n), trace_input, p));
    }
    add_series(r, s);
  }
}

void suite_jumps(CheckReport& r, std::uint64_t seed)
{
  for (const Element& e : all_elements())
  {
    add_series(r, measure_constant("dof_jump_constant." + e.label(), e.family, e.degree, constant_levels, seed,
                                   over_random_fields(dof_jump_constant)));
    add_series(r, measure_constant("boundary_dof_constant." + e.label(), e.family, e.degree, constant_levels, seed,
                                   over_random_fields(boundary_dof_constant)));
    const auto space = make_space(structured(4), e.family, e.degree);
    Rng rng(seed);
    const BrokenField v = random_conforming_field(space, rng).to_broken();
    double worst = 0.0;
    for (std::size_t f : space->mesh().interior_faces())
      worst = std::max(worst, jump_sup(v, f));
    r.add(worst <= 1e-11, "conforming_zero_jump." + e.label(), "max=" + fmt(worst));
  }
}

void suite_stability(CheckReport& r, std::uint64_t seed)
{
  const Function rough = radial_alpha(-0.4, default_radial_center());
  const Function rough_vec = vector_radial(-0.4, default_radial_center());
  for (const Element& e : all_elements())
  {
    const Function& v = e.family == Family::g ? rough : rough_vec;
    for (double p : {1.0, 2.0})
      add_series(r, measure_constant("sharp_stability." + e.label() + ".p" + fmt(p), e.family, e.degree,
                                     constant_levels, seed,
                                     [&](const std::shared_ptr<const FeSpace>& s, Rng&) {
                                       return sharp_stability_constant(s, v, p);
                                     }),
                 0.2);
    for (double p : {1.0, 2.0, infinity})
      add_series(r, measure_constant("averaging_stability." + e.label() + ".p" + fmt(p), e.family, e.degree,
                                     constant_levels, seed,
                                     over_random_fields([p](const BrokenField& b) {
                                       return averaging_stability_constant(b, p);
                                     })));
  }
  const Function smooth = smooth_sine();
  for (int m : {0, 1})
    add_series(r, measure_constant("quasi_stability.g1.m" + std::to_string(m), Family::g, 1, constant_levels, seed,
                                   [&](const std::shared_ptr<const FeSpace>& s, Rng&) {
                                     return quasi_stability_constant(s, smooth, m, 2.0);
                                   }));

  // global L1 ratio of the quasi-interpolant of the rough function
  ConstantSeries l1;
  l1.name = "l1_ratio.g1";
  for (int n : constant_levels)
  {
    const auto space = make_space(structured(n), Family::g, 1);
    l1.levels.push_back(n);
    l1.values.push_back(lp_norm(quasi_interpolate(space, rough).to_broken(), 1.0)
                        / lp_norm(space->mesh(), rough, 1.0));
  }
  add_series(r, l1, 0.5);
}

void suite_averaging(CheckReport& r, std::uint64_t seed)
{
  for (const Element& e : all_elements())
  {
    add_series(r, measure_constant("averaging_constant." + e.label(), e.family, e.degree, constant_levels, seed,
                                   over_random_fields([](const BrokenField& b) { return averaging_constant(b, false); })));
    add_series(r, measure_constant("averaging_constant_zero_bc." + e.label(), e.family, e.degree, constant_levels,
                                   seed,
                                   over_random_fields([](const BrokenField& b) { return averaging_constant(b, true); })));
    const auto space = make_space(structured(4), e.family, e.degree);
    Rng rng(seed);
    const ConformingField v = random_conforming_field(space, rng);
    const ConformingField av = average(v.to_broken());
    const double idem = (av.coefficients() - v.coefficients()).lpNorm<Eigen::Infinity>();
    r.add(idem <= 1e-12, "idempotence." + e.label(), "max=" + fmt(idem));
    const ConformingField z = average_zero_bc(random_broken_field(space, rng));
    bool exact = true;
    for (std::size_t a : space->connectivity().boundary_dofs())
      exact = exact && z[a] == 0.0;
    r.add(exact, "zero_bc_boundary_exact." + e.label());
  }
}

void suite_patch(CheckReport& r, std::uint64_t seed)
{
  const Function v = poincare_functions()[2].second;
  for (double p : {1.0, 2.0})
    add_series(r, measure_constant("patch_poincare.p" + fmt(p), Family::g, 1, constant_levels, seed,
                                   [&](const std::shared_ptr<const FeSpace>& s, Rng&) {
                                     return patch_poincare_constant(*s, v, p);
                                   }));
  for (const Element& e : all_elements())
  {
    std::size_t max_card = 0, min_card = 0;
    bool paths = true;
    for (int n : constant_levels)
    {
      const auto space = make_space(structured(n), e.family, e.degree);
      const Connectivity& conn = space->connectivity();
      std::size_t card = 0;
      for (std::size_t k = 0; k < space->num_cells(); ++k)
        card = std::max(card, conn.patch(k).size());
      max_card = std::max(max_card, card);
      min_card = min_card == 0 ? card : std::min(min_card, card);
      // cells of a class are connected through the faces of F_a^int
      const Mesh& mesh = space->mesh();
      for (std::size_t a = 0; a < conn.num_global() && paths; ++a)
      {
        const auto& cls = conn.dof_class(a);
        if (cls.size() < 2)
          continue;
        std::vector<std::size_t> reached{cls.front().cell};
        for (bool grew = true; grew;)
        {
          grew = false;
          for (std::size_t f : conn.class_interior_faces(a))
          {
            const Face& face = mesh.face(f);
            const bool l = std::find(reached.begin(), reached.end(), face.left) != reached.end();
            const bool rr = std::find(reached.begin(), reached.end(), face.right) != reached.end();
            if (l != rr)
            {
              reached.push_back(l ? face.right : face.left);
              grew = true;
            }
          }
        }
        for (const LocalDof& d : cls)
          paths = paths && std::find(reached.begin(), reached.end(), d.cell) != reached.end();
      }
    }
    r.add(max_card == min_card, "patch_cardinality_bounded." + e.label(), "max_card=" + std::to_string(max_card));
    r.add(paths, "class_face_paths." + e.label());
  }
}

void suite_mesh(CheckReport& r, std::uint64_t)
{
  std::vector<double> ratios;
  for (int n : constant_levels)
  {
    const Mesh mesh = build_structured_mesh(n);
    double area = 0.0, normal_err = 0.0, length_err = 0.0, det_err = 0.0;
    bool orientation = true, normals_point = true;
    for (std::size_t k = 0; k < mesh.num_cells(); ++k)
    {
      area += mesh.area(k);
      const double det = mesh.map(k).det();
      orientation = orientation && det > 0;
      det_err = std::max(det_err, std::abs(std::abs(det) - mesh.area(k) / reference_area) / std::abs(det));
    }
    for (const Face& f : mesh.faces())
    {
      normal_err = std::max(normal_err, std::abs(f.normal.norm() - 1.0));
      length_err = std::max(length_err,
                            std::abs(f.length - (mesh.vertex(f.vertices[0]) - mesh.vertex(f.vertices[1])).norm()));
      if (!f.boundary())
        normals_point = normals_point && f.normal.dot(mesh.centroid(f.right) - mesh.centroid(f.left)) > 0;
    }
    const std::string tag = ".n" + std::to_string(n);
    r.add(std::abs(area - 1.0) <= 1e-12, "area_sum" + tag, "err=" + fmt(std::abs(area - 1.0)));
    r.add(normal_err <= 1e-14 && normals_point, "normals" + tag, "err=" + fmt(normal_err));
    r.add(length_err <= 1e-14, "face_lengths" + tag, "err=" + fmt(length_err));
    r.add(orientation && det_err <= 1e-12, "cell_maps" + tag, "err=" + fmt(det_err));
    ratios.push_back(mesh.max_shape_ratio());
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  r.add(*hi - *lo <= 1e-12 && std::abs(*hi - (2 + 2 * std::sqrt(2.0))) <= 1e-12, "shape_ratio_constant",
        "h/rho=" + fmt(*hi));
}

using Suite = void (*)(CheckReport&, std::uint64_t);

const std::vector<std::pair<std::string, Suite>>& suites()
{
  static const std::vector<std::pair<std::string, Suite>> s{
      {"invariance", suite_invariance}, {"commutation", suite_commutation}, {"poincare", suite_poincare},
      {"jumps", suite_jumps},           {"stability", suite_stability},     {"averaging", suite_averaging},
      {"patch", suite_patch},           {"mesh", suite_mesh},
  };
  return s;
}

} // namespace

const std::vector<std::string>& suite_names()
{
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& s : suites())
      n.push_back(s.first);
    n.push_back("all");
    return n;
  }();
  return names;
}

CheckReport run_suite(const std::string& suite, std::uint64_t seed)
{
  CheckReport report;
  bool found = false;
  for (const auto& [name, fn] : suites())
    if (suite == "all" || suite == name)
    {
      fn(report, seed);
      found = true;
    }
  if (!found)
    throw CapabilityError("unknown suite '" + suite + "'");
  return report;
}

} // namespace qiav
