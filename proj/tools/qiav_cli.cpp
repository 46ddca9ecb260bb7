#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qiav/checks.h"
#include "qiav/connectivity.h"
#include "qiav/errors.h"
#include "qiav/mesh.h"
#include "qiav/study.h"

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_property = 1;
constexpr int exit_usage = 2;
constexpr int exit_numeric = 3;

std::string read_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw qiav::UsageError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Writes to --out when given, stdout otherwise.
template <typename F>
void with_output(const std::string& path, F&& write)
{
  if (path.empty())
  {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw qiav::UsageError("cannot write '" + path + "'");
  write(out);
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Quasi-interpolation studies on triangle meshes"};
  app.require_subcommand(1);

  // settings shared by converge and the dump commands; stored raw so that
  // only flags actually given override the config file
  std::string family, degree, bc, levels, p, func, alpha, out, seed, region, pattern, config_path;
  int n = 4;

  auto* converge = app.add_subcommand("converge", "h-convergence study of the quasi-interpolant");
  converge->footer("CSV columns: level,n,h,error,rate (rate between consecutive levels, empty on the first);\n"
                   "a final row '#rate,<slope>' holds the least-squares slope over the three finest levels,\n"
                   "or '#rate,exact' when every error is below 1e-12.");
  converge->add_option("--config", config_path, "key=value file; flags override it");
  converge->add_option("--family", family, "g | c | d");
  converge->add_option("--degree", degree, "polynomial degree k");
  converge->add_option("--bc", bc, "none | zero");
  converge->add_option("--levels", levels, "comma-separated subdivisions, e.g. 8,16,32,64");
  converge->add_option("--p", p, "Lebesgue exponent of the error, 1..inf");
  converge->add_option("--func", func,
                       "smooth_sine | radial_alpha | constant_one | linear_xy | vector_smooth | vector_radial");
  converge->add_option("--alpha", alpha, "exponent of the radial functions");
  converge->add_option("--region", region, "all | boundary (cells carrying a boundary dof)");
  converge->add_option("--pattern", pattern, "diagonal | crisscross");
  converge->add_option("--out", out, "CSV path (default stdout)");
  converge->add_option("--seed", seed, "unused by converge; accepted for uniformity");

  std::string suite;
  std::uint64_t check_seed = 1;
  auto* check = app.add_subcommand("check", "run a property suite; one PASS/FAIL line per property");
  check->add_option("suite", suite, "invariance | commutation | poincare | jumps | stability | averaging | patch | "
                                    "mesh | all")
      ->required();
  check->add_option("--seed", check_seed, "seed of the randomized checks");
  check->add_option("--out", out, "report path (default stdout)");

  auto* dump_mesh = app.add_subcommand("dump-mesh", "print a structured mesh in the text format");
  dump_mesh->add_option("--n", n, "subdivisions per side")->check(CLI::PositiveNumber);
  dump_mesh->add_option("--pattern", pattern, "diagonal | crisscross");
  dump_mesh->add_option("--out", out, "output path (default stdout)");

  auto* dump_conn = app.add_subcommand("dump-connectivity", "print the dof classes of a structured mesh");
  dump_conn->add_option("--n", n, "subdivisions per side")->check(CLI::PositiveNumber);
  dump_conn->add_option("--pattern", pattern, "diagonal | crisscross");
  dump_conn->add_option("--family", family, "g | c | d");
  dump_conn->add_option("--degree", degree, "polynomial degree k");
  dump_conn->add_option("--out", out, "output path (default stdout)");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try
  {
    qiav::StudyConfig config;
    if (!config_path.empty())
      config = qiav::parse_config(read_file(config_path));
    const std::pair<const char*, std::string*> settings[] = {
        {"family", &family}, {"degree", &degree}, {"bc", &bc},         {"levels", &levels},   {"p", &p},
        {"func", &func},     {"alpha", &alpha},   {"region", &region}, {"pattern", &pattern}, {"seed", &seed},
    };
    for (const auto& [key, value] : settings)
      if (!value->empty())
        qiav::apply_setting(config, key, *value);
    if (!out.empty())
      config.out = out;

    if (*converge)
    {
      with_output(config.out, [&](std::ostream& os) { qiav::run_converge(config, os); });
      return exit_ok;
    }
    if (*check)
    {
      int status = exit_ok;
      with_output(config.out, [&](std::ostream& os) { status = qiav::run_checks(suite, check_seed, os); });
      return status == 0 ? exit_ok : exit_property;
    }
    if (*dump_mesh)
    {
      const qiav::Mesh mesh = qiav::build_structured_mesh(n, config.pattern);
      with_output(config.out, [&](std::ostream& os) { os << qiav::write_mesh(mesh); });
      return exit_ok;
    }
    if (*dump_conn)
    {
      const qiav::Mesh mesh = qiav::build_structured_mesh(n, config.pattern);
      const qiav::ReferenceElement ref = qiav::make_reference_element(config.family, config.degree);
      const qiav::Connectivity conn = qiav::build_connectivity(mesh, ref);
      with_output(config.out, [&](std::ostream& os) { os << qiav::dump_connectivity(conn); });
      return exit_ok;
    }
  }
  catch (const qiav::UsageError& e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  catch (const qiav::ParseError& e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  catch (const qiav::CapabilityError& e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  catch (const qiav::Error& e)
  {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return exit_numeric;
  }
  return exit_usage;
}
