#include "qiav/study.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <ostream>

#include "qiav/checks.h"
#include "qiav/errors.h"
#include "qiav/functions.h"
#include "qiav/quasi.h"

namespace qiav
{

namespace
{
std::string_view trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value)
{
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw UsageError("invalid value '" + std::string(value) + "' for " + std::string(key));
  return out;
}

double parse_exponent(std::string_view value)
{
  if (value == "inf" || value == "infinity")
    return infinity;
  return parse_number<double>("p", value);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true)
  {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos)
      return out;
    start = pos + 1;
  }
}

std::string format_double(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}
} // namespace

void apply_setting(StudyConfig& c, std::string_view key, std::string_view value)
{
  key = trim(key);
  value = trim(value);
  if (key == "family")
  {
    if (value == "g")
      c.family = Family::g;
    else if (value == "c")
      c.family = Family::c;
    else if (value == "d")
      c.family = Family::d;
    else
      throw UsageError("family must be g, c or d");
  }
  else if (key == "degree")
    c.degree = parse_number<int>(key, value);
  else if (key == "bc")
  {
    if (value != "none" && value != "zero")
      throw UsageError("bc must be none or zero");
    c.zero_bc = value == "zero";
  }
  else if (key == "levels")
  {
    c.levels.clear();
    for (auto part : split(value, ','))
      c.levels.push_back(parse_number<int>(key, part));
  }
  else if (key == "p")
    c.p = parse_exponent(value);
  else if (key == "func")
    c.function = std::string(value);
  else if (key == "alpha")
    c.alpha = parse_number<double>(key, value);
  else if (key == "center")
  {
    const auto parts = split(value, ',');
    if (parts.size() != 2)
      throw UsageError("center must be x,y");
    c.center = Point(parse_number<double>(key, parts[0]), parse_number<double>(key, parts[1]));
  }
  else if (key == "region")
  {
    if (value != "all" && value != "boundary")
      throw UsageError("region must be all or boundary");
    c.region = std::string(value);
  }
  else if (key == "pattern")
  {
    try
    {
      c.pattern = parse_pattern(value);
    }
    catch (const Error& e)
    {
      throw UsageError(e.what());
    }
  }
  else if (key == "out")
    c.out = std::string(value);
  else if (key == "seed")
    c.seed = parse_number<std::uint64_t>(key, value);
  else
    throw UsageError("unknown setting '" + std::string(key) + "'");
}

StudyConfig parse_config(std::string_view text, StudyConfig config)
{
  std::size_t line_no = 0;
  for (auto line : split(text, '\n'))
  {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = trim(line.substr(0, hash));
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected key=value", line_no);
    try
    {
      apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    }
    catch (const UsageError& e)
    {
      throw ParseError(e.what(), line_no);
    }
  }
  return config;
}

void validate_config(const StudyConfig& c)
{
  if (c.levels.size() < 3)
    throw UsageError("at least three levels are needed for a rate");
  for (std::size_t i = 0; i < c.levels.size(); ++i)
  {
    if (c.levels[i] < 1)
      throw UsageError("levels must be positive");
    if (i > 0 && c.levels[i] <= c.levels[i - 1])
      throw UsageError("levels must be strictly increasing");
  }
  if (!(c.p >= 1.0))
    throw UsageError("p must lie in [1, inf]");
  try
  {
    make_reference_element(c.family, c.degree);
  }
  catch (const CapabilityError& e)
  {
    throw UsageError(e.what());
  }
  const int q = c.family == Family::g ? 1 : 2;
  try
  {
    make_test_function(c.function, q, c.alpha, c.center);
  }
  catch (const CapabilityError& e)
  {
    throw UsageError(e.what());
  }
  if (c.function == "radial_alpha" || c.function == "vector_radial")
  {
    const double lower = std::isinf(c.p) ? 0.0 : -2.0 / c.p;
    if (!(c.alpha > lower && c.alpha < c.degree + 1))
      throw UsageError("alpha must lie in (" + std::to_string(lower) + ", " + std::to_string(c.degree + 1) + ")");
  }
}

ConvergeResult run_converge(const StudyConfig& config, std::ostream& csv)
{
  validate_config(config);
  const int q = config.family == Family::g ? 1 : 2;
  const Function v = make_test_function(config.function, q, config.alpha, config.center);

  ConvergeResult result;
  std::vector<double> hs, errors;
  bool exact = true;
  csv << "level,n,h,error,rate\n";
  for (std::size_t i = 0; i < config.levels.size(); ++i)
  {
    const int n = config.levels[i];
    const auto mesh = std::make_shared<const Mesh>(build_structured_mesh(n, config.pattern));
    const auto space = make_space(mesh, config.family, config.degree);
    const ConformingField u = config.zero_bc ? quasi_interpolate_zero_bc(space, v) : quasi_interpolate(space, v);
    CellSet region;
    if (config.region == "boundary")
      region = classify_boundary(space->connectivity(), *mesh).boundary_cells;
    const double error = lp_error(v, u, config.p, region);
    const double h = mesh->max_diameter();

    ConvergeRow row{int(i) + 1, n, h, error, std::numeric_limits<double>::quiet_NaN()};
    if (i > 0 && error > 0.0 && errors.back() > 0.0)
      row.rate = std::log(errors.back() / error) / std::log(hs.back() / h);
    exact = exact && error <= reproduction_threshold;
    hs.push_back(h);
    errors.push_back(error);
    result.rows.push_back(row);
    csv << row.level << ',' << row.n << ',' << format_double(row.h) << ',' << format_double(row.error) << ','
        << (std::isnan(row.rate) ? std::string() : format_double(row.rate)) << '\n';
  }

  if (exact)
  {
    result.fit.exactly_reproduced = true;
    csv << "#rate,exact\n";
    return result;
  }
  result.fit = fit_rate(hs, errors);
  if (result.fit.exactly_reproduced)
    csv << "#rate,exact\n";
  else
    csv << "#rate," << format_double(result.fit.slope) << '\n';
  return result;
}

int run_checks(const std::string& suite, std::uint64_t seed, std::ostream& out)
{
  const CheckReport report = run_suite(suite, seed);
  out << report.format();
  return report.all_pass() ? 0 : 1;
}

} // namespace qiav
