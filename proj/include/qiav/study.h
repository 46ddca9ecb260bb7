#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mesh.h"
#include "norms.h"
#include "types.h"

namespace qiav
{

struct StudyConfig
{
  Family family = Family::g;
  int degree = 1;
  bool zero_bc = false;
  std::vector<int> levels{8, 16, 32, 64};
  double p = 2.0;
  std::string function = "smooth_sine";
  double alpha = 0.6;
  Point center = Point(0.5, 0.5);
  std::string region = "all"; ///< all | boundary (cells touching a boundary dof)
  Pattern pattern = Pattern::diagonal;
  std::string out;
  std::uint64_t seed = 1;
};

/// Applies one `key=value` setting. Keys: family, degree, bc, levels, p,
/// func, alpha, center, region, pattern, out, seed. Throws UsageError.
void apply_setting(StudyConfig& config, std::string_view key, std::string_view value);

/// Flat `key=value` file, `#` comments. Throws ParseError with the line number.
StudyConfig parse_config(std::string_view text, StudyConfig base = {});

/// Throws UsageError on inconsistent settings.
void validate_config(const StudyConfig& config);

struct ConvergeRow
{
  int level;
  int n;
  double h;
  double error;
  double rate; ///< NaN on the first level
};

struct ConvergeResult
{
  std::vector<ConvergeRow> rows;
  RateFit fit;
};

/// Errors below this are reported as exact reproduction.
inline constexpr double reproduction_threshold = 1e-12;

/// Quasi-interpolation error per level; writes the CSV
///   level,n,h,error,rate
/// followed by `#rate,<slope>` (or `#rate,exact`).
ConvergeResult run_converge(const StudyConfig& config, std::ostream& csv);

/// Runs a property suite and writes its report. Returns 0 if all pass, 1 otherwise.
int run_checks(const std::string& suite, std::uint64_t seed, std::ostream& out);

} // namespace qiav
