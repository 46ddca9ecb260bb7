#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qiav/errors.h"
#include "qiav/study.h"

using namespace qiav;

namespace
{

std::vector<std::string> lines_of(const std::string& text)
{
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    out.push_back(line);
  return out;
}

std::size_t parse_error_line(const std::string& text)
{
  try
  {
    parse_config(text);
  }
  catch (const ParseError& e)
  {
    return e.line();
  }
  return 0;
}

} // namespace

TEST_SUITE("study")
{
  TEST_CASE("config files")
  {
    const StudyConfig c = parse_config("# study\nfamily = d\ndegree=0\n\nlevels=4, 8,16 # coarse\np=inf\n"
                                       "func=vector_radial\nalpha=0.25\ncenter=0.1,0.2\nbc=zero\n"
                                       "region=boundary\npattern=crisscross\nseed=9\nout=r.csv\n");
    CHECK(c.family == Family::d);
    CHECK(c.degree == 0);
    CHECK(c.levels == std::vector<int>{4, 8, 16});
    CHECK(std::isinf(c.p));
    CHECK(c.function == "vector_radial");
    CHECK(c.alpha == 0.25);
    CHECK(c.center.isApprox(Point(0.1, 0.2)));
    CHECK(c.zero_bc);
    CHECK(c.region == "boundary");
    CHECK(c.pattern == Pattern::crisscross);
    CHECK(c.seed == 9);
    CHECK(c.out == "r.csv");
    CHECK_NOTHROW(validate_config(c));

    StudyConfig base;
    base.degree = 3;
    CHECK(parse_config("p=1\n", base).degree == 3);
  }

  TEST_CASE("config errors carry the line")
  {
    CHECK(parse_error_line("family=g\nthis line has no equals sign\n") == 2);
    CHECK(parse_error_line("family=g\n\ndegree=two\n") == 3);
    CHECK(parse_error_line("colour=blue\n") == 1);
    CHECK(parse_error_line("family=q\n") == 1);
  }

  TEST_CASE("settings")
  {
    StudyConfig c;
    CHECK_THROWS_AS(apply_setting(c, "bc", "dirichlet"), UsageError);
    CHECK_THROWS_AS(apply_setting(c, "center", "0.5"), UsageError);
    CHECK_THROWS_AS(apply_setting(c, "pattern", "hex"), UsageError);
    CHECK_THROWS_AS(apply_setting(c, "levels", "8,x"), UsageError);
    apply_setting(c, "p", "1.5");
    CHECK(c.p == 1.5);
  }

  TEST_CASE("validation")
  {
    const auto invalid = [](const std::string& text) {
      CHECK_THROWS_AS(validate_config(parse_config(text)), UsageError);
    };
    invalid("levels=8,16\n");
    invalid("levels=8,16,16\n");
    invalid("levels=0,8,16\n");
    invalid("p=0.5\n");
    invalid("family=c\ndegree=1\n");
    invalid("family=g\nfunc=vector_smooth\n");
    invalid("family=d\ndegree=0\nfunc=smooth_sine\n");
    invalid("func=no_such_function\n");
    invalid("func=radial_alpha\nalpha=2.5\n");
    invalid("func=radial_alpha\nalpha=-1.2\np=2\n");
    CHECK_NOTHROW(validate_config(parse_config("func=radial_alpha\nalpha=-0.9\np=2\n")));
    CHECK_NOTHROW(validate_config(parse_config("func=radial_alpha\nalpha=1.9\np=1\n")));
  }

  TEST_CASE("affine input is reported as exact")
  {
    StudyConfig c = parse_config("func=linear_xy\nlevels=2,4,8\ndegree=2\n");
    std::ostringstream csv;
    const ConvergeResult r = run_converge(c, csv);
    CHECK(r.fit.exactly_reproduced);
    const auto lines = lines_of(csv.str());
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "level,n,h,error,rate");
    CHECK(lines[1].rfind("1,2,", 0) == 0);
    CHECK(lines[1].back() == ',');
    CHECK(lines[4] == "#rate,exact");
  }

  TEST_CASE("P1 smooth study")
  {
    StudyConfig c;
    std::ostringstream a, b;
    const ConvergeResult r = run_converge(c, a);
    CHECK(r.rows.size() == 4);
    CHECK(std::abs(r.fit.slope - 2.0) <= 0.1);
    for (std::size_t i = 1; i < r.rows.size(); ++i)
    {
      CHECK(r.rows[i].error < r.rows[i - 1].error);
      CHECK(r.rows[i].h == doctest::Approx(r.rows[i - 1].h / 2));
    }
    run_converge(c, b);
    CHECK(a.str() == b.str());
    CHECK(lines_of(a.str()).back().rfind("#rate,", 0) == 0);
  }

  TEST_CASE("check runner")
  {
    std::ostringstream out;
    CHECK(run_checks("mesh", 1, out) == 0);
    CHECK(out.str().rfind("PASS ", 0) == 0);
    CHECK_THROWS_AS(run_checks("nonsense", 1, out), CapabilityError);
  }
}
