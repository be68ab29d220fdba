#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "generators.hpp"
#include "twistcoh/job.hpp"

using namespace twistcoh;
using nlohmann::json;

namespace {

const char* kPaperJob = "[curve]\nf = 4*x^3 - 4*x - 1\n[twist]\nomega = (1) dx/y\n";

ErrorCode code_of(const std::string& doc) {
  try {
    parse_job(doc);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("document accepted: " << doc);
  return ErrorCode::kValidationError;
}

}  // namespace

TEST_CASE("paper job parses into a cohomology job") {
  JobSpec job = parse_job(kPaperJob);
  CHECK(job.mode == JobMode::kCohomology);
  REQUIRE(job.curve.has_value());
  CHECK(job.curve->f == QPoly({-1, -4, 0, 4}));
  REQUIRE(job.omega.has_value());
  Ring r = job_ring(job);
  CHECK(job_omega(job, r) == Form1{r.constant(1)});
}

TEST_CASE("gm job with an integer lambda") {
  JobSpec job = parse_job("[gm]\nlambda = 2\n");
  CHECK(job.mode == JobMode::kGm);
  Ring t = job_ring(job);
  CHECK(job_omega(job, t) == Form1{t.laurent_monomial(-2, 0)});
  CHECK(parse_job("[gm]\nlambda = -1/2\n").lambda == Rational(-1, 2));
}

TEST_CASE("non-smooth curve is a validation failure") {
  CHECK(code_of("[curve]\nf = x^3\n") == ErrorCode::kNonSmooth);
  CHECK(code_of("[curve]\nf = x^2 + 1\n") == ErrorCode::kValidationError);
  CHECK(code_of("[curve]\nf = x^3 + x^-1\n") == ErrorCode::kValidationError);
  CHECK(code_of("[curve]\nf = x^3 - x\n[twist]\nomega = x^-1 dx/y\n") == ErrorCode::kValidationError);
  CHECK(code_of("[gm]\nlambda = 1/0\n") == ErrorCode::kValidationError);
  CHECK(code_of("[curve]\nf = x^3 - x\n[gm]\nlambda = 1\n") == ErrorCode::kValidationError);
}

TEST_CASE("parse errors carry positions and expected tokens") {
  try {
    parse_job("[curve]\nf = 4*x^3 2*x\n");
    FAIL("implicit multiplication accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 11);
    CHECK(std::find(e.expected().begin(), e.expected().end(), "'*'") != e.expected().end());
  }
  try {
    parse_job("[curve]\nf = x^3 - x\n[twist]\nomega = x*y\n");
    FAIL("form without a basis accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 12);
    CHECK(std::find(e.expected().begin(), e.expected().end(), "'dx/y'") != e.expected().end());
  }
  try {
    parse_job("[curve]\nf = x^3 - z\n");
    FAIL("unknown variable accepted");
  } catch (const ParseError& e) {
    CHECK(e.column() == 11);
  }
  try {
    parse_job("[surface]\n");
    FAIL("unknown section accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 2);
  }
  try {
    parse_job("f = x^3\n");
    FAIL("key outside a section accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  CHECK(code_of("[curve]\ng = x\n") == ErrorCode::kParseError);
  CHECK(code_of("[curve]\nf x^3 - x\n") == ErrorCode::kParseError);
  CHECK(code_of("[curve]\nf = (x^3 - x\n") == ErrorCode::kParseError);
  CHECK(code_of("[curve]\nf = x^3 - x\ninvert = z\n") == ErrorCode::kParseError);
  CHECK(code_of("[gm]\nlambda = 2 dt/t\n") == ErrorCode::kParseError);
}

TEST_CASE("comments, blank lines and localisation") {
  JobSpec job = parse_job("# header\n\n[curve]\n  f = x^3 - x   # cubic\ninvert = y, x\n[twist]\nomega = x*y^-1 dx/y - 1/2 dx/y\n");
  CHECK(job.curve->invert_x);
  CHECK(job.curve->invert_y);
  Ring r = job_ring(job);
  CHECK(job_omega(job, r) == Form1{r.sub(r.monomial(1, 1, -1), r.constant(Rational(1, 2)))});
}

TEST_CASE("chart jobs") {
  JobSpec job = parse_job("[chart]\nn = 2\nl = 2\nform = (t1 + 5) dt1/t1 + t1 dt2/t2\n");
  CHECK(job.mode == JobMode::kResidue);
  auto res = residue(*job.chart_form);
  CHECK(render(res[0]) == "5");
  CHECK(render(res[1]) == "t1");
  JobSpec w = parse_job("[chart]\nn = 3\nl = 1\nform = dt1/t1&dt2 - t3 dt2&dt3\n");
  CHECK(w.chart_form->degree() == 2);
  // dt1 on a log coordinate is t1 * dt1/t1.
  JobSpec reg = parse_job("[chart]\nn = 1\nl = 1\nform = dt1\n");
  CHECK(is_pole_free(*reg.chart_form));
  CHECK(code_of("[chart]\nn = 2\nl = 1\nform = dt2/t2\n") == ErrorCode::kParseError);
  CHECK(code_of("[chart]\nn = 2\nl = 3\nform = dt1/t1\n") == ErrorCode::kValidationError);
  CHECK(code_of("[chart]\nn = 2\nl = 1\nform = dt1/t1 + dt1/t1&dt2\n") == ErrorCode::kValidationError);
}

TEST_CASE("hyper documents") {
  JobSpec job = parse_job(R"({"dims": [0, 0, 0, 0]})");
  CHECK(job.mode == JobMode::kHyper);
  CHECK(code_of(R"({"dims": [1, 0, 1, 0], "d1": [[1, 2]]})") == ErrorCode::kShapeMismatch);
}

TEST_CASE("render and parse round trip") {
  const std::vector<std::string> docs = {
      kPaperJob,
      "[curve]\nf = x^3 - x\ninvert = x, y\n[twist]\nomega = (x^2*y^-3 - 7/3*x^-1) dx/y\n[gauge]\ng = -2*x^2*y^-1\n[compute]\nmax_weight = 40\nspan = 4\n",
      "[gm]\nlambda = -3/7\n",
      "[twist]\nomega = (t^-2 + 3) dt/t\n[gauge]\ng = 5*t^3\n",
      "[curve]\nf = x^5 + 1\n",
      "[chart]\nn = 3\nl = 2\nform = (t1^2*t3 - 1/2) dt1/t1&dt2/t2 + t2 dt1/t1&dt3 + dt2&dt3\n",
      R"({"dims": [2, 1, 1, 1], "d1": [["1/2", -3]], "d1p": [[4]]})",
  };
  for (const auto& doc : docs) {
    JobSpec a = parse_job(doc);
    JobSpec b = parse_job(render_job(a));
    CHECK_MESSAGE(a == b, render_job(a));
    CHECK(render_job(b) == render_job(a));
  }
}

TEST_CASE("random jobs round trip") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    JobSpec job;
    const QPoly f = gen::squarefree(rng, 3 + trial % 3);
    job.curve = CurveSection{f, trial % 2 == 0, trial % 4 < 2};
    Ring r = job_ring(job);
    RingElement s = gen::curve_element(r, rng, 7);
    std::string doc = render_job(job) + "[twist]\nomega = " + r.render(Form1{s}) + "\n";
    JobSpec parsed = parse_job(doc);
    CHECK(job_omega(parsed, r) == Form1{s});
    CHECK(parse_job(render_job(parsed)) == parsed);
  }
}

TEST_CASE("reports") {
  JobSpec job = parse_job(kPaperJob);
  const std::string out = run_job(job);
  CHECK(out == run_job(parse_job(kPaperJob)));
  json j = json::parse(out);
  CHECK(j["h0"]["dim"] == 0);
  CHECK(j["h1"]["dim"] == 1);
  CHECK(j["mode"] == "cohomology");

  json gm = json::parse(run_job(parse_job("[gm]\nlambda = 1/2\n")));
  CHECK(gm["h0"]["dim"] == 0);
  CHECK(gm["h1"]["dim"] == 0);

  json hyper = json::parse(run_job(parse_job(R"({"dims": [1, 2, 3, 0]})")));
  CHECK(hyper["h1"] == 5);

  json res = json::parse(run_job(parse_job("[chart]\nn = 1\nl = 1\nform = (t1^2 + 4) dt1/t1\n")));
  CHECK(res["residues"][0] == "4");
  CHECK(res["pole_free"] == false);

  json gauge = json::parse(run_job(parse_job(
      "[curve]\nf = 4*x^3 - 4*x - 1\ninvert = x, y\n[twist]\nomega = (1) dx/y\n[gauge]\ng = x*y\n")));
  CHECK(gauge["chain_map"]["holds"] == true);
  CHECK(gauge["equal"] == true);

  job.options.output = OutputFormat::kText;
  CHECK(run_job(job).find("h1.dim: 1") != std::string::npos);
}

TEST_CASE("computation failures map to exit code 3") {
  CHECK(exit_code_for(ErrorCode::kNotStabilized) == 3);
  CHECK(exit_code_for(ErrorCode::kNotAUnit) == 3);
  CHECK(exit_code_for(ErrorCode::kNotClosed) == 3);
  CHECK(exit_code_for(ErrorCode::kDegenerationViolated) == 3);
  CHECK(exit_code_for(ErrorCode::kParseError) == 2);
  CHECK(exit_code_for(ErrorCode::kNonSmooth) == 2);
  JobSpec job = parse_job("[curve]\nf = x^3 - x\n[gauge]\ng = x + 1\n");
  try {
    run_job(job);
    FAIL("non-unit gauge accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotAUnit);
    json err = json::parse(error_report(e));
    CHECK(err["error"]["code"] == "NOT_A_UNIT");
  }
}
