#pragma once

// Job documents for the command-line front end.
//
//   [curve]    f = <polynomial in x>      invert = x, y
//   [twist]    omega = <form>             e.g. (x + 1) dx/y, -2 dt/t
//   [gm]       lambda = <rational>        torus with omega = -lambda dt/t
//   [gauge]    g = <ring expression>
//   [compute]  max_weight = <int>         span = <int>
//   [chart]    n = <int>  l = <int>  form = <log form>, e.g. (t1 + 5) dt1/t1&dt2
//
// Expressions use integers, p/q literals, the ring variables, + - * ^ and
// parentheses; products need an explicit '*'. A JSON document is a
// hypercohomology page.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twistcoh/curvering.hpp"
#include "twistcoh/error.hpp"
#include "twistcoh/hyperspec.hpp"
#include "twistcoh/logforms.hpp"

namespace twistcoh {

class ParseError : public Error {
 public:
  ParseError(int line, int column, std::vector<std::string> expected, const std::string& found);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

enum class JobMode { kCohomology, kGm, kGaugeCheck, kResidue, kHyper };
enum class OutputFormat { kJson, kText };

std::string_view job_mode_name(JobMode mode);

// Laurent polynomial over Q; exponent vectors are indexed by the variables
// of the parsing context (x, y, t for rings; t1..tn for charts).
struct Expr {
  std::map<std::vector<long>, Rational> terms;
  friend bool operator==(const Expr&, const Expr&) = default;
};

enum class FormBasis { kDxOverY, kDtOverT };

struct RingForm {
  FormBasis basis = FormBasis::kDxOverY;
  Expr coeff;
  friend bool operator==(const RingForm&, const RingForm&) = default;
};

struct CurveSection {
  QPoly f;
  bool invert_x = false;
  bool invert_y = false;
  friend bool operator==(const CurveSection&, const CurveSection&) = default;
};

struct JobOptions {
  int max_weight = 60;
  int span = 3;
  OutputFormat output = OutputFormat::kJson;
  // Hyper jobs: take the split route, which requires d1' = 0.
  bool assume_degeneration = false;
  friend bool operator==(const JobOptions&, const JobOptions&) = default;
};

struct JobSpec {
  JobMode mode = JobMode::kCohomology;
  std::optional<CurveSection> curve;
  std::optional<Rational> lambda;
  std::optional<RingForm> omega;
  std::optional<Expr> gauge;
  std::optional<Chart> chart;
  std::optional<LogForm> chart_form;
  std::optional<TwoTermPage> page;
  JobOptions options;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

// Throws ParseError for syntax errors and Error(kValidationError,
// kNonSmooth, ...) for well-formed but invalid jobs.
JobSpec parse_job(std::string_view document);
std::string render_job(const JobSpec& job);

// Builds the ring and twisting form a job describes.
Ring job_ring(const JobSpec& job);
Form1 job_omega(const JobSpec& job, const Ring& ring);

// Deterministic report; JSON with sorted keys or a flat text listing.
std::string run_job(const JobSpec& job);

// 0 success, 2 rejected input, 3 computation failure.
int exit_code_for(ErrorCode code);
std::string error_report(const Error& e);

}  // namespace twistcoh
