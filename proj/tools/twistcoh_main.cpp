#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "twistcoh/job.hpp"

namespace {

using twistcoh::Error;
using twistcoh::ErrorCode;
using twistcoh::JobMode;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kValidationError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Overrides {
  std::optional<int> max_weight;
  std::optional<int> span;
  std::string output = "json";
  bool assume_degeneration = false;
};

void add_output_flag(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--output", o.output, "Report format")->check(CLI::IsMember({"json", "text"}));
}

void add_window_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--max-weight", o.max_weight, "Largest truncation window")->check(CLI::PositiveNumber);
  cmd->add_option("--span", o.span, "Consecutive equal windows required")->check(CLI::Range(2, 1000));
}

int run(const std::string& document, std::initializer_list<JobMode> accepted, const Overrides& o) {
  twistcoh::JobSpec job = twistcoh::parse_job(document);
  if (std::find(accepted.begin(), accepted.end(), job.mode) == accepted.end()) {
    throw Error(ErrorCode::kValidationError,
                "input describes a " + std::string(twistcoh::job_mode_name(job.mode)) + " job");
  }
  if (o.max_weight) job.options.max_weight = *o.max_weight;
  if (o.span) job.options.span = *o.span;
  job.options.output = o.output == "text" ? twistcoh::OutputFormat::kText : twistcoh::OutputFormat::kJson;
  job.options.assume_degeneration = o.assume_degeneration;
  std::cout << twistcoh::run_job(job);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted de Rham cohomology of hyperelliptic curves and the torus"};
  app.require_subcommand(1);

  Overrides o;
  std::string path;
  std::string lambda;

  auto* cohomology = app.add_subcommand("cohomology", "Twisted cohomology of a curve or torus job");
  cohomology->add_option("file", path, "Job document")->required();
  add_window_flags(cohomology, o);
  add_output_flag(cohomology, o);

  auto* gm = app.add_subcommand("gm", "Torus with omega = -lambda dt/t");
  gm->add_option("--lambda", lambda, "Rational p/q")->required();
  add_window_flags(gm, o);
  add_output_flag(gm, o);

  auto* gauge = app.add_subcommand("gauge-check", "Chain map and invariance check for psi + dg/g");
  gauge->add_option("file", path, "Job document with a [gauge] section")->required();
  add_window_flags(gauge, o);
  add_output_flag(gauge, o);

  auto* residue = app.add_subcommand("residue", "Residues of a log form on a chart");
  residue->add_option("file", path, "Chart document")->required();
  add_output_flag(residue, o);

  auto* hyper = app.add_subcommand("hyper", "Hypercohomology from an E1 page");
  hyper->add_option("file", path, "Page JSON")->required();
  hyper->add_flag("--assume-degeneration", o.assume_degeneration, "Require d1' = 0 and use the split route");
  add_output_flag(hyper, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gm->parsed()) return run("[gm]\nlambda = " + lambda + "\n", {JobMode::kGm}, o);
    const std::string doc = read_file(path);
    if (cohomology->parsed()) return run(doc, {JobMode::kCohomology, JobMode::kGm}, o);
    if (gauge->parsed()) return run(doc, {JobMode::kGaugeCheck}, o);
    if (residue->parsed()) return run(doc, {JobMode::kResidue}, o);
    return run(doc, {JobMode::kHyper}, o);
  } catch (const Error& e) {
    std::cerr << twistcoh::error_report(e);
    return twistcoh::exit_code_for(e.code());
  }
}
