#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "twistcoh/cohomology.hpp"
#include "twistcoh/hyperspec.hpp"
#include "twistcoh/job.hpp"
#include "twistcoh/logforms.hpp"

using namespace twistcoh;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  return os.str();
}

const QPoly kPaperF({-1, -4, 0, 4});

Verdict criterion1() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  Ring r = Ring::curve({kPaperF});
  CohomologyReport rep = twisted_cohomology(r, Form1{r.constant(1)});
  const double took = seconds_since(t0);
  v.require(rep.h0_dim == 0, "h0 = " + std::to_string(rep.h0_dim));
  v.require(rep.h1_dim == 1, "h1 = " + std::to_string(rep.h1_dim));
  v.require(rep.stabilized_at <= 60, "stabilised at " + std::to_string(rep.stabilized_at));
  std::string reps;
  for (const auto& b : rep.h1_basis) reps += (reps.empty() ? "" : ", ") + r.render(b);
  v.require(rep.h1_basis.size() == 1 && rep.h1_basis[0] == Form1{r.constant(1)},
            "representative is " + reps + ", not dx/y; dx/y = d_omega(1) is exact");
  v.require(took <= 5.0, "took " + fmt_seconds(took));
  if (v.pass) v.detail = "h0 = 0, h1 = 1 [dx/y] at n = " + std::to_string(rep.stabilized_at);
  return v;
}

Verdict criterion2() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  Ring r = Ring::curve({kPaperF});
  CohomologyReport rep = twisted_cohomology(r, Form1{r.zero()});
  const double took = seconds_since(t0);
  v.require(rep.h0_dim == 1 && rep.h1_dim == 2,
            "dims (" + std::to_string(rep.h0_dim) + ", " + std::to_string(rep.h1_dim) + ")");
  v.require(rep.h1_basis.size() == 2 && rep.h1_basis[0] == Form1{r.constant(1)} &&
                rep.h1_basis[1] == Form1{r.x()},
            "representatives differ from {dx/y, x dx/y}");
  v.require(took <= 5.0, "took " + fmt_seconds(took));
  if (v.pass) v.detail = "h0 = 1, h1 = 2 {dx/y, x dx/y} in " + fmt_seconds(took);
  return v;
}

Verdict criterion3() {
  Verdict v;
  Ring t = Ring::torus();
  double worst = 0;
  for (const Rational& lambda :
       {Rational(-3), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(2), Rational(7)}) {
    const auto t0 = std::chrono::steady_clock::now();
    CohomologyReport rep = twisted_cohomology(t, Form1{t.laurent_monomial(-lambda, 0)});
    const double took = seconds_since(t0);
    worst = std::max(worst, took);
    const auto expected = oracle::torus_diagonal(lambda);
    const std::size_t want = lambda.get_den() == 1 ? 1 : 0;
    v.require(expected.first == want && expected.second == want, "oracle disagrees with the family rule");
    v.require(rep.h0_dim == expected.first && rep.h1_dim == expected.second,
              "lambda = " + to_string(lambda) + " gives (" + std::to_string(rep.h0_dim) + ", " +
                  std::to_string(rep.h1_dim) + ")");
    v.require(took <= 1.0, "lambda = " + to_string(lambda) + " took " + fmt_seconds(took));
  }
  if (v.pass) v.detail = "6 values of lambda, slowest " + fmt_seconds(worst);
  return v;
}

std::vector<Ring> chain_map_rings() {
  std::mt19937 rng(404);
  std::vector<Ring> rings{Ring::torus()};
  for (int k = 0; k < 6; ++k) {
    const QPoly f = k == 0 ? kPaperF : gen::squarefree(rng, 3 + k % 3);
    rings.push_back(Ring::curve({f, true, true}));
    rings.push_back(Ring::curve({f, k % 2 == 0, k % 2 == 1}));
  }
  return rings;
}

std::vector<RingElement> weight_bounded_samples(const Ring& r, std::mt19937& rng, int count) {
  std::vector<RingElement> out;
  while (static_cast<int>(out.size()) < count) {
    RingElement s = gen::element(r, rng, 12);
    if (r.model() == RingModel::kCurve && r.weighted_degree(s).value > 12) continue;
    out.push_back(s);
  }
  return out;
}

Verdict criterion4() {
  Verdict v;
  std::mt19937 rng(4);
  const auto rings = chain_map_rings();
  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Ring& r = rings[trial % rings.size()];
    const RingElement g = gen::unit(r, rng);
    const Form1 psi1{gen::element(r, rng, 6)};
    const auto samples = weight_bounded_samples(r, rng, 4);
    if (!verify_chain_map(r, psi1, g, samples).holds) ++failures;
  }
  v.require(failures == 0, std::to_string(failures) + " of 200 triples violate the chain map identity");
  if (v.pass) v.detail = "200 triples, 0 failures";
  return v;
}

Verdict criterion5() {
  Verdict v;
  std::mt19937 rng(5);
  std::vector<Ring> rings{Ring::torus()};
  for (int k = 0; k < 4; ++k) {
    const QPoly f = k == 0 ? kPaperF : gen::squarefree(rng, 3);
    rings.push_back(Ring::curve({f, true, true}));
    rings.push_back(Ring::curve({f, true, false}));
    rings.push_back(Ring::curve({f, false, true}));
  }
  int mismatches = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const Ring& r = rings[trial % rings.size()];
    const Form1 psi1{gen::element(r, rng, 4)};
    GaugeComparison cmp = gauge_invariance_check(r, psi1, gen::unit(r, rng));
    if (!cmp.equal) ++mismatches;
  }
  v.require(mismatches == 0, std::to_string(mismatches) + " of 25 instances changed (h0, h1)");
  if (v.pass) v.detail = "25 instances on localised rings agree";
  return v;
}

Verdict criterion6() {
  Verdict v;
  std::mt19937 rng(6);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Chart ch = Chart::make(1 + trial % 3, 1 + (trial / 3) % (1 + trial % 3));
    LogForm a = gen::log_form(rng, ch, 1);
    if (trial % 2 == 0) {
      // Push half of the samples into the regular subsheaf.
      LogForm reg(ch, 1);
      for (const auto& [s, f] : a.terms()) {
        reg += LogForm::basis(ch, s, s[0] <= ch.l ? f.times_variable(s[0]) : f);
      }
      a = reg;
    }
    const auto res = residue(a);
    const bool zero = std::all_of(res.begin(), res.end(), [](const MPoly& p) { return p.is_zero(); });
    if (is_pole_free(a) != zero) ++mismatches;
  }
  v.require(mismatches == 0, std::to_string(mismatches) + " of 200 forms break pole-free <=> zero residues");
  const Chart one = Chart::make(1, 1);
  int wrong = 0;
  for (int trial = 0; trial < 50; ++trial) {
    MPoly f = gen::mpoly(rng, 1, 5, 4);
    const Rational f0 = f.coeff({0});
    if (!(residue(LogForm::basis(one, {1}, f))[0] == MPoly::constant(1, f0))) ++wrong;
  }
  v.require(wrong == 0, std::to_string(wrong) + " of 50 residues differ from f(0)");
  if (v.pass) v.detail = "200 exactness checks and 50 f(0) residues hold";
  return v;
}

Verdict criterion7() {
  Verdict v;
  std::mt19937 rng(7);
  int nonzero = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const Chart ch = Chart::make(n, 1 + trial % n);
    const LogForm w = gen::closed_log_form(rng, ch);
    std::uniform_int_distribution<int> deg(0, n);
    const LogForm a = gen::log_form(rng, ch, deg(rng));
    if (!twisted_d_log(w, twisted_d_log(w, a)).is_zero()) ++nonzero;
  }
  v.require(nonzero == 0, std::to_string(nonzero) + " of 100 closed twists give d_omega^2 != 0");
  int accepted = 0;
  int generated = 0;
  while (generated < 20) {
    const int n = 2 + generated % 3;
    const Chart ch = Chart::make(n, 1 + generated % (n - 1));
    LogForm w = gen::log_form(rng, ch, 1);
    if (d_log(w).is_zero()) continue;
    ++generated;
    try {
      twisted_d_log(w, LogForm::function(ch, MPoly::constant(n, 1)));
      ++accepted;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotClosed) ++accepted;
    }
  }
  v.require(accepted == 0, std::to_string(accepted) + " of 20 non-closed twists were not rejected");
  if (v.pass) v.detail = "100 closed twists nilpotent, 20 non-closed rejected with NOT_CLOSED";
  return v;
}

Verdict criterion8() {
  Verdict v;
  std::mt19937 rng(8);
  const auto t0 = std::chrono::steady_clock::now();
  int bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const TwoTermPage p = gen::page(rng, 6, trial % 3 == 0);
    const std::size_t h1 = hyper1_total(p);
    if (h1 != cokernel_basis(p.d1).dimension + kernel_basis(p.d1p).size()) ++bad;
    const long euler = static_cast<long>(hyper0(p)) - static_cast<long>(h1) + static_cast<long>(hyper2(p));
    if (euler != static_cast<long>(p.dim00) - static_cast<long>(p.dim10) -
                     static_cast<long>(p.dim01) + static_cast<long>(p.dim11)) {
      ++bad;
    }
    if (p.d1p.is_zero() && hyper1_split(p) != h1) ++bad;
  }
  const double took = seconds_since(t0);
  v.require(bad == 0, std::to_string(bad) + " identity violations on 500 pages");
  v.require(took <= 2.0, "took " + fmt_seconds(took));
  if (v.pass) v.detail = "500 pages in " + fmt_seconds(took);
  return v;
}

Verdict criterion9() {
  Verdict v;
  for (std::size_t n : {2, 3, 5}) {
    // h^0(O) = 1, h^1(O) = g = 1, h^0(Omega^1(log D)) = g + n - 1, h^1(Omega^1(log D)) = 0.
    QVector omega(log_differentials_dim(1, n), 0);
    omega[n - 1] = 1;
    const TwoTermPage p = elliptic_log_page(n, omega);
    v.require(p.dim00 == 1 && p.dim01 == 1 && p.dim10 == n && p.dim11 == 0, "page dims are wrong");
    v.require(kernel_basis(p.d1).empty(), "d1 is not injective");
    v.require(hyper0(p) == 0, "H^0 != 0 for n = " + std::to_string(n));
    v.require(hyper1_split(p) == n && hyper1_total(p) == n, "H^1 != n for n = " + std::to_string(n));
  }
  if (v.pass) v.detail = "H^0 = 0 and H^1 = n for n = 2, 3, 5";
  return v;
}

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  Run r;
  const std::string cmd = std::string("\"") + TWISTCOH_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = std::string(TWISTCOH_SCRATCH_DIR) + "/" + name;
  std::ofstream(path, std::ios::binary) << body;
  return path;
}

Verdict criterion10() {
  Verdict v;
  const std::string job = write_temp("criterion1.job", "[curve]\nf = 4*x^3 - 4*x - 1\n[twist]\nomega = (1) dx/y\n");
  const Run a = run_cli("cohomology " + job);
  const Run b = run_cli("cohomology " + job);
  v.require(a.status == 0 && b.status == 0, "cohomology run exited with " + std::to_string(a.status));
  v.require(a.out == b.out && !a.out.empty(), "two runs differ");
  try {
    const auto parsed = nlohmann::json::parse(a.out);
    v.require(parsed.contains("h1"), "report lacks h1");
  } catch (const std::exception&) {
    v.require(false, "output is not JSON");
  }
  const std::vector<std::string> malformed = {
      "[curve]\nf = 4*x^3 2*x\n",
      "[curve]\nf = 4*x^3 - (x\n",
      "[curve]\nf = x^3 - x\n[twist]\nomega = x\n",
      "[nonsense]\n",
  };
  int k = 0;
  for (const auto& doc : malformed) {
    const Run r = run_cli("cohomology " + write_temp("malformed" + std::to_string(k++) + ".job", doc));
    bool positioned = false;
    try {
      const auto j = nlohmann::json::parse(r.out);
      positioned = j["error"]["code"] == "PARSE_ERROR" && j["error"].contains("line") &&
                   j["error"].contains("column") && j["error"].contains("expected");
    } catch (const std::exception&) {
    }
    v.require(r.status == 2, "malformed input exited with " + std::to_string(r.status));
    v.require(positioned, "malformed input did not report a positioned PARSE_ERROR");
  }
  if (v.pass) v.detail = "byte-identical reports; 4 malformed inputs exit 2 with line/column";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"twisted elliptic regression", criterion1},  {"untwisted elliptic regression", criterion2},
      {"torus diagonal family", criterion3},        {"gauge chain map suite", criterion4},
      {"gauge invariance of dimensions", criterion5}, {"residue exactness", criterion6},
      {"nilpotency gate", criterion7},              {"hyperspec identities", criterion8},
      {"elliptic log page", criterion9},            {"cli determinism and parse errors", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("threw: ") + e.what();
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first
              << "): " << v.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
