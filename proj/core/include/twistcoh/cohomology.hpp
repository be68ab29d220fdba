#pragma once

// Twisted cohomology H^0_omega, H^1_omega of the two-term complex
// A --d_omega--> Omega^1 computed on finite weight windows, plus the gauge
// chain map eta -> g^-1 eta relating omega and omega + dg/g.
//
// Window n (curves): with P = ceil(n/2) when x is inverted (else 0) and
// Q = ceil(n/2) when y is inverted (else 0), the domain V_n is spanned by
// x^i y^e / (x^P y^Q) with 2i + 3e <= n + 2P + 3Q, and the certified level
// L_n of the codomain is V_n * dx/y. For the torus, V_n is spanned by t^k
// with |k| <= n. H^0 is read off as ker(d_omega | V_n), H^1 as
// L_n / (L_n ∩ d_omega(V_n)).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twistcoh/curvering.hpp"
#include "twistcoh/error.hpp"

namespace twistcoh {

struct TruncationWindow {
  int n_max = 60;
  // Operator weight gain; negative means "derive from omega".
  int delta = -1;
  int stabilization_span = 3;
  // First window to evaluate; negative means "derive from the resonance
  // analysis of omega".
  int n_start = -1;
};

struct WindowDims {
  int n = 0;
  std::size_t h0 = 0;
  std::size_t h1 = 0;

  friend bool operator==(const WindowDims&, const WindowDims&) = default;
};

struct CohomologyReport {
  std::size_t h0_dim = 0;
  std::size_t h1_dim = 0;
  std::vector<RingElement> h0_basis;
  std::vector<Form1> h1_basis;
  int stabilized_at = 0;
  int delta = 0;
  int n_start = 0;
  std::vector<WindowDims> windows;
};

class NotStabilizedError : public Error {
 public:
  NotStabilizedError(const std::string& message, std::vector<WindowDims> trail)
      : Error(ErrorCode::kNotStabilized, message), trail_(std::move(trail)) {}
  const std::vector<WindowDims>& trail() const { return trail_; }

 private:
  std::vector<WindowDims> trail_;
};

// max(1, weighted degree of omega's coefficient).
int operator_weight_gain(const Ring& ring, const Form1& omega);

// Smallest window size n for which every positive integer residue of omega
// (the pole orders at which d_omega fails to raise the pole order) fits in
// V_n. Residues larger than `cap` are ignored.
int resonance_window(const Ring& ring, const Form1& omega, int cap);

// Dimensions and representatives for one window. Exposed for tests and
// the audit trail; twisted_cohomology() drives it.
struct WindowResult {
  WindowDims dims;
  std::vector<RingElement> h0_basis;
  std::vector<Form1> h1_basis;
};
WindowResult evaluate_window(const Ring& ring, const Form1& omega, int n);

CohomologyReport twisted_cohomology(const Ring& ring, const Form1& omega,
                                    const TruncationWindow& window = {});

// T(eta) = g^-1 * eta; throws Error(kNotAUnit).
Form1 gauge_transform(const Ring& ring, const RingElement& g, const Form1& eta);
RingElement gauge_transform(const Ring& ring, const RingElement& g, const RingElement& s);

struct ChainMapVerdict {
  bool holds = true;
  std::optional<RingElement> counterexample;
};

// Checks d_{psi1 + dg/g}(T s) = T(d_{psi1} s) exactly for every sample.
ChainMapVerdict verify_chain_map(const Ring& ring, const Form1& psi1, const RingElement& g,
                                 std::span<const RingElement> samples);

struct GaugeComparison {
  Form1 psi2;
  CohomologyReport first;
  CohomologyReport second;
  bool equal = false;
};

GaugeComparison gauge_invariance_check(const Ring& ring, const Form1& psi1,
                                       const RingElement& g,
                                       const TruncationWindow& window = {});

}  // namespace twistcoh
