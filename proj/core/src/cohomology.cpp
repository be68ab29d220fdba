#include "twistcoh/cohomology.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>
#include <utility>

namespace twistcoh {

namespace {

struct BasisEntry {
  std::tuple<long, long, long, long> key;
  RingElement element;
};

std::vector<BasisEntry> window_basis(const Ring& ring, int n) {
  std::vector<BasisEntry> basis;
  if (ring.model() == RingModel::kTorus) {
    for (long k = -n; k <= n; ++k) {
      basis.push_back({{k < 0 ? -k : k, k, 0, 0}, ring.laurent_monomial(1, k)});
    }
  } else {
    const int px = ring.inverts_x() && !ring.absorbs_x_into_y() ? (n + 1) / 2 : 0;
    const int qy = ring.inverts_y() ? (n + 1) / 2 : 0;
    const long budget = n + 2L * px + 3L * qy;
    for (int e = 0; e <= 1; ++e) {
      for (int i = 0; 2L * i + 3L * e <= budget; ++i) {
        QPoly mono = QPoly::monomial(1, i);
        RingElement s = e == 0 ? ring.element(mono, QPoly(), px, qy)
                               : ring.element(QPoly(), mono, px, qy);
        const long pole = std::max(0, px - i) + std::max(0, qy - e);
        const long weight = 2L * i + 3L * e - 2L * px - 3L * qy;
        basis.push_back({{pole, weight, i, e}, std::move(s)});
      }
    }
  }
  std::sort(basis.begin(), basis.end(),
            [](const BasisEntry& l, const BasisEntry& r) { return l.key < r.key; });
  return basis;
}

// Sparse coordinates of ring elements against a shared monomial basis.
class CoordinateSpace {
 public:
  explicit CoordinateSpace(const Ring& ring) : ring_(ring) {}

  void reserve_denominator(const RingElement& s) {
    if (s.model() != RingModel::kCurve) return;
    px_ = std::max(px_, s.curve().x_exp);
    qy_ = std::max(qy_, s.curve().y_exp);
  }

  std::vector<std::pair<std::size_t, Rational>> coordinates(const RingElement& s) {
    std::vector<std::pair<std::size_t, Rational>> out;
    if (s.model() == RingModel::kTorus) {
      for (const auto& [k, c] : s.laurent().terms()) out.push_back({index({k, 0}), c});
      return out;
    }
    CurveElement n = ring_.numerator_over(s, px_, qy_);
    for (int i = 0; i <= n.a.degree(); ++i) {
      if (sgn(n.a.coeff(i)) != 0) out.push_back({index({i, 0}), n.a.coeff(i)});
    }
    for (int i = 0; i <= n.b.degree(); ++i) {
      if (sgn(n.b.coeff(i)) != 0) out.push_back({index({i, 1}), n.b.coeff(i)});
    }
    return out;
  }

  std::size_t size() const { return indices_.size(); }

 private:
  std::size_t index(std::pair<long, int> monomial) {
    auto [it, inserted] = indices_.try_emplace(monomial, indices_.size());
    return it->second;
  }

  const Ring& ring_;
  int px_ = 0;
  int qy_ = 0;
  std::map<std::pair<long, int>, std::size_t> indices_;
};

bool is_positive_integer(const Rational& q) {
  return q.get_den() == 1 && sgn(q) > 0;
}

int clamp_residue(const Rational& q, int cap) {
  if (!is_positive_integer(q) || q > cap) return 0;
  return static_cast<int>(q.get_num().get_si());
}

// Exact square root of a nonnegative rational, if it exists.
std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  Integer num = q.get_num();
  Integer den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

// Largest positive integer residue of omega at infinity (cubic f only,
// where the weight is the pole order at the single point at infinity).
int residue_at_infinity(const Ring& ring, const CurveElement& c, int cap) {
  if (ring.f().degree() != 3) return 0;
  const long w_a = c.a.is_zero() ? std::numeric_limits<long>::min() : 2L * c.a.degree();
  const long w_b = c.b.is_zero() ? std::numeric_limits<long>::min() : 2L * c.b.degree() + 3;
  const long top = std::max(w_a, w_b);
  if (top - 2L * c.x_exp - 3L * c.y_exp != 1) return 0;
  // With u = x/y at infinity: x ~ u^-2 / A, y ~ u^-3 / A, dx/y ~ -2 du.
  const int i = w_a > w_b ? c.a.degree() : c.b.degree();
  const int e = w_a > w_b ? 0 : 1;
  const Rational lead = e == 0 ? c.a.leading() : c.b.leading();
  const Rational big_a = ring.f().leading();
  const int exponent = c.x_exp + c.y_exp - i - e;
  Rational scale = 1;
  for (int k = 0; k < std::abs(exponent); ++k) scale *= big_a;
  if (exponent < 0) scale = Rational(1) / scale;
  return clamp_residue(Rational(-2 * lead * scale), cap);
}

// Largest positive integer residue at the zeros of y (the roots of f).
int residue_at_branch_points(const Ring& ring, const CurveElement& c, int cap) {
  if (!ring.inverts_y()) return 0;
  const QPoly* h = nullptr;
  if (c.y_exp == 1) h = &c.a;
  if (c.y_exp == 2) h = &c.b;
  if (h == nullptr || h->is_zero()) return 0;
  // residue(e) = 2 h(e) / (e^p f'(e)); test residue = k via a common root.
  const QPoly fp_xp = ring.f().derivative().shifted(c.x_exp);
  int best = 0;
  for (int k = 1; k <= cap; ++k) {
    QPoly probe = *h * Rational(2) - fp_xp * Rational(k);
    if (gcd(ring.f(), probe).degree() > 0) best = k;
  }
  return best;
}

// Largest positive integer residue at the points over x = 0.
int residue_over_x_zero(const Ring& ring, const CurveElement& c, int cap) {
  if (!ring.inverts_x() || ring.absorbs_x_into_y() || c.x_exp != 1) return 0;
  const Rational f0 = ring.f().coeff(0);
  if (sgn(f0) == 0) {
    // Point (0, 0), local parameter y: residue 2 b(0).
    return clamp_residue(Rational(2 * c.b.coeff(0)), cap);
  }
  // Points (0, ±y0) with y0^2 = f(0): residue (a(0) + b(0) y0) / y0^(q + 1)
  // written as u + v y0.
  const int m = c.y_exp + 1;
  Rational s = 0, t = 0;  // y0^-m = s + t y0
  Rational f0_pow = 1;
  for (int k = 0; k < (m + 1) / 2; ++k) f0_pow *= f0;
  if (m % 2 == 0) {
    s = Rational(1) / f0_pow;
  } else {
    t = Rational(1) / f0_pow;
  }
  const Rational a0 = c.a.coeff(0);
  const Rational b0 = c.b.coeff(0);
  const Rational u = a0 * s + b0 * t * f0;
  const Rational v = a0 * t + b0 * s;
  int best = 0;
  if (sgn(v) == 0) {
    best = clamp_residue(u, cap);
  } else if (auto root = rational_sqrt(f0)) {
    best = std::max(clamp_residue(Rational(u + v * *root), cap),
                    clamp_residue(Rational(u - v * *root), cap));
  }
  return best;
}

int torus_resonance(const LaurentPoly& c, int cap) {
  if (c.is_zero()) return 0;
  const Rational c0 = c.coeff(0);
  int best = 0;
  // Regular at infinity: d_omega t^k = (k + c0) t^k + lower terms.
  if (c.max_exponent() <= 0) best = std::max(best, clamp_residue(Rational(-c0), cap));
  // Regular at zero: resonance at t^-c0.
  if (c.min_exponent() >= 0) best = std::max(best, clamp_residue(c0, cap));
  return best;
}

}  // namespace

int operator_weight_gain(const Ring& ring, const Form1& omega) {
  WeightedDegree w = ring.weighted_degree(omega.coeff);
  if (w.is_neg_infinity()) return 1;
  return static_cast<int>(std::max<long>(1, w.value));
}

int resonance_window(const Ring& ring, const Form1& omega, int cap) {
  if (omega.is_zero()) return 0;
  if (ring.model() == RingModel::kTorus) {
    const int r = torus_resonance(omega.coeff.laurent(), cap);
    return r == 0 ? 0 : r + 1;
  }
  const CurveElement& c = omega.coeff.curve();
  const int at_infinity = residue_at_infinity(ring, c, cap);
  const int finite = std::max(residue_at_branch_points(ring, c, cap),
                              residue_over_x_zero(ring, c, cap));
  int need = 0;
  if (at_infinity > 0) need = std::max(need, at_infinity + 1);
  // Finite pole orders are bounded by ceil(n/2).
  if (finite > 0) need = std::max(need, 2 * finite + 1);
  return need;
}

WindowResult evaluate_window(const Ring& ring, const Form1& omega, int n) {
  const std::vector<BasisEntry> basis = window_basis(ring, n);
  std::vector<RingElement> images;
  images.reserve(basis.size());
  CoordinateSpace space(ring);
  for (const auto& entry : basis) {
    images.push_back(ring.twisted_d(omega, entry.element).coeff);
    space.reserve_denominator(images.back());
    space.reserve_denominator(entry.element);
  }

  const std::size_t dim = basis.size();
  std::vector<std::vector<std::pair<std::size_t, Rational>>> columns;
  columns.reserve(2 * dim);
  for (const auto& img : images) columns.push_back(space.coordinates(img));
  for (const auto& entry : basis) columns.push_back(space.coordinates(entry.element));

  QMatrix m(space.size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [r, q] : columns[c]) m.at(r, c) = q;

  const EchelonForm ech = reduced_echelon(m);

  WindowResult out;
  out.dims.n = n;
  for (const auto& v : kernel_from_echelon(ech, dim)) {
    RingElement s = ring.zero();
    for (std::size_t j = 0; j < dim; ++j) {
      if (sgn(v[j]) != 0) s = ring.add(s, ring.scale(basis[j].element, v[j]));
    }
    out.h0_basis.push_back(std::move(s));
  }
  for (auto p : ech.pivots) {
    if (p >= dim) out.h1_basis.push_back(Form1{basis[p - dim].element});
  }
  out.dims.h0 = out.h0_basis.size();
  out.dims.h1 = out.h1_basis.size();
  return out;
}

CohomologyReport twisted_cohomology(const Ring& ring, const Form1& omega,
                                    const TruncationWindow& window) {
  if (!ring.owns(omega)) {
    throw Error(ErrorCode::kIncompatibleRing, "twisting form does not live on " + ring.describe());
  }
  const int delta = window.delta >= 0 ? window.delta : operator_weight_gain(ring, omega);
  if (window.stabilization_span < 2) {
    throw Error(ErrorCode::kValidationError, "stabilization span must be at least 2");
  }
  if (window.n_max < delta) {
    throw Error(ErrorCode::kValidationError,
                "max weight " + std::to_string(window.n_max) +
                    " is below the operator weight gain " + std::to_string(delta));
  }
  const int start = window.n_start >= 0
                        ? window.n_start
                        : std::max({2, delta + 1, resonance_window(ring, omega, window.n_max)});

  CohomologyReport report;
  report.delta = delta;
  report.n_start = start;
  const auto span = static_cast<std::size_t>(window.stabilization_span);
  for (int n = start; n <= window.n_max; ++n) {
    WindowResult w = evaluate_window(ring, omega, n);
    report.windows.push_back(w.dims);
    const auto& trail = report.windows;
    if (trail.size() < span) continue;
    bool stable = true;
    for (std::size_t k = trail.size() - span; k + 1 < trail.size(); ++k) {
      if (trail[k].h0 != trail.back().h0 || trail[k].h1 != trail.back().h1) stable = false;
    }
    if (!stable) continue;
    report.h0_dim = w.dims.h0;
    report.h1_dim = w.dims.h1;
    report.h0_basis = std::move(w.h0_basis);
    report.h1_basis = std::move(w.h1_basis);
    report.stabilized_at = n;
    return report;
  }
  std::ostringstream msg;
  msg << "dimensions did not stabilize over " << span << " consecutive windows in ["
      << start << ", " << window.n_max << "]";
  throw NotStabilizedError(msg.str(), report.windows);
}

Form1 gauge_transform(const Ring& ring, const RingElement& g, const Form1& eta) {
  return ring.mul(ring.inverse(g), eta);
}

RingElement gauge_transform(const Ring& ring, const RingElement& g, const RingElement& s) {
  return ring.mul(ring.inverse(g), s);
}

ChainMapVerdict verify_chain_map(const Ring& ring, const Form1& psi1, const RingElement& g,
                                 std::span<const RingElement> samples) {
  const RingElement g_inv = ring.inverse(g);
  const Form1 psi2 = ring.add(psi1, ring.dlog(g));
  for (const auto& s : samples) {
    Form1 lhs = ring.twisted_d(psi2, ring.mul(g_inv, s));
    Form1 rhs = ring.mul(g_inv, ring.twisted_d(psi1, s));
    if (!(lhs == rhs)) return {false, s};
  }
  return {};
}

GaugeComparison gauge_invariance_check(const Ring& ring, const Form1& psi1,
                                       const RingElement& g,
                                       const TruncationWindow& window) {
  GaugeComparison out;
  out.psi2 = ring.add(psi1, ring.dlog(g));
  out.first = twisted_cohomology(ring, psi1, window);
  out.second = twisted_cohomology(ring, out.psi2, window);
  out.equal = out.first.h0_dim == out.second.h0_dim && out.first.h1_dim == out.second.h1_dim;
  return out;
}

}  // namespace twistcoh
