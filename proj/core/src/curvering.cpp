#include "twistcoh/curvering.hpp"

#include <algorithm>
#include <sstream>
#include <utility>
#include <vector>

#include "twistcoh/error.hpp"

namespace twistcoh {

namespace {

// (a + b y) * y = b f + a y
void times_y(CurveElement& n, const QPoly& f) {
  QPoly new_a = n.b * f;
  n.b = std::move(n.a);
  n.a = std::move(new_a);
}

void times_y_power(CurveElement& n, const QPoly& f, int k) {
  if (k <= 0) return;
  if (k >= 2) {
    QPoly fk = pow(f, k / 2);
    n.a = n.a * fk;
    n.b = n.b * fk;
  }
  if (k % 2 == 1) times_y(n, f);
}

struct Term {
  Rational coeff;
  std::string monomial;  // empty for the constant monomial
};

std::string render_sum(const std::vector<Term>& terms) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& term : terms) {
    Rational c = term.coeff;
    const bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (term.monomial.empty()) {
      os << to_string(c);
    } else {
      if (c != 1) os << to_string(c) << "*";
      os << term.monomial;
    }
  }
  return os.str();
}

std::string power_string(const std::string& var, long e) {
  if (e == 1) return var;
  return var + "^" + std::to_string(e);
}

// Appends a product of factors to a rendered expression without introducing
// implicit multiplication.
std::string attach_factors(const std::vector<Term>& terms, const std::string& factors) {
  if (factors.empty()) return render_sum(terms);
  if (terms.size() == 1) {
    const Term& t = terms.front();
    const Rational& c = t.coeff;
    std::string prefix;
    if (c == -1) {
      prefix = "-";
    } else if (c != 1) {
      prefix = to_string(c) + "*";
    }
    std::string body = t.monomial.empty() ? factors : t.monomial + "*" + factors;
    return prefix + body;
  }
  return "(" + render_sum(terms) + ")*" + factors;
}

bool is_simple_product(const std::string& s) {
  // Single signed product: no top-level + or - after the first character.
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && i > 0 && (ch == '+' || (ch == '-' && s[i - 1] != '^'))) return false;
  }
  return true;
}

}  // namespace

bool RingElement::is_zero() const {
  if (model() == RingModel::kCurve) {
    const auto& e = curve();
    return e.a.is_zero() && e.b.is_zero();
  }
  return laurent().is_zero();
}

Ring Ring::curve(CurveSpec spec) {
  if (spec.f.degree() < 3) {
    throw Error(ErrorCode::kValidationError,
                "hyperelliptic curve needs deg f >= 3, got " + twistcoh::render(spec.f));
  }
  QPoly g = gcd(spec.f, spec.f.derivative());
  if (g.degree() > 0) {
    throw Error(ErrorCode::kNonSmooth,
                "f = " + twistcoh::render(spec.f) + " is not squarefree: gcd(f, f') = " + twistcoh::render(g));
  }
  Ring r;
  r.model_ = RingModel::kCurve;
  r.f_ = std::move(spec.f);
  r.invert_x_ = spec.invert_x;
  r.invert_y_ = spec.invert_y;
  r.absorb_x_ = spec.invert_x && spec.invert_y && sgn(r.f_.coeff(0)) == 0;
  return r;
}

Ring Ring::torus() {
  Ring r;
  r.model_ = RingModel::kTorus;
  return r;
}

std::string Ring::describe() const {
  if (model_ == RingModel::kTorus) return "k[t,t^-1]";
  std::string s = "k[x,y]/(y^2 - (" + twistcoh::render(f_) + "))";
  if (invert_x_ && invert_y_) return s + "[1/(x*y)]";
  if (invert_x_) return s + "[1/x]";
  if (invert_y_) return s + "[1/y]";
  return s;
}

RingElement Ring::zero() const {
  if (model_ == RingModel::kTorus) return RingElement(LaurentPoly());
  return RingElement(CurveElement{});
}

RingElement Ring::constant(const Rational& c) const {
  if (model_ == RingModel::kTorus) return RingElement(LaurentPoly(c));
  return RingElement(CurveElement{QPoly(c), QPoly(), 0, 0});
}

RingElement Ring::x() const { return monomial(1, 1, 0); }
RingElement Ring::y() const { return monomial(1, 0, 1); }
RingElement Ring::t() const { return laurent_monomial(1, 1); }

RingElement Ring::monomial(const Rational& c, int i, int j) const {
  if (model_ != RingModel::kCurve) {
    throw Error(ErrorCode::kIncompatibleRing, "x/y monomial requested in the torus ring");
  }
  int xe = i < 0 ? -i : 0;
  int ye = j < 0 ? -j : 0;
  CurveElement e;
  e.a = QPoly::monomial(c, i < 0 ? 0 : i);
  e.x_exp = xe;
  e.y_exp = ye;
  if (j > 0) times_y_power(e, f_, j);
  return RingElement(canonicalize(std::move(e)));
}

RingElement Ring::laurent_monomial(const Rational& c, long k) const {
  if (model_ != RingModel::kTorus) {
    throw Error(ErrorCode::kIncompatibleRing, "t monomial requested in a curve ring");
  }
  return RingElement(LaurentPoly::monomial(c, k));
}

RingElement Ring::element(QPoly a, QPoly b, int x_exp, int y_exp) const {
  if (model_ != RingModel::kCurve) {
    throw Error(ErrorCode::kIncompatibleRing, "curve element requested in the torus ring");
  }
  return RingElement(canonicalize(CurveElement{std::move(a), std::move(b), x_exp, y_exp}));
}

RingElement Ring::laurent(LaurentPoly p) const {
  if (model_ != RingModel::kTorus) {
    throw Error(ErrorCode::kIncompatibleRing, "Laurent element requested in a curve ring");
  }
  return RingElement(std::move(p));
}

bool Ring::owns(const RingElement& s) const {
  if (s.model() != model_) return false;
  if (model_ == RingModel::kTorus) return true;
  const auto& e = s.curve();
  return (e.x_exp == 0 || invert_x_) && (e.y_exp == 0 || invert_y_);
}

void Ring::require_owned(const RingElement& s) const {
  if (!owns(s)) {
    throw Error(ErrorCode::kIncompatibleRing, "element does not belong to " + describe());
  }
}

CurveElement Ring::canonicalize(CurveElement e) const {
  if (e.x_exp < 0) {
    e.a = e.a.shifted(-e.x_exp);
    e.b = e.b.shifted(-e.x_exp);
    e.x_exp = 0;
  }
  if (e.y_exp < 0) {
    times_y_power(e, f_, -e.y_exp);
    e.y_exp = 0;
  }
  if (e.a.is_zero() && e.b.is_zero()) return CurveElement{};
  if (absorb_x_ && e.x_exp > 0) {
    // x * (f/x) = y^2, so 1/x = (f/x) / y^2.
    QPoly h = divmod(f_, QPoly::x()).first;
    QPoly hp = pow(h, e.x_exp);
    e.a = e.a * hp;
    e.b = e.b * hp;
    e.y_exp += 2 * e.x_exp;
    e.x_exp = 0;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    if (e.y_exp > 0) {
      auto [quo, rem] = divmod(e.a, f_);
      if (rem.is_zero()) {
        // (f a1 + b y) / y = b + a1 y
        e.a = std::move(e.b);
        e.b = std::move(quo);
        --e.y_exp;
        changed = true;
      }
    }
    if (e.x_exp > 0 && sgn(e.a.coeff(0)) == 0 && sgn(e.b.coeff(0)) == 0) {
      e.a = QPoly(std::vector<Rational>(e.a.coeffs().begin() + (e.a.is_zero() ? 0 : 1), e.a.coeffs().end()));
      e.b = QPoly(std::vector<Rational>(e.b.coeffs().begin() + (e.b.is_zero() ? 0 : 1), e.b.coeffs().end()));
      --e.x_exp;
      changed = true;
    }
  }
  if ((e.x_exp > 0 && !invert_x_) || (e.y_exp > 0 && !invert_y_)) {
    throw Error(ErrorCode::kValidationError,
                std::string("element needs ") + (e.x_exp > 0 && !invert_x_ ? "x" : "y") +
                    " inverted, which " + describe() + " does not do");
  }
  return e;
}

CurveElement Ring::lift_numerator(const CurveElement& e, int px, int qy) const {
  CurveElement n{e.a.shifted(px - e.x_exp), e.b.shifted(px - e.x_exp), px, qy};
  times_y_power(n, f_, qy - e.y_exp);
  return n;
}

CurveElement Ring::numerator_over(const RingElement& s, int px, int qy) const {
  require_owned(s);
  const CurveElement& e = s.curve();
  if (px < e.x_exp || qy < e.y_exp) {
    throw Error(ErrorCode::kValidationError, "denominator too small for " + render(s));
  }
  return lift_numerator(e, px, qy);
}

CurveElement Ring::mul_numerators(const CurveElement& u, const CurveElement& v) const {
  CurveElement out;
  out.a = u.a * v.a + u.b * v.b * f_;
  out.b = u.a * v.b + u.b * v.a;
  out.x_exp = u.x_exp + v.x_exp;
  out.y_exp = u.y_exp + v.y_exp;
  return out;
}

RingElement Ring::add(const RingElement& u, const RingElement& v) const {
  require_owned(u);
  require_owned(v);
  if (model_ == RingModel::kTorus) return RingElement(u.laurent() + v.laurent());
  const auto& eu = u.curve();
  const auto& ev = v.curve();
  const int px = std::max(eu.x_exp, ev.x_exp);
  const int qy = std::max(eu.y_exp, ev.y_exp);
  CurveElement nu = lift_numerator(eu, px, qy);
  CurveElement nv = lift_numerator(ev, px, qy);
  nu.a += nv.a;
  nu.b += nv.b;
  return RingElement(canonicalize(std::move(nu)));
}

RingElement Ring::sub(const RingElement& u, const RingElement& v) const {
  return add(u, scale(v, -1));
}

RingElement Ring::mul(const RingElement& u, const RingElement& v) const {
  require_owned(u);
  require_owned(v);
  if (model_ == RingModel::kTorus) return RingElement(u.laurent() * v.laurent());
  return RingElement(canonicalize(mul_numerators(u.curve(), v.curve())));
}

RingElement Ring::scale(const RingElement& u, const Rational& c) const {
  require_owned(u);
  if (model_ == RingModel::kTorus) return RingElement(u.laurent() * c);
  if (sgn(c) == 0) return zero();
  CurveElement e = u.curve();
  e.a *= c;
  e.b *= c;
  return RingElement(std::move(e));
}

RingElement Ring::power(const RingElement& u, int e) const {
  if (e < 0) return power(inverse(u), -e);
  RingElement result = constant(1);
  RingElement base = u;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

Form1 Ring::add(const Form1& u, const Form1& v) const { return {add(u.coeff, v.coeff)}; }
Form1 Ring::sub(const Form1& u, const Form1& v) const { return {sub(u.coeff, v.coeff)}; }
Form1 Ring::mul(const RingElement& s, const Form1& w) const { return {mul(s, w.coeff)}; }
Form1 Ring::scale(const Form1& w, const Rational& c) const { return {scale(w.coeff, c)}; }

Form1 Ring::dx() const {
  if (model_ != RingModel::kCurve) throw Error(ErrorCode::kIncompatibleRing, "dx on the torus");
  return {y()};
}

Form1 Ring::dy() const {
  if (model_ != RingModel::kCurve) throw Error(ErrorCode::kIncompatibleRing, "dy on the torus");
  return {element(f_.derivative() * Rational(1, 2), QPoly())};
}

Form1 Ring::d(const RingElement& s) const {
  require_owned(s);
  if (model_ == RingModel::kTorus) {
    LaurentPoly out;
    for (const auto& [k, c] : s.laurent().terms()) {
      if (k != 0) out += LaurentPoly::monomial(c * k, k);
    }
    return {RingElement(std::move(out))};
  }
  const CurveElement& e = s.curve();
  const QPoly half_fp = f_.derivative() * Rational(1, 2);
  // d(a + b y) = (a' y + b' f + b f'/2) dx/y
  CurveElement dn{e.b.derivative() * f_ + e.b * half_fp, e.a.derivative(), 0, 0};
  RingElement numerator_part = RingElement(canonicalize(CurveElement{dn.a, dn.b, e.x_exp, e.y_exp}));
  if (e.x_exp == 0 && e.y_exp == 0) return {numerator_part};
  // Quotient rule: d(N / D) = dN / D - (N / D) * dD / D with
  // dD / D = (p y / x + q (f'/2) / y) dx/y.
  CurveElement log_dd{QPoly(), QPoly(), 0, 0};
  RingElement ddd = zero();
  if (e.x_exp > 0) {
    ddd = add(ddd, RingElement(canonicalize(CurveElement{QPoly(), QPoly(Rational(e.x_exp)), 1, 0})));
  }
  if (e.y_exp > 0) {
    ddd = add(ddd, RingElement(canonicalize(CurveElement{half_fp * Rational(e.y_exp), QPoly(), 0, 1})));
  }
  return {sub(numerator_part, mul(s, ddd))};
}

Form1 Ring::twisted_d(const Form1& omega, const RingElement& s) const {
  require_owned(omega.coeff);
  return add(d(s), mul(s, omega));
}

UnitTest Ring::is_unit(const RingElement& s) const {
  require_owned(s);
  if (s.is_zero()) return {};
  if (model_ == RingModel::kTorus) {
    const auto& terms = s.laurent().terms();
    if (terms.size() != 1) return {};
    const auto& [k, c] = *terms.begin();
    return {true, RingElement(LaurentPoly::monomial(Rational(1) / c, -k))};
  }
  const CurveElement& e = s.curve();
  // Norm to k[x]: (a + b y)(a - b y) = a^2 - b^2 f.
  QPoly norm = e.a * e.a - e.b * e.b * f_;
  int xc = 0;
  QPoly rest = norm;
  if (invert_x_ || absorb_x_) {
    xc = rest.x_adic_valuation();
    if (xc > 0) rest = QPoly(std::vector<Rational>(rest.coeffs().begin() + xc, rest.coeffs().end()));
  }
  QPoly cofactor(Rational(1));  // f^J / m
  int j_exp = 0;
  if (invert_y_) {
    QPoly m = rest.monic();
    QPoly stripped = m;
    for (QPoly g = gcd(stripped, f_); g.degree() > 0; g = gcd(stripped, f_)) {
      stripped = divmod(stripped, g).first;
    }
    if (stripped.degree() > 0) return {};
    QPoly fj(Rational(1));
    while (!divides(m, fj)) {
      fj = fj * f_;
      ++j_exp;
    }
    cofactor = divmod(fj, m).first;
  } else if (rest.degree() > 0) {
    return {};
  }
  const Rational lead = rest.leading();
  // s^-1 = D (a - b y) / norm = D (a - b y) (f^J / m) / (lead x^xc y^(2J))
  CurveElement inv{e.a * cofactor * (Rational(1) / lead), -(e.b * cofactor) * (Rational(1) / lead),
                   xc - e.x_exp, 2 * j_exp - e.y_exp};
  return {true, RingElement(canonicalize(std::move(inv)))};
}

RingElement Ring::inverse(const RingElement& g) const {
  UnitTest u = is_unit(g);
  if (!u.unit) throw Error(ErrorCode::kNotAUnit, render(g) + " is not a unit of " + describe());
  return *u.inverse;
}

Form1 Ring::dlog(const RingElement& g) const {
  RingElement inv = inverse(g);
  return mul(inv, d(g));
}

WeightedDegree Ring::weighted_degree(const RingElement& s) const {
  require_owned(s);
  if (s.is_zero()) return WeightedDegree::neg_infinity();
  if (model_ == RingModel::kTorus) {
    long best = 0;
    for (const auto& [k, c] : s.laurent().terms()) best = std::max(best, k < 0 ? -k : k);
    return {best};
  }
  const CurveElement& e = s.curve();
  long top = std::numeric_limits<long>::min();
  if (!e.a.is_zero()) top = std::max(top, 2L * e.a.degree());
  if (!e.b.is_zero()) top = std::max(top, 2L * e.b.degree() + 3);
  return {top - 2L * e.x_exp - 3L * e.y_exp};
}

std::string Ring::render(const RingElement& s) const {
  if (s.model() == RingModel::kTorus) {
    const auto& terms = s.laurent().terms();
    std::vector<Term> out;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      out.push_back({it->second, it->first == 0 ? "" : power_string("t", it->first)});
    }
    return render_sum(out);
  }
  const CurveElement& e = s.curve();
  if (e.a.is_zero() && e.b.is_zero()) return "0";
  std::vector<Term> terms;
  const int top = std::max(e.a.degree(), e.b.degree());
  // Descending weight: x^i y (2i + 3) then x^(i+1)... interleaved by weight.
  std::vector<std::pair<long, Term>> weighted;
  for (int i = 0; i <= top; ++i) {
    if (sgn(e.a.coeff(i)) != 0) weighted.push_back({2L * i, {e.a.coeff(i), i == 0 ? "" : power_string("x", i)}});
    if (sgn(e.b.coeff(i)) != 0) {
      weighted.push_back({2L * i + 3, {e.b.coeff(i), (i == 0 ? std::string() : power_string("x", i) + "*") + "y"}});
    }
  }
  std::sort(weighted.begin(), weighted.end(),
            [](const auto& l, const auto& r) { return l.first > r.first; });
  for (auto& [w, t] : weighted) terms.push_back(std::move(t));
  std::string factors;
  if (e.x_exp > 0) factors = "x^-" + std::to_string(e.x_exp);
  if (e.y_exp > 0) factors += (factors.empty() ? "" : "*") + std::string("y^-") + std::to_string(e.y_exp);
  return attach_factors(terms, factors);
}

std::string Ring::render(const Form1& w) const {
  const std::string basis = w.coeff.model() == RingModel::kTorus ? "dt/t" : "dx/y";
  if (w.is_zero()) return "0";
  std::string c = render(w.coeff);
  if (c == "1") return basis;
  if (c == "-1") return "-" + basis;
  if (is_simple_product(c)) return c + " " + basis;
  return "(" + c + ") " + basis;
}

}  // namespace twistcoh
