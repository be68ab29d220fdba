#pragma once

// Coordinate rings of smooth affine hyperelliptic curves y^2 = f(x), optionally
// localised at x and/or y, and the Laurent ring k[t, 1/t]. One-forms are free
// of rank one: every form is a single ring coefficient against dx/y (curves)
// or dt/t (torus).

#include <compare>
#include <limits>
#include <optional>
#include <string>
#include <variant>

#include "twistcoh/polynomial.hpp"

namespace twistcoh {

enum class RingModel { kCurve, kTorus };

struct CurveSpec {
  QPoly f;
  bool invert_x = false;
  bool invert_y = false;
};

// (a(x) + b(x) y) / (x^x_exp y^y_exp). In canonical form both exponents are
// minimal and only use inverted generators.
struct CurveElement {
  QPoly a;
  QPoly b;
  int x_exp = 0;
  int y_exp = 0;

  friend bool operator==(const CurveElement&, const CurveElement&) = default;
};

class RingElement {
 public:
  RingElement() : value_(CurveElement{}) {}
  explicit RingElement(CurveElement e) : value_(std::move(e)) {}
  explicit RingElement(LaurentPoly p) : value_(std::move(p)) {}

  RingModel model() const {
    return std::holds_alternative<CurveElement>(value_) ? RingModel::kCurve
                                                        : RingModel::kTorus;
  }
  const CurveElement& curve() const { return std::get<CurveElement>(value_); }
  const LaurentPoly& laurent() const { return std::get<LaurentPoly>(value_); }
  bool is_zero() const;

  friend bool operator==(const RingElement&, const RingElement&) = default;

 private:
  std::variant<CurveElement, LaurentPoly> value_;
};

// coeff * (dx/y) on a curve, coeff * (dt/t) on the torus.
struct Form1 {
  RingElement coeff;

  bool is_zero() const { return coeff.is_zero(); }
  friend bool operator==(const Form1&, const Form1&) = default;
};

// deg x = 2, deg y = 3 (curves); |exponent| (torus). Zero has degree -inf.
struct WeightedDegree {
  long value = std::numeric_limits<long>::min();

  static WeightedDegree neg_infinity() { return {}; }
  bool is_neg_infinity() const { return value == std::numeric_limits<long>::min(); }
  auto operator<=>(const WeightedDegree&) const = default;
};

struct UnitTest {
  bool unit = false;
  std::optional<RingElement> inverse;
};

class Ring {
 public:
  // Throws Error(kNonSmooth) when f is not squarefree, with gcd(f, f') in
  // the message.
  static Ring curve(CurveSpec spec);
  static Ring torus();

  RingModel model() const { return model_; }
  const QPoly& f() const { return f_; }
  bool inverts_x() const { return invert_x_; }
  bool inverts_y() const { return invert_y_; }
  // True when x and y are both inverted and f(0) = 0; then 1/x = (f/x)/y^2
  // and canonical forms carry no x denominators.
  bool absorbs_x_into_y() const { return absorb_x_; }
  bool is_localized() const { return invert_x_ || invert_y_; }
  std::string describe() const;

  RingElement zero() const;
  RingElement constant(const Rational& c) const;
  RingElement x() const;
  RingElement y() const;
  RingElement t() const;
  // c * x^i * y^j (curve); negative exponents need the generator inverted.
  RingElement monomial(const Rational& c, int i, int j) const;
  RingElement laurent_monomial(const Rational& c, long k) const;
  // Canonical (a + b y) / (x^x_exp y^y_exp); negative exponents multiply.
  RingElement element(QPoly a, QPoly b, int x_exp = 0, int y_exp = 0) const;
  RingElement laurent(LaurentPoly p) const;

  bool owns(const RingElement& s) const;
  bool owns(const Form1& w) const { return owns(w.coeff); }

  RingElement add(const RingElement& u, const RingElement& v) const;
  RingElement sub(const RingElement& u, const RingElement& v) const;
  RingElement mul(const RingElement& u, const RingElement& v) const;
  RingElement scale(const RingElement& u, const Rational& c) const;
  RingElement power(const RingElement& u, int e) const;

  Form1 add(const Form1& u, const Form1& v) const;
  Form1 sub(const Form1& u, const Form1& v) const;
  Form1 mul(const RingElement& s, const Form1& w) const;
  Form1 scale(const Form1& w, const Rational& c) const;

  Form1 d(const RingElement& s) const;
  // d(s) + s * omega
  Form1 twisted_d(const Form1& omega, const RingElement& s) const;
  UnitTest is_unit(const RingElement& s) const;
  // d(g) / g; throws Error(kNotAUnit).
  Form1 dlog(const RingElement& g) const;
  RingElement inverse(const RingElement& g) const;
  WeightedDegree weighted_degree(const RingElement& s) const;

  // dx = y * (dx/y), dy = (f'/2) * (dx/y)
  Form1 dx() const;
  Form1 dy() const;

  // Numerator of s written over x^px y^qy; needs px, qy at least the
  // canonical exponents of s.
  CurveElement numerator_over(const RingElement& s, int px, int qy) const;

  std::string render(const RingElement& s) const;
  std::string render(const Form1& w) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.model_ == b.model_ && a.f_ == b.f_ && a.invert_x_ == b.invert_x_ &&
           a.invert_y_ == b.invert_y_;
  }

 private:
  Ring() = default;
  void require_owned(const RingElement& s) const;
  CurveElement canonicalize(CurveElement e) const;
  // Numerator of e over the denominator x^px y^qy (px >= e.x_exp etc.).
  CurveElement lift_numerator(const CurveElement& e, int px, int qy) const;
  CurveElement mul_numerators(const CurveElement& u, const CurveElement& v) const;

  RingModel model_ = RingModel::kTorus;
  QPoly f_;
  bool invert_x_ = false;
  bool invert_y_ = false;
  bool absorb_x_ = false;
};

}  // namespace twistcoh
