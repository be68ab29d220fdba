#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twistcoh/exactalg.hpp"

namespace twistcoh {

// Dense univariate polynomial over Q, coefficients stored low degree first.
// The coefficient vector never has trailing zeros; the zero polynomial is
// the empty vector and has degree -1.
class QPoly {
 public:
  QPoly() = default;
  QPoly(Rational constant);
  explicit QPoly(std::vector<Rational> coeffs);

  static QPoly monomial(const Rational& c, int degree);
  static QPoly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int i) const;
  Rational leading() const;

  Rational eval(const Rational& at) const;
  QPoly derivative() const;
  QPoly shifted(int k) const;  // multiply by x^k, k >= 0
  QPoly monic() const;
  // Largest k with x^k | p (0 for the zero polynomial).
  int x_adic_valuation() const;

  QPoly& operator+=(const QPoly& rhs);
  QPoly& operator-=(const QPoly& rhs);
  QPoly& operator*=(const Rational& s);

  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator-(QPoly a) { return a *= Rational(-1); }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(QPoly a, const Rational& s) { return a *= s; }
  friend QPoly operator*(const Rational& s, QPoly a) { return a *= s; }
  friend bool operator==(const QPoly& a, const QPoly& b) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// Quotient and remainder of Euclidean division; divisor must be nonzero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly gcd(QPoly a, QPoly b);  // monic, gcd(0, 0) = 0
QPoly pow(const QPoly& p, int e);
bool divides(const QPoly& d, const QPoly& p);

// Human/grammar rendering in the variable `var`, e.g. "4*x^3 - 4*x - 1".
std::string render(const QPoly& p, const std::string& var = "x");

// Laurent polynomial in t with finitely many nonzero coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(Rational constant);
  static LaurentPoly monomial(const Rational& c, long exponent);

  bool is_zero() const { return terms_.empty(); }
  const std::map<long, Rational>& terms() const { return terms_; }
  long min_exponent() const { return terms_.begin()->first; }
  long max_exponent() const { return terms_.rbegin()->first; }
  Rational coeff(long k) const;

  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const Rational& s);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

 private:
  void add_term(long k, const Rational& c);
  std::map<long, Rational> terms_;
};

}  // namespace twistcoh
