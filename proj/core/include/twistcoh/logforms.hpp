#pragma once

// Logarithmic differential forms on a local chart with coordinates
// t_1..t_n and divisor D = {t_1 ... t_l = 0}. A k-form is a sum of
// f_S * b_S over ascending index sets S, where b_i = dt_i/t_i for i <= l
// and b_i = dt_i otherwise. Coordinate indices are 1-based throughout.

#include <map>
#include <string>
#include <vector>

#include "twistcoh/error.hpp"
#include "twistcoh/exactalg.hpp"

namespace twistcoh {

struct Chart {
  int n = 1;
  int l = 1;

  // Throws Error(kValidationError) unless 1 <= l <= n.
  static Chart make(int n, int l);
  friend bool operator==(const Chart&, const Chart&) = default;
};

// Sparse multivariate polynomial over Q in t_1..t_n.
class MPoly {
 public:
  using Exponent = std::vector<int>;

  MPoly() = default;
  explicit MPoly(int nvars) : nvars_(nvars) {}

  static MPoly constant(int nvars, const Rational& c);
  static MPoly variable(int nvars, int i);
  static MPoly monomial(const Rational& c, Exponent e);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  Rational coeff(const Exponent& e) const;
  int total_degree() const;

  MPoly derivative(int i) const;
  MPoly restrict_zero(int i) const;  // substitute t_i = 0
  bool divisible_by(int i) const;
  MPoly divide_by(int i) const;  // exact; requires divisible_by(i)
  MPoly times_variable(int i) const;

  MPoly& operator+=(const MPoly& rhs);
  MPoly& operator-=(const MPoly& rhs);
  MPoly& operator*=(const Rational& s);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(MPoly a, const Rational& s) { return a *= s; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b) = default;

 private:
  void add_term(const Exponent& e, const Rational& c);

  int nvars_ = 0;
  std::map<Exponent, Rational> terms_;
};

std::string render(const MPoly& p);

class LogForm {
 public:
  using IndexSet = std::vector<int>;

  LogForm(Chart chart, int degree);

  static LogForm function(Chart chart, MPoly f);
  // f * b_S; S need not be sorted, repeated indices give zero.
  static LogForm basis(Chart chart, IndexSet s, MPoly f);

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<IndexSet, MPoly>& terms() const { return terms_; }
  MPoly coeff(const IndexSet& s) const;

  void add(const IndexSet& sorted, const MPoly& f);

  LogForm& operator+=(const LogForm& rhs);
  LogForm& operator-=(const LogForm& rhs);
  LogForm& operator*=(const Rational& s);
  friend LogForm operator+(LogForm a, const LogForm& b) { return a += b; }
  friend LogForm operator-(LogForm a, const LogForm& b) { return a -= b; }
  friend LogForm operator*(LogForm a, const Rational& s) { return a *= s; }
  friend bool operator==(const LogForm& a, const LogForm& b) = default;

 private:
  Chart chart_;
  int degree_;
  std::map<IndexSet, MPoly> terms_;
};

std::string render(const LogForm& a);

LogForm wedge(const LogForm& a, const LogForm& b);
LogForm d_log(const LogForm& a);

class NotClosedError : public Error {
 public:
  NotClosedError(const std::string& message, LogForm witness)
      : Error(ErrorCode::kNotClosed, message), witness_(std::move(witness)) {}
  const LogForm& witness() const { return witness_; }

 private:
  LogForm witness_;
};

// d_log(a) + omega ^ a; throws NotClosedError carrying d_log(omega).
LogForm twisted_d_log(const LogForm& omega, const LogForm& a);

// Entry j-1 is the coefficient of dt_j/t_j restricted to t_j = 0.
std::vector<MPoly> residue(const LogForm& a);

// Moves dt_j/t_j to the front with its Koszul sign and restricts the
// remaining (k-1)-form to t_j = 0. The result lives on the same chart with
// coefficients independent of t_j.
LogForm residue_k(const LogForm& a, int j);

bool is_pole_free(const LogForm& a);

// A 1-form on a chart with l = 1 written as t_1^-pole_order * sum g_i dt_i
// with pole_order in {0, 1} and the g_i polynomial.
struct TwistedRegularForm {
  Chart chart;
  std::map<int, MPoly> numerators;
  int pole_order = 0;

  friend bool operator==(const TwistedRegularForm&, const TwistedRegularForm&) = default;
};

TwistedRegularForm log_as_twist(const LogForm& a);
LogForm twist_as_log(const TwistedRegularForm& r);

}  // namespace twistcoh
