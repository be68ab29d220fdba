#include "twistcoh/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "twistcoh/error.hpp"

namespace twistcoh {

QPoly::QPoly(Rational constant) {
  if (sgn(constant) != 0) coeffs_.push_back(std::move(constant));
}

QPoly::QPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

QPoly QPoly::monomial(const Rational& c, int degree) {
  if (sgn(c) == 0) return {};
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational QPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational QPoly::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational QPoly::eval(const Rational& at) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

QPoly QPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long>(i);
  return QPoly(std::move(v));
}

QPoly QPoly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<Rational> v(static_cast<std::size_t>(k));
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return QPoly(std::move(v));
}

QPoly QPoly::monic() const {
  if (is_zero()) return {};
  return *this * (Rational(1) / leading());
}

int QPoly::x_adic_valuation() const {
  int k = 0;
  while (k < static_cast<int>(coeffs_.size()) && sgn(coeffs_[static_cast<std::size_t>(k)]) == 0) ++k;
  return is_zero() ? 0 : k;
}

QPoly& QPoly::operator+=(const QPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return QPoly(std::move(v));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::kValidationError, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational lead_inv = Rational(1) / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational q = rem[static_cast<std::size_t>(k)] * lead_inv;
    if (sgn(q) == 0) continue;
    quo[static_cast<std::size_t>(k - db)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * b.coeff(j);
  }
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

QPoly pow(const QPoly& p, int e) {
  QPoly result(Rational(1));
  QPoly base = p;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

bool divides(const QPoly& d, const QPoly& p) {
  if (d.is_zero()) return p.is_zero();
  return divmod(p, d).second.is_zero();
}

std::string render(const QPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coeff(k);
    if (sgn(c) == 0) continue;
    const bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << to_string(c);
      continue;
    }
    if (c != 1) os << to_string(c) << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

LaurentPoly::LaurentPoly(Rational constant) { add_term(0, constant); }

LaurentPoly LaurentPoly::monomial(const Rational& c, long exponent) {
  LaurentPoly p;
  p.add_term(exponent, c);
  return p;
}

Rational LaurentPoly::coeff(long k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(long k, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(k, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(k, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [i, ci] : a.terms_)
    for (const auto& [j, cj] : b.terms_) out.add_term(i + j, ci * cj);
  return out;
}

}  // namespace twistcoh
