#include "twistcoh/logforms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace twistcoh {

namespace {

void require_index(const Chart& c, int i) {
  if (i < 1 || i > c.n) {
    throw Error(ErrorCode::kValidationError,
                "coordinate index " + std::to_string(i) + " outside 1.." + std::to_string(c.n));
  }
}

void require_same_chart(const LogForm& a, const LogForm& b) {
  if (!(a.chart() == b.chart())) {
    throw Error(ErrorCode::kIncompatibleRing, "log forms live on different charts");
  }
}

// Number of elements of s that are smaller than i.
int count_below(const LogForm::IndexSet& s, int i) {
  return static_cast<int>(std::lower_bound(s.begin(), s.end(), i) - s.begin());
}

}  // namespace

Chart Chart::make(int n, int l) {
  if (l < 1 || l > n) {
    throw Error(ErrorCode::kValidationError,
                "chart needs 1 <= l <= n, got n = " + std::to_string(n) +
                    ", l = " + std::to_string(l));
  }
  return Chart{n, l};
}

MPoly MPoly::constant(int nvars, const Rational& c) {
  MPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(int nvars, int i) {
  Exponent e(nvars, 0);
  e.at(i - 1) = 1;
  return monomial(1, std::move(e));
}

MPoly MPoly::monomial(const Rational& c, Exponent e) {
  MPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

Rational MPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int MPoly::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, std::accumulate(e.begin(), e.end(), 0));
  return best;
}

void MPoly::add_term(const Exponent& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

MPoly MPoly::derivative(int i) const {
  MPoly out(nvars_);
  for (const auto& [key, c] : terms_) {
    Exponent e = key;
    const int k = e.at(i - 1);
    if (k == 0) continue;
    e[i - 1] = k - 1;
    out.add_term(e, c * k);
  }
  return out;
}

MPoly MPoly::restrict_zero(int i) const {
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e.at(i - 1) == 0) out.add_term(e, c);
  }
  return out;
}

bool MPoly::divisible_by(int i) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [i](const auto& t) { return t.first.at(i - 1) > 0; });
}

MPoly MPoly::divide_by(int i) const {
  MPoly out(nvars_);
  for (const auto& [key, c] : terms_) {
    Exponent e = key;
    if (e.at(i - 1) == 0) {
      throw Error(ErrorCode::kValidationError, render(*this) + " is not divisible by t" +
                                                   std::to_string(i));
    }
    --e[i - 1];
    out.add_term(e, c);
  }
  return out;
}

MPoly MPoly::times_variable(int i) const {
  MPoly out(nvars_);
  for (const auto& [key, c] : terms_) {
    Exponent e = key;
    ++e.at(i - 1);
    out.add_term(e, c);
  }
  return out;
}

MPoly& MPoly::operator+=(const MPoly& rhs) {
  if (nvars_ == 0) nvars_ = rhs.nvars_;
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& rhs) {
  if (nvars_ == 0) nvars_ = rhs.nvars_;
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

MPoly& MPoly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly out(std::max(a.nvars_, b.nvars_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      MPoly::Exponent e(ea);
      for (std::size_t k = 0; k < eb.size(); ++k) e[k] += eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

std::string render(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "t" + std::to_string(k + 1);
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    if (mono.empty()) {
      os << to_string(mag);
    } else if (mag == 1) {
      os << mono;
    } else {
      os << to_string(mag) << "*" << mono;
    }
  }
  return os.str();
}

LogForm::LogForm(Chart chart, int degree) : chart_(chart), degree_(degree) {
  if (degree < 0 || degree > chart.n) {
    throw Error(ErrorCode::kValidationError,
                "form degree " + std::to_string(degree) + " outside 0.." + std::to_string(chart.n));
  }
}

LogForm LogForm::function(Chart chart, MPoly f) {
  LogForm out(chart, 0);
  out.add({}, f);
  return out;
}

LogForm LogForm::basis(Chart chart, IndexSet s, MPoly f) {
  for (int i : s) require_index(chart, i);
  int inversions = 0;
  for (std::size_t p = 0; p < s.size(); ++p)
    for (std::size_t q = p + 1; q < s.size(); ++q) inversions += s[p] > s[q];
  LogForm out(chart, static_cast<int>(s.size()));
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return out;
  out.add(s, inversions % 2 == 0 ? f : f * Rational(-1));
  return out;
}

MPoly LogForm::coeff(const IndexSet& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? MPoly(chart_.n) : it->second;
}

void LogForm::add(const IndexSet& sorted, const MPoly& f) {
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(sorted, f);
  if (inserted) return;
  it->second += f;
  if (it->second.is_zero()) terms_.erase(it);
}

LogForm& LogForm::operator+=(const LogForm& rhs) {
  require_same_chart(*this, rhs);
  if (degree_ != rhs.degree_) throw Error(ErrorCode::kShapeMismatch, "adding forms of different degree");
  for (const auto& [s, f] : rhs.terms_) add(s, f);
  return *this;
}

LogForm& LogForm::operator-=(const LogForm& rhs) {
  require_same_chart(*this, rhs);
  if (degree_ != rhs.degree_) throw Error(ErrorCode::kShapeMismatch, "subtracting forms of different degree");
  for (const auto& [s, f] : rhs.terms_) add(s, f * Rational(-1));
  return *this;
}

LogForm& LogForm::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [idx, f] : terms_) f *= s;
  return *this;
}

std::string render(const LogForm& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [s, f] : a.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + render(f) + ")";
    if (s.empty()) continue;
    out += " ";
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k > 0) out += "&";
      const std::string idx = std::to_string(s[k]);
      out += "dt" + idx;
      if (s[k] <= a.chart().l) out += "/t" + idx;
    }
  }
  return out;
}

LogForm wedge(const LogForm& a, const LogForm& b) {
  require_same_chart(a, b);
  if (a.degree() + b.degree() > a.chart().n) return LogForm(a.chart(), a.chart().n);
  LogForm out(a.chart(), a.degree() + b.degree());
  for (const auto& [sa, fa] : a.terms()) {
    for (const auto& [sb, fb] : b.terms()) {
      LogForm::IndexSet merged;
      std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(merged));
      if (merged.size() != sa.size() + sb.size()) continue;
      int inversions = 0;
      for (int i : sb) inversions += static_cast<int>(sa.end() - std::upper_bound(sa.begin(), sa.end(), i));
      MPoly f = fa * fb;
      out.add(merged, inversions % 2 == 0 ? f : f * Rational(-1));
    }
  }
  return out;
}

LogForm d_log(const LogForm& a) {
  const Chart& c = a.chart();
  if (a.degree() == c.n) return LogForm(c, c.n);
  LogForm out(c, a.degree() + 1);
  for (const auto& [s, f] : a.terms()) {
    for (int i = 1; i <= c.n; ++i) {
      if (std::binary_search(s.begin(), s.end(), i)) continue;
      MPoly g = f.derivative(i);
      if (i <= c.l) g = g.times_variable(i);
      if (g.is_zero()) continue;
      LogForm::IndexSet merged(s);
      merged.insert(std::lower_bound(merged.begin(), merged.end(), i), i);
      out.add(merged, count_below(s, i) % 2 == 0 ? g : g * Rational(-1));
    }
  }
  return out;
}

LogForm twisted_d_log(const LogForm& omega, const LogForm& a) {
  require_same_chart(omega, a);
  if (omega.degree() != 1) {
    throw Error(ErrorCode::kValidationError, "twisting parameter must be a 1-form");
  }
  LogForm d_omega = d_log(omega);
  if (!d_omega.is_zero()) {
    throw NotClosedError("twisting parameter is not closed: d omega = " + render(d_omega),
                         std::move(d_omega));
  }
  return d_log(a) + wedge(omega, a);
}

std::vector<MPoly> residue(const LogForm& a) {
  if (a.degree() != 1) throw Error(ErrorCode::kValidationError, "residue needs a 1-form");
  std::vector<MPoly> out;
  for (int j = 1; j <= a.chart().l; ++j) out.push_back(a.coeff({j}).restrict_zero(j));
  return out;
}

LogForm residue_k(const LogForm& a, int j) {
  if (a.degree() < 1) throw Error(ErrorCode::kValidationError, "residue needs a form of degree >= 1");
  if (j < 1 || j > a.chart().l) {
    throw Error(ErrorCode::kValidationError, "residue index " + std::to_string(j) +
                                                 " is not a log coordinate");
  }
  LogForm out(a.chart(), a.degree() - 1);
  for (const auto& [s, f] : a.terms()) {
    auto pos = std::lower_bound(s.begin(), s.end(), j);
    if (pos == s.end() || *pos != j) continue;
    const long sign_swaps = pos - s.begin();
    LogForm::IndexSet rest(s.begin(), pos);
    rest.insert(rest.end(), pos + 1, s.end());
    MPoly g = f.restrict_zero(j);
    out.add(rest, sign_swaps % 2 == 0 ? g : g * Rational(-1));
  }
  return out;
}

bool is_pole_free(const LogForm& a) {
  for (const auto& [s, f] : a.terms()) {
    for (int i : s) {
      if (i <= a.chart().l && !f.divisible_by(i)) return false;
    }
  }
  return true;
}

TwistedRegularForm log_as_twist(const LogForm& a) {
  if (a.chart().l != 1 || a.degree() != 1) {
    throw Error(ErrorCode::kValidationError, "twist rewriting needs a 1-form on a chart with l = 1");
  }
  TwistedRegularForm out{a.chart(), {}, 0};
  const MPoly f1 = a.coeff({1});
  out.pole_order = f1.divisible_by(1) ? 0 : 1;
  for (const auto& [s, f] : a.terms()) {
    const int i = s.front();
    MPoly g = i == 1 ? (out.pole_order == 0 ? f.divide_by(1) : f)
                     : (out.pole_order == 0 ? f : f.times_variable(1));
    out.numerators.emplace(i, std::move(g));
  }
  return out;
}

LogForm twist_as_log(const TwistedRegularForm& r) {
  if (r.chart.l != 1 || (r.pole_order != 0 && r.pole_order != 1)) {
    throw Error(ErrorCode::kValidationError, "twisted form needs l = 1 and pole order 0 or 1");
  }
  LogForm out(r.chart, 1);
  for (const auto& [i, g] : r.numerators) {
    require_index(r.chart, i);
    MPoly f = i == 1 ? (r.pole_order == 0 ? g.times_variable(1) : g)
                     : (r.pole_order == 0 ? g : g.divide_by(1));
    out.add({i}, f);
  }
  return out;
}

}  // namespace twistcoh
