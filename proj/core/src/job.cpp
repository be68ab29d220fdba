#include "twistcoh/job.hpp"

#include <algorithm>
#include <cctype>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "twistcoh/cohomology.hpp"

namespace twistcoh {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

std::vector<std::string> sorted_unique(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

enum class Tok { kNumber, kIdent, kBasis, kPlus, kMinus, kStar, kCaret, kSlash, kLParen, kRParen, kAmp, kComma, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

std::string describe(const Token& t) {
  return t.kind == Tok::kEnd ? "end of line" : "'" + t.text + "'";
}

bool is_basis_word(const std::string& w) {
  if (w.size() < 2 || w[0] != 'd') return false;
  return w == "dx" || w == "dy" || w == "dt" ||
         (w[1] == 't' && w.size() > 2 &&
          std::all_of(w.begin() + 2, w.end(), [](unsigned char c) { return std::isdigit(c); }));
}

std::vector<Token> lex(std::string_view text, int line, int column0) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t k) { return column0 + static_cast<int>(k); };
  auto word_at = [&](std::size_t k) {
    std::size_t e = k;
    while (e < text.size() && (std::isalnum(static_cast<unsigned char>(text[e])) || text[e] == '_')) ++e;
    return e;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t e = i;
      while (e < text.size() && std::isdigit(static_cast<unsigned char>(text[e]))) ++e;
      out.push_back({Tok::kNumber, std::string(text.substr(i, e - i)), col(i)});
      i = e;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t e = word_at(i);
      std::string w(text.substr(i, e - i));
      if (is_basis_word(w)) {
        if (e < text.size() && text[e] == '/' && e + 1 < text.size() &&
            std::isalpha(static_cast<unsigned char>(text[e + 1]))) {
          std::size_t e2 = word_at(e + 1);
          w = std::string(text.substr(i, e2 - i));
          e = e2;
        }
        out.push_back({Tok::kBasis, w, col(i)});
      } else {
        out.push_back({Tok::kIdent, w, col(i)});
      }
      i = e;
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::kPlus; break;
      case '-': kind = Tok::kMinus; break;
      case '*': kind = Tok::kStar; break;
      case '^': kind = Tok::kCaret; break;
      case '/': kind = Tok::kSlash; break;
      case '(': kind = Tok::kLParen; break;
      case ')': kind = Tok::kRParen; break;
      case '&': kind = Tok::kAmp; break;
      case ',': kind = Tok::kComma; break;
      default:
        throw ParseError(line, col(i), {"number", "variable", "operator"}, "'" + std::string(1, c) + "'");
    }
    out.push_back({kind, std::string(1, c), col(i)});
    ++i;
  }
  out.push_back({Tok::kEnd, "", col(text.size())});
  return out;
}

Expr expr_constant(std::size_t nvars, const Rational& c) {
  Expr e;
  if (sgn(c) != 0) e.terms[std::vector<long>(nvars, 0)] = c;
  return e;
}

void expr_add(Expr& a, const Expr& b, const Rational& scale = 1) {
  for (const auto& [k, c] : b.terms) {
    Rational& slot = a.terms[k];
    slot += c * scale;
    if (sgn(slot) == 0) a.terms.erase(k);
  }
}

Expr expr_mul(const Expr& a, const Expr& b) {
  Expr out;
  for (const auto& [ka, ca] : a.terms) {
    for (const auto& [kb, cb] : b.terms) {
      std::vector<long> k(ka);
      for (std::size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
      Rational& slot = out.terms[k];
      slot += ca * cb;
      if (sgn(slot) == 0) out.terms.erase(k);
    }
  }
  return out;
}

std::string render_expr(const Expr& e, const std::vector<std::string>& vars) {
  if (e.terms.empty()) return "0";
  std::string out;
  for (auto it = e.terms.rbegin(); it != e.terms.rend(); ++it) {
    const auto& [k, c] = *it;
    const Rational mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (k[i] != 1) mono += "^" + std::to_string(k[i]);
    }
    if (mono.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += to_string(mag) + "*" + mono;
    }
  }
  return out;
}

constexpr long kMaxExponent = 1000;

struct BasisFactor {
  int index;      // chart coordinate; 0 for dx/y and dt/t
  bool regular;   // dt_i on a log coordinate, equal to t_i * dt_i/t_i
};

class ExprParser {
 public:
  ExprParser(std::vector<Token> tokens, int line, std::vector<std::string> vars,
             std::vector<std::string> bases)
      : toks_(std::move(tokens)), line_(line), vars_(std::move(vars)), bases_(std::move(bases)) {}

  Expr parse_expression_only() {
    Expr e = expression();
    expect_end();
    return e;
  }

  // Sum of coefficient * wedge-of-basis terms. Each entry of the result is
  // (basis factors, coefficient).
  std::vector<std::pair<std::vector<BasisFactor>, Expr>> parse_form() {
    std::vector<std::pair<std::vector<BasisFactor>, Expr>> out;
    Rational sign = 1;
    if (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      sign = next().kind == Tok::kMinus ? -1 : 1;
    }
    while (true) {
      Expr coeff = expr_constant(vars_.size(), sign);
      std::vector<BasisFactor> basis;
      if (peek().kind != Tok::kBasis) {
        coeff = expr_mul(coeff, term());
      }
      if (peek().kind == Tok::kBasis) {
        basis.push_back(basis_factor(next()));
        while (peek().kind == Tok::kAmp) {
          next();
          if (peek().kind != Tok::kBasis) fail(bases_);
          basis.push_back(basis_factor(next()));
        }
      } else if (!coeff.terms.empty()) {
        std::vector<std::string> exp = bases_;
        exp.push_back("'*'");
        fail(exp);
      }
      out.emplace_back(std::move(basis), std::move(coeff));
      if (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
        sign = next().kind == Tok::kMinus ? -1 : 1;
        continue;
      }
      break;
    }
    expect_end();
    return out;
  }

  long parse_integer_only() {
    const Token t = peek();
    if (t.kind != Tok::kNumber) fail({"integer"});
    next();
    expect_end();
    if (t.text.size() > 9) {
      throw Error(ErrorCode::kValidationError, "line " + std::to_string(line_) + ": integer " +
                                                   t.text + " is too large");
    }
    return std::stol(t.text);
  }

  std::vector<std::string> parse_name_list(const std::vector<std::string>& allowed) {
    std::vector<std::string> out;
    if (peek().kind == Tok::kEnd) return out;
    while (true) {
      const Token t = peek();
      if (t.kind != Tok::kIdent || std::find(allowed.begin(), allowed.end(), t.text) == allowed.end()) {
        std::vector<std::string> exp;
        for (const auto& a : allowed) exp.push_back("'" + a + "'");
        fail(exp);
      }
      next();
      out.push_back(t.text);
      if (peek().kind != Tok::kComma) break;
      next();
    }
    expect_end();
    return out;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    throw ParseError(line_, peek().column, expected, describe(peek()));
  }

  void expect_end() {
    if (peek().kind == Tok::kEnd) return;
    fail({"'+'", "'-'", "'*'", "end of line"});
  }

  std::vector<std::string> atom_starts() const {
    std::vector<std::string> exp{"number", "'('"};
    for (const auto& v : vars_) exp.push_back("'" + v + "'");
    return exp;
  }

  Expr expression() {
    Rational sign = 1;
    if (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      sign = next().kind == Tok::kMinus ? -1 : 1;
    }
    Expr acc;
    expr_add(acc, term(), sign);
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      const Rational s = next().kind == Tok::kMinus ? -1 : 1;
      expr_add(acc, term(), s);
    }
    return acc;
  }

  Expr term() {
    Expr acc = power();
    while (peek().kind == Tok::kStar) {
      next();
      acc = expr_mul(acc, power());
    }
    return acc;
  }

  Expr power() {
    const int atom_column = peek().column;
    Expr base = atom();
    if (peek().kind != Tok::kCaret) return base;
    next();
    bool negative = false;
    if (peek().kind == Tok::kMinus) {
      next();
      negative = true;
    }
    const Token t = peek();
    if (t.kind != Tok::kNumber) fail({"integer"});
    next();
    if (t.text.size() > 4 || std::stol(t.text) > kMaxExponent) {
      throw Error(ErrorCode::kValidationError, "line " + std::to_string(line_) + ", column " +
                                                   std::to_string(t.column) + ": exponent " +
                                                   t.text + " exceeds " +
                                                   std::to_string(kMaxExponent));
    }
    const long k = std::stol(t.text);
    if (negative) {
      if (base.terms.size() != 1) {
        throw Error(ErrorCode::kValidationError,
                    "line " + std::to_string(line_) + ", column " + std::to_string(atom_column) +
                        ": negative powers need a single monomial base");
      }
      std::vector<long> mono = base.terms.begin()->first;
      const Rational c = base.terms.begin()->second;
      for (auto& e : mono) e = -e;
      base.terms.clear();
      base.terms[mono] = Rational(1) / c;
    }
    Expr out = expr_constant(vars_.size(), 1);
    for (long i = 0; i < k; ++i) out = expr_mul(out, base);
    return out;
  }

  Expr atom() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::kNumber: {
        next();
        Rational value(Integer(t.text));
        if (peek().kind == Tok::kSlash) {
          next();
          const Token d = peek();
          if (d.kind != Tok::kNumber) fail({"number"});
          next();
          Integer den(d.text);
          if (den == 0) {
            throw Error(ErrorCode::kValidationError, "line " + std::to_string(line_) +
                                                         ", column " + std::to_string(d.column) +
                                                         ": zero denominator");
          }
          value = Rational(Integer(t.text), den);
          value.canonicalize();
        }
        return expr_constant(vars_.size(), value);
      }
      case Tok::kIdent: {
        auto it = std::find(vars_.begin(), vars_.end(), t.text);
        if (it == vars_.end()) fail(atom_starts());
        next();
        Expr e;
        std::vector<long> k(vars_.size(), 0);
        k[it - vars_.begin()] = 1;
        e.terms[k] = 1;
        return e;
      }
      case Tok::kLParen: {
        next();
        Expr e = expression();
        if (peek().kind != Tok::kRParen) fail({"')'", "'+'", "'-'", "'*'"});
        next();
        return e;
      }
      default:
        fail(atom_starts());
    }
  }

  BasisFactor basis_factor(const Token& t) {
    if (std::find(bases_.begin(), bases_.end(), "'" + t.text + "'") == bases_.end()) {
      --pos_;
      fail(bases_);
    }
    if (t.text == "dx/y" || t.text == "dt/t") return {0, false};
    const auto slash = t.text.find('/');
    const int index = std::stoi(t.text.substr(2, slash == std::string::npos ? std::string::npos : slash - 2));
    return {index, slash == std::string::npos};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
  std::vector<std::string> vars_;
  std::vector<std::string> bases_;
};

struct Entry {
  std::string key;
  std::string value;
  int line;
  int value_column;
};

struct Section {
  std::string name;
  int line;
  std::vector<Entry> entries;
};

const std::map<std::string, std::vector<std::string>>& section_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"curve", {"f", "invert"}},   {"twist", {"omega"}},
      {"gm", {"lambda"}},           {"gauge", {"g"}},
      {"compute", {"max_weight", "span"}}, {"chart", {"n", "l", "form"}},
  };
  return keys;
}

std::vector<std::string> quoted(const std::vector<std::string>& words, const char* pre = "",
                                const char* post = "") {
  std::vector<std::string> out;
  for (const auto& w : words) out.push_back("'" + std::string(pre) + w + post + "'");
  return out;
}

std::map<std::string, Section> split_document(std::string_view doc) {
  std::map<std::string, Section> sections;
  Section* current = nullptr;
  std::vector<std::string> section_names;
  for (const auto& [name, keys] : section_keys()) section_names.push_back(name);

  int line_no = 0;
  std::size_t start = 0;
  while (start <= doc.size()) {
    std::size_t end = doc.find('\n', start);
    if (end == std::string_view::npos) end = doc.size();
    std::string line(doc.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) {
      if (end == doc.size()) break;
      continue;
    }
    const int column = static_cast<int>(first) + 1;
    if (line[first] == '[') {
      const std::size_t close = line.find(']', first);
      if (close == std::string::npos) {
        throw ParseError(line_no, static_cast<int>(line.size()) + 1, {"']'"}, "end of line");
      }
      const std::size_t trailing = line.find_first_not_of(" \t", close + 1);
      if (trailing != std::string::npos) {
        throw ParseError(line_no, static_cast<int>(trailing) + 1, {"end of line"},
                         "'" + line.substr(trailing, 1) + "'");
      }
      std::string name = line.substr(first + 1, close - first - 1);
      if (!section_keys().contains(name)) {
        throw ParseError(line_no, column + 1, quoted(section_names), "'" + name + "'");
      }
      if (sections.contains(name)) {
        throw Error(ErrorCode::kValidationError,
                    "line " + std::to_string(line_no) + ": section [" + name + "] repeated");
      }
      current = &sections[name];
      current->name = name;
      current->line = line_no;
      if (end == doc.size()) break;
      continue;
    }
    if (current == nullptr) {
      throw ParseError(line_no, column, quoted(section_names, "[", "]"), "'" + line.substr(first, 1) + "'");
    }
    const std::size_t eq = line.find('=', first);
    std::size_t key_end = first;
    while (key_end < line.size() && (std::isalnum(static_cast<unsigned char>(line[key_end])) || line[key_end] == '_')) ++key_end;
    const std::string key = line.substr(first, key_end - first);
    const auto& allowed = section_keys().at(current->name);
    if (key.empty() || std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError(line_no, column, quoted(allowed),
                       key.empty() ? "'" + line.substr(first, 1) + "'" : "'" + key + "'");
    }
    const std::size_t after_key = line.find_first_not_of(" \t", key_end);
    if (eq == std::string::npos || after_key != eq) {
      throw ParseError(line_no, after_key == std::string::npos ? static_cast<int>(line.size()) + 1
                                                              : static_cast<int>(after_key) + 1,
                       {"'='"},
                       after_key == std::string::npos ? "end of line" : "'" + line.substr(after_key, 1) + "'");
    }
    for (const auto& e : current->entries) {
      if (e.key == key) {
        throw Error(ErrorCode::kValidationError, "line " + std::to_string(line_no) + ": key '" +
                                                     key + "' repeated in [" + current->name + "]");
      }
    }
    current->entries.push_back({key, line.substr(eq + 1), line_no, static_cast<int>(eq) + 2});
    if (end == doc.size()) break;
  }
  return sections;
}

const Entry* find_entry(const Section& s, const std::string& key) {
  for (const auto& e : s.entries)
    if (e.key == key) return &e;
  return nullptr;
}

const Entry& require_entry(const Section& s, const std::string& key) {
  const Entry* e = find_entry(s, key);
  if (e == nullptr) {
    throw Error(ErrorCode::kValidationError, "section [" + s.name + "] at line " +
                                                 std::to_string(s.line) + " needs key '" + key + "'");
  }
  return *e;
}

ExprParser parser_for(const Entry& e, std::vector<std::string> vars, std::vector<std::string> bases = {}) {
  return ExprParser(lex(e.value, e.line, e.value_column), e.line, std::move(vars), std::move(bases));
}

const std::vector<std::string> kRingVars = {"x", "y", "t"};

std::string at_line(const Entry& e) { return "line " + std::to_string(e.line) + ": "; }

QPoly expr_to_qpoly(const Expr& e, const Entry& where) {
  std::vector<Rational> coeffs;
  for (const auto& [k, c] : e.terms) {
    if (k[0] < 0) throw Error(ErrorCode::kValidationError, at_line(where) + "f must be a polynomial in x");
    if (static_cast<std::size_t>(k[0]) >= coeffs.size()) coeffs.resize(k[0] + 1);
    coeffs[k[0]] = c;
  }
  return QPoly(std::move(coeffs));
}

// Ring-context exprs are stored on (x, y, t); parsers see a subset.
Expr widen(const Expr& e, const std::vector<std::string>& vars) {
  Expr out;
  for (const auto& [k, c] : e.terms) {
    std::vector<long> wide(3, 0);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      wide[std::find(kRingVars.begin(), kRingVars.end(), vars[i]) - kRingVars.begin()] = k[i];
    }
    out.terms[wide] = c;
  }
  return out;
}

RingElement expr_to_element(const Ring& ring, const Expr& e) {
  RingElement acc = ring.zero();
  for (const auto& [k, c] : e.terms) {
    if (ring.model() == RingModel::kTorus) {
      if (k[0] != 0 || k[1] != 0) {
        throw Error(ErrorCode::kIncompatibleRing, "x and y are not coordinates of the torus");
      }
      acc = ring.add(acc, ring.laurent_monomial(c, k[2]));
    } else {
      if (k[2] != 0) throw Error(ErrorCode::kIncompatibleRing, "t is not a coordinate of a curve");
      acc = ring.add(acc, ring.monomial(c, static_cast<int>(k[0]), static_cast<int>(k[1])));
    }
  }
  return acc;
}

MPoly expr_to_mpoly(const Expr& e, int n, const Entry& where) {
  MPoly out(n);
  for (const auto& [k, c] : e.terms) {
    std::vector<int> exps(n, 0);
    for (int i = 0; i < n; ++i) {
      if (k[i] < 0) {
        throw Error(ErrorCode::kValidationError,
                    at_line(where) + "log form coefficients must be polynomials");
      }
      exps[i] = static_cast<int>(k[i]);
    }
    out += MPoly::monomial(c, std::move(exps));
  }
  return out;
}

Expr mpoly_to_expr(const MPoly& p) {
  Expr out;
  for (const auto& [k, c] : p.terms()) out.terms[std::vector<long>(k.begin(), k.end())] = c;
  return out;
}

std::vector<std::string> chart_vars(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("t" + std::to_string(i));
  return v;
}

std::vector<std::string> chart_bases(const Chart& c) {
  std::vector<std::string> b;
  for (int i = 1; i <= c.n; ++i) {
    const std::string idx = std::to_string(i);
    if (i <= c.l) b.push_back("'dt" + idx + "/t" + idx + "'");
    b.push_back("'dt" + idx + "'");
  }
  return b;
}

RingForm parse_ring_form(const Entry& e, bool torus) {
  const std::vector<std::string> vars = torus ? std::vector<std::string>{"t"}
                                              : std::vector<std::string>{"x", "y"};
  auto terms = parser_for(e, vars, {torus ? "'dt/t'" : "'dx/y'"}).parse_form();
  RingForm out{torus ? FormBasis::kDtOverT : FormBasis::kDxOverY, {}};
  for (const auto& [basis, coeff] : terms) {
    if (basis.size() > 1) {
      throw Error(ErrorCode::kValidationError, at_line(e) + "forms on a curve or torus have degree 1");
    }
    expr_add(out.coeff, widen(coeff, vars));
  }
  return out;
}

LogForm parse_log_form(const Entry& e, const Chart& chart) {
  const auto vars = chart_vars(chart.n);
  auto terms = parser_for(e, vars, chart_bases(chart)).parse_form();
  std::optional<LogForm> out;
  for (auto& [basis, coeff] : terms) {
    if (basis.empty()) continue;  // a zero term
    MPoly f = expr_to_mpoly(coeff, chart.n, e);
    LogForm::IndexSet s;
    for (const auto& b : basis) {
      s.push_back(b.index);
      if (b.regular && b.index <= chart.l) f = f.times_variable(b.index);
    }
    LogForm piece = LogForm::basis(chart, s, f);
    if (!out) out = LogForm(chart, piece.degree());
    if (out->degree() != piece.degree()) {
      throw Error(ErrorCode::kValidationError, at_line(e) + "form mixes degrees " +
                                                   std::to_string(out->degree()) + " and " +
                                                   std::to_string(piece.degree()));
    }
    *out += piece;
  }
  return out ? *out : LogForm(chart, 1);
}

int positive_option(const Entry& e, long lo) {
  const long v = parser_for(e, {}).parse_integer_only();
  if (v < lo) {
    throw Error(ErrorCode::kValidationError,
                at_line(e) + e.key + " must be at least " + std::to_string(lo));
  }
  return static_cast<int>(v);
}

std::string rational_text(const Rational& q) { return to_string(q); }

json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

json matrix_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_json(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json page_json(const TwoTermPage& p) {
  return json{{"dims", {p.dim00, p.dim01, p.dim10, p.dim11}},
              {"d1", matrix_json(p.d1)},
              {"d1p", matrix_json(p.d1p)}};
}

json cohomology_json(const Ring& ring, const CohomologyReport& r) {
  json h0 = json::array();
  for (const auto& s : r.h0_basis) h0.push_back(ring.render(s));
  json h1 = json::array();
  for (const auto& w : r.h1_basis) h1.push_back(ring.render(w));
  json windows = json::array();
  for (const auto& w : r.windows) windows.push_back({{"n", w.n}, {"h0", w.h0}, {"h1", w.h1}});
  return json{{"h0", {{"dim", r.h0_dim}, {"basis", h0}}},
              {"h1", {{"dim", r.h1_dim}, {"basis", h1}}},
              {"certificate",
               {{"delta", r.delta}, {"n_start", r.n_start}, {"stabilized_at", r.stabilized_at},
                {"windows", windows}}}};
}

TruncationWindow window_of(const JobOptions& o) {
  TruncationWindow w;
  w.n_max = o.max_weight;
  w.stabilization_span = o.span;
  return w;
}

std::vector<RingElement> chain_map_samples(const Ring& ring) {
  std::vector<RingElement> out;
  if (ring.model() == RingModel::kTorus) {
    for (long k = -6; k <= 6; ++k) out.push_back(ring.laurent_monomial(1, k));
    return out;
  }
  const int px = ring.inverts_x() ? 2 : 0;
  const int qy = ring.inverts_y() ? 2 : 0;
  for (int e = 0; e <= 1; ++e)
    for (int i = 0; 2 * i + 3 * e <= 12; ++i)
      for (int a = 0; a <= px; ++a)
        for (int b = 0; b <= qy; ++b) out.push_back(ring.monomial(1, i - a, e - b));
  return out;
}

json run_json(const JobSpec& job) {
  json out;
  out["mode"] = std::string(job_mode_name(job.mode));
  switch (job.mode) {
    case JobMode::kCohomology:
    case JobMode::kGm: {
      const Ring ring = job_ring(job);
      const Form1 omega = job_omega(job, ring);
      out.update(cohomology_json(ring, twisted_cohomology(ring, omega, window_of(job.options))));
      out["ring"] = ring.describe();
      out["omega"] = ring.render(omega);
      if (job.lambda) out["lambda"] = rational_text(*job.lambda);
      out["certificate"]["max_weight"] = job.options.max_weight;
      out["certificate"]["span"] = job.options.span;
      break;
    }
    case JobMode::kGaugeCheck: {
      const Ring ring = job_ring(job);
      const Form1 psi1 = job_omega(job, ring);
      const RingElement g = expr_to_element(ring, *job.gauge);
      const auto samples = chain_map_samples(ring);
      const ChainMapVerdict verdict = verify_chain_map(ring, psi1, g, samples);
      const GaugeComparison cmp = gauge_invariance_check(ring, psi1, g, window_of(job.options));
      out["ring"] = ring.describe();
      out["psi1"] = ring.render(psi1);
      out["psi2"] = ring.render(cmp.psi2);
      out["g"] = ring.render(g);
      out["g_inverse"] = ring.render(ring.inverse(g));
      out["chain_map"] = {{"holds", verdict.holds},
                          {"samples", samples.size()},
                          {"counterexample", verdict.counterexample
                                                 ? json(ring.render(*verdict.counterexample))
                                                 : json(nullptr)}};
      out["first"] = cohomology_json(ring, cmp.first);
      out["second"] = cohomology_json(ring, cmp.second);
      out["equal"] = cmp.equal;
      break;
    }
    case JobMode::kResidue: {
      const LogForm& a = *job.chart_form;
      out["chart"] = {{"n", job.chart->n}, {"l", job.chart->l}};
      out["form"] = render(a);
      out["degree"] = a.degree();
      out["pole_free"] = is_pole_free(a);
      out["d_log"] = render(d_log(a));
      json residues = json::array();
      if (a.degree() == 1) {
        for (const auto& r : residue(a)) residues.push_back(render(r));
      } else if (a.degree() > 1) {
        for (int j = 1; j <= a.chart().l; ++j) residues.push_back(render(residue_k(a, j)));
      }
      out["residues"] = residues;
      break;
    }
    case JobMode::kHyper: {
      const TwoTermPage& p = *job.page;
      const HyperReport r = hypercohomology(p);
      out["dims"] = {p.dim00, p.dim01, p.dim10, p.dim11};
      out["h0"] = r.h0;
      out["h1"] = r.h1;
      out["h2"] = r.h2;
      out["e2_01"] = r.e2_01;
      const bool degenerate = p.d1p.is_zero();
      out["degenerate"] = degenerate;
      if (job.options.assume_degeneration) {
        out["h1_split"] = hyper1_split(p);
      } else {
        out["h1_split"] = degenerate ? json(hyper1_split(p)) : json(nullptr);
      }
      break;
    }
  }
  return out;
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    }
    return;
  }
  if (j.is_array() && std::none_of(j.begin(), j.end(), [](const json& v) { return v.is_structured(); })) {
    std::vector<std::string> items;
    for (const auto& v : j) items.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    os << prefix << ": " << join(items, "; ") << "\n";
    return;
  }
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
    return;
  }
  os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

}  // namespace

ParseError::ParseError(int line, int column, std::vector<std::string> expected,
                       const std::string& found)
    : Error(ErrorCode::kParseError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) +
                ": expected one of {" + join(sorted_unique(expected), ", ") + "} but found " + found),
      line_(line),
      column_(column),
      expected_(sorted_unique(std::move(expected))) {}

std::string_view job_mode_name(JobMode mode) {
  switch (mode) {
    case JobMode::kCohomology: return "cohomology";
    case JobMode::kGm: return "gm";
    case JobMode::kGaugeCheck: return "gauge-check";
    case JobMode::kResidue: return "residue";
    case JobMode::kHyper: return "hyper";
  }
  return "unknown";
}

JobSpec parse_job(std::string_view document) {
  JobSpec job;
  const std::size_t first = document.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && document[first] == '{') {
    job.mode = JobMode::kHyper;
    job.page = parse_page(document);
    job.page->validate();
    return job;
  }

  const auto sections = split_document(document);
  if (sections.empty()) throw Error(ErrorCode::kValidationError, "job document has no sections");
  auto section = [&](const char* name) -> const Section* {
    auto it = sections.find(name);
    return it == sections.end() ? nullptr : &it->second;
  };

  if (const Section* s = section("chart")) {
    if (sections.size() != 1) {
      throw Error(ErrorCode::kValidationError, "a [chart] job takes no other sections");
    }
    const int n = positive_option(require_entry(*s, "n"), 1);
    const int l = positive_option(require_entry(*s, "l"), 1);
    job.mode = JobMode::kResidue;
    job.chart = Chart::make(n, l);
    job.chart_form = parse_log_form(require_entry(*s, "form"), *job.chart);
    return job;
  }

  if (const Section* s = section("compute")) {
    if (const Entry* e = find_entry(*s, "max_weight")) job.options.max_weight = positive_option(*e, 1);
    if (const Entry* e = find_entry(*s, "span")) job.options.span = positive_option(*e, 2);
  }

  const Section* curve = section("curve");
  const Section* gm = section("gm");
  if (curve != nullptr && gm != nullptr) {
    throw Error(ErrorCode::kValidationError, "[curve] and [gm] describe different rings");
  }
  if (curve != nullptr) {
    const Entry& fe = require_entry(*curve, "f");
    CurveSection c;
    c.f = expr_to_qpoly(parser_for(fe, {"x"}).parse_expression_only(), fe);
    if (const Entry* inv = find_entry(*curve, "invert")) {
      for (const auto& v : parser_for(*inv, {}).parse_name_list({"x", "y"})) {
        (v == "x" ? c.invert_x : c.invert_y) = true;
      }
    }
    job.curve = c;
  }
  if (gm != nullptr) {
    const Entry& le = require_entry(*gm, "lambda");
    const Expr e = parser_for(le, {}).parse_expression_only();
    job.lambda = e.terms.empty() ? Rational(0) : e.terms.begin()->second;
  }
  if (const Section* s = section("twist")) {
    if (gm != nullptr) throw Error(ErrorCode::kValidationError, "[gm] already fixes the twist");
    job.omega = parse_ring_form(require_entry(*s, "omega"), curve == nullptr);
  }
  if (const Section* s = section("gauge")) {
    const Entry& ge = require_entry(*s, "g");
    const std::vector<std::string> vars = curve == nullptr ? std::vector<std::string>{"t"}
                                                           : std::vector<std::string>{"x", "y"};
    job.gauge = widen(parser_for(ge, vars).parse_expression_only(), vars);
    job.mode = JobMode::kGaugeCheck;
  } else if (gm != nullptr) {
    job.mode = JobMode::kGm;
  } else {
    job.mode = JobMode::kCohomology;
  }
  if (curve == nullptr && gm == nullptr && !job.omega) {
    throw Error(ErrorCode::kValidationError, "job needs a [curve], [gm] or torus [twist] section");
  }

  // Surface ring-level errors (non-smooth f, missing localisation) now.
  const Ring ring = job_ring(job);
  job_omega(job, ring);
  if (job.gauge) expr_to_element(ring, *job.gauge);
  return job;
}

std::string render_job(const JobSpec& job) {
  if (job.mode == JobMode::kHyper) return page_json(*job.page).dump() + "\n";
  std::ostringstream os;
  if (job.mode == JobMode::kResidue) {
    os << "[chart]\nn = " << job.chart->n << "\nl = " << job.chart->l << "\nform = ";
    const LogForm& a = *job.chart_form;
    if (a.is_zero()) {
      os << "0\n";
      return os.str();
    }
    bool first = true;
    for (const auto& [s, f] : a.terms()) {
      os << (first ? "" : " + ") << "(" << render_expr(mpoly_to_expr(f), chart_vars(a.chart().n)) << ")";
      first = false;
      if (s.empty()) continue;
      os << " ";
      for (std::size_t k = 0; k < s.size(); ++k) {
        const std::string idx = std::to_string(s[k]);
        os << (k > 0 ? "&" : "") << "dt" << idx << (s[k] <= a.chart().l ? "/t" + idx : "");
      }
    }
    os << "\n";
    return os.str();
  }
  auto form_text = [](const RingForm& w) {
    if (w.coeff.terms.empty()) return std::string("0");
    return "(" + render_expr(w.coeff, kRingVars) + ") " +
           (w.basis == FormBasis::kDxOverY ? "dx/y" : "dt/t");
  };
  if (job.curve) {
    os << "[curve]\nf = " << render(job.curve->f) << "\n";
    std::vector<std::string> inv;
    if (job.curve->invert_x) inv.push_back("x");
    if (job.curve->invert_y) inv.push_back("y");
    if (!inv.empty()) os << "invert = " << join(inv, ", ") << "\n";
  }
  if (job.lambda) os << "[gm]\nlambda = " << rational_text(*job.lambda) << "\n";
  if (job.omega) os << "[twist]\nomega = " << form_text(*job.omega) << "\n";
  if (job.gauge) os << "[gauge]\ng = " << render_expr(*job.gauge, kRingVars) << "\n";
  const JobOptions defaults;
  if (job.options.max_weight != defaults.max_weight || job.options.span != defaults.span) {
    os << "[compute]\nmax_weight = " << job.options.max_weight << "\nspan = " << job.options.span << "\n";
  }
  return os.str();
}

Ring job_ring(const JobSpec& job) {
  if (job.curve) return Ring::curve({job.curve->f, job.curve->invert_x, job.curve->invert_y});
  return Ring::torus();
}

Form1 job_omega(const JobSpec& job, const Ring& ring) {
  if (job.lambda) return Form1{ring.laurent_monomial(-*job.lambda, 0)};
  if (!job.omega) return Form1{ring.zero()};
  return Form1{expr_to_element(ring, job.omega->coeff)};
}

std::string run_job(const JobSpec& job) {
  const json report = run_json(job);
  if (job.options.output == OutputFormat::kText) {
    std::ostringstream os;
    flatten(report, "", os);
    return os.str();
  }
  return report.dump(2) + "\n";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotStabilized:
    case ErrorCode::kNotAUnit:
    case ErrorCode::kNotClosed:
    case ErrorCode::kDegenerationViolated:
      return 3;
    default:
      return 2;
  }
}

std::string error_report(const Error& e) {
  json err{{"code", std::string(e.code_name())}, {"message", e.what()}};
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    err["line"] = p->line();
    err["column"] = p->column();
    err["expected"] = p->expected();
  }
  if (const auto* n = dynamic_cast<const NotStabilizedError*>(&e)) {
    json trail = json::array();
    for (const auto& w : n->trail()) trail.push_back({{"n", w.n}, {"h0", w.h0}, {"h1", w.h1}});
    err["trail"] = trail;
  }
  if (const auto* c = dynamic_cast<const NotClosedError*>(&e)) err["witness"] = render(c->witness());
  return json{{"error", err}}.dump(2) + "\n";
}

}  // namespace twistcoh
