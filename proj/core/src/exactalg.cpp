#include "twistcoh/exactalg.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "twistcoh/error.hpp"

namespace twistcoh {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
           return std::isdigit(c) != 0;
         });
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

// Integer matrix with each row scaled by the lcm of its denominators; the
// row space (and hence kernel and pivot profile) is unchanged.
std::vector<std::vector<Integer>> integer_rows(const QMatrix& m) {
  std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer scale = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Integer& den = m.at(r, c).get_den();
      if (den != 1) scale = lcm(scale, den);
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& q = m.at(r, c);
      out[r][c] = q.get_num() * (scale / q.get_den());
    }
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) ||
      den.front() == '-' || den.front() == '+') {
    throw Error(ErrorCode::kValidationError,
                "malformed rational literal '" + std::string(text) + "'");
  }
  Integer d = parse_integer(den);
  if (d == 0) {
    throw Error(ErrorCode::kValidationError,
                "zero denominator in '" + std::string(text) + "'");
  }
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorCode::kShapeMismatch, "ragged matrix literal");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_columns(std::size_t rows,
                              const std::vector<QVector>& columns) {
  QMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      throw Error(ErrorCode::kShapeMismatch, "column length mismatch");
    }
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = columns[c][r];
  }
  return m;
}

bool QMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Rational& q) { return sgn(q) == 0; });
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

QVector QMatrix::apply(const QVector& v) const {
  if (v.size() != cols_) {
    throw Error(ErrorCode::kShapeMismatch, "vector length does not match columns");
  }
  QVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (sgn(v[c]) != 0) acc += at(r, c) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
  if (cols_ != rhs.rows_) {
    throw Error(ErrorCode::kShapeMismatch, "matrix product shape mismatch");
  }
  QMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = at(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out.at(r, c) += a * rhs.at(k, c);
    }
  return out;
}

// Fraction-free Gauss-Jordan: after the step with pivot p every entry is a
// minor of the scaled input, so the division by the previous pivot is exact
// and all pivot entries end up equal to the last pivot.
EchelonForm reduced_echelon(const QMatrix& m) {
  auto a = integer_rows(m);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  Integer t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (sgn(a[i][c]) != 0) {
        sel = i;
        break;
      }
    }
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    const Integer p = a[r][c];
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Integer factor = a[i][c];
      auto& row = a[i];
      const auto& prow = a[r];
      for (std::size_t j = 0; j < cols; ++j) {
        // row[j] = (p * row[j] - factor * prow[j]) / prev
        t = p * row[j];
        if (sgn(factor) != 0 && sgn(prow[j]) != 0) t -= factor * prow[j];
        if (prev != 1) mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        row[j].swap(t);
      }
    }
    prev = p;
    pivots.push_back(c);
    ++r;
  }

  EchelonForm out{QMatrix(rows, cols), pivots};
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(a[i][j]) == 0) continue;
      Rational q(a[i][j], prev);
      q.canonicalize();
      out.reduced.at(i, j) = q;
    }
  }
  return out;
}

std::size_t rank(const QMatrix& m) { return reduced_echelon(m).rank(); }

std::vector<QVector> kernel_from_echelon(const EchelonForm& e, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  std::vector<std::size_t> block_pivots;
  for (auto c : e.pivots) {
    if (c < cols) {
      is_pivot[c] = true;
      block_pivots.push_back(c);
    }
  }

  std::vector<QVector> raw;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(cols);
    v[f] = 1;
    for (std::size_t k = 0; k < block_pivots.size(); ++k) {
      v[block_pivots[k]] = -e.reduced.at(k, f);
    }
    raw.push_back(std::move(v));
  }
  if (raw.empty()) return {};

  // Canonical basis of the kernel: reduced echelon form of the spanning set.
  QMatrix span(raw.size(), cols);
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) span.at(i, j) = raw[i][j];
  const EchelonForm ke = reduced_echelon(span);
  std::vector<QVector> basis;
  basis.reserve(ke.rank());
  for (std::size_t i = 0; i < ke.rank(); ++i) {
    QVector v(cols);
    for (std::size_t j = 0; j < cols; ++j) v[j] = ke.reduced.at(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<QVector> kernel_basis(const QMatrix& m) {
  return kernel_from_echelon(reduced_echelon(m), m.cols());
}

Cokernel cokernel_basis(const QMatrix& m) {
  const EchelonForm e = reduced_echelon(m.transpose());
  std::vector<bool> is_pivot(m.rows(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  Cokernel out;
  out.dimension = m.rows() - e.rank();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (is_pivot[r]) continue;
    QVector v(m.rows());
    v[r] = 1;
    out.representatives.push_back(std::move(v));
  }
  return out;
}

}  // namespace twistcoh
