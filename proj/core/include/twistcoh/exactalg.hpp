#pragma once

// Exact linear algebra over Q: rank, kernels, cokernels and pivot profiles of
// dense rational matrices. Everything is computed with fraction-free
// Gauss-Jordan elimination on integer-scaled rows, so results carry no
// rounding and are reproducible bit-for-bit.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace twistcoh {

using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;

// Accepts "p", "-p", "p/q"; the result is always in lowest terms with q > 0.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix from_columns(std::size_t rows,
                              const std::vector<QVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  bool is_zero() const;
  QMatrix transpose() const;
  QVector apply(const QVector& v) const;
  QMatrix operator*(const QMatrix& rhs) const;
  bool operator==(const QMatrix& rhs) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

// Reduced row echelon form together with its pivot columns (ascending).
// The pivot columns are the lexicographically first column basis of m.
struct EchelonForm {
  QMatrix reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return pivots.size(); }
};

EchelonForm reduced_echelon(const QMatrix& m);

std::size_t rank(const QMatrix& m);

// Kernel of the first `cols` columns of the matrix whose reduced echelon
// form is `e` (the leading block of an augmented matrix).
std::vector<QVector> kernel_from_echelon(const EchelonForm& e, std::size_t cols);

// Basis of {v : m v = 0} in reduced echelon form, ordered by pivot position.
std::vector<QVector> kernel_basis(const QMatrix& m);

struct Cokernel {
  std::size_t dimension = 0;
  // Standard basis vectors e_j whose classes form a basis of target / Im(m).
  std::vector<QVector> representatives;
};

Cokernel cokernel_basis(const QMatrix& m);

}  // namespace twistcoh
