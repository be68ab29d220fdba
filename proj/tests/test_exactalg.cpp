#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "twistcoh/error.hpp"
#include "twistcoh/exactalg.hpp"

using namespace twistcoh;

namespace {

QMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> entry(-3, 3), den(1, 4), sparse(0, 2);
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (sparse(rng) != 0) m.at(r, c) = Rational(entry(rng), den(rng));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c).canonicalize();
  return m;
}

}  // namespace

TEST_CASE("parse_rational accepts integers and fractions") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("ragged initializer raises shape mismatch") {
  try {
    QMatrix m{{1, 2}, {3}};
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kShapeMismatch);
  }
}

TEST_CASE("kernel of [1 1] is spanned by (1, -1)") {
  QMatrix m{{1, 1}};
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == QVector{1, -1});
}

TEST_CASE("reduced echelon of a small matrix") {
  QMatrix m{{2, 4, 1}, {1, 2, 0}};
  EchelonForm e = reduced_echelon(m);
  CHECK(e.pivots == std::vector<std::size_t>{0, 2});
  CHECK(e.reduced == QMatrix{{1, 2, 0}, {0, 0, 1}});
}

TEST_CASE("cokernel of the zero map is everything") {
  Cokernel c = cokernel_basis(QMatrix(3, 2));
  CHECK(c.dimension == 3);
  CHECK(c.representatives.size() == 3);
}

TEST_CASE("rank agrees with naive elimination and rank-nullity holds") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dim(0, 7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = dim(rng), cols = dim(rng);
    QMatrix m = random_matrix(rng, rows, cols);
    const std::size_t r = rank(m);
    CHECK(r == oracle::naive_rank(m));
    auto k = kernel_basis(m);
    CHECK(k.size() + r == cols);
    for (const auto& v : k) {
      for (const auto& entry : m.apply(v)) CHECK(entry == 0);
    }
    if (!k.empty()) CHECK(oracle::naive_rank(QMatrix::from_columns(cols, k)) == k.size());
    Cokernel c = cokernel_basis(m);
    CHECK(c.dimension + r == rows);
    // Image plus representatives span the target.
    std::vector<QVector> cols_all;
    for (std::size_t j = 0; j < cols; ++j) {
      QVector col(rows);
      for (std::size_t i = 0; i < rows; ++i) col[i] = m.at(i, j);
      cols_all.push_back(col);
    }
    for (const auto& rep : c.representatives) cols_all.push_back(rep);
    if (rows > 0) CHECK(oracle::naive_rank(QMatrix::from_columns(rows, cols_all)) == rows);
  }
}

TEST_CASE("reduced echelon is idempotent and row-equivalent") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    QMatrix m = random_matrix(rng, 4, 5);
    EchelonForm e = reduced_echelon(m);
    CHECK(reduced_echelon(e.reduced).reduced == e.reduced);
    for (std::size_t k = 0; k < e.pivots.size(); ++k) CHECK(e.reduced.at(k, e.pivots[k]) == 1);
    CHECK(kernel_basis(e.reduced) == kernel_basis(m));
  }
}

TEST_CASE("transpose and product") {
  QMatrix a{{1, 2}, {3, 4}};
  CHECK(a.transpose() == QMatrix{{1, 3}, {2, 4}});
  CHECK(a * QMatrix::identity(2) == a);
  CHECK(a * a == QMatrix{{7, 10}, {15, 22}});
}
