#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "twistcoh/hyperspec.hpp"

using namespace twistcoh;

namespace {

TwoTermPage make_page(std::size_t d00, std::size_t d01, std::size_t d10, std::size_t d11) {
  TwoTermPage p;
  p.dim00 = d00;
  p.dim01 = d01;
  p.dim10 = d10;
  p.dim11 = d11;
  p.d1 = QMatrix(d10, d00);
  p.d1p = QMatrix(d11, d01);
  return p;
}

// Block elimination oracle: H^1 of D^0 -> D^1 -> D^2 from naive ranks of the
// two block differentials.
std::size_t oracle_h1(const TwoTermPage& p) {
  const std::size_t d1_rank = oracle::naive_rank(p.d1);
  const std::size_t d1p_rank = oracle::naive_rank(p.d1p);
  return (p.dim10 + p.dim01 - d1p_rank) - d1_rank;
}

}  // namespace

TEST_CASE("zero page") {
  TwoTermPage p = make_page(2, 3, 4, 1);
  CHECK(hyper0(p) == 2);
  CHECK(hyper1_total(p) == 7);
  CHECK(hyper1_split(p) == 7);
  CHECK(hyper2(p) == 1);
  CHECK(e2_term(p) == 3);
}

TEST_CASE("identity d1 with a lone E01 class") {
  TwoTermPage p = make_page(1, 1, 1, 0);
  p.d1 = QMatrix{{1}};
  CHECK(hyper0(p) == 0);
  CHECK(hyper1_total(p) == 1);
}

TEST_CASE("e2 term of a single relation") {
  TwoTermPage p = make_page(0, 2, 0, 1);
  p.d1p = QMatrix{{1, 1}};
  CHECK(e2_term(p) == 1);
  CHECK(hyper2(p) == 0);
  try {
    hyper1_split(p);
    FAIL("split route accepted a nonzero d1'");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerationViolated);
  }
}

TEST_CASE("shape mismatch") {
  TwoTermPage p = make_page(2, 1, 1, 1);
  p.d1 = QMatrix(2, 2);
  try {
    hyper0(p);
    FAIL("bad shape accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kShapeMismatch);
  }
}

TEST_CASE("totalised differentials compose to zero") {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    TwoTermPage p = gen::page(rng, 5, false);
    QMatrix d0 = total_d0(p), d1 = total_d1(p);
    if (d0.rows() == 0 || d1.rows() == 0 || d0.cols() == 0) continue;
    CHECK((d1 * d0).is_zero());
  }
}

TEST_CASE("random pages against the block elimination oracle") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    TwoTermPage p = gen::page(rng, 6, trial % 3 == 0);
    const HyperReport r = hypercohomology(p);
    CHECK(r.h1 == oracle_h1(p));
    CHECK(r.h1 == cokernel_basis(p.d1).dimension + e2_term(p));
    CHECK(r.h0 <= p.dim00);
    CHECK(r.h2 <= p.dim11);
    const long euler = static_cast<long>(r.h0) - static_cast<long>(r.h1) + static_cast<long>(r.h2);
    CHECK(euler == static_cast<long>(p.dim00) - static_cast<long>(p.dim10) -
                       static_cast<long>(p.dim01) + static_cast<long>(p.dim11));
    if (p.d1p.is_zero()) CHECK(hyper1_split(p) == r.h1);
  }
}

TEST_CASE("elliptic curve with punctures") {
  CHECK(log_differentials_dim(1, 2) == 2);
  CHECK(log_differentials_dim(2, 3) == 4);
  CHECK(log_differentials_dim(1, 0) == 1);
  for (std::size_t n : {2, 3, 5}) {
    QVector omega(n, 0);
    omega[0] = 1;
    TwoTermPage p = elliptic_log_page(n, omega);
    CHECK(hyper0(p) == 0);
    CHECK(hyper1_split(p) == n);
    CHECK(hyper1_total(p) == n);
  }
  CHECK_THROWS_AS(elliptic_log_page(2, QVector{1}), Error);
}

TEST_CASE("page documents") {
  TwoTermPage p = parse_page(R"({"dims": [1, 1, 2, 0], "d1": [["1/2"], [3]], "d1p": []})");
  CHECK(p.dim10 == 2);
  CHECK(p.d1.at(0, 0) == Rational(1, 2));
  CHECK(p.d1p.rows() == 0);
  CHECK(hyper1_split(p) == 2);
  CHECK_THROWS_AS(parse_page(R"({"dims": [1, 1, 2, 0], "d1": [[1]]})"), Error);
  CHECK_THROWS_AS(parse_page(R"({"dims": [1, 1]})"), Error);
  try {
    parse_page("{nope");
    FAIL("malformed JSON accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParseError);
  }
}
