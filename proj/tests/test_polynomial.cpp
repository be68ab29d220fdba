#include <doctest.h>

#include "twistcoh/polynomial.hpp"

using namespace twistcoh;

TEST_CASE("basic univariate arithmetic") {
  QPoly x = QPoly::x();
  QPoly p = x * x - QPoly(1);
  CHECK(p.degree() == 2);
  CHECK(p.eval(3) == 8);
  CHECK(p.derivative() == QPoly(std::vector<Rational>{0, 2}));
  auto [q, r] = divmod(p, x - QPoly(1));
  CHECK(q == x + QPoly(1));
  CHECK(r.is_zero());
  CHECK(gcd(p, x * x + x * Rational(2) + QPoly(1)) == x + QPoly(1));
  CHECK(pow(x + QPoly(1), 3) == QPoly({1, 3, 3, 1}));
  CHECK(QPoly().degree() == -1);
  CHECK((x * x * x).x_adic_valuation() == 3);
}

TEST_CASE("render uses explicit multiplication") {
  QPoly f({-1, -4, 0, 4});
  CHECK(render(f) == "4*x^3 - 4*x - 1");
  CHECK(render(QPoly({Rational(1, 2), 0, -1})) == "-x^2 + 1/2");
  CHECK(render(QPoly()) == "0");
}

TEST_CASE("laurent polynomials") {
  LaurentPoly a = LaurentPoly::monomial(2, -1) + LaurentPoly(3);
  LaurentPoly b = LaurentPoly::monomial(1, 1);
  LaurentPoly ab = a * b;
  CHECK(ab.coeff(0) == 2);
  CHECK(ab.coeff(1) == 3);
  CHECK(a.min_exponent() == -1);
  CHECK((a - a).is_zero());
}
