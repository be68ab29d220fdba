#pragma once

// Hypercohomology of a two-term complex K^0 -> K^1 on a curve, read off its
// E_1 page. The totalised complex is
//   D^0 = E^{0,0} --(d1, 0)--> D^1 = E^{1,0} + E^{0,1} --(0, d1')--> D^2 = E^{1,1}.

#include <cstddef>
#include <string_view>

#include "twistcoh/exactalg.hpp"

namespace twistcoh {

struct TwoTermPage {
  std::size_t dim00 = 0;
  std::size_t dim01 = 0;
  std::size_t dim10 = 0;
  std::size_t dim11 = 0;
  QMatrix d1;   // dim10 x dim00
  QMatrix d1p;  // dim11 x dim01

  // Throws Error(kShapeMismatch) when a matrix shape disagrees with the dims.
  void validate() const;

  friend bool operator==(const TwoTermPage&, const TwoTermPage&) = default;
};

struct HyperReport {
  std::size_t h0 = 0;
  std::size_t h1 = 0;
  std::size_t h2 = 0;
  std::size_t e2_01 = 0;
};

std::size_t hyper0(const TwoTermPage& page);
std::size_t hyper1_total(const TwoTermPage& page);
// Coker(d1) + E^{0,1}; throws Error(kDegenerationViolated) unless d1' = 0.
std::size_t hyper1_split(const TwoTermPage& page);
std::size_t hyper2(const TwoTermPage& page);
std::size_t e2_term(const TwoTermPage& page);
HyperReport hypercohomology(const TwoTermPage& page);

// The totalised differentials, exposed for tests.
QMatrix total_d0(const TwoTermPage& page);
QMatrix total_d1(const TwoTermPage& page);

// {"dims": [d00, d01, d10, d11], "d1": [[...]], "d1p": [[...]]} with entries
// given as integers or "p/q" strings.
TwoTermPage parse_page(std::string_view json);

// h^0(Omega^1(log D)) on a genus g curve with n >= 1 punctures.
std::size_t log_differentials_dim(std::size_t genus, std::size_t punctures);

// Page of O -> Omega^1(log D), f -> f * omega, on an elliptic curve with n
// punctures; omega is given by its coordinates in H^0(Omega^1(log D)).
TwoTermPage elliptic_log_page(std::size_t punctures, const QVector& omega);

}  // namespace twistcoh
