#include "twistcoh/hyperspec.hpp"

#include <nlohmann/json.hpp>
#include <string>

#include "twistcoh/error.hpp"

namespace twistcoh {

namespace {

void require_shape(const QMatrix& m, std::size_t rows, std::size_t cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(name) + " is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                    std::to_string(cols));
  }
}

Rational json_rational(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw Error(ErrorCode::kValidationError,
              "matrix entry must be an integer or a \"p/q\" string, got " + v.dump());
}

QMatrix json_matrix(const nlohmann::json& doc, const char* key, std::size_t rows,
                    std::size_t cols) {
  if (!doc.contains(key)) return QMatrix(rows, cols);
  const auto& m = doc.at(key);
  if (!m.is_array()) throw Error(ErrorCode::kValidationError, std::string(key) + " must be an array");
  if (m.size() != rows) {
    throw Error(ErrorCode::kShapeMismatch, std::string(key) + " has " + std::to_string(m.size()) +
                                               " rows, expected " + std::to_string(rows));
  }
  QMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = m[r];
    if (!row.is_array() || row.size() != cols) {
      throw Error(ErrorCode::kShapeMismatch, std::string(key) + " row " + std::to_string(r) +
                                                 " does not have " + std::to_string(cols) +
                                                 " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = json_rational(row[c]);
  }
  return out;
}

}  // namespace

void TwoTermPage::validate() const {
  require_shape(d1, dim10, dim00, "d1");
  require_shape(d1p, dim11, dim01, "d1p");
}

QMatrix total_d0(const TwoTermPage& page) {
  page.validate();
  QMatrix out(page.dim10 + page.dim01, page.dim00);
  for (std::size_t r = 0; r < page.dim10; ++r)
    for (std::size_t c = 0; c < page.dim00; ++c) out.at(r, c) = page.d1.at(r, c);
  return out;
}

QMatrix total_d1(const TwoTermPage& page) {
  page.validate();
  QMatrix out(page.dim11, page.dim10 + page.dim01);
  for (std::size_t r = 0; r < page.dim11; ++r)
    for (std::size_t c = 0; c < page.dim01; ++c) out.at(r, page.dim10 + c) = page.d1p.at(r, c);
  return out;
}

std::size_t hyper0(const TwoTermPage& page) {
  page.validate();
  return kernel_basis(page.d1).size();
}

std::size_t hyper1_total(const TwoTermPage& page) {
  const QMatrix d0 = total_d0(page);
  const QMatrix d1 = total_d1(page);
  const std::size_t kernel = d1.cols() - rank(d1);
  return kernel - rank(d0);
}

std::size_t hyper1_split(const TwoTermPage& page) {
  page.validate();
  if (!page.d1p.is_zero()) {
    throw Error(ErrorCode::kDegenerationViolated,
                "d1' is nonzero (rank " + std::to_string(rank(page.d1p)) +
                    "), so H^1 does not split as Coker(d1) + E^{0,1}");
  }
  return cokernel_basis(page.d1).dimension + page.dim01;
}

std::size_t hyper2(const TwoTermPage& page) {
  page.validate();
  return page.dim11 - rank(page.d1p);
}

std::size_t e2_term(const TwoTermPage& page) {
  page.validate();
  return kernel_basis(page.d1p).size();
}

HyperReport hypercohomology(const TwoTermPage& page) {
  return HyperReport{hyper0(page), hyper1_total(page), hyper2(page), e2_term(page)};
}

TwoTermPage parse_page(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("page is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dims")) {
    throw Error(ErrorCode::kValidationError, "page needs a \"dims\" array");
  }
  const auto& dims = doc.at("dims");
  if (!dims.is_array() || dims.size() != 4) {
    throw Error(ErrorCode::kValidationError, "\"dims\" must list four dimensions");
  }
  for (const auto& d : dims) {
    if (!d.is_number_integer() || d.get<long>() < 0) {
      throw Error(ErrorCode::kValidationError, "dimensions must be nonnegative integers");
    }
  }
  TwoTermPage page;
  page.dim00 = dims[0].get<std::size_t>();
  page.dim01 = dims[1].get<std::size_t>();
  page.dim10 = dims[2].get<std::size_t>();
  page.dim11 = dims[3].get<std::size_t>();
  page.d1 = json_matrix(doc, "d1", page.dim10, page.dim00);
  page.d1p = json_matrix(doc, "d1p", page.dim11, page.dim01);
  return page;
}

std::size_t log_differentials_dim(std::size_t genus, std::size_t punctures) {
  return punctures == 0 ? genus : genus + punctures - 1;
}

TwoTermPage elliptic_log_page(std::size_t punctures, const QVector& omega) {
  TwoTermPage page;
  page.dim00 = 1;
  page.dim01 = 1;
  page.dim10 = log_differentials_dim(1, punctures);
  page.dim11 = 0;
  if (omega.size() != page.dim10) {
    throw Error(ErrorCode::kShapeMismatch, "omega needs " + std::to_string(page.dim10) +
                                               " coordinates, got " +
                                               std::to_string(omega.size()));
  }
  page.d1 = QMatrix::from_columns(page.dim10, {omega});
  page.d1p = QMatrix(0, 1);
  return page;
}

}  // namespace twistcoh
