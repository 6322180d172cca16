#include "hyperconvex/serialization.hpp"

#include <charconv>
#include <limits>
#include <cmath>
#include <sstream>

namespace hyperconvex {

namespace {

const nlohmann::json& require_field(const nlohmann::json& doc, const char* name) {
  if (!doc.is_object()) throw SchemaError("set document must be a JSON object");
  auto it = doc.find(name);
  if (it == doc.end()) throw SchemaError(std::string("missing field '") + name + "'");
  return *it;
}

Vector read_numbers(const nlohmann::json& row, const std::string& where) {
  if (!row.is_array()) throw SchemaError(where + ": expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(row.size()));
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!row[i].is_number()) throw SchemaError(where + "[" + std::to_string(i) + "]: expected a number");
    const double x = row[i].get<double>();
    if (!std::isfinite(x)) throw SchemaError(where + "[" + std::to_string(i) + "]: non-finite number");
    v(static_cast<Eigen::Index>(i)) = x;
  }
  return v;
}

// Rows of an array of arrays as matrix columns; every row must have length n.
Matrix read_rows(const nlohmann::json& rows, Eigen::Index n, const std::string& where, bool allow_empty) {
  if (!rows.is_array()) throw SchemaError(where + ": expected an array of arrays");
  if (rows.empty() && !allow_empty) throw SchemaError(where + ": must not be empty");
  Matrix out(n, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string name = where + "[" + std::to_string(i) + "]";
    Vector v = read_numbers(rows[i], name);
    if (v.size() != n) {
      throw SchemaError(name + ": length " + std::to_string(v.size()) + " differs from ambient_dim " +
                        std::to_string(n));
    }
    out.col(static_cast<Eigen::Index>(i)) = v;
  }
  return out;
}

Matrix orthonormalize(const Matrix& basis, std::vector<std::string>* warnings, const Tolerances& tol) {
  // Bases that are orthonormal to roundoff (such as our own output) are kept
  // bit for bit, so parse and serialize compose to a fixed point.
  const double eps = std::numeric_limits<double>::epsilon();
  if (basis.cols() == 0 ||
      (basis.transpose() * basis - Matrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff() <=
          16.0 * eps * static_cast<double>(basis.rows())) {
    return basis;
  }
  Matrix q = basis;
  const double scale = basis.size() == 0 ? 1.0 : std::max(1.0, basis.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    }
    const double norm = q.col(j).norm();
    if (!(norm > tol.rank * scale)) {
      throw SchemaError("basis[" + std::to_string(j) + "]: basis rows are linearly dependent");
    }
    q.col(j) /= norm;
  }
  const double moved = q.cols() == 0 ? 0.0 : (q - basis).cwiseAbs().maxCoeff();
  if (warnings != nullptr && moved > tol.orth) {
    std::ostringstream msg;
    msg << "basis orthonormalized on load (max entry change " << moved << ")";
    warnings->push_back(msg.str());
  }
  return q;
}

}  // namespace

ConvexSet parse_set(const nlohmann::json& doc, std::vector<std::string>* warnings, const Tolerances& tol) {
  const nlohmann::json& type_field = require_field(doc, "type");
  if (!type_field.is_string()) throw SchemaError("type: expected a string");
  const std::string type = type_field.get<std::string>();

  const nlohmann::json& dim_field = require_field(doc, "ambient_dim");
  if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1) {
    throw SchemaError("ambient_dim: expected a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(dim_field.get<long long>());

  if (type == "polytope") {
    return Polytope(read_rows(require_field(doc, "points"), n, "points", false));
  }
  if (type == "subspace") {
    Matrix basis = orthonormalize(read_rows(require_field(doc, "basis"), n, "basis", true), warnings, tol);
    if (basis.cols() > n) throw SchemaError("basis: more rows than ambient_dim");
    return Subspace(std::move(basis), tol);
  }
  if (type == "flat") {
    Vector base = read_numbers(require_field(doc, "base"), "base");
    if (base.size() != n) throw SchemaError("base: length differs from ambient_dim");
    Matrix basis = orthonormalize(read_rows(require_field(doc, "basis"), n, "basis", true), warnings, tol);
    if (basis.cols() > n) throw SchemaError("basis: more rows than ambient_dim");
    return Flat(std::move(base), Subspace(std::move(basis), tol));
  }
  throw SchemaError("type: unknown set type '" + type + "' (expected polytope, flat or subspace)");
}

nlohmann::json serialize(const ConvexSet& set) {
  nlohmann::json doc;
  doc["type"] = std::string(kind_name(set));
  doc["ambient_dim"] = ambient_dim(set);
  if (const auto* p = std::get_if<Polytope>(&set)) {
    doc["points"] = to_json(p->points());
  } else if (const auto* f = std::get_if<Flat>(&set)) {
    doc["base"] = to_json(f->base());
    doc["basis"] = to_json(f->direction().basis());
  } else {
    doc["basis"] = to_json(std::get<Subspace>(set).basis());
  }
  return doc;
}

Vector parse_vector(const nlohmann::json& doc, std::string_view field) {
  if (doc.is_array()) return read_numbers(doc, std::string(field));
  if (doc.is_object()) {
    auto it = doc.find(std::string(field));
    if (it != doc.end()) return read_numbers(*it, std::string(field));
  }
  throw SchemaError("expected an array of numbers or an object with field '" + std::string(field) + "'");
}

Vector parse_point_list(std::string_view text) {
  std::vector<double> coords;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string token(text.substr(start, comma - start));
    const auto first = token.find_first_not_of(" \t");
    const auto last = token.find_last_not_of(" \t");
    if (first == std::string::npos) throw SchemaError("point: empty coordinate");
    token = token.substr(first, last - first + 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
      throw SchemaError("point: invalid coordinate '" + token + "'");
    }
    coords.push_back(value);
    start = comma + 1;
  }
  return Eigen::Map<const Vector>(coords.data(), static_cast<Eigen::Index>(coords.size()));
}

nlohmann::json to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

nlohmann::json to_json(const Matrix& columns) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index j = 0; j < columns.cols(); ++j) rows.push_back(to_json(Vector(columns.col(j))));
  return rows;
}

nlohmann::json to_json(const Interval& interval) {
  return {{"lo", number_json(interval.lo)}, {"hi", number_json(interval.hi)}, {"certified", interval.certified}};
}

nlohmann::json to_json(const ChartTriple& triple) {
  return {{"V", serialize(triple.v)}, {"omega", to_json(triple.omega)}, {"A", serialize(triple.a)}};
}

nlohmann::json number_json(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

}  // namespace hyperconvex
