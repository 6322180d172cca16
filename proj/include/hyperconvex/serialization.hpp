#pragma once

#include "hyperconvex/bundle_charts.hpp"
#include "hyperconvex/convex_set.hpp"
#include "hyperconvex/hypermetrics.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace hyperconvex {

/// Thrown for documents that do not match the set schema. The message names
/// the offending field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Parses {"type": "polytope"|"flat"|"subspace", "ambient_dim": n, ...}.
/// Polytopes carry "points", flats "base" and "basis", subspaces "basis";
/// point and basis lists are row-major arrays of number arrays. Basis rows are
/// orthonormalized by Gram-Schmidt; a note is appended to `warnings` when
/// that moves them by more than tol.orth.
ConvexSet parse_set(const nlohmann::json& doc, std::vector<std::string>* warnings = nullptr,
                    const Tolerances& tol = {});

nlohmann::json serialize(const ConvexSet& set);

/// A JSON array of finite numbers, or an object with a "vector" field.
Vector parse_vector(const nlohmann::json& doc, std::string_view field = "vector");

/// Comma-separated coordinates such as "1,2.5,-3".
Vector parse_point_list(std::string_view text);

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& columns);
nlohmann::json to_json(const Interval& interval);
nlohmann::json to_json(const ChartTriple& triple);

/// Numbers with the non-finite values written as the strings "inf", "-inf"
/// and "nan".
nlohmann::json number_json(double value);

}  // namespace hyperconvex
