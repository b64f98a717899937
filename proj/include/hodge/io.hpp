#pragma once

// Versioned JSON documents. Rationals are always strings "p/q" (or "p"),
// in lowest terms on output.
//
// Multicomplex:
//   {"format": "hodgecx-multicomplex", "version": 1,
//    "degrees": [[degree, dim], ...],
//    "operators": [{"n": 0, "entries": [[source_degree, row, col, "p/q"], ...]}, ...],
//    "metadata": {...}}
// Series: same layout with "format": "hodgecx-series", an "offset" field
// and "coefficients" in place of "operators".
// Structure (polyvectors on R^m, indices 1-based):
//   {"format": "hodgecx-structure", "version": 1, "dim": m,
//    "bivector": [{"coefficient": "p/q", "monomial": [a1..am], "indices": [i, j]}, ...],
//    "vector": [...]}

#include <string>
#include <string_view>

#include <json.hpp>

#include "hodge/geom.hpp"

namespace hodge {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json(std::string_view text);
/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::string& path);

Json multicomplex_to_json(const Multicomplex& m, const Json& metadata = Json::object());
/// Structural checks only (degrees, shapes); the relations are not checked.
Multicomplex multicomplex_from_json(const Json& doc);
std::string print_multicomplex(const Multicomplex& m, const Json& metadata = Json::object());
Multicomplex parse_multicomplex(std::string_view text);

Json series_to_json(const OperatorSeries& s);
OperatorSeries series_from_json(const Json& doc);

Json polyvector_to_json(const PolyVector& p);
PolyVector polyvector_from_json(const Json& terms, int dim);

struct Structure {
  int dim = 0;
  PolyVector bivector;
  PolyVector vector;
};

Json structure_to_json(const Structure& s);
Structure structure_from_json(const Json& doc);
Structure parse_structure(std::string_view text);

/// Block as a JSON array of [row, col, "p/q"] triples.
Json matrix_to_json(const Matrix& m);

}  // namespace hodge
