#include "hodge/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace hodge {

namespace {

constexpr const char* kMulticomplexFormat = "hodgecx-multicomplex";
constexpr const char* kSeriesFormat = "hodgecx-series";
constexpr const char* kStructureFormat = "hodgecx-structure";

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) fail(std::string("missing field '") + name + "'");
  return doc.at(name);
}

int as_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where + ": expected an integer");
  return v.get<int>();
}

std::size_t as_index(const Json& v, const std::string& where) {
  const int i = as_int(v, where);
  if (i < 0) fail(where + ": expected a nonnegative integer");
  return static_cast<std::size_t>(i);
}

Scalar as_scalar(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(where + ": rationals must be strings \"p/q\"");
  try {
    return parse_scalar(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
}

void check_header(const Json& doc, const char* format) {
  if (!doc.is_object()) fail("document must be a JSON object");
  const Json& f = field(doc, "format");
  if (!f.is_string() || f.get<std::string>() != format) {
    fail(std::string("expected format '") + format + "'");
  }
  const int version = as_int(field(doc, "version"), "version");
  if (version != kFormatVersion) fail("unsupported format version " + std::to_string(version));
}

Json space_to_json(const GradedSpace& s) {
  Json out = Json::array();
  for (const auto& [k, n] : s.dims()) out.push_back({k, n});
  return out;
}

GradedSpace space_from_json(const Json& doc) {
  const Json& degrees = field(doc, "degrees");
  if (!degrees.is_array()) fail("degrees: expected an array of [degree, dim] pairs");
  std::map<int, std::size_t> dims;
  for (std::size_t j = 0; j < degrees.size(); ++j) {
    const std::string where = "degrees[" + std::to_string(j) + "]";
    const Json& pair = degrees[j];
    if (!pair.is_array() || pair.size() != 2) fail(where + ": expected [degree, dim]");
    const int k = as_int(pair[0], where);
    if (dims.count(k)) fail(where + ": duplicate degree " + std::to_string(k));
    dims[k] = as_index(pair[1], where);
  }
  return GradedSpace(dims);
}

Json map_entries(const GradedMap& f) {
  Json out = Json::array();
  for (const auto& [k, block] : f.blocks()) {
    for (const auto& e : block.entries()) out.push_back({k, e.row, e.col, to_string(e.value)});
  }
  return out;
}

GradedMap map_from_entries(const Json& entries, const GradedSpace& space, int degree,
                           const std::string& where) {
  if (!entries.is_array()) fail(where + ": entries must be an array");
  std::map<int, std::vector<MatrixEntry>> blocks;
  std::set<std::tuple<int, std::size_t, std::size_t>> seen;
  for (std::size_t j = 0; j < entries.size(); ++j) {
    const std::string at = where + ".entries[" + std::to_string(j) + "]";
    const Json& e = entries[j];
    if (!e.is_array() || e.size() != 4) fail(at + ": expected [source_degree, row, col, \"p/q\"]");
    const int k = as_int(e[0], at);
    const std::size_t row = as_index(e[1], at);
    const std::size_t col = as_index(e[2], at);
    if (col >= space.dim(k)) fail(at + ": column out of range for degree " + std::to_string(k));
    if (row >= space.dim(k + degree)) {
      fail(at + ": row out of range for degree " + std::to_string(k + degree));
    }
    if (!seen.insert({k, row, col}).second) fail(at + ": duplicate entry");
    blocks[k].push_back({row, col, as_scalar(e[3], at)});
  }
  GradedMap out(space, space, degree);
  for (const auto& [k, list] : blocks) {
    out.set_block(k, Matrix::from_entries(space.dim(k + degree), space.dim(k), list));
  }
  return out;
}

std::vector<GradedMap> indexed_maps(const Json& list, const GradedSpace& space, int offset,
                                    const char* name) {
  if (!list.is_array()) fail(std::string(name) + ": expected an array");
  std::map<std::size_t, GradedMap> maps;
  for (std::size_t j = 0; j < list.size(); ++j) {
    const std::string where = std::string(name) + "[" + std::to_string(j) + "]";
    const std::size_t n = as_index(field(list[j], "n"), where + ".n");
    if (maps.count(n)) fail(where + ": duplicate n = " + std::to_string(n));
    const int degree = 2 * static_cast<int>(n) + offset;
    maps.emplace(n, map_from_entries(field(list[j], "entries"), space, degree, where));
  }
  std::vector<GradedMap> out;
  const std::size_t len = maps.empty() ? 0 : maps.rbegin()->first + 1;
  for (std::size_t n = 0; n < len; ++n) {
    auto it = maps.find(n);
    out.push_back(it != maps.end() ? it->second
                                   : GradedMap::zero(space, 2 * static_cast<int>(n) + offset));
  }
  return out;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points at the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t j = 0; j < end; ++j) {
      if (text[j] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError(msg, line, column);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (const auto& e : m.entries()) out.push_back({e.row, e.col, to_string(e.value)});
  return out;
}

Json multicomplex_to_json(const Multicomplex& m, const Json& metadata) {
  Json ops = Json::array();
  const std::size_t len = std::max<std::size_t>(m.length(), 1);
  for (std::size_t n = 0; n < len; ++n) {
    ops.push_back({{"n", n}, {"entries", map_entries(m.delta(n))}});
  }
  Json doc = {{"format", kMulticomplexFormat},
              {"version", kFormatVersion},
              {"degrees", space_to_json(m.space())},
              {"operators", ops}};
  if (!metadata.empty()) doc["metadata"] = metadata;
  return doc;
}

Multicomplex multicomplex_from_json(const Json& doc) {
  try {
    check_header(doc, kMulticomplexFormat);
    const GradedSpace space = space_from_json(doc);
    std::vector<GradedMap> ops = indexed_maps(field(doc, "operators"), space, -1, "operators");
    if (ops.empty()) ops.push_back(GradedMap::zero(space, -1));
    return Multicomplex(space, std::move(ops));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed multicomplex: ") + e.what());
  }
}

std::string print_multicomplex(const Multicomplex& m, const Json& metadata) {
  return multicomplex_to_json(m, metadata).dump(2) + "\n";
}

Multicomplex parse_multicomplex(std::string_view text) {
  return multicomplex_from_json(parse_json(text));
}

Json series_to_json(const OperatorSeries& s) {
  Json coeffs = Json::array();
  for (std::size_t n = 0; n <= s.max_power(); ++n) {
    const GradedMap c = s.coeff(n);
    if (!c.is_zero()) coeffs.push_back({{"n", n}, {"entries", map_entries(c)}});
  }
  return {{"format", kSeriesFormat},
          {"version", kFormatVersion},
          {"degrees", space_to_json(s.space())},
          {"offset", s.offset()},
          {"coefficients", coeffs}};
}

OperatorSeries series_from_json(const Json& doc) {
  try {
    check_header(doc, kSeriesFormat);
    const GradedSpace space = space_from_json(doc);
    const int offset = as_int(field(doc, "offset"), "offset");
    return OperatorSeries::from_coeffs(
        space, offset, indexed_maps(field(doc, "coefficients"), space, offset, "coefficients"));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed series: ") + e.what());
  } catch (const DegreeMismatch& e) {
    throw ParseError(std::string("malformed series: ") + e.what());
  }
}

Json polyvector_to_json(const PolyVector& p) {
  Json out = Json::array();
  for (const auto& [key, c] : p.terms()) {
    Json idx = Json::array();
    for (int j : key.idx) idx.push_back(j + 1);
    out.push_back({{"coefficient", to_string(c)}, {"monomial", key.alpha}, {"indices", idx}});
  }
  return out;
}

PolyVector polyvector_from_json(const Json& terms, int dim) {
  if (!terms.is_array()) fail("polyvector: expected an array of terms");
  PolyVector out(dim);
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const std::string where = "term[" + std::to_string(j) + "]";
    const Json& t = terms[j];
    const Scalar c = as_scalar(field(t, "coefficient"), where + ".coefficient");
    const Json& mono = field(t, "monomial");
    if (!mono.is_array() || static_cast<int>(mono.size()) != dim) {
      fail(where + ".monomial: expected " + std::to_string(dim) + " exponents");
    }
    std::vector<int> alpha;
    for (const Json& e : mono) alpha.push_back(static_cast<int>(as_index(e, where + ".monomial")));
    const Json& ids = field(t, "indices");
    if (!ids.is_array()) fail(where + ".indices: expected an array");
    std::vector<int> idx;
    for (const Json& e : ids) {
      const int i = as_int(e, where + ".indices");
      if (i < 1 || i > dim) fail(where + ".indices: index out of range 1.." + std::to_string(dim));
      if (!idx.empty() && i - 1 <= idx.back()) fail(where + ".indices: must be strictly increasing");
      idx.push_back(i - 1);
    }
    out.add({alpha, idx}, c);
  }
  return out;
}

Json structure_to_json(const Structure& s) {
  return {{"format", kStructureFormat},
          {"version", kFormatVersion},
          {"dim", s.dim},
          {"bivector", polyvector_to_json(s.bivector)},
          {"vector", polyvector_to_json(s.vector)}};
}

Structure structure_from_json(const Json& doc) {
  try {
    check_header(doc, kStructureFormat);
    Structure s;
    s.dim = as_int(field(doc, "dim"), "dim");
    if (s.dim < 1) fail("dim must be positive");
    s.bivector = doc.contains("bivector") ? polyvector_from_json(doc.at("bivector"), s.dim)
                                          : PolyVector(s.dim);
    s.vector =
        doc.contains("vector") ? polyvector_from_json(doc.at("vector"), s.dim) : PolyVector(s.dim);
    if (!s.bivector.is_zero() && polyvector_degree(s.bivector) != 2) {
      fail("bivector: every term needs exactly two indices");
    }
    if (!s.vector.is_zero() && polyvector_degree(s.vector) != 1) {
      fail("vector: every term needs exactly one index");
    }
    return s;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed structure: ") + e.what());
  }
}

Structure parse_structure(std::string_view text) { return structure_from_json(parse_json(text)); }

}  // namespace hodge
