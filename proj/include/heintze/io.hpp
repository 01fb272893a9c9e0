#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "heintze/graph.hpp"
#include "heintze/invariants.hpp"

namespace heintze::io {

using json = nlohmann::json;

/// One Heintze specification as read from disk. The derivation is absent
/// for plain algebra or unweighted graph documents.
struct Spec {
  std::string name;
  std::shared_ptr<const NilpotentLieAlgebra> algebra;
  std::optional<Matrix> derivation;
  std::optional<DirectedGraph> graph;

  bool has_derivation() const { return derivation.has_value(); }
  Derivation validated_derivation() const { return validate_derivation(algebra, *derivation); }
  HeintzeData heintze() const {
    if (!derivation) throw Error(ErrorCode::InvalidInput, "'" + name + "' has no derivation");
    return make_heintze(algebra, *derivation);
  }
};

struct Document {
  std::string kind;
  std::vector<Spec> specs;  // one entry, or two for a pair document
};

[[noreturn]] inline void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

/// Exact scalar from a JSON string ("3", "-1/2") or integer; floats are refused.
inline Rational rational_from_json(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
      bad(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
  if (v.is_number_float()) bad(where + ": floating-point value " + v.dump() + " in exact input");
  bad(where + ": expected a rational string");
}

inline std::size_t index_from_json(const json& v, std::size_t bound, const std::string& where) {
  if (!v.is_number_integer()) bad(where + ": expected a 1-based integer index");
  const auto i = v.get<long long>();
  if (i < 1 || static_cast<std::size_t>(i) > bound) bad(where + ": index " + std::to_string(i) + " out of range");
  return static_cast<std::size_t>(i - 1);
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) bad(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

/// Resolves a value that is either inline or a path (relative to base).
inline json resolve(const json& v, const std::filesystem::path& base) {
  if (v.is_string()) return read_json_file(base / v.get<std::string>());
  return v;
}

inline NilpotentLieAlgebra parse_algebra(const json& doc, const std::string& where) {
  const json& dim_v = require(doc, "dimension", where);
  if (!dim_v.is_number_integer() || dim_v.get<long long>() < 1) bad(where + ": dimension must be a positive integer");
  const std::size_t n = dim_v.get<std::size_t>();
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    for (const auto& l : doc.at("labels")) {
      if (!l.is_string()) bad(where + ": labels must be strings");
      labels.push_back(l.get<std::string>());
    }
    if (labels.size() != n) bad(where + ": expected " + std::to_string(n) + " labels");
  }
  StructureTensor t(n);
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational> given;
  if (doc.contains("brackets")) {
    const json& list = doc.at("brackets");
    if (!list.is_array()) bad(where + ": brackets must be a list");
    for (std::size_t e = 0; e < list.size(); ++e) {
      const json& b = list[e];
      const std::string w = where + ": brackets[" + std::to_string(e) + "]";
      if (!b.is_array() || b.size() != 4) bad(w + ": expected [i, j, k, value]");
      auto key = std::make_tuple(index_from_json(b[0], n, w), index_from_json(b[1], n, w), index_from_json(b[2], n, w));
      if (!given.emplace(key, rational_from_json(b[3], w)).second) bad(w + ": repeated entry");
    }
  }
  for (const auto& [key, v] : given) {
    auto [i, j, k] = key;
    t.at(i, j, k) = v;
    if (!given.count({j, i, k})) t.at(j, i, k) = -v;
  }
  return validate_algebra(t, std::move(labels));
}

inline DirectedGraph parse_graph(const json& doc, const std::string& where) {
  const json& p = require(doc, "vertices", where);
  if (!p.is_number_integer() || p.get<long long>() < 1) bad(where + ": vertices must be a positive integer");
  DirectedGraph g;
  g.vertex_count = p.get<std::size_t>();
  if (doc.contains("edges"))
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) bad(where + ": edges are [source, target] pairs");
      g.edges.emplace_back(index_from_json(e[0], g.vertex_count, where), index_from_json(e[1], g.vertex_count, where));
    }
  validate_graph(g);
  return g;
}

inline Matrix parse_derivation(const json& d, std::size_t n, const std::string& where) {
  if (d.contains("diagonal")) {
    const json& diag = d.at("diagonal");
    if (!diag.is_array() || diag.size() != n) bad(where + ": diagonal needs " + std::to_string(n) + " entries");
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(rational_from_json(diag[i], where));
    return Matrix::diagonal(v);
  }
  const json& rows = require(d, "rows", where);
  if (!rows.is_array() || rows.size() != n) bad(where + ": rows must be " + std::to_string(n) + " lists");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) bad(where + ": row " + std::to_string(i + 1) + " has wrong length");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rational_from_json(rows[i][j], where);
  }
  return m;
}

inline Spec parse_spec(const json& raw, const std::filesystem::path& base, const std::string& fallback_name) {
  const json doc = resolve(raw, base);
  Spec s;
  s.name = doc.value("name", fallback_name);
  const std::string kind = doc.value("kind", "");
  if (kind == "algebra") {
    s.algebra = std::make_shared<const NilpotentLieAlgebra>(parse_algebra(doc, s.name));
  } else if (kind == "graph") {
    s.graph = parse_graph(doc, s.name);
    s.algebra = std::make_shared<const NilpotentLieAlgebra>(build_algebra(*s.graph));
    if (doc.contains("weights")) {
      std::vector<Rational> w;
      for (const auto& x : doc.at("weights")) w.push_back(rational_from_json(x, s.name + ": weights"));
      s.derivation = weight_matrix(*s.graph, w);
    }
  } else if (kind == "heintze" || kind == "derivation") {
    const json alg = resolve(require(doc, "algebra", s.name), base);
    if (alg.value("kind", "algebra") == "graph") {
      s.graph = parse_graph(alg, s.name);
      s.algebra = std::make_shared<const NilpotentLieAlgebra>(build_algebra(*s.graph));
    } else {
      s.algebra = std::make_shared<const NilpotentLieAlgebra>(parse_algebra(alg, s.name));
    }
    s.derivation = parse_derivation(require(doc, "derivation", s.name), s.algebra->dim(), s.name);
  } else {
    bad(s.name + ": unknown kind '" + kind + "'");
  }
  return s;
}

inline Document load(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  const auto base = path.parent_path();
  Document d;
  d.kind = doc.value("kind", "");
  const std::string stem = path.stem().string();
  if (d.kind == "pair") {
    d.specs.push_back(parse_spec(require(doc, "first", stem), base, stem + ".first"));
    d.specs.push_back(parse_spec(require(doc, "second", stem), base, stem + ".second"));
  } else {
    d.specs.push_back(parse_spec(doc, base, stem));
  }
  return d;
}

// ----- serialization -------------------------------------------------------

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const Matrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline json to_json(const Polynomial& p) {
  return json{{"coefficients", to_json(Vector(p.coefficients()))}, {"text", p.to_string()}};
}

inline json to_json(const Subspace& s) { return json{{"dim", s.dim()}, {"basis", to_json(s.basis_matrix())}}; }

inline json to_json(const std::vector<EigenJordan>& js) {
  json a = json::array();
  for (const auto& e : js) a.push_back(json{{"eigenvalue", to_json(e.eigenvalue)}, {"blocks", e.block_sizes}});
  return a;
}

inline json to_json(const SpectrumProfile& p) {
  return json{{"jump_points", to_json(p.jump_points)}, {"dims", p.dims}};
}

inline json to_json(const Verdict& v) {
  json j;
  j["outcome"] = v.outcome();
  j["distinguished"] = v.distinguished();
  j["tag"] = v.distinguished_by ? json(std::string(to_string(*v.distinguished_by))) : json(nullptr);
  j["scale"] = to_json(v.s);
  j["carnot"] = {v.carnot_first, v.carnot_second};
  j["char_poly"] = {to_json(v.poly_first), to_json(v.poly_second)};
  j["jordan"] = {to_json(v.jordan_first), to_json(v.jordan_second)};
  j["jordan_compared"] = v.jordan_compared;
  j["profile"] = {to_json(v.profile_first), to_json(v.profile_second)};
  j["notes"] = v.notes;
  return j;
}

/// Writes the machine-readable block; JSON objects keep keys sorted, so
/// identical inputs give identical bytes.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace heintze::io
