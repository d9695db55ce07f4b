#pragma once

// JSON formats for algebras, generalized specs, modules and flat algebras.
//
// Algebra file:  {"quiver": {"vertices": [...], "arrows": [{"id","from","to"}]},
//                 "relations": [[{"coeff": "p/q", "path": [arrow ids]}, ...]],
//                 "field": "Q" | {"Fp": p}}
// Spec file:     {"gbp": {"quiver": ..., "vertex_algebras": {v: algebra|path},
//                          "outer_relations": [...]}, "field": ...}
// Module file:   {"dims": {vertex: n}, "maps": {arrow: [[...], ...]}}
// Scalars are "p/q" strings or JSON integers; floats are rejected.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gbpa/gbpa.hpp"

namespace gbpa::io {

using json = nlohmann::ordered_json;

class schema_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field selection before any algebra exists.
struct FieldChoice {
  std::uint32_t prime = 0;  // 0 means Q
  bool is_rational() const { return prime == 0; }
  std::string name() const { return prime ? "F" + std::to_string(prime) : "Q"; }
};

namespace detail {

inline void only_keys(const json& j, const std::set<std::string>& allowed,
                      const std::string& where) {
  if (!j.is_object()) throw schema_error(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw schema_error(where + ": unknown key '" + k + "'");
  }
}

inline const json& require(const json& j, const std::string& key,
                           const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw schema_error(where + ": missing key '" + key + "'");
  return *it;
}

inline std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw schema_error(where + ": expected a string");
  return j.get<std::string>();
}

inline std::size_t as_count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw schema_error(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

}  // namespace detail

inline FieldChoice parse_field(const json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "Q") return {};
    throw schema_error("field: expected \"Q\" or {\"Fp\": p}, got \"" + s + "\"");
  }
  if (j.is_object()) {
    detail::only_keys(j, {"Fp"}, "field");
    auto p = detail::as_count(detail::require(j, "Fp", "field"), "field.Fp");
    if (!is_prime(static_cast<std::uint32_t>(p)) || p > (1u << 31))
      throw schema_error("field: " + std::to_string(p) + " is not a supported prime");
    return {static_cast<std::uint32_t>(p)};
  }
  throw schema_error("field: expected \"Q\" or {\"Fp\": p}");
}

/// GBPA_FIELD: "Q", "Fp:<p>" or "F<p>".
inline FieldChoice field_from_env(const char* value) {
  if (!value || !*value) return {};
  std::string s(value);
  if (s == "Q") return {};
  std::string digits;
  if (s.rfind("Fp:", 0) == 0) digits = s.substr(3);
  else if (s.size() > 1 && s[0] == 'F') digits = s.substr(1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw schema_error("GBPA_FIELD: expected Q, Fp:<p> or F<p>, got '" + s + "'");
  auto p = std::stoul(digits);
  if (!is_prime(static_cast<std::uint32_t>(p)))
    throw schema_error("GBPA_FIELD: " + digits + " is not prime");
  return {static_cast<std::uint32_t>(p)};
}

inline json field_json(const FieldChoice& f) {
  if (f.is_rational()) return "Q";
  return json{{"Fp", f.prime}};
}

template <ExactField F>
FieldChoice field_choice(const F& f) {
  return {f.characteristic()};
}

template <ExactField F>
typename F::value_type parse_scalar(const F& field, const json& j,
                                    const std::string& where) {
  if (j.is_number_integer()) return field.from_int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return field.parse(j.get<std::string>());
    } catch (const field_error& e) {
      throw schema_error(where + ": " + e.what());
    }
  }
  if (j.is_number_float()) throw schema_error(where + ": floating-point scalars are not allowed");
  throw schema_error(where + ": expected a scalar (\"p/q\" string or integer)");
}

template <ExactField F>
json scalar_json(const F& field, const typename F::value_type& v) {
  return field.format(v);
}

inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw schema_error(source + ": malformed JSON at byte " + std::to_string(e.byte) +
                       ": " + e.what());
  }
}

inline json read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw schema_error(p.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), p.string());
}

// --- quivers and relations --------------------------------------------------

inline Quiver parse_quiver(const json& j, const std::string& where) {
  detail::only_keys(j, {"vertices", "arrows"}, where);
  const auto& vs = detail::require(j, "vertices", where);
  if (!vs.is_array()) throw schema_error(where + ".vertices: expected an array");
  std::vector<std::string> vertices;
  for (const auto& v : vs) vertices.push_back(detail::as_string(v, where + ".vertices"));
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  if (auto it = j.find("arrows"); it != j.end()) {
    if (!it->is_array()) throw schema_error(where + ".arrows: expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const auto& a = (*it)[k];
      std::string w = where + ".arrows[" + std::to_string(k) + "]";
      detail::only_keys(a, {"id", "from", "to"}, w);
      arrows.emplace_back(detail::as_string(detail::require(a, "id", w), w + ".id"),
                          detail::as_string(detail::require(a, "from", w), w + ".from"),
                          detail::as_string(detail::require(a, "to", w), w + ".to"));
    }
  }
  try {
    return Quiver(std::move(vertices), arrows);
  } catch (const quiver_error& e) {
    throw schema_error(where + ": " + e.what());
  }
}

inline json quiver_json(const Quiver& q) {
  json arrows = json::array();
  for (const auto& a : q.arrows())
    arrows.push_back({{"id", a.id}, {"from", q.vertex_id(a.source)}, {"to", q.vertex_id(a.target)}});
  return {{"vertices", q.vertices()}, {"arrows", arrows}};
}

template <ExactField F>
std::vector<Relation<F>> parse_relations(const F& field, const Quiver& q, const json& j,
                                         const std::string& where) {
  if (!j.is_array()) throw schema_error(where + ": expected an array of relations");
  std::vector<Relation<F>> rels;
  for (std::size_t r = 0; r < j.size(); ++r) {
    std::string w = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array()) throw schema_error(w + ": expected an array of terms");
    std::vector<typename Relation<F>::Term> terms;
    for (std::size_t t = 0; t < j[r].size(); ++t) {
      const auto& term = j[r][t];
      std::string wt = w + "[" + std::to_string(t) + "]";
      detail::only_keys(term, {"coeff", "path"}, wt);
      auto c = parse_scalar(field, detail::require(term, "coeff", wt), wt + ".coeff");
      const auto& pj = detail::require(term, "path", wt);
      if (!pj.is_array() || pj.empty()) throw schema_error(wt + ".path: expected a nonempty array");
      std::vector<std::string> ids;
      for (const auto& a : pj) ids.push_back(detail::as_string(a, wt + ".path"));
      try {
        terms.emplace_back(c, Path::of(q, ids));
      } catch (const quiver_error& e) {
        throw schema_error(wt + ": " + e.what());
      }
    }
    try {
      rels.emplace_back(field, std::move(terms));
    } catch (const quiver_error& e) {
      throw schema_error(w + ": " + e.what());
    }
  }
  return rels;
}

template <ExactField F>
json relation_json(const Quiver& q, const Relation<F>& r) {
  json terms = json::array();
  for (const auto& [c, p] : r.terms()) {
    json path = json::array();
    for (auto a : p.arrows) path.push_back(q.arrow(a).id);
    terms.push_back({{"coeff", r.field().format(c)}, {"path", path}});
  }
  return terms;
}

template <ExactField F>
json relations_json(const Quiver& q, const std::vector<Relation<F>>& rels) {
  json out = json::array();
  for (const auto& r : rels) out.push_back(relation_json(q, r));
  return out;
}

// --- documents ----------------------------------------------------------------

/// What a spec file contains, before a field is fixed.
struct Document {
  json root;
  std::filesystem::path base_dir;
  std::optional<FieldChoice> field;  // from the file
  bool is_gbp() const { return root.contains("gbp"); }
};

namespace detail {

/// Keys written by the serializers next to an algebra; accepted on input
/// and checked against the recomputed algebra where possible.
inline const std::set<std::string>& derived_keys() {
  static const std::set<std::string> k{"basis", "dim", "exact", "max_len", "vertex_map",
                                       "connector_map"};
  return k;
}

inline std::set<std::string> document_keys() {
  std::set<std::string> k{"quiver", "relations", "gbp", "field"};
  k.insert(derived_keys().begin(), derived_keys().end());
  return k;
}

}  // namespace detail

inline Document load_document(const std::filesystem::path& p) {
  Document d{read_file(p), p.parent_path(), std::nullopt};
  detail::only_keys(d.root, detail::document_keys(), p.string());
  if (d.root.contains("field")) d.field = parse_field(d.root["field"]);
  if (d.is_gbp() && (d.root.contains("quiver") || d.root.contains("relations")))
    throw schema_error(p.string() + ": a gbp document has no top-level quiver");
  if (!d.is_gbp() && !d.root.contains("quiver"))
    throw schema_error(p.string() + ": missing key 'quiver' (or 'gbp')");
  return d;
}

inline Document document_from_text(const std::string& text, const std::string& name = "<input>") {
  Document d{parse_text(text, name), {}, std::nullopt};
  detail::only_keys(d.root, detail::document_keys(), name);
  if (d.root.contains("field")) d.field = parse_field(d.root["field"]);
  return d;
}

template <ExactField F>
AlgebraPtr<F> parse_algebra(const F& field, const json& j, const std::string& where,
                            BuildOptions opts = {}) {
  auto keys = detail::derived_keys();
  keys.insert({"quiver", "relations", "field"});
  detail::only_keys(j, keys, where);
  Quiver q = parse_quiver(detail::require(j, "quiver", where), where + ".quiver");
  std::vector<Relation<F>> rels;
  if (j.contains("relations")) rels = parse_relations(field, q, j["relations"], where + ".relations");
  auto a = build_algebra(field, std::move(q), std::move(rels), opts);
  if (j.contains("dim") && !(j["dim"].is_number_unsigned() && j["dim"].get<std::size_t>() == a->dim()))
    throw schema_error(where + ".dim: does not match the computed dimension " +
                       std::to_string(a->dim()));
  if (j.contains("basis")) {
    json basis = json::array();
    for (const auto& p : a->basis()) basis.push_back(p.to_string(a->quiver()));
    if (j["basis"] != basis) throw schema_error(where + ".basis: does not match the computed basis");
  }
  return a;
}

template <ExactField F>
GbpSpec<F> parse_gbp(const F& field, const json& j, const std::filesystem::path& base,
                     const std::string& where) {
  detail::only_keys(j, {"quiver", "vertex_algebras", "outer_relations"}, where);
  GbpSpec<F> spec;
  spec.field = field;
  spec.gamma = parse_quiver(detail::require(j, "quiver", where), where + ".quiver");
  const auto& va = detail::require(j, "vertex_algebras", where);
  detail::only_keys(va, std::set<std::string>(spec.gamma.vertices().begin(),
                                              spec.gamma.vertices().end()),
                    where + ".vertex_algebras");
  for (const auto& v : spec.gamma.vertices()) {
    std::string w = where + ".vertex_algebras." + v;
    if (!va.contains(v)) throw schema_error(w + ": missing");
    const json& a = va[v];
    if (a.is_string()) {
      auto doc = load_document(base / a.get<std::string>());
      if (doc.is_gbp()) throw schema_error(w + ": referenced file is not an algebra");
      json body = doc.root;
      body.erase("field");
      spec.vertex_algebras.push_back(parse_algebra(field, body, a.get<std::string>()));
    } else {
      spec.vertex_algebras.push_back(parse_algebra(field, a, w));
    }
  }
  if (j.contains("outer_relations"))
    spec.outer_relations =
        parse_relations(field, spec.gamma, j["outer_relations"], where + ".outer_relations");
  try {
    spec.validate();
  } catch (const cycle_error& e) {
    throw schema_error(where + ": " + e.what());
  } catch (const spec_error& e) {
    throw schema_error(where + ": " + e.what());
  }
  return spec;
}

template <ExactField F>
json algebra_json(const BoundQuiverAlgebra<F>& a, bool with_basis = true) {
  json j{{"quiver", quiver_json(a.quiver())},
         {"relations", relations_json(a.quiver(), a.relations())}};
  if (with_basis) {
    json basis = json::array();
    for (const auto& p : a.basis()) basis.push_back(p.to_string(a.quiver()));
    j["basis"] = basis;
    j["dim"] = a.dim();
    j["exact"] = a.exact();
    j["max_len"] = a.max_len();
  }
  return j;
}

/// Inline spec document (every vertex algebra embedded).
template <ExactField F>
json spec_json(const GbpSpec<F>& s) {
  json va = json::object();
  for (std::size_t i = 0; i < s.gamma.vertex_count(); ++i)
    va[s.gamma.vertex_id(i)] = algebra_json(s.algebra(i), false);
  return {{"gbp",
           {{"quiver", quiver_json(s.gamma)},
            {"vertex_algebras", va},
            {"outer_relations", relations_json(s.gamma, s.outer_relations)}}},
          {"field", field_json(field_choice(s.field))}};
}

template <ExactField F>
json flat_json(const FlatAlgebra<F>& fa) {
  json j = algebra_json(*fa.algebra());
  const auto& s = fa.spec();
  json vmap = json::array();
  for (std::size_t w = 0; w < fa.quiver().vertex_count(); ++w) {
    auto [i, u] = fa.vertex_owner(w);
    vmap.push_back({{"outer", s.gamma.vertex_id(i)},
                    {"inner", s.algebra(i).quiver().vertex_id(u)},
                    {"flat", fa.quiver().vertex_id(w)}});
  }
  json cmap = json::array();
  for (std::size_t a = 0; a < fa.quiver().arrow_count(); ++a) {
    const auto& in = fa.arrow_info(a);
    if (!in.connector) continue;
    const auto& ga = s.gamma.arrow(in.outer);
    cmap.push_back({{"arrow", ga.id},
                    {"from", s.algebra(ga.source).quiver().vertex_id(in.inner)},
                    {"to", s.algebra(ga.target).quiver().vertex_id(in.inner_target)},
                    {"flat", fa.quiver().arrow(a).id}});
  }
  j["vertex_map"] = vmap;
  j["connector_map"] = cmap;
  j["field"] = field_json(field_choice(s.field));
  return j;
}

// --- modules ------------------------------------------------------------------

template <ExactField F>
Matrix<F> parse_matrix(const F& field, const json& j, std::size_t rows, std::size_t cols,
                       const std::string& where) {
  if (!j.is_array()) throw schema_error(where + ": expected a matrix (array of rows)");
  if (j.size() != rows)
    throw schema_error(where + ": expected " + std::to_string(rows) + " rows, got " +
                       std::to_string(j.size()));
  Matrix<F> m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw schema_error(where + "[" + std::to_string(r) + "]: expected " +
                         std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = parse_scalar(field, j[r][c], where);
  }
  return m;
}

template <ExactField F>
json matrix_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.field().format(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

/// Shape-checked module; relations are not checked here.
template <ExactField F>
Module<F> parse_module(const AlgebraPtr<F>& alg, const json& j, const std::string& where) {
  detail::only_keys(j, {"dims", "maps"}, where);
  const auto& q = alg->quiver();
  std::vector<std::size_t> dims(q.vertex_count(), 0);
  const auto& dj = detail::require(j, "dims", where);
  if (dj.is_array()) {
    if (dj.size() != q.vertex_count())
      throw schema_error(where + ".dims: expected " + std::to_string(q.vertex_count()) + " entries");
    for (std::size_t v = 0; v < dims.size(); ++v) dims[v] = detail::as_count(dj[v], where + ".dims");
  } else if (dj.is_object()) {
    for (const auto& [k, v] : dj.items()) {
      if (!q.has_vertex(k)) throw schema_error(where + ".dims: unknown vertex '" + k + "'");
      dims[q.vertex(k)] = detail::as_count(v, where + ".dims." + k);
    }
  } else {
    throw schema_error(where + ".dims: expected an array or object");
  }
  std::vector<Matrix<F>> maps;
  json mj = j.contains("maps") ? j["maps"] : json::object();
  if (!mj.is_object()) throw schema_error(where + ".maps: expected an object");
  for (const auto& [k, v] : mj.items())
    if (!q.has_arrow(k)) throw schema_error(where + ".maps: unknown arrow '" + k + "'");
  for (const auto& a : q.arrows()) {
    std::size_t r = dims[a.target], c = dims[a.source];
    if (mj.contains(a.id))
      maps.push_back(parse_matrix(alg->field(), mj[a.id], r, c, where + ".maps." + a.id));
    else
      maps.emplace_back(alg->field(), r, c);
  }
  return Module<F>(alg, std::move(dims), std::move(maps));
}

template <ExactField F>
json module_json(const Module<F>& m) {
  const auto& q = m.quiver();
  json dims = json::object();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) dims[q.vertex_id(v)] = m.dim(v);
  json maps = json::object();
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    if (!m.map(a).empty()) maps[q.arrow(a).id] = matrix_json(m.map(a));
  return {{"dims", dims}, {"maps", maps}};
}

}  // namespace gbpa::io
