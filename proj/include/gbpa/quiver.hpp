#pragma once

// Finite quivers, paths and (parallel, admissible) relations.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "gbpa/field.hpp"

namespace gbpa {

class quiver_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class cycle_error : public quiver_error {
 public:
  cycle_error(const std::string& msg, std::vector<std::size_t> cycle)
      : quiver_error(msg), cycle_(std::move(cycle)) {}
  const std::vector<std::size_t>& cycle() const { return cycle_; }

 private:
  std::vector<std::size_t> cycle_;
};

struct Arrow {
  std::string id;
  std::size_t source = 0;
  std::size_t target = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

class Quiver {
 public:
  Quiver() = default;

  /// Arrows are (id, source id, target id).
  Quiver(std::vector<std::string> vertices,
         const std::vector<std::tuple<std::string, std::string, std::string>>&
             arrows)
      : vertices_(std::move(vertices)) {
    index_vertices();
    for (const auto& [id, s, t] : arrows) add_arrow(id, vertex(s), vertex(t));
  }

  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
      : vertices_(std::move(vertices)) {
    index_vertices();
    for (auto& a : arrows) add_arrow(a.id, a.source, a.target);
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
  const std::string& vertex_id(std::size_t v) const { return vertices_.at(v); }

  std::size_t vertex(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) throw quiver_error("unknown vertex '" + id + "'");
    return it->second;
  }
  std::size_t arrow_index(const std::string& id) const {
    auto it = arrow_index_.find(id);
    if (it == arrow_index_.end()) throw quiver_error("unknown arrow '" + id + "'");
    return it->second;
  }
  bool has_vertex(const std::string& id) const {
    return vertex_index_.count(id) != 0;
  }
  bool has_arrow(const std::string& id) const {
    return arrow_index_.count(id) != 0;
  }

  const std::vector<std::size_t>& out_arrows(std::size_t v) const {
    return out_.at(v);
  }
  const std::vector<std::size_t>& in_arrows(std::size_t v) const {
    return in_.at(v);
  }

  /// Same vertices, every arrow reversed, identifiers kept.
  Quiver opposite() const {
    std::vector<Arrow> rev;
    for (const auto& a : arrows_) rev.push_back({a.id, a.target, a.source});
    return Quiver(vertices_, std::move(rev));
  }

  /// Index-level equality (identifiers ignored).
  bool same_shape(const Quiver& o) const {
    if (vertex_count() != o.vertex_count() || arrow_count() != o.arrow_count())
      return false;
    for (std::size_t a = 0; a < arrows_.size(); ++a) {
      if (arrows_[a].source != o.arrows_[a].source ||
          arrows_[a].target != o.arrows_[a].target)
        return false;
    }
    return true;
  }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_;
  }

 private:
  void index_vertices() {
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      if (!vertex_index_.emplace(vertices_[v], v).second) {
        throw quiver_error("duplicate vertex '" + vertices_[v] + "'");
      }
    }
    out_.assign(vertices_.size(), {});
    in_.assign(vertices_.size(), {});
  }

  void add_arrow(const std::string& id, std::size_t s, std::size_t t) {
    if (s >= vertices_.size() || t >= vertices_.size()) {
      throw quiver_error("arrow '" + id + "' has an endpoint outside the quiver");
    }
    if (!arrow_index_.emplace(id, arrows_.size()).second) {
      throw quiver_error("duplicate arrow '" + id + "'");
    }
    out_[s].push_back(arrows_.size());
    in_[t].push_back(arrows_.size());
    arrows_.push_back({id, s, t});
  }

  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, std::size_t> vertex_index_;
  std::map<std::string, std::size_t> arrow_index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// A path read left to right: arrows[0] leaves `source`. Length 0 is the
/// stationary path at `source` (== target).
struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> arrows;

  static Path stationary(std::size_t v) { return Path{v, v, {}}; }

  static Path of(const Quiver& q, std::vector<std::size_t> arrows) {
    if (arrows.empty()) throw quiver_error("empty arrow list; use stationary()");
    for (std::size_t t = 0; t + 1 < arrows.size(); ++t) {
      if (q.arrow(arrows[t]).target != q.arrow(arrows[t + 1]).source) {
        throw quiver_error("arrows '" + q.arrow(arrows[t]).id + "' and '" +
                           q.arrow(arrows[t + 1]).id + "' do not compose");
      }
    }
    Path p;
    p.source = q.arrow(arrows.front()).source;
    p.target = q.arrow(arrows.back()).target;
    p.arrows = std::move(arrows);
    return p;
  }

  static Path of(const Quiver& q, const std::vector<std::string>& ids) {
    std::vector<std::size_t> idx;
    for (const auto& id : ids) idx.push_back(q.arrow_index(id));
    return of(q, std::move(idx));
  }

  std::size_t length() const { return arrows.size(); }
  bool is_stationary() const { return arrows.empty(); }

  /// Concatenation; nullopt-like empty result is signalled by `composable`.
  bool composable(const Path& next) const { return target == next.source; }
  Path then(const Path& next) const {
    Path p{source, next.target, arrows};
    p.arrows.insert(p.arrows.end(), next.arrows.begin(), next.arrows.end());
    return p;
  }

  Path reversed(const Quiver& /*opposite quiver*/) const {
    Path p{target, source, arrows};
    std::reverse(p.arrows.begin(), p.arrows.end());
    return p;
  }

  std::string to_string(const Quiver& q) const {
    if (arrows.empty()) return "e_" + q.vertex_id(source);
    std::string s;
    for (std::size_t t = 0; t < arrows.size(); ++t) {
      if (t) s += "*";
      s += q.arrow(arrows[t]).id;
    }
    return s;
  }

  friend bool operator==(const Path&, const Path&) = default;
  /// Length first, then arrow indices lexicographically, stationary paths by
  /// vertex.
  friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
    if (auto c = a.arrows.size() <=> b.arrows.size(); c != 0) return c;
    if (a.arrows.empty()) return a.source <=> b.source;
    return a.arrows <=> b.arrows;
  }
};

/// Linear combination of parallel paths, each of length >= 2.
template <ExactField F>
class Relation {
 public:
  using value_type = typename F::value_type;
  using Term = std::pair<value_type, Path>;

  Relation() = default;
  Relation(const F& field, std::vector<Term> terms) : field_(field) {
    std::map<Path, value_type> merged;
    for (auto& [c, p] : terms) {
      auto [it, fresh] = merged.emplace(p, c);
      if (!fresh) it->second += c;
    }
    for (auto& [p, c] : merged)
      if (!c.is_zero()) terms_.emplace_back(c, p);
    if (terms_.empty()) throw quiver_error("relation has no nonzero term");
    const Path& first = terms_.front().second;
    for (const auto& [c, p] : terms_) {
      if (p.source != first.source || p.target != first.target) {
        throw quiver_error("relation terms are not parallel");
      }
      if (p.length() < 2) {
        throw quiver_error("relation term of length " +
                           std::to_string(p.length()) + " (need >= 2)");
      }
    }
  }

  static Relation monomial(const F& field, Path p) {
    return Relation(field, {{field.one(), std::move(p)}});
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t source() const { return terms_.front().second.source; }
  std::size_t target() const { return terms_.front().second.target; }
  const F& field() const { return field_; }

  std::size_t max_length() const {
    std::size_t m = 0;
    for (const auto& t : terms_) m = std::max(m, t.second.length());
    return m;
  }
  std::size_t min_length() const {
    std::size_t m = static_cast<std::size_t>(-1);
    for (const auto& t : terms_) m = std::min(m, t.second.length());
    return m;
  }

  /// Relation read in the opposite quiver (same arrow indices).
  Relation opposite(const Quiver& op) const {
    std::vector<Term> rev;
    for (const auto& [c, p] : terms_) rev.emplace_back(c, p.reversed(op));
    return Relation(field_, std::move(rev));
  }

  /// Scaled so that the smallest term has coefficient one.
  Relation normalized() const {
    auto inv = terms_.front().first.inverse();
    std::vector<Term> t;
    for (const auto& [c, p] : terms_) t.emplace_back(c * inv, p);
    return Relation(field_, std::move(t));
  }

  std::string to_string(const Quiver& q) const {
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& [c, p] = terms_[i];
      if (i) s += " + ";
      if (!c.is_one()) s += field_.format(c) + "*";
      s += p.to_string(q);
    }
    return s;
  }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator<(const Relation& a, const Relation& b) {
    if (a.terms_.size() != b.terms_.size())
      return a.terms_.size() < b.terms_.size();
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].second != b.terms_[i].second)
        return a.terms_[i].second < b.terms_[i].second;
    }
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      auto sa = a.field_.format(a.terms_[i].first);
      auto sb = b.field_.format(b.terms_[i].first);
      if (sa != sb) return sa < sb;
    }
    return false;
  }

 private:
  F field_{};
  std::vector<Term> terms_;  // sorted by path, merged, nonzero
};

/// Kahn's algorithm with smallest-index-first tie breaking: every vertex is
/// a source of the quiver with its predecessors removed.
inline std::vector<std::size_t> topological_order(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& a : q.arrows()) ++indeg[a.target];
  std::set<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.insert(v);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    std::size_t v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (auto a : q.out_arrows(v))
      if (--indeg[q.arrow(a).target] == 0) ready.insert(q.arrow(a).target);
  }
  if (order.size() == n) return order;

  // Walk backwards along in-arrows among the leftover vertices to exhibit a
  // cycle.
  std::vector<char> left(n, 0);
  for (std::size_t v = 0; v < n; ++v) left[v] = indeg[v] > 0;
  std::size_t v = 0;
  while (!left[v]) ++v;
  std::vector<std::size_t> seen_at(n, static_cast<std::size_t>(-1));
  std::vector<std::size_t> walk;
  while (seen_at[v] == static_cast<std::size_t>(-1)) {
    seen_at[v] = walk.size();
    walk.push_back(v);
    for (auto a : q.in_arrows(v)) {
      if (left[q.arrow(a).source]) {
        v = q.arrow(a).source;
        break;
      }
    }
  }
  std::vector<std::size_t> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[v]),
                                 walk.end());
  std::reverse(cycle.begin(), cycle.end());
  std::string msg = "quiver has a cycle through";
  for (auto c : cycle) msg += " " + q.vertex_id(c);
  throw cycle_error(msg, cycle);
}

inline bool is_acyclic(const Quiver& q) {
  try {
    topological_order(q);
    return true;
  } catch (const cycle_error&) {
    return false;
  }
}

/// All paths of length <= max_len, ordered by (length, arrow indices);
/// stationary paths first in vertex order.
inline std::vector<Path> enumerate_paths(const Quiver& q, std::size_t max_len) {
  std::vector<Path> out;
  std::vector<Path> layer;
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    layer.push_back(Path::stationary(v));
  out = layer;
  for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
    std::vector<Path> next;
    for (const auto& p : layer) {
      for (auto a : q.out_arrows(p.target)) {
        Path np = p;
        np.arrows.push_back(a);
        np.target = q.arrow(a).target;
        next.push_back(std::move(np));
      }
    }
    std::sort(next.begin(), next.end());
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

struct Successors {
  std::set<std::size_t> immediate;
  std::set<std::size_t> proper;
};

inline Successors successors(const Quiver& q, std::size_t v) {
  if (v >= q.vertex_count()) {
    throw quiver_error("unknown vertex index " + std::to_string(v));
  }
  Successors s;
  for (auto a : q.out_arrows(v)) s.immediate.insert(q.arrow(a).target);
  std::vector<std::size_t> stack(s.immediate.begin(), s.immediate.end());
  while (!stack.empty()) {
    std::size_t w = stack.back();
    stack.pop_back();
    if (!s.proper.insert(w).second) continue;
    for (auto a : q.out_arrows(w)) stack.push_back(q.arrow(a).target);
  }
  return s;
}

inline std::vector<std::size_t> sinks(const Quiver& q) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    if (q.out_arrows(v).empty()) out.push_back(v);
  return out;
}

}  // namespace gbpa
