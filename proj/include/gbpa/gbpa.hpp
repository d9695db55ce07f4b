#pragma once

// Generalized bound path algebras k(Gamma, A, I): the data, its flattening to
// an ordinary bound quiver algebra, representations as tuples, and the
// inclusion, cone and dual cone functors.
//
// Flat vertex (i, u) is vertex u of Sigma_i. Flat arrows are, in order, the
// arrows of Sigma_0, Sigma_1, ... (each in its own order) followed by one
// connector (alpha, u, v) per outer arrow alpha : i -> j, u in Sigma_i,
// v in Sigma_j, enumerated by alpha, then u, then v.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gbpa/algebra.hpp"
#include "gbpa/module.hpp"

namespace gbpa {

class spec_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <ExactField F>
struct GbpSpec {
  F field{};
  Quiver gamma;
  std::vector<AlgebraPtr<F>> vertex_algebras;
  std::vector<Relation<F>> outer_relations;

  const BoundQuiverAlgebra<F>& algebra(std::size_t i) const {
    return *vertex_algebras.at(i);
  }

  void validate() const {
    topological_order(gamma);  // throws cycle_error
    if (vertex_algebras.size() != gamma.vertex_count()) {
      throw spec_error("expected one vertex algebra per outer vertex");
    }
    for (std::size_t i = 0; i < vertex_algebras.size(); ++i) {
      const auto& a = vertex_algebras[i];
      if (!a) throw spec_error("missing algebra at vertex " + gamma.vertex_id(i));
      if (!(a->field() == field)) {
        throw spec_error("algebra at vertex " + gamma.vertex_id(i) +
                         " is over a different field");
      }
      if (!a->exact()) {
        throw cutoff_error("cutoff exceeded: algebra at vertex " +
                           gamma.vertex_id(i) + " is not certified exact");
      }
    }
    for (const auto& r : outer_relations) {
      for (const auto& [c, p] : r.terms())
        for (auto a : p.arrows)
          if (a >= gamma.arrow_count())
            throw spec_error("outer relation uses an unknown arrow");
    }
  }
};

template <ExactField F>
AlgebraPtr<F> outer_algebra(const GbpSpec<F>& spec) {
  return build_algebra(spec.field, spec.gamma, spec.outer_relations);
}

/// Gamma^op with every A_i replaced by A_i^op and I reversed.
template <ExactField F>
GbpSpec<F> opposite_spec(const GbpSpec<F>& spec) {
  GbpSpec<F> op;
  op.field = spec.field;
  op.gamma = spec.gamma.opposite();
  for (const auto& a : spec.vertex_algebras) op.vertex_algebras.push_back(a->opposite());
  for (const auto& r : spec.outer_relations) op.outer_relations.push_back(r.opposite(op.gamma));
  return op;
}

template <ExactField F>
class FlatAlgebra {
 public:
  struct ArrowInfo {
    bool connector = false;
    std::size_t outer = 0;  // Gamma-vertex (internal) or Gamma-arrow (connector)
    std::size_t inner = 0;  // Sigma arrow (internal) or u (connector)
    std::size_t inner_target = 0;  // v (connector)
  };

  const GbpSpec<F>& spec() const { return spec_; }
  const AlgebraPtr<F>& algebra() const { return algebra_; }
  const Quiver& quiver() const { return algebra_->quiver(); }

  std::size_t flat_vertex(std::size_t i, std::size_t u) const {
    return vertex_offset_.at(i) + u;
  }
  std::size_t vertex_begin(std::size_t i) const { return vertex_offset_.at(i); }
  std::size_t vertex_end(std::size_t i) const { return vertex_offset_.at(i + 1); }
  std::pair<std::size_t, std::size_t> vertex_owner(std::size_t w) const {
    return owner_.at(w);
  }
  std::size_t internal_arrow(std::size_t i, std::size_t a) const {
    return internal_offset_.at(i) + a;
  }
  std::size_t connector(std::size_t alpha, std::size_t u, std::size_t v) const {
    const auto& arr = spec_.gamma.arrow(alpha);
    std::size_t nv = spec_.algebra(arr.target).vertex_count();
    return connector_offset_.at(alpha) + u * nv + v;
  }
  const ArrowInfo& arrow_info(std::size_t a) const { return info_.at(a); }
  const std::vector<Relation<F>>& interleaved() const { return interleaved_; }

  /// Flat basis elements starting in Sigma_i.
  std::vector<std::size_t> basis_from(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < algebra_->dim(); ++b) {
      auto s = algebra_->basis_path(b).source;
      if (s >= vertex_begin(i) && s < vertex_end(i)) out.push_back(b);
    }
    return out;
  }

  static FlatAlgebra build(const GbpSpec<F>& spec, BuildOptions opts = {});

 private:
  GbpSpec<F> spec_;
  AlgebraPtr<F> algebra_;
  std::vector<std::size_t> vertex_offset_, internal_offset_, connector_offset_;
  std::vector<std::pair<std::size_t, std::size_t>> owner_;
  std::vector<ArrowInfo> info_;
  std::vector<Relation<F>> interleaved_;
};

template <ExactField F>
std::vector<Relation<F>> interleave_relations_on(const GbpSpec<F>& spec,
                                                 const FlatAlgebra<F>& flat);

/// Flat quiver and index maps, without relations.
namespace detail {

template <ExactField F>
Quiver flat_quiver(const GbpSpec<F>& spec, std::vector<std::size_t>& vertex_offset,
                   std::vector<std::size_t>& internal_offset,
                   std::vector<std::size_t>& connector_offset,
                   std::vector<std::pair<std::size_t, std::size_t>>& owner,
                   std::vector<typename FlatAlgebra<F>::ArrowInfo>& info) {
  const auto& g = spec.gamma;
  std::vector<std::string> names;
  vertex_offset.assign(1, 0);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    const auto& q = spec.algebra(i).quiver();
    for (std::size_t u = 0; u < q.vertex_count(); ++u) {
      names.push_back(g.vertex_id(i) + "/" + q.vertex_id(u));
      owner.emplace_back(i, u);
    }
    vertex_offset.push_back(names.size());
  }
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    internal_offset.push_back(arrows.size());
    const auto& q = spec.algebra(i).quiver();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& arr = q.arrow(a);
      arrows.push_back({g.vertex_id(i) + "/" + arr.id, vertex_offset[i] + arr.source,
                        vertex_offset[i] + arr.target});
      info.push_back({false, i, a, 0});
    }
  }
  for (std::size_t al = 0; al < g.arrow_count(); ++al) {
    connector_offset.push_back(arrows.size());
    const auto& ga = g.arrow(al);
    const auto& qs = spec.algebra(ga.source).quiver();
    const auto& qt = spec.algebra(ga.target).quiver();
    for (std::size_t u = 0; u < qs.vertex_count(); ++u) {
      for (std::size_t v = 0; v < qt.vertex_count(); ++v) {
        arrows.push_back({ga.id + "[" + qs.vertex_id(u) + "," + qt.vertex_id(v) + "]",
                          vertex_offset[ga.source] + u, vertex_offset[ga.target] + v});
        info.push_back({true, al, u, v});
      }
    }
  }
  return Quiver(std::move(names), std::move(arrows));
}

}  // namespace detail

/// The set A(I): every outer relation with residue basis paths inserted at
/// each interior vertex of each term, split into parallel components,
/// normalized and deduplicated.
template <ExactField F>
std::vector<Relation<F>> interleave_relations_on(const GbpSpec<F>& spec,
                                                 const FlatAlgebra<F>& flat) {
  const auto& g = spec.gamma;
  const auto& fq = flat.quiver();
  std::set<Relation<F>> seen;
  std::vector<Relation<F>> out;
  for (const auto& rho : spec.outer_relations) {
    const std::size_t x = rho.source(), y = rho.target();
    const auto& ax = spec.algebra(x);
    const auto& ay = spec.algebra(y);
    struct Middle {
      std::size_t first_target;  // Sigma vertex after the first connector
      std::size_t last_source;   // Sigma vertex before the last connector
      std::vector<std::size_t> arrows;
    };
    // middles[t] lists, per choice of interior basis paths, the flat arrows
    // strictly between the first and last connector of term t.
    std::vector<std::vector<Middle>> middles;
    for (const auto& [c, p] : rho.terms()) {
      struct Partial {
        std::vector<std::size_t> arrows;  // flat arrows so far, after beta_1's connector
        std::size_t first_target = 0;
        std::size_t current = 0;  // Sigma vertex at the end of the last gamma
        bool started = false;
      };
      std::vector<Partial> partial{Partial{}};
      for (std::size_t j = 0; j + 1 < p.arrows.size(); ++j) {
        const std::size_t gv = g.arrow(p.arrows[j]).target;
        const auto& alg = spec.algebra(gv);
        std::vector<Partial> next;
        for (const auto& pt : partial) {
          for (std::size_t b = 0; b < alg.dim(); ++b) {
            const Path& gamma = alg.basis_path(b);
            Partial np = pt;
            if (!np.started) {
              np.first_target = gamma.source;
              np.started = true;
            } else {
              np.arrows.push_back(flat.connector(p.arrows[j], np.current, gamma.source));
            }
            for (auto a : gamma.arrows) np.arrows.push_back(flat.internal_arrow(gv, a));
            np.current = gamma.target;
            next.push_back(std::move(np));
          }
        }
        partial = std::move(next);
      }
      std::vector<Middle> ms;
      for (auto& pt : partial) ms.push_back({pt.first_target, pt.current, std::move(pt.arrows)});
      middles.push_back(std::move(ms));
    }
    // Product over terms of the choices, then components (u, v).
    const auto& terms = rho.terms();
    std::vector<std::size_t> idx(terms.size(), 0);
    while (true) {
      for (std::size_t u = 0; u < ax.vertex_count(); ++u) {
        for (std::size_t v = 0; v < ay.vertex_count(); ++v) {
          std::vector<typename Relation<F>::Term> flat_terms;
          for (std::size_t t = 0; t < terms.size(); ++t) {
            const Path& p = terms[t].second;
            const Middle& m = middles[t][idx[t]];
            std::vector<std::size_t> arrows;
            arrows.push_back(flat.connector(p.arrows.front(), u, m.first_target));
            arrows.insert(arrows.end(), m.arrows.begin(), m.arrows.end());
            arrows.push_back(flat.connector(p.arrows.back(), m.last_source, v));
            flat_terms.emplace_back(terms[t].first, Path::of(fq, std::move(arrows)));
          }
          Relation<F> r(spec.field, std::move(flat_terms));
          r = r.normalized();
          if (seen.insert(r).second) out.push_back(std::move(r));
        }
      }
      std::size_t t = 0;
      while (t < terms.size() && ++idx[t] == middles[t].size()) idx[t++] = 0;
      if (t == terms.size()) break;
    }
  }
  return out;
}

template <ExactField F>
FlatAlgebra<F> FlatAlgebra<F>::build(const GbpSpec<F>& spec, BuildOptions opts) {
  spec.validate();
  FlatAlgebra<F> fa;
  fa.spec_ = spec;
  Quiver fq = detail::flat_quiver(spec, fa.vertex_offset_, fa.internal_offset_,
                                  fa.connector_offset_, fa.owner_, fa.info_);
  // Temporary algebra-free view so that interleaving can use the index maps.
  fa.algebra_ = build_algebra(spec.field, fq, {}, {2, false});
  std::vector<Relation<F>> rels;
  for (std::size_t i = 0; i < spec.gamma.vertex_count(); ++i) {
    for (const auto& r : spec.algebra(i).relations()) {
      std::vector<typename Relation<F>::Term> terms;
      for (const auto& [c, p] : r.terms()) {
        std::vector<std::size_t> arrows;
        for (auto a : p.arrows) arrows.push_back(fa.internal_offset_[i] + a);
        terms.emplace_back(c, Path::of(fq, std::move(arrows)));
      }
      rels.emplace_back(spec.field, std::move(terms));
    }
  }
  fa.interleaved_ = interleave_relations_on(spec, fa);
  rels.insert(rels.end(), fa.interleaved_.begin(), fa.interleaved_.end());
  fa.algebra_ = build_algebra(spec.field, std::move(fq), std::move(rels), opts);
  return fa;
}

template <ExactField F>
FlatAlgebra<F> flatten(const GbpSpec<F>& spec, BuildOptions opts = {}) {
  return FlatAlgebra<F>::build(spec, opts);
}

template <ExactField F>
std::vector<Relation<F>> interleave_relations(const FlatAlgebra<F>& flat) {
  return flat.interleaved();
}

// ---------------------------------------------------------------------------
// The canonical relabeling between flatten(opposite_spec(s))^op and
// flatten(s).

/// Arrow permutation: index in flatten(s) -> index in flatten(opposite_spec(s)).
template <ExactField F>
std::vector<std::size_t> opposite_arrow_map(const FlatAlgebra<F>& flat,
                                            const FlatAlgebra<F>& flat_op) {
  std::vector<std::size_t> map(flat.quiver().arrow_count());
  for (std::size_t a = 0; a < map.size(); ++a) {
    const auto& in = flat.arrow_info(a);
    map[a] = in.connector ? flat_op.connector(in.outer, in.inner_target, in.inner)
                          : flat_op.internal_arrow(in.outer, in.inner);
  }
  return map;
}

/// Module over flatten(opposite_spec(s))^op read as a module over flatten(s).
template <ExactField F>
Module<F> transport_from_opposite(const FlatAlgebra<F>& flat,
                                  const FlatAlgebra<F>& flat_op,
                                  const Module<F>& m) {
  auto map = opposite_arrow_map(flat, flat_op);
  std::vector<Matrix<F>> maps;
  for (std::size_t a = 0; a < map.size(); ++a) maps.push_back(m.map(map[a]));
  return Module<F>(flat.algebra(), m.dims(), std::move(maps));
}

/// Module over flatten(s) read over flatten(opposite_spec(s))^op.
template <ExactField F>
Module<F> transport_to_opposite(const FlatAlgebra<F>& flat, const FlatAlgebra<F>& flat_op,
                                const Module<F>& m) {
  auto map = opposite_arrow_map(flat, flat_op);
  std::vector<Matrix<F>> maps(map.size());
  for (std::size_t a = 0; a < map.size(); ++a) maps[map[a]] = m.map(a);
  return Module<F>(flat_op.algebra()->opposite(), m.dims(), std::move(maps));
}

struct OppositeComparison {
  bool quivers_match = false;
  bool dims_match = false;
  bool relations_match = false;
  std::size_t dim = 0;
  std::size_t dim_op = 0;
  bool ok() const { return quivers_match && dims_match && relations_match; }
};

/// Compares opposite(flatten(s)) with flatten(opposite_spec(s)) under the
/// canonical relabeling: same quiver, same dimension, and each side's
/// relations vanish in the other.
template <ExactField F>
OppositeComparison compare_opposite(const FlatAlgebra<F>& flat,
                                    const FlatAlgebra<F>& flat_op) {
  OppositeComparison c;
  auto lop = flat.algebra()->opposite();  // Lambda^op
  const auto& q1 = lop->quiver();
  const auto& q2 = flat_op.quiver();
  c.dim = lop->dim();
  c.dim_op = flat_op.algebra()->dim();
  c.dims_match = c.dim == c.dim_op;
  auto map = opposite_arrow_map(flat, flat_op);
  c.quivers_match = q1.vertex_count() == q2.vertex_count() &&
                    q1.arrow_count() == q2.arrow_count();
  if (c.quivers_match) {
    for (std::size_t a = 0; a < map.size() && c.quivers_match; ++a) {
      c.quivers_match = q1.arrow(a).source == q2.arrow(map[a]).source &&
                        q1.arrow(a).target == q2.arrow(map[a]).target;
    }
  }
  if (!c.quivers_match) return c;
  std::vector<std::size_t> inv(map.size());
  for (std::size_t a = 0; a < map.size(); ++a) inv[map[a]] = a;
  auto relabel = [&](const Relation<F>& r, const std::vector<std::size_t>& m,
                     const Quiver& q) {
    std::vector<typename Relation<F>::Term> t;
    for (const auto& [coef, p] : r.terms()) {
      std::vector<std::size_t> arrows;
      for (auto a : p.arrows) arrows.push_back(m[a]);
      t.emplace_back(coef, Path::of(q, std::move(arrows)));
    }
    return Relation<F>(r.field(), std::move(t));
  };
  c.relations_match = true;
  for (const auto& r : lop->relations()) {
    if (!flat_op.algebra()->reduce(relabel(r, map, q2)).empty()) c.relations_match = false;
  }
  for (const auto& r : flat_op.algebra()->relations()) {
    if (!lop->reduce(relabel(r, inv, q1)).empty()) c.relations_match = false;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Representations as tuples.

template <ExactField F>
struct RepTuple {
  std::vector<Module<F>> components;     // M_i over A_i
  std::vector<Matrix<F>> edge_maps;      // M_alpha : M_s -> M_t on total spaces

  friend bool operator==(const RepTuple&, const RepTuple&) = default;
};

namespace detail {

template <ExactField F>
std::vector<std::size_t> offsets(const Module<F>& m) {
  std::vector<std::size_t> o{0};
  for (auto d : m.dims()) o.push_back(o.back() + d);
  return o;
}

}  // namespace detail

template <ExactField F>
RepTuple<F> zero_tuple(const GbpSpec<F>& spec) {
  RepTuple<F> t;
  for (const auto& a : spec.vertex_algebras) t.components.push_back(Module<F>::zero(a));
  for (std::size_t al = 0; al < spec.gamma.arrow_count(); ++al)
    t.edge_maps.emplace_back(spec.field, 0, 0);
  return t;
}

/// Flat module of a tuple without validating the relations.
template <ExactField F>
Module<F> assemble_flat(const FlatAlgebra<F>& flat, const RepTuple<F>& t) {
  const auto& spec = flat.spec();
  const auto& fq = flat.quiver();
  std::vector<std::size_t> dims(fq.vertex_count());
  for (std::size_t w = 0; w < dims.size(); ++w) {
    auto [i, u] = flat.vertex_owner(w);
    dims[w] = t.components.at(i).dim(u);
  }
  std::vector<Matrix<F>> maps;
  for (std::size_t a = 0; a < fq.arrow_count(); ++a) {
    const auto& in = flat.arrow_info(a);
    if (!in.connector) {
      maps.push_back(t.components[in.outer].map(in.inner));
      continue;
    }
    const auto& ga = spec.gamma.arrow(in.outer);
    const auto& ms = t.components[ga.source];
    const auto& mt = t.components[ga.target];
    auto os = detail::offsets(ms), ot = detail::offsets(mt);
    const auto& phi = t.edge_maps.at(in.outer);
    if (phi.rows() != mt.total_dim() || phi.cols() != ms.total_dim()) {
      throw dimension_error("edge map of '" + ga.id + "' has shape " + phi.shape());
    }
    maps.push_back(phi.block(ot[in.inner_target], os[in.inner], mt.dim(in.inner_target),
                             ms.dim(in.inner)));
  }
  return Module<F>(flat.algebra(), std::move(dims), std::move(maps));
}

/// Representation equivalence, tuple side to module side. Rejects tuples
/// violating a relation of some A_i or an interleaved relation.
template <ExactField F>
Module<F> to_flat_module(const FlatAlgebra<F>& flat, const RepTuple<F>& t) {
  const auto& spec = flat.spec();
  if (t.components.size() != spec.gamma.vertex_count() ||
      t.edge_maps.size() != spec.gamma.arrow_count()) {
    throw dimension_error("tuple does not match the outer quiver");
  }
  for (const auto& m : t.components) check_module(m);
  auto m = assemble_flat(flat, t);
  check_module(m);
  return m;
}

template <ExactField F>
Module<F> component_module(const FlatAlgebra<F>& flat, const Module<F>& m,
                           std::size_t j) {
  const auto& alg = flat.spec().vertex_algebras.at(j);
  std::vector<std::size_t> dims;
  for (std::size_t u = 0; u < alg->vertex_count(); ++u)
    dims.push_back(m.dim(flat.flat_vertex(j, u)));
  std::vector<Matrix<F>> maps;
  for (std::size_t a = 0; a < alg->quiver().arrow_count(); ++a)
    maps.push_back(m.map(flat.internal_arrow(j, a)));
  return Module<F>(alg, std::move(dims), std::move(maps));
}

template <ExactField F>
RepTuple<F> from_flat_module(const FlatAlgebra<F>& flat, const Module<F>& m) {
  const auto& spec = flat.spec();
  RepTuple<F> t;
  for (std::size_t j = 0; j < spec.gamma.vertex_count(); ++j)
    t.components.push_back(component_module(flat, m, j));
  for (std::size_t al = 0; al < spec.gamma.arrow_count(); ++al) {
    const auto& ga = spec.gamma.arrow(al);
    const auto& ms = t.components[ga.source];
    const auto& mt = t.components[ga.target];
    auto os = detail::offsets(ms), ot = detail::offsets(mt);
    Matrix<F> phi(spec.field, mt.total_dim(), ms.total_dim());
    for (std::size_t u = 0; u < ms.dims().size(); ++u)
      for (std::size_t v = 0; v < mt.dims().size(); ++v)
        phi.set_block(ot[v], os[u], m.map(flat.connector(al, u, v)));
    t.edge_maps.push_back(std::move(phi));
  }
  return t;
}

template <ExactField F>
std::set<std::size_t> support(const RepTuple<F>& t) {
  std::set<std::size_t> s;
  for (std::size_t i = 0; i < t.components.size(); ++i)
    if (!t.components[i].is_zero()) s.insert(i);
  return s;
}

template <ExactField F>
std::set<std::size_t> outer_support(const FlatAlgebra<F>& flat, const Module<F>& m) {
  std::set<std::size_t> s;
  for (std::size_t w = 0; w < m.dims().size(); ++w)
    if (m.dim(w)) s.insert(flat.vertex_owner(w).first);
  return s;
}

// ---------------------------------------------------------------------------
// Functors.

/// I(M): M placed on Sigma_i, zero elsewhere.
template <ExactField F>
Module<F> inclusion(const FlatAlgebra<F>& flat, std::size_t i, const Module<F>& m) {
  auto t = zero_tuple(flat.spec());
  t.components.at(i) = m;
  for (std::size_t al = 0; al < flat.spec().gamma.arrow_count(); ++al) {
    const auto& ga = flat.spec().gamma.arrow(al);
    t.edge_maps[al] = Matrix<F>(flat.spec().field, t.components[ga.target].total_dim(),
                                t.components[ga.source].total_dim());
  }
  return assemble_flat(flat, t);
}

/// Coordinates of V = M (x)_k 1_i Lambda at flat vertex w: blocks indexed by
/// (u in Sigma_i, basis path from (i,u) to w, coordinate of M_u).
template <ExactField F>
struct ConeData {
  Module<F> module;  // the cone
  Module<F> free;    // M (x)_k 1_i Lambda before the quotient
  Morphism<F> projection;
  /// section[w]: cone coordinates back to V_w.
  std::vector<Matrix<F>> section;
  /// offset[w][u] = first coordinate of block u in V_w.
  std::vector<std::vector<std::size_t>> offset;
};

template <ExactField F>
ConeData<F> cone_data(const FlatAlgebra<F>& flat, std::size_t i, const Module<F>& m) {
  const auto& lam = *flat.algebra();
  const auto& fq = lam.quiver();
  const auto& ai = flat.spec().algebra(i);
  const std::size_t nw = fq.vertex_count(), nu = ai.vertex_count();
  const F& field = lam.field();
  ConeData<F> cd;
  cd.offset.assign(nw, std::vector<std::size_t>(nu + 1, 0));
  std::vector<std::size_t> dims(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    for (std::size_t u = 0; u < nu; ++u) {
      cd.offset[w][u + 1] =
          cd.offset[w][u] + m.dim(u) * lam.paths_between(flat.flat_vertex(i, u), w);
    }
    dims[w] = cd.offset[w][nu];
  }
  // Coordinate of (u, basis element b, k).
  auto coord = [&](std::size_t w, std::size_t u, std::size_t b, std::size_t k) {
    return cd.offset[w][u] + lam.position_in_block(b) * m.dim(u) + k;
  };
  std::vector<Matrix<F>> maps;
  for (std::size_t a = 0; a < fq.arrow_count(); ++a) {
    const auto& arr = fq.arrow(a);
    Matrix<F> mat(field, dims[arr.target], dims[arr.source]);
    for (std::size_t u = 0; u < nu; ++u) {
      for (auto b : lam.basis_between(flat.flat_vertex(i, u), arr.source)) {
        for (const auto& [b2, c] : lam.act(b, a)) {
          for (std::size_t k = 0; k < m.dim(u); ++k)
            mat(coord(arr.target, u, b2, k), coord(arr.source, u, b, k)) = c;
        }
      }
    }
    maps.push_back(std::move(mat));
  }
  cd.free = Module<F>(flat.algebra(), dims, std::move(maps));

  // Balancing relations (m a) (x) x - m (x) (a x) for arrows a : u -> u' of
  // Sigma_i.
  std::vector<std::vector<std::vector<typename F::value_type>>> rel(nw);
  const auto& qi = ai.quiver();
  for (std::size_t a = 0; a < qi.arrow_count(); ++a) {
    const auto& arr = qi.arrow(a);
    const std::size_t u = arr.source, u2 = arr.target;
    const std::size_t fa = flat.internal_arrow(i, a);
    for (std::size_t w = 0; w < nw; ++w) {
      for (auto x : lam.basis_between(flat.flat_vertex(i, u2), w)) {
        Path ax = Path{flat.flat_vertex(i, u), w, {fa}}.then(lam.basis_path(x));
        auto nf = lam.reduce(ax);
        for (std::size_t k = 0; k < m.dim(u); ++k) {
          std::vector<typename F::value_type> v(dims[w], field.zero());
          for (std::size_t r = 0; r < m.dim(u2); ++r) {
            const auto& c = m.map(a)(r, k);
            if (!c.is_zero()) v[coord(w, u2, x, r)] += c;
          }
          for (const auto& [b, c] : nf) v[coord(w, u, b, k)] -= c;
          rel[w].push_back(std::move(v));
        }
      }
    }
  }
  std::vector<Matrix<F>> spanning;
  for (std::size_t w = 0; w < nw; ++w)
    spanning.push_back(Matrix<F>::from_columns(field, dims[w], rel[w]));
  auto qt = quotient(cd.free, spanning);
  cd.module = std::move(qt.module);
  cd.projection = std::move(qt.projection);
  for (const auto& c : qt.coords) cd.section.push_back(c.section());
  return cd;
}

/// C_i(M) = M (x)_{A_i} 1_i Lambda.
template <ExactField F>
Module<F> cone(const FlatAlgebra<F>& flat, std::size_t i, const Module<F>& m) {
  return cone_data(flat, i, m).module;
}

/// C*_i(M) = D C_i D(M), computed over the opposite spec and transported.
template <ExactField F>
Module<F> dual_cone(const FlatAlgebra<F>& flat, const FlatAlgebra<F>& flat_op,
                    std::size_t i, const Module<F>& m) {
  auto c = cone(flat_op, i, dual(m));
  auto d = dual(c);
  auto out = transport_from_opposite(flat, flat_op, d);
  check_module(out);
  return out;
}

template <ExactField F>
Module<F> dual_cone(const FlatAlgebra<F>& flat, std::size_t i, const Module<F>& m) {
  auto flat_op = flatten(opposite_spec(flat.spec()));
  return dual_cone(flat, flat_op, i, m);
}

}  // namespace gbpa
