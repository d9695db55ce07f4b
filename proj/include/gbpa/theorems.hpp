#pragma once

// Checkable predicates for the homological statements about generalized
// bound path algebras, random instance generation and the shod sweep.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gbpa/gbpa.hpp"
#include "gbpa/io.hpp"

namespace gbpa {

enum class Verdict { holds, violated, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::violated:
      return "violated";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

inline Verdict verdict_of(Truth t) {
  switch (t) {
    case Truth::yes:
      return Verdict::holds;
    case Truth::no:
      return Verdict::violated;
    case Truth::unknown:
      return Verdict::inconclusive;
  }
  return Verdict::inconclusive;
}

/// violated dominates inconclusive, which dominates holds.
inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::violated || b == Verdict::violated) return Verdict::violated;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::holds;
}

inline Truth equal(const HomDim& a, const HomDim& b) {
  auto x = leq(a, b), y = leq(b, a);
  if (x == Truth::no || y == Truth::no) return Truth::no;
  if (x == Truth::yes && y == Truth::yes) return Truth::yes;
  return Truth::unknown;
}

struct CheckReport {
  std::string claim;
  std::uint64_t seed = 0;
  io::json instance = io::json::object();
  std::string lhs, rhs;
  Verdict verdict = Verdict::inconclusive;
  io::json witness = nullptr;
  std::string note;

  bool violated() const { return verdict == Verdict::violated; }

  io::json to_json() const {
    io::json j{{"claim", claim},     {"seed", seed}, {"verdict", to_string(verdict)},
               {"lhs", lhs},         {"rhs", rhs},   {"note", note},
               {"instance", instance}};
    if (verdict == Verdict::violated) j["witness"] = witness;
    return j;
  }
};

/// Sets the verdict; a violation keeps the instance as its witness.
inline void conclude(CheckReport& r, Verdict v) {
  r.verdict = v;
  if (v == Verdict::violated) r.witness = r.instance;
}

inline void sort_reports(std::vector<CheckReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return std::tie(a.claim, a.seed) < std::tie(b.claim, b.seed);
  });
}

inline std::string to_jsonl(const std::vector<CheckReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += r.to_json().dump() + "\n";
  return out;
}

struct CheckOptions {
  DimOptions dims{};
  std::uint64_t seed = 0;
};

namespace detail {

template <ExactField F>
io::json tuple_instance(const std::string& claim, const GbpSpec<F>& spec,
                        const Module<F>& flat_module, const CheckOptions& opt) {
  return {{"claim", claim},
          {"spec", io::spec_json(spec)},
          {"module", io::module_json(flat_module)},
          {"cutoff", opt.dims.cutoff}};
}

template <ExactField F>
io::json vertex_instance(const std::string& claim, const GbpSpec<F>& spec, std::size_t i,
                         const Module<F>& m, const CheckOptions& opt) {
  return {{"claim", claim},
          {"spec", io::spec_json(spec)},
          {"vertex", spec.gamma.vertex_id(i)},
          {"module", io::module_json(m)},
          {"cutoff", opt.dims.cutoff}};
}

template <ExactField F>
io::json spec_instance(const std::string& claim, const GbpSpec<F>& spec,
                       const CheckOptions& opt) {
  return {{"claim", claim}, {"spec", io::spec_json(spec)}, {"cutoff", opt.dims.cutoff}};
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? sep : "") + parts[k];
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Condition on the outer bound quiver.

struct RemarkCondition {
  bool proper = true;     // successors reached by paths of positive length
  bool immediate = true;  // successors reached by one arrow
  std::vector<HomDim> pd_simple;
  std::vector<std::string> failures;  // vertices failing the proper reading
};

template <ExactField F>
RemarkCondition remark_condition(const GbpSpec<F>& spec, const DimOptions& opt = {}) {
  RemarkCondition rc;
  auto outer = outer_algebra(spec);
  for (std::size_t v = 0; v < spec.gamma.vertex_count(); ++v)
    rc.pd_simple.push_back(proj_dim(simple(outer, v), opt));
  std::set<std::size_t> starts;
  for (const auto& r : spec.outer_relations) starts.insert(r.source());
  for (auto i : starts) {
    auto succ = successors(spec.gamma, i);
    auto bound = [&](const std::set<std::size_t>& js) {
      HomDim m = HomDim::finite(0);
      for (auto j : js) m = max(m, rc.pd_simple[j]);
      return plus(m, 1);
    };
    if (leq(bound(succ.proper), rc.pd_simple[i]) != Truth::yes) {
      rc.proper = false;
      rc.failures.push_back(spec.gamma.vertex_id(i));
    }
    if (leq(bound(succ.immediate), rc.pd_simple[i]) != Truth::yes) rc.immediate = false;
  }
  return rc;
}

template <ExactField F>
CheckReport remark_condition_holds(const GbpSpec<F>& spec, const CheckOptions& opt = {}) {
  CheckReport r;
  r.claim = "remark_condition";
  r.seed = opt.seed;
  r.instance = detail::spec_instance(r.claim, spec, opt);
  auto rc = remark_condition(spec, opt.dims);
  std::vector<std::string> pds;
  for (std::size_t v = 0; v < rc.pd_simple.size(); ++v)
    pds.push_back(spec.gamma.vertex_id(v) + ":" + rc.pd_simple[v].to_string());
  r.lhs = "pd S = {" + detail::join(pds, ", ") + "}";
  r.rhs = "proper=" + std::string(rc.proper ? "yes" : "no") +
          " immediate=" + std::string(rc.immediate ? "yes" : "no");
  if (spec.outer_relations.empty()) r.note = "no outer relations";
  if (rc.proper != rc.immediate) r.note = "successor readings differ";
  if (!rc.failures.empty())
    r.note += (r.note.empty() ? "" : "; ") + std::string("fails at ") + detail::join(rc.failures, ",");
  conclude(r, rc.proper ? Verdict::holds : Verdict::violated);
  return r;
}

// ---------------------------------------------------------------------------
// Dimension formulas.

template <ExactField F>
CheckReport check_pd_formula(const GbpSpec<F>& spec, const FlatAlgebra<F>& flat,
                             const RepTuple<F>& t, const CheckOptions& opt = {}) {
  CheckReport r;
  r.claim = "pd_formula";
  r.seed = opt.seed;
  auto m = to_flat_module(flat, t);
  r.instance = detail::tuple_instance(r.claim, spec, m, opt);
  auto rc = remark_condition(spec, opt.dims);
  auto lhs = proj_dim(m, opt.dims);
  HomDim rhs = HomDim::finite(0);
  for (auto i : support(t))
    rhs = max(rhs, max(proj_dim(t.components[i], opt.dims), rc.pd_simple[i]));
  r.lhs = lhs.to_string();
  r.rhs = rhs.to_string();
  auto v = verdict_of(leq(lhs, rhs));
  if (!rc.proper) {
    r.note = std::string("precondition: remark condition fails; exploratory result ") +
             to_string(v);
    conclude(r, Verdict::inconclusive);
    return r;
  }
  if (equal(lhs, rhs) == Truth::yes) r.note = "equality";
  conclude(r, v);
  return r;
}

template <ExactField F>
CheckReport check_id_formula(const GbpSpec<F>& spec, const FlatAlgebra<F>& flat,
                             const RepTuple<F>& t, const CheckOptions& opt = {}) {
  CheckReport r;
  r.claim = "id_formula";
  r.seed = opt.seed;
  auto m = to_flat_module(flat, t);
  r.instance = detail::tuple_instance(r.claim, spec, m, opt);
  auto rc = remark_condition(opposite_spec(spec), opt.dims);
  auto outer = outer_algebra(spec);
  auto lhs = inj_dim(m, opt.dims);
  HomDim rhs = HomDim::finite(0);
  for (auto i : support(t))
    rhs = max(rhs, max(inj_dim(t.components[i], opt.dims), inj_dim(simple(outer, i), opt.dims)));
  r.lhs = lhs.to_string();
  r.rhs = rhs.to_string();
  auto v = verdict_of(leq(lhs, rhs));
  if (!rc.proper) {
    r.note = std::string("precondition: remark condition fails on the opposite spec; "
                         "exploratory result ") + to_string(v);
    conclude(r, Verdict::inconclusive);
    return r;
  }
  auto eq = equal(lhs, rhs);
  r.note = std::string("equality ") + to_string(eq);
  conclude(r, v);
  return r;
}

template <ExactField F>
CheckReport check_inclusion_inequalities(const GbpSpec<F>& spec, const FlatAlgebra<F>& flat,
                                         std::size_t i, const Module<F>& m,
                                         const CheckOptions& opt = {}) {
  CheckReport r;
  r.claim = "inclusion";
  r.seed = opt.seed;
  r.instance = detail::vertex_instance(r.claim, spec, i, m, opt);
  check_module(m);
  auto n = inclusion(flat, i, m);
  auto pd_a = proj_dim(m, opt.dims), pd_l = proj_dim(n, opt.dims);
  auto id_a = inj_dim(m, opt.dims), id_l = inj_dim(n, opt.dims);
  r.lhs = "pd_A=" + pd_a.to_string() + " id_A=" + id_a.to_string();
  r.rhs = "pd_L=" + pd_l.to_string() + " id_L=" + id_l.to_string();
  auto v = combine(verdict_of(leq(pd_a, pd_l)), verdict_of(leq(id_a, id_l)));
  bool sink = spec.gamma.out_arrows(i).empty();
  if (sink) {
    v = combine(v, verdict_of(equal(pd_a, pd_l)));
    r.note = "sink";
  } else if (leq(pd_l, pd_a) == Truth::no) {
    r.note = "strict pd inequality";
  }
  conclude(r, v);
  return r;
}

template <ExactField F>
CheckReport check_cone_pd(const GbpSpec<F>& spec, const FlatAlgebra<F>& flat, std::size_t i,
                          const Module<F>& m, const CheckOptions& opt = {}) {
  CheckReport r;
  r.claim = "cone_pd";
  r.seed = opt.seed;
  r.instance = detail::vertex_instance(r.claim, spec, i, m, opt);
  check_module(m);
  auto c = cone(flat, i, m);
  auto a = proj_dim(m, opt.dims), b = proj_dim(c, opt.dims);
  r.lhs = a.to_string();
  r.rhs = b.to_string();
  if (a.is_infinite() && b.is_infinite()) r.note = "matched infinity certificates";
  conclude(r, verdict_of(equal(a, b)));
  return r;
}

template <ExactField F>
CheckReport check_component_bound(const GbpSpec<F>& spec, const FlatAlgebra<F>& flat,
                                  const RepTuple<F>& t, const CheckOptions& opt = {}) {
  CheckReport r;
  r.claim = "component_bound";
  r.seed = opt.seed;
  auto m = to_flat_module(flat, t);
  r.instance = detail::tuple_instance(r.claim, spec, m, opt);
  auto lhs = proj_dim(m, opt.dims);
  HomDim rhs = HomDim::finite(0);
  for (auto j : support(t)) rhs = max(rhs, proj_dim(inclusion(flat, j, t.components[j]), opt.dims));
  r.lhs = lhs.to_string();
  r.rhs = rhs.to_string();
  if (equal(lhs, rhs) == Truth::yes) r.note = "equality";
  conclude(r, verdict_of(leq(lhs, rhs)));
  return r;
}

template <ExactField F>
CheckReport check_gd_bounds(const GbpSpec<F>& spec, const FlatAlgebra<F>& flat,
                            const CheckOptions& opt = {}) {
  CheckReport r;
  r.claim = "gd_bounds";
  r.seed = opt.seed;
  r.instance = detail::spec_instance(r.claim, spec, opt);
  HomDim lower = HomDim::finite(0);
  for (const auto& a : spec.vertex_algebras) lower = max(lower, global_dim(a, opt.dims));
  auto g = global_dim(flat.algebra(), opt.dims);
  auto outer = global_dim(outer_algebra(spec), opt.dims);
  auto upper = max(outer, lower);
  r.lhs = g.to_string();
  r.rhs = "[" + lower.to_string() + ", " + upper.to_string() + "]";
  auto v = verdict_of(leq(lower, g));
  auto rc = remark_condition(spec, opt.dims);
  if (rc.proper) {
    v = combine(v, verdict_of(leq(g, upper)));
  } else {
    r.note = "upper bound skipped: remark condition fails";
    if (v == Verdict::holds) v = Verdict::inconclusive;
  }
  if (equal(g, upper) == Truth::yes && rc.proper) r.note = "upper bound attained";
  conclude(r, v);
  return r;
}

// ---------------------------------------------------------------------------
// Kernel of C_i(P) -> I(M) for the projective cover P -> M.

/// Quantities of the kernel decomposition K = C_i(Ker g) (+) L.
template <ExactField F>
struct MainLemmaData {
  std::size_t s = 0, r = 0;  // dim P, dim Ker g
  std::vector<std::size_t> dim_k, dim_cone_ker, dim_l, predicted_l;
  bool morphism = false, surjective = false, direct = false, inside = false;
  std::optional<Module<F>> l;
};

template <ExactField F>
MainLemmaData<F> main_lemma_data(const FlatAlgebra<F>& flat, std::size_t i,
                                 const Module<F>& m) {
  const auto& lam = *flat.algebra();
  const F& field = lam.field();
  const std::size_t nw = lam.vertex_count();
  const auto& ai = flat.spec().algebra(i);
  const std::size_t nu = ai.vertex_count();
  MainLemmaData<F> d;

  auto cov = projective_cover(m);
  const auto& p = cov.projective;
  auto kg = kernel(p, cov.map);
  d.s = p.total_dim();
  d.r = kg.module.total_dim();
  auto cp = cone_data(flat, i, p);
  auto ck = cone_data(flat, i, kg.module);
  const auto& c = cp.module;
  auto im = inclusion(flat, i, m);

  auto coord = [&](const ConeData<F>& cd, const Module<F>& src, std::size_t w, std::size_t u,
                   std::size_t b, std::size_t k) {
    return cd.offset[w][u] + lam.position_in_block(b) * src.dim(u) + k;
  };
  auto inner_path = [&](std::size_t b) {
    const auto& fp = lam.basis_path(b);
    Path out{flat.vertex_owner(fp.source).second, flat.vertex_owner(fp.target).second, {}};
    for (auto a : fp.arrows) out.arrows.push_back(flat.arrow_info(a).inner);
    return out;
  };

  // g' at Sigma_i vertices: (u, b, k) -> M_b(g_u e_k).
  Morphism<F> gp;
  for (std::size_t w = 0; w < nw; ++w) {
    auto [j, u2] = flat.vertex_owner(w);
    Matrix<F> big(field, im.dim(w), cp.free.dim(w));
    if (j == i) {
      for (std::size_t u = 0; u < nu; ++u) {
        for (auto b : lam.basis_between(flat.flat_vertex(i, u), w)) {
          auto path = inner_path(b);
          for (std::size_t k = 0; k < p.dim(u); ++k) {
            std::vector<typename F::value_type> e(p.dim(u), field.zero());
            e[k] = field.one();
            auto z = m.act(cov.map[u].apply(e), path);
            for (std::size_t row = 0; row < z.size(); ++row)
              big(row, coord(cp, p, w, u, b, k)) = z[row];
          }
        }
      }
    }
    gp.components.push_back(big * cp.section[w]);
  }
  d.morphism = is_morphism(c, im, gp);
  d.surjective = true;
  for (std::size_t w = 0; w < nw; ++w)
    if (rank(gp[w]) != im.dim(w)) d.surjective = false;
  auto kk = kernel(c, gp);

  d.direct = d.inside = true;
  std::vector<Matrix<F>> l_basis;
  for (std::size_t w = 0; w < nw; ++w) {
    // Image of C_i(Ker g) inside C_i(P).
    Matrix<F> lift(field, cp.free.dim(w), ck.free.dim(w));
    for (std::size_t u = 0; u < nu; ++u)
      for (auto b : lam.basis_between(flat.flat_vertex(i, u), w))
        for (std::size_t k2 = 0; k2 < kg.module.dim(u); ++k2)
          for (std::size_t k = 0; k < p.dim(u); ++k) {
            const auto& x = kg.inclusion[u](k, k2);
            if (!x.is_zero()) lift(coord(cp, p, w, u, b, k), coord(ck, kg.module, w, u, b, k2)) = x;
          }
    Matrix<F> ck_img = cp.projection[w] * lift * ck.section[w];

    // Span of p_h (x) x, p_h complementary to Ker g, x starting with a connector.
    std::vector<std::vector<typename F::value_type>> cols;
    std::size_t predicted = 0;
    if (flat.vertex_owner(w).first != i) {
      for (std::size_t u = 0; u < nu; ++u) {
        QuotientMap<F> qm(field, p.dim(u), kg.inclusion[u]);
        const auto& comp = qm.complement_coordinates();
        std::size_t starts = 0;
        for (auto b : lam.basis_between(flat.flat_vertex(i, u), w)) {
          const auto& fp = lam.basis_path(b);
          if (fp.arrows.empty() || !flat.arrow_info(fp.arrows.front()).connector) continue;
          ++starts;
          for (auto h : comp) {
            std::vector<typename F::value_type> col(c.dim(w), field.zero());
            auto pos = coord(cp, p, w, u, b, h);
            for (std::size_t row = 0; row < c.dim(w); ++row) col[row] = cp.projection[w](row, pos);
            cols.push_back(std::move(col));
          }
        }
        predicted += starts * (p.dim(u) - kg.module.dim(u));
      }
    }
    Matrix<F> l_span = Matrix<F>::from_columns(field, c.dim(w), cols);
    Matrix<F> lb = image_basis(l_span);
    d.dim_k.push_back(kk.module.dim(w));
    d.dim_cone_ker.push_back(rank(ck_img));
    d.dim_l.push_back(lb.cols());
    d.predicted_l.push_back(predicted);
    auto both = hstack(ck_img, lb);
    if (rank(both) != rank(ck_img) + lb.cols()) d.direct = false;
    if (!(gp[w] * both).is_zero()) d.inside = false;
    l_basis.push_back(std::move(lb));
  }
  try {
    d.l = submodule_from_basis(c, std::move(l_basis)).module;
  } catch (const dimension_error&) {
    d.l.reset();
  }
  return d;
}

template <ExactField F>
CheckReport check_main_lemma(const GbpSpec<F>& spec, const FlatAlgebra<F>& flat, std::size_t i,
                             const Module<F>& m, const CheckOptions& opt = {}) {
  CheckReport r;
  r.claim = "main_lemma";
  r.seed = opt.seed;
  r.instance = detail::vertex_instance(r.claim, spec, i, m, opt);
  check_module(m);
  auto d = main_lemma_data(flat, i, m);
  auto total = [](const std::vector<std::size_t>& v) {
    std::size_t s = 0;
    for (auto x : v) s += x;
    return s;
  };
  std::vector<std::string> fails;
  if (!d.morphism) fails.push_back("g' is not a morphism");
  if (!d.surjective) fails.push_back("g' is not onto");
  if (!d.direct) fails.push_back("C(Ker g) and L overlap");
  if (!d.inside) fails.push_back("L or C(Ker g) not in the kernel");
  for (std::size_t w = 0; w < d.dim_k.size(); ++w) {
    if (d.dim_k[w] != d.dim_cone_ker[w] + d.dim_l[w])
      fails.push_back("(a) dim K at " + flat.quiver().vertex_id(w));
    if (d.dim_l[w] != d.predicted_l[w])
      fails.push_back("(a) dim L at " + flat.quiver().vertex_id(w));
  }
  r.lhs = "s=" + std::to_string(d.s) + " r=" + std::to_string(d.r) +
          " dim K=" + std::to_string(total(d.dim_k)) +
          " dim C(Ker g)=" + std::to_string(total(d.dim_cone_ker)) +
          " dim L=" + std::to_string(total(d.dim_l));
  r.rhs = "predicted dim L=" + std::to_string(total(d.predicted_l));
  std::vector<std::string> notes;
  if (!d.l) {
    fails.push_back("L is not a submodule");
  } else {
    const auto& l = *d.l;
    const auto& s = spec;
    // (b) L_j free over A_j of rank dim L_j / dim A_j.
    for (std::size_t j = 0; j < s.gamma.vertex_count(); ++j) {
      if (j == i) continue;
      auto lj = component_module(flat, l, j);
      std::size_t dj = s.algebra(j).dim();
      std::size_t pred = 0;
      for (std::size_t u = flat.vertex_begin(j); u < flat.vertex_end(j); ++u) pred += d.predicted_l[u];
      if (pred % dj != 0) {
        fails.push_back("(b) predicted rank at " + s.gamma.vertex_id(j) + " not integral");
        continue;
      }
      std::size_t n = pred / dj;
      auto top = top_and_radical(lj).top_dims;
      bool free = lj.total_dim() == n * dj;
      for (auto t : top) free = free && t == n;
      if (!free) fails.push_back("(b) L_" + s.gamma.vertex_id(j) + " is not free of rank " + std::to_string(n));
    }
    // (c) support in proper successors.
    auto succ = successors(s.gamma, i).proper;
    for (auto j : outer_support(flat, l))
      if (!succ.count(j)) fails.push_back("(c) L supported at " + s.gamma.vertex_id(j));
    // (d) no outer relation starting at i.
    bool starts = false;
    for (const auto& rel : s.outer_relations) starts = starts || rel.source() == i;
    if (starts) {
      notes.push_back("(d) skipped: outer relation starts at i");
    } else {
      std::size_t expect = 0;
      for (auto al : s.gamma.out_arrows(i))
        expect += flat.basis_from(s.gamma.arrow(al).target).size();
      expect *= d.s - d.r;
      bool proj = projective_cover(l).projective.total_dim() == l.total_dim();
      if (!proj) fails.push_back("(d) L is not projective");
      if (l.total_dim() != expect)
        fails.push_back("(d) dim L != (s-r) * sum dim 1_j Lambda");
    }
  }
  if (!fails.empty()) notes.insert(notes.begin(), detail::join(fails, "; "));
  r.note = detail::join(notes, "; ");
  conclude(r, fails.empty() ? Verdict::holds : Verdict::violated);
  return r;
}

// ---------------------------------------------------------------------------
// Random modules.

namespace detail {

template <ExactField F, class Rng>
std::vector<std::size_t> random_dims(std::size_t n, std::size_t max_total, Rng& rng) {
  std::vector<std::size_t> dims(n, 0);
  std::size_t total = 1 + rng() % std::max<std::size_t>(1, max_total);
  // Concentrate on a random interval of vertices for connected supports.
  std::size_t lo = rng() % n, len = 1 + rng() % n;
  for (std::size_t k = 0; k < total; ++k) dims[(lo + rng() % len) % n]++;
  return dims;
}

}  // namespace detail

/// Vertex by vertex from the sinks up: the relations starting at v are linear
/// in the maps of the arrows leaving v once everything below is fixed.
template <ExactField F, class Rng>
Module<F> sample_module_with_dims(const AlgebraPtr<F>& alg, const std::vector<std::size_t>& dims,
                                  Rng& rng) {
  const auto& q = alg->quiver();
  const F& field = alg->field();
  std::vector<Matrix<F>> maps;
  for (const auto& a : q.arrows()) maps.emplace_back(field, dims[a.target], dims[a.source]);
  auto order = topological_order(q);
  auto rest_matrix = [&](const Path& p) {
    Matrix<F> acc = Matrix<F>::identity(field, dims[q.arrow(p.arrows.front()).target]);
    for (std::size_t t = 1; t < p.arrows.size(); ++t) acc = maps[p.arrows[t]] * acc;
    return acc;
  };
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = *it;
    const auto& outs = q.out_arrows(v);
    if (dims[v] == 0 || outs.empty()) continue;
    std::map<std::size_t, std::size_t> off;
    std::size_t unknowns = 0;
    for (auto a : outs) {
      off[a] = unknowns;
      unknowns += dims[q.arrow(a).target] * dims[v];
    }
    if (unknowns == 0) continue;
    std::vector<std::vector<typename F::value_type>> rows;
    for (const auto& rel : alg->relations()) {
      if (rel.source() != v) continue;
      const std::size_t z = rel.target();
      std::vector<Matrix<F>> rests;
      for (const auto& [c, p] : rel.terms()) rests.push_back(rest_matrix(p));
      for (std::size_t row = 0; row < dims[z]; ++row) {
        for (std::size_t k = 0; k < dims[v]; ++k) {
          std::vector<typename F::value_type> eq(unknowns, field.zero());
          std::size_t t = 0;
          for (const auto& [c, p] : rel.terms()) {
            auto a = p.arrows.front();
            const auto& rm = rests[t++];
            for (std::size_t s = 0; s < rm.cols(); ++s)
              if (!rm(row, s).is_zero()) eq[off[a] + s * dims[v] + k] += c * rm(row, s);
          }
          rows.push_back(std::move(eq));
        }
      }
    }
    Matrix<F> sol = rows.empty() ? Matrix<F>::identity(field, unknowns)
                                 : kernel_basis(Matrix<F>::from_rows(field, rows, unknowns));
    std::vector<typename F::value_type> x(unknowns, field.zero());
    for (int attempt = 0; attempt < 3; ++attempt) {
      for (std::size_t c = 0; c < sol.cols(); ++c) {
        auto s = field.random(rng, 2);
        for (std::size_t e = 0; e < unknowns; ++e)
          if (!sol(e, c).is_zero()) x[e] += s * sol(e, c);
      }
      bool nonzero = std::any_of(x.begin(), x.end(), [](const auto& y) { return !y.is_zero(); });
      if (nonzero || sol.cols() == 0) break;
    }
    for (auto a : outs) {
      auto& mat = maps[a];
      for (std::size_t row = 0; row < mat.rows(); ++row)
        for (std::size_t k = 0; k < dims[v]; ++k) mat(row, k) = x[off[a] + row * dims[v] + k];
    }
  }
  return Module<F>(alg, dims, std::move(maps));
}

/// P_v / U for U generated by random elements of rad P_v, shrunk until the
/// total dimension is at most max_total.
template <ExactField F, class Rng>
Module<F> sample_local_module(const AlgebraPtr<F>& alg, std::size_t v, std::size_t max_total,
                              Rng& rng) {
  const F& field = alg->field();
  auto p = projective(alg, v);
  auto rad = radical_spanning(p);
  std::vector<std::pair<std::size_t, std::vector<typename F::value_type>>> gens;
  std::size_t extra = rng() % 3;
  for (int round = 0; round < 64; ++round) {
    auto sub = generated_submodule(p, gens);
    std::vector<Matrix<F>> span;
    for (std::size_t w = 0; w < alg->vertex_count(); ++w) span.push_back(sub.inclusion[w]);
    auto qt = quotient(p, span);
    if (qt.module.total_dim() <= max_total && (extra == 0 || qt.module.total_dim() == 1))
      return qt.module;
    if (qt.module.total_dim() <= max_total) --extra;
    // A random radical element not yet in the submodule.
    std::vector<std::size_t> open;
    for (std::size_t w = 0; w < alg->vertex_count(); ++w)
      if (rank(hstack(sub.inclusion[w], rad[w])) > sub.inclusion[w].cols()) open.push_back(w);
    if (open.empty()) return qt.module;
    auto w = open[rng() % open.size()];
    std::vector<typename F::value_type> x(p.dim(w), field.zero());
    for (std::size_t c = 0; c < rad[w].cols(); ++c) {
      auto s = field.random(rng, 2);
      for (std::size_t e = 0; e < x.size(); ++e) x[e] += s * rad[w](e, c);
    }
    gens.emplace_back(w, std::move(x));
  }
  return simple(alg, v);
}

/// Random module of total dimension at most max_total satisfying the relations.
template <ExactField F, class Rng>
Module<F> random_module(const AlgebraPtr<F>& alg, std::size_t max_total, Rng& rng) {
  const std::size_t n = alg->vertex_count();
  auto kind = rng() % 4;
  if (is_acyclic(alg->quiver()) && kind != 0)
    return sample_module_with_dims(alg, detail::random_dims<F>(n, max_total, rng), rng);
  if (kind == 1 || kind == 3) {
    // Colocal: dual of a local module over the opposite algebra.
    return dual(sample_local_module(alg->opposite(), rng() % n, max_total, rng));
  }
  auto a = sample_local_module(alg, rng() % n, max_total, rng);
  if (a.total_dim() < max_total && rng() % 2) {
    auto b = sample_local_module(alg, rng() % n, max_total - a.total_dim(), rng);
    return direct_sum(a, b);
  }
  return a;
}

// ---------------------------------------------------------------------------
// Instance generation.

struct InstanceGenerator {
  std::uint64_t seed = 0;
  std::size_t max_gamma_vertices = 3;
  std::size_t max_sigma_vertices = 3;
  std::size_t max_relations = 1;
  std::size_t max_module_dim = 5;
  std::size_t tuples = 3;
  bool require_remark = false;
};

template <ExactField F>
struct PoolEntry {
  std::string name;
  AlgebraPtr<F> algebra;
};

/// Small vertex algebras: path algebras, one-relation algebras, the dual
/// numbers and kA3/(ab).
template <ExactField F>
std::vector<PoolEntry<F>> algebra_pool(const F& field) {
  using T = std::vector<std::tuple<std::string, std::string, std::string>>;
  auto zero_rel = [&](const Quiver& q, std::vector<std::string> ids) {
    return Relation<F>(field, {{field.one(), Path::of(q, ids)}});
  };
  std::vector<PoolEntry<F>> pool;
  pool.push_back({"k", build_algebra(field, Quiver({"1"}, T{}), {})});
  {
    Quiver q({"1"}, T{{"x", "1", "1"}});
    pool.push_back({"k[x]/x^2", build_algebra(field, q, {zero_rel(q, {"x", "x"})})});
  }
  pool.push_back({"kA2", build_algebra(field, Quiver({"1", "2"}, T{{"a", "1", "2"}}), {})});
  pool.push_back({"kA3", build_algebra(field, Quiver({"1", "2", "3"}, T{{"a", "1", "2"}, {"b", "2", "3"}}), {})});
  pool.push_back({"kA3'", build_algebra(field, Quiver({"1", "2", "3"}, T{{"a", "1", "2"}, {"b", "3", "2"}}), {})});
  {
    Quiver q({"1", "2", "3"}, T{{"a", "1", "2"}, {"b", "2", "3"}});
    pool.push_back({"kA3/(ab)", build_algebra(field, q, {zero_rel(q, {"a", "b"})})});
  }
  return pool;
}

template <ExactField F>
struct GeneratedInstance {
  GbpSpec<F> spec;
  std::vector<RepTuple<F>> tuples;
  std::vector<std::string> algebra_names;
};

namespace detail {

template <ExactField F>
GbpSpec<F> random_spec(const F& field, const InstanceGenerator& gen, std::mt19937_64& rng,
                       std::vector<std::string>& names) {
  using T = std::vector<std::tuple<std::string, std::string, std::string>>;
  const std::size_t n = 1 + rng() % std::max<std::size_t>(1, gen.max_gamma_vertices);
  std::vector<std::string> vs;
  for (std::size_t v = 0; v < n; ++v) vs.push_back("g" + std::to_string(v + 1));
  // A connected chain plus a few chords, oriented along a random ranking.
  std::vector<std::size_t> rank(n);
  for (std::size_t v = 0; v < n; ++v) rank[v] = v;
  for (std::size_t v = n; v > 1; --v) std::swap(rank[v - 1], rank[rng() % v]);
  T arrows;
  auto add = [&](std::size_t s, std::size_t t) {
    if (rank[s] > rank[t]) std::swap(s, t);
    arrows.emplace_back("e" + std::to_string(arrows.size() + 1), vs[s], vs[t]);
  };
  for (std::size_t s = 0; s + 1 < n; ++s) add(s, s + 1);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 2; t < n; ++t)
      if (rng() % 3 == 0) add(s, t);
  GbpSpec<F> spec;
  spec.field = field;
  spec.gamma = Quiver(vs, arrows);
  auto pool = algebra_pool(field);
  std::vector<std::size_t> allowed;
  for (std::size_t k = 0; k < pool.size(); ++k)
    if (pool[k].algebra->vertex_count() <= gen.max_sigma_vertices) allowed.push_back(k);
  names.clear();
  for (std::size_t v = 0; v < n; ++v) {
    const auto& e = pool[allowed[rng() % allowed.size()]];
    spec.vertex_algebras.push_back(e.algebra);
    names.push_back(e.name);
  }
  // Outer relations: zero relations on paths, or commutativity relations.
  std::vector<Path> long_paths;
  for (const auto& p : enumerate_paths(spec.gamma, n))
    if (p.length() >= 2) long_paths.push_back(p);
  const std::size_t want = gen.max_relations && rng() % 3 ? 1 + rng() % gen.max_relations : 0;
  std::set<std::string> seen;
  for (std::size_t k = 0; k < want && !long_paths.empty(); ++k) {
    const auto& p = long_paths[rng() % long_paths.size()];
    std::vector<Path> parallel;
    for (const auto& o : long_paths)
      if (o.source == p.source && o.target == p.target && !(o == p)) parallel.push_back(o);
    std::vector<typename Relation<F>::Term> terms{{field.one(), p}};
    if (!parallel.empty() && rng() % 2)
      terms.emplace_back(-field.one(), parallel[rng() % parallel.size()]);
    Relation<F> rel(field, std::move(terms));
    if (seen.insert(rel.to_string(spec.gamma)).second) spec.outer_relations.push_back(rel);
  }
  return spec;
}

}  // namespace detail

template <ExactField F>
GeneratedInstance<F> random_instance(const F& field, const InstanceGenerator& gen) {
  std::mt19937_64 rng(gen.seed * 0x9E3779B97F4A7C15ull + 17);
  GeneratedInstance<F> out;
  for (int attempt = 0;; ++attempt) {
    out.spec = detail::random_spec(field, gen, rng, out.algebra_names);
    if (!gen.require_remark || remark_condition(out.spec, {8, false, 1}).proper) break;
    if (attempt == 20) {
      out.spec.outer_relations.clear();
      break;
    }
  }
  out.spec.validate();
  auto flat = flatten(out.spec);
  for (std::size_t k = 0; k < gen.tuples; ++k)
    out.tuples.push_back(from_flat_module(flat, random_module(flat.algebra(), gen.max_module_dim, rng)));
  return out;
}

inline GeneratedInstance<RationalField> random_instance(const InstanceGenerator& gen) {
  return random_instance(RationalField{}, gen);
}

// ---------------------------------------------------------------------------
// Shod and quasitilted.

struct SweepOptions {
  std::uint64_t seed = 1;
  std::size_t budget = 200;   // sampled indecomposables
  std::size_t max_dim = 8;    // total dimension of random modules
  DimOptions dims{12, true, 1};
};

template <ExactField F>
struct SweepStats {
  std::size_t canonical = 0, sampled = 0, uncertified = 0, attempts = 0;
  std::size_t max_pd_finite = 0;
  std::set<std::vector<std::size_t>> dim_vectors;
  std::optional<Module<F>> witness;
  std::string witness_dims;
};

template <ExactField F>
CheckReport shod_sweep(const AlgebraPtr<F>& alg, const SweepOptions& opt,
                       SweepStats<F>* stats_out = nullptr) {
  CheckReport r;
  r.claim = "shod";
  r.seed = opt.seed;
  r.instance = {{"claim", r.claim}, {"algebra", io::algebra_json(*alg, false)},
                {"field", io::field_json(io::field_choice(alg->field()))},
                {"budget", opt.budget}, {"max_dim", opt.max_dim}};
  SweepStats<F> st;
  bool stop = false;
  Verdict v = Verdict::holds;
  auto examine = [&](const Module<F>& x, bool canonical) {
    if (stop || x.is_zero()) return;
    for (const auto& y : split_summands(x)) {
      auto d = is_indecomposable(y);
      if (d.indecomposable != Truth::yes || !d.certified) {
        ++st.uncertified;
        continue;
      }
      if (canonical) ++st.canonical;
      else ++st.sampled;
      st.dim_vectors.insert(y.dims());
      auto pd = proj_dim(y, opt.dims);
      if (pd.is_finite()) st.max_pd_finite = std::max(st.max_pd_finite, pd.value);
      if (leq(pd, 1) == Truth::yes) continue;
      auto id = inj_dim(y, opt.dims);
      if (leq(id, 1) == Truth::yes) continue;
      if (leq(pd, 1) == Truth::no && leq(id, 1) == Truth::no) {
        v = Verdict::violated;
        st.witness = y;
        std::ostringstream ds;
        ds << "pd=" << pd.to_string() << " id=" << id.to_string();
        st.witness_dims = ds.str();
        stop = true;
        return;
      }
      v = combine(v, Verdict::inconclusive);
    }
  };
  auto canon = canonical_modules(alg);
  for (const auto& s : canon.simples) examine(s, true);
  for (const auto& p : canon.projectives) examine(p, true);
  for (const auto& i : canon.injectives) examine(i, true);
  for (const auto& s : canon.simples) {
    examine(syzygy(s), true);
    examine(dual(syzygy(dual(s))), true);
  }
  for (const auto& i : canon.injectives) examine(syzygy(i), true);
  for (const auto& p : canon.projectives) examine(dual(syzygy(dual(p))), true);

  std::mt19937_64 rng(opt.seed);
  const std::size_t max_attempts = 20 * opt.budget + 20;
  while (!stop && st.sampled < opt.budget && st.attempts < max_attempts) {
    ++st.attempts;
    examine(random_module(alg, opt.max_dim, rng), false);
  }
  r.lhs = "indecomposables=" + std::to_string(st.canonical + st.sampled) +
          " (sampled " + std::to_string(st.sampled) + ", canonical " +
          std::to_string(st.canonical) + ")";
  r.rhs = "distinct dimension vectors=" + std::to_string(st.dim_vectors.size());
  if (v == Verdict::violated) {
    r.note = "counterexample: " + st.witness_dims;
    r.verdict = v;
    r.witness = {{"claim", "shod"}, {"algebra", r.instance["algebra"]},
                 {"field", r.instance["field"]}, {"module", io::module_json(*st.witness)},
                 {"cutoff", opt.dims.cutoff}};
  } else {
    r.verdict = v;
    r.note = v == Verdict::holds ? "no counterexample (budget " + std::to_string(opt.budget) + ")"
                                 : "some dimensions hit the cutoff";
    if (st.sampled < opt.budget) {
      r.note += "; only " + std::to_string(st.sampled) + " sampled indecomposables";
      if (r.verdict == Verdict::holds) r.verdict = Verdict::inconclusive;
    }
  }
  if (stats_out) *stats_out = std::move(st);
  return r;
}

/// Quasitilted: shod with gl.dim at most 2.
template <ExactField F>
CheckReport quasitilted_sweep(const AlgebraPtr<F>& alg, const SweepOptions& opt,
                              SweepStats<F>* stats_out = nullptr) {
  auto r = shod_sweep(alg, opt, stats_out);
  r.claim = "quasitilted";
  auto g = global_dim(alg, opt.dims);
  r.rhs += " gl.dim=" + g.to_string();
  r.verdict = combine(r.verdict, verdict_of(leq(g, 2)));
  if (r.verdict == Verdict::violated && r.witness.is_null()) r.witness = r.instance;
  return r;
}

template <ExactField F>
CheckReport quasitilted_sufficient(const GbpSpec<F>& spec, const FlatAlgebra<F>& flat,
                                   const SweepOptions& opt) {
  CheckReport r;
  r.claim = "quasitilted_sufficient";
  r.seed = opt.seed;
  r.instance = {{"claim", r.claim}, {"spec", io::spec_json(spec)}, {"budget", opt.budget}};
  if (!spec.outer_relations.empty()) {
    r.note = "precondition: outer relations present";
    r.verdict = Verdict::inconclusive;
    return r;
  }
  std::vector<std::size_t> non_hereditary;
  for (std::size_t j = 0; j < spec.gamma.vertex_count(); ++j)
    if (!is_hereditary(spec.vertex_algebras[j])) non_hereditary.push_back(j);
  r.lhs = "non-hereditary vertex algebras=" + std::to_string(non_hereditary.size());
  auto sweep_lambda = [&] {
    auto s = quasitilted_sweep(flat.algebra(), opt);
    return s;
  };
  if (non_hereditary.size() > 1) {
    auto s = sweep_lambda();
    r.rhs = std::string("sweep on Lambda ") + to_string(s.verdict) + ": " + s.note;
    r.note = "condition not met (no conclusion)";
    r.verdict = Verdict::inconclusive;
    return r;
  }
  bool shod = true, qt = true;
  if (non_hereditary.size() == 1) {
    const auto& ai = spec.vertex_algebras[non_hereditary.front()];
    auto s = shod_sweep(ai, opt);
    shod = s.verdict == Verdict::holds;
    qt = shod && leq(global_dim(ai, opt.dims), 2) == Truth::yes;
  }
  if (!shod) {
    r.note = "condition not met (no conclusion)";
    r.verdict = Verdict::inconclusive;
    return r;
  }
  // The conclusion is checked on Lambda.
  auto s = sweep_lambda();
  r.rhs = std::string("sweep on Lambda ") + to_string(s.verdict) + ": " + s.note;
  if (qt) {
    r.note = "sufficient condition met -> Lambda shod/quasitilted";
    r.verdict = s.verdict;
  } else {
    auto sh = shod_sweep(flat.algebra(), opt);
    r.note = "sufficient condition met -> Lambda shod";
    r.verdict = sh.verdict;
  }
  if (r.verdict == Verdict::violated) r.witness = s.witness.is_null() ? r.instance : s.witness;
  return r;
}

// ---------------------------------------------------------------------------
// Finitistic dimension bounds.

/// All indecomposable projectives are injective.
template <ExactField F>
bool is_self_injective(const AlgebraPtr<F>& alg) {
  auto canon = canonical_modules(alg);
  for (const auto& p : canon.projectives) {
    bool found = false;
    for (const auto& i : canon.injectives) found = found || is_isomorphic(p, i);
    if (!found) return false;
  }
  return true;
}

struct FindimEstimate {
  std::size_t value = 0;
  bool exact = false;
  std::string how;
};

template <ExactField F>
FindimEstimate findim_estimate(const AlgebraPtr<F>& alg, const SweepOptions& opt) {
  auto g = global_dim(alg, opt.dims);
  if (g.is_finite()) return {g.value, true, "gl.dim"};
  if (is_self_injective(alg)) return {0, true, "self-injective"};
  std::mt19937_64 rng(opt.seed);
  std::size_t best = 0;
  auto canon = canonical_modules(alg);
  std::vector<Module<F>> mods = canon.simples;
  mods.insert(mods.end(), canon.injectives.begin(), canon.injectives.end());
  for (std::size_t k = 0; k < opt.budget; ++k) mods.push_back(random_module(alg, opt.max_dim, rng));
  for (const auto& m : mods) {
    auto pd = proj_dim(m, opt.dims);
    if (pd.is_finite()) best = std::max(best, pd.value);
  }
  return {best, false, "sampled"};
}

template <ExactField F>
CheckReport findim_bounds(const GbpSpec<F>& spec, const FlatAlgebra<F>& flat,
                          const SweepOptions& opt) {
  CheckReport r;
  r.claim = "findim";
  r.seed = opt.seed;
  r.instance = {{"claim", r.claim}, {"spec", io::spec_json(spec)}, {"budget", opt.budget},
                {"max_dim", opt.max_dim}, {"seed", opt.seed}, {"cutoff", opt.dims.cutoff}};
  auto outer = global_dim(outer_algebra(spec), opt.dims);
  std::size_t upper = outer.value;
  bool exact = outer.is_finite();
  std::vector<std::string> parts{"gl.dim kGamma/I=" + outer.to_string()};
  for (std::size_t j = 0; j < spec.gamma.vertex_count(); ++j) {
    auto e = findim_estimate(spec.vertex_algebras[j], opt);
    upper = std::max(upper, e.value);
    exact = exact && e.exact;
    parts.push_back(spec.gamma.vertex_id(j) + ":" + std::to_string(e.value) + "(" + e.how + ")");
  }
  // Lower bound from Lambda-modules of certified finite pd.
  std::size_t lower = 0;
  std::mt19937_64 rng(opt.seed + 1);
  auto canon = canonical_modules(flat.algebra());
  std::vector<Module<F>> mods = canon.simples;
  mods.insert(mods.end(), canon.injectives.begin(), canon.injectives.end());
  for (std::size_t k = 0; k < opt.budget; ++k)
    mods.push_back(random_module(flat.algebra(), opt.max_dim, rng));
  for (const auto& m : mods) {
    auto pd = proj_dim(m, opt.dims);
    if (pd.is_finite()) lower = std::max(lower, pd.value);
  }
  r.lhs = "lower=" + std::to_string(lower);
  r.rhs = "U=" + std::to_string(upper) + (exact ? "" : " (estimate)");
  r.note = detail::join(parts, " ");
  auto rc = remark_condition(spec, opt.dims);
  Verdict v;
  if (lower <= upper) v = Verdict::holds;
  else v = exact ? Verdict::violated : Verdict::inconclusive;
  if (!rc.proper) {
    r.note += "; precondition: remark condition fails";
    v = Verdict::inconclusive;
  }
  if (lower == upper && v == Verdict::holds) r.note += "; equality observed";
  conclude(r, v);
  return r;
}

// ---------------------------------------------------------------------------
// Replaying a witness.

/// One module of a shod sweep: indecomposable with pd >= 2 and id >= 2.
template <ExactField F>
CheckReport check_shod_module(const AlgebraPtr<F>& alg, const Module<F>& m,
                              const CheckOptions& opt = {}) {
  CheckReport r;
  r.claim = "shod";
  r.seed = opt.seed;
  r.instance = {{"claim", r.claim}, {"algebra", io::algebra_json(*alg, false)},
                {"field", io::field_json(io::field_choice(alg->field()))},
                {"module", io::module_json(m)}};
  check_module(m);
  auto d = is_indecomposable(m);
  auto pd = proj_dim(m, opt.dims), id = inj_dim(m, opt.dims);
  r.lhs = "pd=" + pd.to_string() + " id=" + id.to_string();
  r.rhs = std::string("indecomposable=") + to_string(d.indecomposable) +
          (d.certified ? " (certified)" : "");
  Verdict v = Verdict::holds;
  if (leq(pd, 1) == Truth::no && leq(id, 1) == Truth::no) {
    v = d.indecomposable == Truth::yes && d.certified ? Verdict::violated : Verdict::inconclusive;
  } else if (leq(pd, 1) != Truth::yes && leq(id, 1) != Truth::yes) {
    v = Verdict::inconclusive;
  }
  conclude(r, v);
  return r;
}

/// Re-runs the check recorded in a witness (or instance) document.
template <ExactField F>
CheckReport replay(const F& field, const io::json& w) {
  const std::string claim = w.at("claim").get<std::string>();
  CheckOptions co;
  if (w.contains("cutoff")) co.dims.cutoff = w["cutoff"].get<std::size_t>();
  if (claim == "shod") {
    auto alg = io::parse_algebra(field, w.at("algebra"), "witness.algebra");
    auto m = io::parse_module(alg, w.at("module"), "witness.module");
    return check_shod_module(alg, m, co);
  }
  auto spec = io::parse_gbp(field, w.at("spec").at("gbp"), {}, "witness.spec");
  auto flat = flatten(spec);
  if (claim == "remark_condition") return remark_condition_holds(spec, co);
  if (claim == "gd_bounds") return check_gd_bounds(spec, flat, co);
  if (claim == "findim") {
    SweepOptions so;
    so.seed = w.at("seed").get<std::uint64_t>();
    so.budget = w.at("budget").get<std::size_t>();
    so.max_dim = w.at("max_dim").get<std::size_t>();
    so.dims.cutoff = co.dims.cutoff;
    return findim_bounds(spec, flat, so);
  }
  if (w.contains("vertex")) {
    auto i = spec.gamma.vertex(w["vertex"].get<std::string>());
    auto m = io::parse_module(spec.vertex_algebras[i], w.at("module"), "witness.module");
    if (claim == "inclusion") return check_inclusion_inequalities(spec, flat, i, m, co);
    if (claim == "cone_pd") return check_cone_pd(spec, flat, i, m, co);
    if (claim == "main_lemma") return check_main_lemma(spec, flat, i, m, co);
  } else if (w.contains("module")) {
    auto t = from_flat_module(flat, io::parse_module(flat.algebra(), w["module"], "witness.module"));
    if (claim == "pd_formula") return check_pd_formula(spec, flat, t, co);
    if (claim == "id_formula") return check_id_formula(spec, flat, t, co);
    if (claim == "component_bound") return check_component_bound(spec, flat, t, co);
  }
  throw io::schema_error("cannot replay claim '" + claim + "'");
}

// ---------------------------------------------------------------------------
// Suite runner.

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t budget = 20;     // random modules per check
  std::size_t max_dim = 5;
  std::size_t cutoff = 12;
  std::size_t shod_budget = 200;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"pd", "id", "cone", "mainlemma", "gd", "shod", "findim"};
  return names;
}

/// Suites whose statements need the remark condition.
inline bool gated_suite(const std::string& s) {
  return s == "pd" || s == "id" || s == "gd" || s == "findim";
}

template <ExactField F>
std::vector<CheckReport> run_suite(const GbpSpec<F>& spec, const FlatAlgebra<F>& flat,
                                   const std::string& suite, const SuiteOptions& so) {
  std::vector<CheckReport> out;
  CheckOptions co{{so.cutoff, true, 1}, so.seed};
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a of the suite name
  for (unsigned char ch : suite) h = (h ^ ch) * 1099511628211ull;
  std::mt19937_64 rng(so.seed * 7919 + h % 1000003);
  auto flat_modules = [&] {
    std::vector<Module<F>> mods;
    auto canon = canonical_modules(flat.algebra());
    mods.insert(mods.end(), canon.simples.begin(), canon.simples.end());
    for (std::size_t k = 0; k < so.budget; ++k)
      mods.push_back(random_module(flat.algebra(), so.max_dim, rng));
    return mods;
  };
  auto vertex_modules = [&](std::size_t i) {
    std::vector<Module<F>> mods;
    const auto& a = spec.vertex_algebras[i];
    auto canon = canonical_modules(a);
    mods.insert(mods.end(), canon.simples.begin(), canon.simples.end());
    mods.insert(mods.end(), canon.projectives.begin(), canon.projectives.end());
    for (std::size_t k = 0; k < std::max<std::size_t>(1, so.budget / 4); ++k)
      mods.push_back(random_module(a, so.max_dim, rng));
    return mods;
  };
  std::uint64_t n = 0;
  auto push = [&](CheckReport r) {
    r.seed = so.seed * 100000 + n++;
    out.push_back(std::move(r));
  };
  if (suite == "pd") {
    for (const auto& m : flat_modules()) {
      auto t = from_flat_module(flat, m);
      push(check_pd_formula(spec, flat, t, co));
      push(check_component_bound(spec, flat, t, co));
    }
  } else if (suite == "id") {
    for (const auto& m : flat_modules()) push(check_id_formula(spec, flat, from_flat_module(flat, m), co));
  } else if (suite == "cone") {
    for (std::size_t i = 0; i < spec.gamma.vertex_count(); ++i)
      for (const auto& m : vertex_modules(i)) {
        push(check_cone_pd(spec, flat, i, m, co));
        push(check_inclusion_inequalities(spec, flat, i, m, co));
      }
  } else if (suite == "mainlemma") {
    for (std::size_t i = 0; i < spec.gamma.vertex_count(); ++i)
      for (const auto& m : vertex_modules(i)) push(check_main_lemma(spec, flat, i, m, co));
  } else if (suite == "gd") {
    push(check_gd_bounds(spec, flat, co));
  } else if (suite == "shod") {
    SweepOptions sw{so.seed + 1, so.shod_budget, 8, {so.cutoff, true, 1}};
    push(shod_sweep(flat.algebra(), sw));
    push(quasitilted_sufficient(spec, flat, sw));
  } else if (suite == "findim") {
    SweepOptions sw{so.seed + 1, so.budget, so.max_dim, {so.cutoff, true, 1}};
    push(findim_bounds(spec, flat, sw));
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  return out;
}

}  // namespace gbpa
