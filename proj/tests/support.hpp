#pragma once

// Shared fixtures for the unit tests and the acceptance binary.

#include <filesystem>
#include <string>
#include <tuple>
#include <vector>

#include "gbpa/theorems.hpp"

namespace gbpa::testing {

inline std::filesystem::path specs_dir() { return GBPA_SPECS_DIR; }

template <ExactField F = RationalField>
GbpSpec<F> load_spec(const std::string& name, const F& field = F{}) {
  auto doc = io::load_document(specs_dir() / name);
  return io::parse_gbp(field, doc.root.at("gbp"), doc.base_dir, name);
}

template <ExactField F = RationalField>
AlgebraPtr<F> load_algebra(const std::string& name, const F& field = F{},
                           BuildOptions opts = {}) {
  auto doc = io::load_document(specs_dir() / name);
  auto body = doc.root;
  body.erase("field");
  return io::parse_algebra(field, body, name, opts);
}

/// Linear quiver 1 -> 2 -> ... -> n with arrows a1, a2, ...; each entry k of
/// `zero_pairs` imposes a_k a_{k+1} = 0 (1-based).
template <ExactField F = RationalField>
AlgebraPtr<F> chain(std::size_t n, const std::vector<std::size_t>& zero_pairs = {},
                    const F& field = F{}) {
  std::vector<std::string> vs;
  for (std::size_t v = 1; v <= n; ++v) vs.push_back(std::to_string(v));
  std::vector<std::tuple<std::string, std::string, std::string>> as;
  for (std::size_t v = 1; v < n; ++v)
    as.emplace_back("a" + std::to_string(v), std::to_string(v), std::to_string(v + 1));
  Quiver q(vs, as);
  std::vector<Relation<F>> rels;
  for (auto k : zero_pairs)
    rels.push_back(Relation<F>::monomial(
        field, Path::of(q, std::vector<std::string>{"a" + std::to_string(k),
                                                    "a" + std::to_string(k + 1)})));
  return build_algebra(field, std::move(q), std::move(rels));
}

/// The one-vertex algebra k.
template <ExactField F = RationalField>
AlgebraPtr<F> field_algebra(const F& field = F{}) {
  return build_algebra(field, Quiver({"1"}, std::vector<Arrow>{}), {});
}

/// k[x]/(x^n).
template <ExactField F = RationalField>
AlgebraPtr<F> truncated(std::size_t n, const F& field = F{}) {
  Quiver q({"1"}, {{"x", "1", "1"}});
  std::vector<std::size_t> xs(n, 0);
  return build_algebra(field, q, {Relation<F>::monomial(field, Path::of(q, xs))});
}

template <ExactField F>
GbpSpec<F> make_spec(Quiver gamma, std::vector<AlgebraPtr<F>> algs,
                     std::vector<Relation<F>> outer = {}) {
  GbpSpec<F> s;
  s.field = algs.front()->field();
  s.gamma = std::move(gamma);
  s.vertex_algebras = std::move(algs);
  s.outer_relations = std::move(outer);
  s.validate();
  return s;
}

}  // namespace gbpa::testing
