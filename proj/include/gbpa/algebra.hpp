#pragma once

// Bound quiver algebras kQ/(I) presented by a monomial (path) basis and a
// rewriting of every other path into that basis.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gbpa/field.hpp"
#include "gbpa/matrix.hpp"
#include "gbpa/quiver.hpp"

namespace gbpa {

class cutoff_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse coordinate vector over a basis, sorted by index, no zeros.
template <ExactField F>
using Combination = std::vector<std::pair<std::size_t, typename F::value_type>>;

template <ExactField F>
void accumulate(Combination<F>& acc, const Combination<F>& x,
                const typename F::value_type& scale) {
  if (scale.is_zero() || x.empty()) return;
  Combination<F> out;
  out.reserve(acc.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < acc.size() || j < x.size()) {
    if (j == x.size() || (i < acc.size() && acc[i].first < x[j].first)) {
      out.push_back(std::move(acc[i++]));
    } else if (i == acc.size() || x[j].first < acc[i].first) {
      out.emplace_back(x[j].first, x[j].second * scale);
      ++j;
    } else {
      auto v = acc[i].second + x[j].second * scale;
      if (!v.is_zero()) out.emplace_back(acc[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  acc = std::move(out);
}

namespace detail {

/// Row space kept in reduced row-echelon form under incremental insertion.
/// Column 0 is the most significant coordinate for pivot selection.
template <ExactField F>
class IncrementalSpan {
 public:
  using value_type = typename F::value_type;

  IncrementalSpan(const F& field, std::size_t width)
      : field_(field), width_(width) {}

  /// Returns true when v was independent of the current span.
  bool insert(std::vector<value_type> v) {
    reduce(v);
    std::size_t p = 0;
    while (p < width_ && v[p].is_zero()) ++p;
    if (p == width_) return false;
    auto inv = v[p].inverse();
    for (auto& x : v)
      if (!x.is_zero()) x *= inv;
    for (auto& row : rows_) {
      if (row[p].is_zero()) continue;
      auto c = row[p];
      for (std::size_t j = 0; j < width_; ++j)
        if (!v[j].is_zero()) row[j] -= c * v[j];
    }
    // Keep rows ordered by pivot.
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    auto k = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(k), std::move(v));
    return true;
  }

  bool contains(std::vector<value_type> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(),
                       [](const value_type& x) { return x.is_zero(); });
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<std::vector<value_type>>& rows() const { return rows_; }

 private:
  void reduce(std::vector<value_type>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto c = v[pivots_[r]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < width_; ++j)
        if (!rows_[r][j].is_zero()) v[j] -= c * rows_[r][j];
    }
  }

  F field_;
  std::size_t width_;
  std::vector<std::vector<value_type>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace detail

struct BuildOptions {
  /// Paths of length >= max_len are dropped; 0 selects 2|Q0| + 2.
  std::size_t max_len = 0;
  /// Throw cutoff_error instead of returning a flagged algebra.
  bool require_exact = false;
};

template <ExactField F>
class BoundQuiverAlgebra
    : public std::enable_shared_from_this<BoundQuiverAlgebra<F>> {
 public:
  using value_type = typename F::value_type;
  using Ptr = std::shared_ptr<const BoundQuiverAlgebra>;

  static Ptr build(const F& field, Quiver quiver,
                   std::vector<Relation<F>> relations,
                   BuildOptions opts = {}) {
    auto alg = std::shared_ptr<BoundQuiverAlgebra>(new BoundQuiverAlgebra(
        field, std::move(quiver), std::move(relations), opts.max_len));
    alg->compute();
    if (opts.require_exact && !alg->exact_) {
      throw cutoff_error(
          "cutoff exceeded: could not certify that paths of some length "
          "below " +
          std::to_string(alg->max_len_) + " vanish");
    }
    return alg;
  }

  const F& field() const { return field_; }
  const Quiver& quiver() const { return quiver_; }
  const std::vector<Relation<F>>& relations() const { return relations_; }
  std::size_t max_len() const { return max_len_; }
  bool exact() const { return exact_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t vertex_count() const { return quiver_.vertex_count(); }

  const std::vector<Path>& basis() const { return basis_; }
  const Path& basis_path(std::size_t i) const { return basis_.at(i); }
  std::size_t stationary_index(std::size_t v) const { return stationary_.at(v); }

  /// Basis indices of paths from u to w, in basis order.
  const std::vector<std::size_t>& basis_between(std::size_t u,
                                                std::size_t w) const {
    return between_.at(u * vertex_count() + w);
  }
  std::size_t paths_between(std::size_t u, std::size_t w) const {
    return basis_between(u, w).size();
  }
  /// Position of a basis element inside basis_between(source, target).
  std::size_t position_in_block(std::size_t b) const { return block_pos_.at(b); }

  std::optional<std::size_t> basis_index(const Path& p) const {
    auto it = basis_index_.find(p);
    if (it == basis_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Residue of an arbitrary path in basis coordinates.
  Combination<F> reduce(const Path& p) const {
    if (p.length() >= max_len_) return {};
    if (auto b = basis_index(p)) return {{*b, field_.one()}};
    auto it = rewrite_.find(p);
    if (it == rewrite_.end()) return {};
    return it->second;
  }

  /// Right action of an arrow on a basis element: b * arrow.
  const Combination<F>& act(std::size_t b, std::size_t arrow) const {
    return action_.at(b * quiver_.arrow_count() + arrow);
  }

  Combination<F> multiply_basis(std::size_t a, std::size_t b) const {
    const Path& pa = basis_[a];
    const Path& pb = basis_[b];
    if (!pa.composable(pb)) return {};
    return reduce(pa.then(pb));
  }

  Combination<F> multiply(const Combination<F>& x,
                          const Combination<F>& y) const {
    Combination<F> out;
    for (const auto& [i, xi] : x)
      for (const auto& [j, yj] : y) accumulate<F>(out, multiply_basis(i, j), xi * yj);
    return out;
  }

  /// Residue of a linear combination of paths (e.g. a relation).
  Combination<F> reduce(const Relation<F>& r) const {
    Combination<F> out;
    for (const auto& [c, p] : r.terms()) accumulate<F>(out, reduce(p), c);
    return out;
  }

  /// The opposite algebra, built once and cached; (B^op)^op is B itself.
  Ptr opposite() const {
    std::lock_guard<std::mutex> lock(op_mutex_);
    if (auto p = op_weak_.lock()) return p;
    if (op_strong_) return op_strong_;
    std::vector<Relation<F>> rev;
    Quiver opq = quiver_.opposite();
    for (const auto& r : relations_) rev.push_back(r.opposite(opq));
    auto op = std::shared_ptr<BoundQuiverAlgebra>(new BoundQuiverAlgebra(
        field_, std::move(opq), std::move(rev), max_len_));
    op->compute();
    op->op_weak_ = this->weak_from_this();
    op_strong_ = op;
    return op;
  }

  std::string describe() const {
    return "algebra(vertices=" + std::to_string(vertex_count()) +
           ", arrows=" + std::to_string(quiver_.arrow_count()) +
           ", relations=" + std::to_string(relations_.size()) +
           ", dim=" + std::to_string(dim()) + (exact_ ? "" : ", inexact") + ")";
  }

 private:
  BoundQuiverAlgebra(const F& field, Quiver quiver,
                     std::vector<Relation<F>> relations, std::size_t max_len)
      : field_(field),
        quiver_(std::move(quiver)),
        relations_(std::move(relations)),
        max_len_(max_len ? max_len : 2 * quiver_.vertex_count() + 2) {
    if (max_len_ < 2) throw quiver_error("max_len must be at least 2");
    for (const auto& r : relations_) {
      for (const auto& [c, p] : r.terms()) {
        for (auto a : p.arrows) {
          if (a >= quiver_.arrow_count())
            throw quiver_error("relation uses an arrow outside the quiver");
        }
      }
    }
  }

  void compute() {
    const std::size_t n = quiver_.vertex_count();
    auto paths = enumerate_paths(quiver_, max_len_ - 1);

    // Paths grouped by (source, target); inside a block, column 0 is the
    // largest path so that pivots are leading terms in deglex order.
    std::vector<std::vector<Path>> block(n * n);
    for (const auto& p : paths) block[p.source * n + p.target].push_back(p);
    std::map<Path, std::size_t> column;
    for (auto& b : block) {
      std::sort(b.begin(), b.end(), std::greater<>());
      for (std::size_t c = 0; c < b.size(); ++c) column[b[c]] = c;
    }

    std::vector<std::vector<const Path*>> ending_at(n), starting_at(n);
    for (const auto& p : paths) {
      ending_at[p.target].push_back(&p);
      starting_at[p.source].push_back(&p);
    }

    std::vector<detail::IncrementalSpan<F>> ideal, certified;
    for (const auto& b : block) {
      ideal.emplace_back(field_, b.size());
      certified.emplace_back(field_, b.size());
    }

    for (const auto& rel : relations_) {
      const std::size_t lo = rel.min_length(), hi = rel.max_length();
      for (const Path* left : ending_at[rel.source()]) {
        if (left->length() + lo >= max_len_) continue;
        for (const Path* right : starting_at[rel.target()]) {
          if (left->length() + lo + right->length() >= max_len_) continue;
          std::size_t key = left->source * n + right->target;
          std::vector<value_type> v(block[key].size(), field_.zero());
          bool truncated = left->length() + hi + right->length() >= max_len_;
          for (const auto& [c, p] : rel.terms()) {
            Path full = left->then(p).then(*right);
            if (full.length() >= max_len_) continue;
            v[column.at(full)] += c;
          }
          if (!truncated) certified[key].insert(v);
          ideal[key].insert(std::move(v));
        }
      }
    }

    // Exactness: some length L whose paths all lie in the span of ideal
    // elements that were never truncated. Then R^L lies in (I).
    exact_ = false;
    for (std::size_t len = 2; len < max_len_ && !exact_; ++len) {
      bool all = true;
      for (std::size_t key = 0; key < block.size() && all; ++key) {
        for (std::size_t c = 0; c < block[key].size() && all; ++c) {
          if (block[key][c].length() != len) continue;
          std::vector<value_type> e(block[key].size(), field_.zero());
          e[c] = field_.one();
          all = certified[key].contains(std::move(e));
        }
      }
      exact_ = all;
    }

    // Basis: non-pivot paths in (length, lex) order.
    std::vector<std::vector<char>> is_pivot(block.size());
    for (std::size_t key = 0; key < block.size(); ++key) {
      is_pivot[key].assign(block[key].size(), 0);
      for (auto c : ideal[key].pivots()) is_pivot[key][c] = 1;
    }
    for (const auto& p : paths) {
      std::size_t key = p.source * n + p.target;
      if (!is_pivot[key][column.at(p)]) {
        basis_index_[p] = basis_.size();
        basis_.push_back(p);
      }
    }
    stationary_.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      stationary_[v] = basis_index_.at(Path::stationary(v));
    }
    between_.assign(n * n, {});
    block_pos_.assign(basis_.size(), 0);
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      auto& lst = between_[basis_[b].source * n + basis_[b].target];
      block_pos_[b] = lst.size();
      lst.push_back(b);
    }

    for (std::size_t key = 0; key < block.size(); ++key) {
      const auto& rows = ideal[key].rows();
      const auto& piv = ideal[key].pivots();
      for (std::size_t r = 0; r < rows.size(); ++r) {
        Combination<F> nf;
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
          if (c == piv[r] || rows[r][c].is_zero()) continue;
          nf.emplace_back(basis_index_.at(block[key][c]), -rows[r][c]);
        }
        std::sort(nf.begin(), nf.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        rewrite_[block[key][piv[r]]] = std::move(nf);
      }
    }

    const std::size_t na = quiver_.arrow_count();
    action_.assign(basis_.size() * na, {});
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      for (auto a : quiver_.out_arrows(basis_[b].target)) {
        Path p = basis_[b];
        p.arrows.push_back(a);
        p.target = quiver_.arrow(a).target;
        action_[b * na + a] = reduce(p);
      }
    }
  }

  F field_;
  Quiver quiver_;
  std::vector<Relation<F>> relations_;
  std::size_t max_len_;
  bool exact_ = false;

  std::vector<Path> basis_;
  std::map<Path, std::size_t> basis_index_;
  std::map<Path, Combination<F>> rewrite_;
  std::vector<std::size_t> stationary_;
  std::vector<std::vector<std::size_t>> between_;
  std::vector<std::size_t> block_pos_;
  std::vector<Combination<F>> action_;

  mutable std::mutex op_mutex_;
  mutable std::weak_ptr<const BoundQuiverAlgebra> op_weak_;
  mutable Ptr op_strong_;
};

template <ExactField F>
using AlgebraPtr = std::shared_ptr<const BoundQuiverAlgebra<F>>;

template <ExactField F>
AlgebraPtr<F> build_algebra(const F& field, Quiver q,
                            std::vector<Relation<F>> rels,
                            BuildOptions opts = {}) {
  return BoundQuiverAlgebra<F>::build(field, std::move(q), std::move(rels), opts);
}

template <ExactField F>
AlgebraPtr<F> opposite(const AlgebraPtr<F>& b) {
  return b->opposite();
}

/// Same quiver shape, relations and basis at the level of indices.
template <ExactField F>
bool structurally_equal(const BoundQuiverAlgebra<F>& a,
                        const BoundQuiverAlgebra<F>& b) {
  return a.quiver().same_shape(b.quiver()) && a.relations() == b.relations() &&
         a.basis() == b.basis();
}

}  // namespace gbpa
