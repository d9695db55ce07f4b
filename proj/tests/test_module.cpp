#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace gbpa;
using namespace gbpa::testing;

namespace {

using Q = RationalField;
using ArrowList = std::vector<std::tuple<std::string, std::string, std::string>>;

AlgebraPtr<Q> kronecker() {
  return build_algebra(Q{}, Quiver({"1", "2"}, ArrowList{{"x", "1", "2"}, {"y", "1", "2"}}), {});
}

Module<Q> kronecker_module(const std::vector<std::vector<std::int64_t>>& x,
                           const std::vector<std::vector<std::int64_t>>& y) {
  auto mx = Matrix<Q>::from_ints(Q{}, x), my = Matrix<Q>::from_ints(Q{}, y);
  return Module<Q>(kronecker(), {mx.cols(), mx.rows()}, {mx, my});
}

std::vector<std::size_t> dims_of(const Module<Q>& m) { return m.dims(); }

}  // namespace

TEST(Module, RejectsWrongShapes) {
  auto a = chain(2);
  EXPECT_THROW(Module<Q>(a, {1}, {}), dimension_error);
  EXPECT_THROW(Module<Q>(a, {1, 1}, {Matrix<Q>(Q{}, 2, 1)}), dimension_error);
}

TEST(Module, RelationViolationsAreReported) {
  auto a = chain(3, {1});
  auto one = Matrix<Q>::from_ints(Q{}, {{1}});
  Module<Q> bad(a, {1, 1, 1}, {one, one});
  EXPECT_FALSE(satisfies_relations(bad));
  EXPECT_THROW(check_module(bad), relation_error);
  Module<Q> good(a, {1, 1, 1}, {one, Matrix<Q>(Q{}, 1, 1)});
  EXPECT_NO_THROW(check_module(good));
}

TEST(Module, ProjectivesAndInjectivesOfA) {
  auto a = load_algebra("algebra-A.json");  // 1 -> 2 -> 3 with the composite zero
  using V = std::vector<std::size_t>;
  EXPECT_EQ(dims_of(projective(a, 0)), (V{1, 1, 0}));
  EXPECT_EQ(dims_of(projective(a, 1)), (V{0, 1, 1}));
  EXPECT_EQ(dims_of(projective(a, 2)), (V{0, 0, 1}));
  EXPECT_EQ(dims_of(injective(a, 0)), (V{1, 0, 0}));
  EXPECT_EQ(dims_of(injective(a, 1)), (V{1, 1, 0}));
  EXPECT_EQ(dims_of(injective(a, 2)), (V{0, 1, 1}));
  for (std::size_t v = 0; v < 3; ++v) {
    EXPECT_TRUE(satisfies_relations(projective(a, v)));
    EXPECT_TRUE(satisfies_relations(injective(a, v)));
  }
  EXPECT_TRUE(is_isomorphic(projective(a, 0), injective(a, 1)));
}

TEST(Module, YonedaDimensions) {
  // dim Hom(P_v, M) = dim M_v = dim Hom(M, I_v).
  auto a = load_algebra("algebra-A.json");
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    auto m = random_module(a, 6, rng);
    for (std::size_t v = 0; v < 3; ++v) {
      EXPECT_EQ(hom_space(projective(a, v), m).size(), m.dim(v));
      EXPECT_EQ(hom_space(m, injective(a, v)).size(), m.dim(v));
    }
  }
}

TEST(Module, HomBetweenSimples) {
  auto a = chain(4);
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = 0; v < 4; ++v)
      EXPECT_EQ(hom_space(simple(a, u), simple(a, v)).size(), u == v ? 1u : 0u);
}

TEST(Module, DualIsAnInvolution) {
  auto a = load_algebra("algebra-A.json");
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    auto m = random_module(a, 5, rng);
    auto dd = dual(dual(m));
    EXPECT_EQ(dd, m);
    EXPECT_EQ(dd.algebra().get(), a.get());
  }
}

TEST(Module, SimplesOfAHaveKnownDimensions) {
  auto a = load_algebra("algebra-A.json");
  EXPECT_EQ(proj_dim(simple(a, 0)), HomDim::finite(2));
  EXPECT_EQ(proj_dim(simple(a, 1)), HomDim::finite(1));
  EXPECT_EQ(proj_dim(simple(a, 2)), HomDim::finite(0));
  EXPECT_EQ(inj_dim(simple(a, 0)), HomDim::finite(0));
  EXPECT_EQ(inj_dim(simple(a, 1)), HomDim::finite(1));
  EXPECT_EQ(inj_dim(simple(a, 2)), HomDim::finite(2));
  EXPECT_EQ(global_dim(a), HomDim::finite(2));
  EXPECT_FALSE(is_hereditary(a));
  EXPECT_TRUE(is_hereditary(chain(3)));
  EXPECT_TRUE(is_hereditary(kronecker()));
}

TEST(Module, FiveChainWithThreeRelations) {
  // pd S_i = 5 - i and id S_i = i - 1.
  auto a = load_algebra("chain5.json");
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(proj_dim(simple(a, i)), HomDim::finite(4 - i));
    EXPECT_EQ(inj_dim(simple(a, i)), HomDim::finite(i));
  }
  EXPECT_EQ(global_dim(a), HomDim::finite(4));
}

TEST(Module, DualNumbersHaveInfiniteDimensions) {
  auto a = truncated(2);
  EXPECT_TRUE(proj_dim(simple(a, 0)).is_infinite());
  EXPECT_TRUE(inj_dim(simple(a, 0)).is_infinite());
  EXPECT_EQ(proj_dim(projective(a, 0)), HomDim::finite(0));
  auto cut = proj_dim(simple(a, 0), {5, false, 1});
  EXPECT_EQ(cut, HomDim::at_least(5));
  EXPECT_FALSE(cut.certified());
  EXPECT_TRUE(global_dim(a).is_infinite());
  auto b = truncated(2, PrimeField{3});
  EXPECT_TRUE(proj_dim(simple(b, 0)).is_infinite());
}

TEST(Module, MinimalResolutionIsExactAndMinimal) {
  auto a = load_algebra("chain5.json");
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    auto m = random_module(a, 7, rng);
    auto r = minimal_resolution(m, 10);
    ASSERT_TRUE(r.complete);
    for (std::size_t k = 0; k < r.projectives.size(); ++k) {
      const auto& cov = r.covers[k];
      // Surjective cover, kernel = next syzygy.
      for (std::size_t v = 0; v < 5; ++v) {
        EXPECT_EQ(rank(cov[v]), r.syzygies[k].dim(v));
        EXPECT_EQ(r.projectives[k].dim(v), r.syzygies[k].dim(v) + r.syzygies[k + 1].dim(v));
      }
      EXPECT_TRUE(compose(cov, r.inclusions[k]).is_zero());
      // Minimality: generators match the top.
      EXPECT_EQ(r.multiplicities[k], top_and_radical(r.syzygies[k]).top_dims);
      if (k >= 1) {
        auto d = r.differential(k);
        EXPECT_TRUE(is_morphism(r.projectives[k], r.projectives[k - 1], d));
        if (k >= 2) {
          EXPECT_TRUE(compose(r.differential(k - 1), d).is_zero());
        }
      }
    }
  }
}

TEST(Module, IndecomposabilityOfKroneckerModules) {
  // x = I, y = Jordan block: indecomposable; y diagonal with distinct
  // eigenvalues: sum of two.
  auto jordan = kronecker_module({{1, 0}, {0, 1}}, {{2, 1}, {0, 2}});
  auto d = is_indecomposable(jordan);
  EXPECT_EQ(d.indecomposable, Truth::yes);
  EXPECT_TRUE(d.certified);
  auto diag = kronecker_module({{1, 0}, {0, 1}}, {{2, 0}, {0, 3}});
  auto e = is_indecomposable(diag);
  EXPECT_EQ(e.indecomposable, Truth::no);
  EXPECT_EQ(split_summands(diag).size(), 2u);
  // Rational canonical form without a rational eigenvalue stays one summand.
  auto irr = kronecker_module({{1, 0}, {0, 1}}, {{0, -2}, {1, 0}});
  EXPECT_EQ(split_summands(irr).size(), 1u);
  EXPECT_NE(is_indecomposable(irr).indecomposable, Truth::no);
}

TEST(Module, SplitSummandsOfDirectSums) {
  auto a = load_algebra("algebra-A.json");
  auto m = direct_sum(a, {simple(a, 0), projective(a, 1), injective(a, 2), simple(a, 0)});
  auto parts = split_summands(m);
  ASSERT_EQ(parts.size(), 4u);
  std::size_t total = 0;
  for (const auto& p : parts) {
    total += p.total_dim();
    EXPECT_EQ(is_indecomposable(p).indecomposable, Truth::yes);
  }
  EXPECT_EQ(total, m.total_dim());
}

TEST(Module, TopAndRadical) {
  auto a = load_algebra("algebra-A.json");
  auto tr = top_and_radical(projective(a, 0));
  EXPECT_EQ(tr.top_dims, (std::vector<std::size_t>{1, 0, 0}));
  auto p = direct_sum(projective(a, 0), projective(a, 1));
  EXPECT_EQ(top_and_radical(p).top_dims, (std::vector<std::size_t>{1, 1, 0}));
}
