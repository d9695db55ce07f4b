#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace gbpa;
using namespace gbpa::testing;

namespace {

using Q = RationalField;
using ArrowList = std::vector<std::tuple<std::string, std::string, std::string>>;

GbpSpec<Q> k_chain_spec(std::size_t n, const std::vector<std::size_t>& zero_pairs) {
  auto outer = chain(n, zero_pairs);
  std::vector<AlgebraPtr<Q>> ks(n, field_algebra());
  return make_spec(outer->quiver(), ks, outer->relations());
}

Module<Q> load_module(const AlgebraPtr<Q>& alg, const std::string& name) {
  return io::parse_module(alg, io::read_file(specs_dir() / "modules" / name), name);
}

}  // namespace

TEST(Remark, ChainOfThreeWithOneRelation) {
  auto spec = k_chain_spec(3, {1});
  auto rc = remark_condition(spec);
  EXPECT_EQ(rc.pd_simple, (std::vector<HomDim>{HomDim::finite(2), HomDim::finite(1), HomDim::finite(0)}));
  EXPECT_TRUE(rc.proper);
  EXPECT_TRUE(rc.immediate);
  EXPECT_EQ(remark_condition_holds(spec).verdict, Verdict::holds);
}

TEST(Remark, ChainOfFourWithFirstRelation) {
  // pd S = (2, 1, 1, 0) and pd S_1 = 2 >= max(1, 1, 0) + 1.
  auto rc = remark_condition(k_chain_spec(4, {1}));
  EXPECT_EQ(rc.pd_simple[0], HomDim::finite(2));
  EXPECT_EQ(rc.pd_simple[2], HomDim::finite(1));
  EXPECT_TRUE(rc.proper);
}

TEST(Remark, NoRelationsHoldsVacuously) {
  auto rc = remark_condition(k_chain_spec(3, {}));
  EXPECT_TRUE(rc.proper);
  EXPECT_TRUE(rc.failures.empty());
}

TEST(Remark, ViolatingSpec) {
  auto spec = load_spec("remark-violating.json");
  auto rc = remark_condition(spec);
  // pd S_1 = 2 (only a*b is a relation out of 1), pd S_4 = 3.
  EXPECT_EQ(rc.pd_simple[spec.gamma.vertex("1")], HomDim::finite(2));
  EXPECT_EQ(rc.pd_simple[spec.gamma.vertex("4")], HomDim::finite(3));
  EXPECT_FALSE(rc.proper);
  EXPECT_EQ(rc.failures, (std::vector<std::string>{"1"}));
  auto r = remark_condition_holds(spec);
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_FALSE(r.witness.is_null());
}

TEST(Formulas, PdOfSimpleAtSourceOfA2) {
  auto spec = load_spec("kA2.json");
  auto flat = flatten(spec);
  auto t = from_flat_module(flat, simple(flat.algebra(), 0));
  auto r = check_pd_formula(spec, flat, t);
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_EQ(r.lhs, "1");
  EXPECT_EQ(r.rhs, "1");
}

TEST(Formulas, PdFormulaBlockedWithoutRemark) {
  auto spec = load_spec("remark-violating.json");
  auto flat = flatten(spec);
  auto t = from_flat_module(flat, simple(flat.algebra(), 0));
  auto r = check_pd_formula(spec, flat, t);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
  EXPECT_NE(r.note.find("precondition"), std::string::npos);
}

TEST(Formulas, WorkedExampleModules) {
  auto spec = load_spec("paper-example.json");
  auto flat = flatten(spec);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 15; ++k) {
    auto t = from_flat_module(flat, random_module(flat.algebra(), 6, rng));
    EXPECT_EQ(check_pd_formula(spec, flat, t).verdict, Verdict::holds);
    EXPECT_EQ(check_id_formula(spec, flat, t).verdict, Verdict::holds);
    EXPECT_EQ(check_component_bound(spec, flat, t).verdict, Verdict::holds);
  }
}

TEST(Inclusion, StrictAtSourceEqualAtSink) {
  auto spec = load_spec("kA2.json");
  auto flat = flatten(spec);
  auto k = spec.vertex_algebras[0];
  auto src = check_inclusion_inequalities(spec, flat, 0, simple(k, 0));
  EXPECT_EQ(src.verdict, Verdict::holds);
  EXPECT_EQ(src.note, "strict pd inequality");
  EXPECT_EQ(proj_dim(inclusion(flat, 0, simple(k, 0))), HomDim::finite(1));
  auto snk = check_inclusion_inequalities(spec, flat, 1, simple(spec.vertex_algebras[1], 0));
  EXPECT_EQ(snk.verdict, Verdict::holds);
  EXPECT_EQ(snk.note, "sink");
}

TEST(Cone, PdPreservedIncludingInfinity) {
  auto spec = load_spec("lambda-example.json");
  auto flat = flatten(spec);
  auto d = spec.vertex_algebras[1];
  auto r = check_cone_pd(spec, flat, 1, simple(d, 0));
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_EQ(r.note, "matched infinity certificates");
  auto p = check_cone_pd(spec, flat, 1, projective(d, 0));
  EXPECT_EQ(p.lhs, "0");
  EXPECT_EQ(p.rhs, "0");
}

TEST(GlobalDimension, WorkedExampleBounds) {
  auto spec = load_spec("paper-example.json");
  auto flat = flatten(spec);
  EXPECT_EQ(global_dim(flat.algebra()), HomDim::finite(2));
  EXPECT_EQ(global_dim(outer_algebra(spec)), HomDim::finite(1));
  auto r = check_gd_bounds(spec, flat);
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_EQ(r.lhs, "2");
  EXPECT_EQ(r.rhs, "[2, 2]");
}

TEST(MainLemma, SimpleAtSourceOfA2) {
  auto spec = load_spec("kA2.json");
  auto flat = flatten(spec);
  auto d = main_lemma_data(flat, 0, simple(spec.vertex_algebras[0], 0));
  EXPECT_EQ(d.s, 1u);
  EXPECT_EQ(d.r, 0u);
  EXPECT_EQ(d.dim_l, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(d.predicted_l, d.dim_l);
  ASSERT_TRUE(d.l.has_value());
  EXPECT_TRUE(is_isomorphic(*d.l, projective(flat.algebra(), 1)));
  EXPECT_EQ(check_main_lemma(spec, flat, 0, simple(spec.vertex_algebras[0], 0)).verdict,
            Verdict::holds);
}

TEST(MainLemma, WorkedExampleSimples) {
  auto spec = load_spec("paper-example.json");
  auto flat = flatten(spec);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& a = spec.vertex_algebras[i];
    for (std::size_t u = 0; u < a->vertex_count(); ++u) {
      auto r = check_main_lemma(spec, flat, i, simple(a, u));
      EXPECT_EQ(r.verdict, Verdict::holds) << i << " " << u << " " << r.note;
    }
  }
  // S_1 of A at Gamma-vertex 1: P = P_1 has dim 2, Ker g = S_2 has dim 1, and
  // L is one copy of the simple projective at 2/1.
  auto d = main_lemma_data(flat, 0, simple(spec.vertex_algebras[0], 0));
  EXPECT_EQ(d.s, 2u);
  EXPECT_EQ(d.r, 1u);
  std::size_t total = 0;
  for (auto x : d.dim_l) total += x;
  EXPECT_EQ(total, 1u);
}

TEST(MainLemma, LambdaExampleSkipsFreeness) {
  auto spec = load_spec("lambda-example.json");
  auto flat = flatten(spec);
  auto r = check_main_lemma(spec, flat, 0, simple(spec.vertex_algebras[0], 0));
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_NE(r.note.find("(d) skipped"), std::string::npos);
}

TEST(Shod, HereditaryAlgebraHasNoCounterexample) {
  SweepOptions so;
  so.budget = 60;
  auto r = shod_sweep(chain(3), so);
  EXPECT_EQ(r.verdict, Verdict::holds);
}

TEST(Shod, FiveChainMiddleSimpleIsACounterexample) {
  auto a = load_algebra("chain5.json");
  auto s3 = simple(a, 2);
  EXPECT_EQ(proj_dim(s3), HomDim::finite(2));
  EXPECT_EQ(inj_dim(s3), HomDim::finite(2));
  SweepOptions so;
  so.budget = 50;
  auto r = shod_sweep(a, so);
  ASSERT_EQ(r.verdict, Verdict::violated);
  auto again = replay(Q{}, r.witness);
  EXPECT_EQ(again.verdict, Verdict::violated);
  EXPECT_EQ(replay(Q{}, r.witness).to_json().dump(), again.to_json().dump());
}

TEST(Shod, WorkedExampleWitness) {
  // Hand-computed: End = k, minimal projective resolution of length 2, and
  // the second cosyzygy is nonzero.
  auto flat = flatten(load_spec("paper-example.json"));
  auto m = load_module(flat.algebra(), "shod-witness.json");
  EXPECT_NO_THROW(check_module(m));
  EXPECT_EQ(hom_space(m, m).size(), 1u);
  auto res = minimal_resolution(m, 5);
  ASSERT_EQ(res.projectives.size(), 3u);
  EXPECT_EQ(res.projectives[2].total_dim(), 2u);
  EXPECT_EQ(proj_dim(m), HomDim::finite(2));
  EXPECT_EQ(inj_dim(m), HomDim::finite(2));
  auto r = check_shod_module(flat.algebra(), m);
  EXPECT_EQ(r.verdict, Verdict::violated);
  SweepOptions so;
  EXPECT_EQ(shod_sweep(flat.algebra(), so).verdict, Verdict::violated);
}

TEST(Shod, SufficientConditionWitness) {
  // Lambda = (A -> k): the witness is indecomposable with pd = id = 2, while
  // its restriction to A is S_1 + P_2 + S_3 with pd S_1 = 2 and id S_3 = 2.
  auto spec = load_spec("qt-sufficient.json");
  auto flat = flatten(spec);
  auto m = load_module(flat.algebra(), "qt-witness.json");
  EXPECT_NO_THROW(check_module(m));
  EXPECT_EQ(hom_space(m, m).size(), 1u);
  EXPECT_EQ(proj_dim(m), HomDim::finite(2));
  EXPECT_EQ(inj_dim(m), HomDim::finite(2));
  auto a = spec.vertex_algebras[0];
  auto parts = split_summands(component_module(flat, m, 0));
  ASSERT_EQ(parts.size(), 3u);
  std::vector<std::size_t> pds, ids;
  for (const auto& p : parts) {
    pds.push_back(proj_dim(p).value);
    ids.push_back(inj_dim(p).value);
  }
  EXPECT_EQ(*std::max_element(pds.begin(), pds.end()), 2u);
  EXPECT_EQ(*std::max_element(ids.begin(), ids.end()), 2u);
  SweepOptions so;
  auto qs = quasitilted_sufficient(spec, flat, so);
  EXPECT_NE(qs.note.find("sufficient condition met"), std::string::npos);
  EXPECT_EQ(qs.verdict, Verdict::violated);
}

TEST(Shod, SufficientConditionOnHereditaryPieces) {
  auto spec = load_spec("kA2.json");
  auto flat = flatten(spec);
  SweepOptions so;
  so.budget = 40;
  auto r = quasitilted_sufficient(spec, flat, so);
  EXPECT_NE(r.note.find("sufficient condition met"), std::string::npos);
  EXPECT_EQ(r.verdict, Verdict::holds);
  auto lam = load_spec("lambda-example.json");
  EXPECT_EQ(quasitilted_sufficient(lam, flatten(lam), so).verdict, Verdict::inconclusive);
}

TEST(Findim, BoundsOnExamples) {
  SweepOptions so;
  so.budget = 20;
  so.max_dim = 5;
  auto spec = load_spec("paper-example.json");
  auto r = findim_bounds(spec, flatten(spec), so);
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_EQ(r.lhs, "lower=2");
  EXPECT_EQ(r.rhs, "U=2");
  auto lam = load_spec("lambda-example.json");
  auto l = findim_bounds(lam, flatten(lam), so);
  EXPECT_EQ(l.verdict, Verdict::holds);
  EXPECT_EQ(l.rhs, "U=2");
  EXPECT_TRUE(is_self_injective(truncated(2)));
  EXPECT_FALSE(is_self_injective(chain(2)));
}

TEST(Generator, SmallestBoundsGiveOneVertex) {
  InstanceGenerator g;
  g.seed = 0;
  g.max_gamma_vertices = 1;
  g.max_sigma_vertices = 1;
  g.max_relations = 0;
  g.max_module_dim = 1;
  auto inst = random_instance(g);
  EXPECT_EQ(inst.spec.gamma.vertex_count(), 1u);
  EXPECT_EQ(inst.spec.gamma.arrow_count(), 0u);
  EXPECT_EQ(inst.spec.algebra(0).vertex_count(), 1u);
  EXPECT_TRUE(inst.spec.outer_relations.empty());
  for (const auto& t : inst.tuples) EXPECT_LE(t.components[0].total_dim(), 1u);
}

TEST(Generator, Deterministic) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    InstanceGenerator g;
    g.seed = s;
    auto a = random_instance(g), b = random_instance(g);
    EXPECT_EQ(io::spec_json(a.spec), io::spec_json(b.spec));
    // Separate runs build separate algebra objects; compare contents.
    ASSERT_EQ(a.tuples.size(), b.tuples.size());
    for (std::size_t k = 0; k < a.tuples.size(); ++k) {
      EXPECT_EQ(a.tuples[k].edge_maps, b.tuples[k].edge_maps);
      ASSERT_EQ(a.tuples[k].components.size(), b.tuples[k].components.size());
      for (std::size_t j = 0; j < a.tuples[k].components.size(); ++j)
        EXPECT_EQ(io::module_json(a.tuples[k].components[j]),
                  io::module_json(b.tuples[k].components[j]));
    }
  }
}

TEST(Generator, RemarkFilter) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    InstanceGenerator g;
    g.seed = s;
    g.require_remark = true;
    auto inst = random_instance(g);
    EXPECT_TRUE(remark_condition(inst.spec).proper);
    auto flat = flatten(inst.spec);
    for (const auto& t : inst.tuples) EXPECT_NO_THROW(to_flat_module(flat, t));
  }
}

TEST(Suites, DeterministicJsonl) {
  auto spec = load_spec("paper-example.json");
  auto flat = flatten(spec);
  SuiteOptions so;
  so.seed = 3;
  so.budget = 5;
  for (const auto& s : {"pd", "id", "cone", "mainlemma", "gd"}) {
    auto a = run_suite(spec, flat, s, so), b = run_suite(spec, flat, s, so);
    EXPECT_EQ(to_jsonl(a), to_jsonl(b)) << s;
    for (const auto& r : a) EXPECT_NE(r.verdict, Verdict::violated) << s << " " << r.note;
  }
}

TEST(Replay, ViolationsReproduce) {
  auto spec = load_spec("remark-violating.json");
  auto r = remark_condition_holds(spec);
  ASSERT_TRUE(r.violated());
  auto text = r.witness.dump();
  auto again = replay(Q{}, io::parse_text(text, "witness"));
  EXPECT_EQ(again.to_json().dump(), r.to_json().dump());
}
