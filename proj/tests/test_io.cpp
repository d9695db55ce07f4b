#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace gbpa;
using namespace gbpa::testing;
using io::json;

namespace {

using Q = RationalField;

const char* kA3_text = R"({
  "quiver": {"vertices": ["1", "2", "3"],
             "arrows": [{"id": "a", "from": "1", "to": "2"}, {"id": "b", "from": "2", "to": "3"}]},
  "relations": [[{"coeff": "1", "path": ["a", "b"]}]]
})";

}  // namespace

TEST(Io, FieldChoices) {
  EXPECT_TRUE(io::parse_field(json("Q")).is_rational());
  EXPECT_EQ(io::parse_field(json{{"Fp", 7}}).prime, 7u);
  EXPECT_THROW(io::parse_field(json{{"Fp", 8}}), io::schema_error);
  EXPECT_THROW(io::parse_field(json("R")), io::schema_error);
  EXPECT_TRUE(io::field_from_env(nullptr).is_rational());
  EXPECT_TRUE(io::field_from_env("Q").is_rational());
  EXPECT_EQ(io::field_from_env("Fp:11").prime, 11u);
  EXPECT_EQ(io::field_from_env("F13").prime, 13u);
  EXPECT_THROW(io::field_from_env("F12"), io::schema_error);
  EXPECT_THROW(io::field_from_env("GF(4)"), io::schema_error);
  EXPECT_EQ(io::field_json(io::field_choice(PrimeField(5))), (json{{"Fp", 5}}));
}

TEST(Io, Scalars) {
  Q f;
  EXPECT_EQ(io::parse_scalar(f, json(3), "x"), Rational(3));
  EXPECT_EQ(io::parse_scalar(f, json("-3/6"), "x"), Rational(-1, 2));
  EXPECT_THROW(io::parse_scalar(f, json(0.5), "x"), io::schema_error);
  EXPECT_THROW(io::parse_scalar(f, json("0.5"), "x"), io::schema_error);
  EXPECT_THROW(io::parse_scalar(f, json(true), "x"), io::schema_error);
  PrimeField f5(5);
  EXPECT_EQ(io::parse_scalar(f5, json("1/3"), "x").value(), 2u);
}

TEST(Io, MalformedJsonReportsBytePosition) {
  try {
    io::parse_text("{\"quiver\": [1, 2,, 3]}", "bad.json");
    FAIL() << "expected schema_error";
  } catch (const io::schema_error& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("bad.json"), std::string::npos);
    EXPECT_NE(msg.find("byte 18"), std::string::npos) << msg;
  }
}

TEST(Io, UnknownKeysAreRejected) {
  auto j = io::parse_text(R"({"quiver": {"vertices": ["1"], "edges": []}})", "t");
  EXPECT_THROW(io::parse_algebra(Q{}, j, "t"), io::schema_error);
  EXPECT_THROW(io::document_from_text(R"({"quiver": {"vertices": []}, "extra": 1})"),
               io::schema_error);
}

TEST(Io, AlgebraRoundTrip) {
  Q f;
  auto a = io::parse_algebra(f, io::parse_text(kA3_text, "t"), "t");
  EXPECT_EQ(a->dim(), 5u);
  auto j = io::algebra_json(*a, false);
  auto b = io::parse_algebra(f, j, "round");
  EXPECT_TRUE(structurally_equal(*a, *b));
  EXPECT_EQ(io::algebra_json(*b, false), j);
  auto full = io::algebra_json(*a);
  EXPECT_EQ(full["dim"], 5);
  EXPECT_EQ(full["basis"].size(), 5u);
}

TEST(Io, RelationErrorsBecomeSchemaErrors) {
  auto j = io::parse_text(kA3_text, "t");
  j["relations"] = json::parse(R"([[{"coeff": "1", "path": ["b", "a"]}]])");
  EXPECT_THROW(io::parse_algebra(Q{}, j, "t"), io::schema_error);
  j["relations"] = json::parse(R"([[{"coeff": "1", "path": ["a"]}]])");
  EXPECT_THROW(io::parse_algebra(Q{}, j, "t"), io::schema_error);
  j["relations"] = json::parse(R"([[{"coeff": "1", "path": ["zz", "b"]}]])");
  EXPECT_THROW(io::parse_algebra(Q{}, j, "t"), io::schema_error);
}

TEST(Io, SpecWithRelativeReferences) {
  auto spec = load_spec("paper-example.json");
  EXPECT_EQ(spec.gamma.vertex_count(), 3u);
  EXPECT_EQ(spec.algebra(0).dim(), 5u);
  EXPECT_EQ(spec.algebra(1).dim(), 1u);
  // The inline serialization parses back to the same spec.
  auto j = io::spec_json(spec);
  auto again = io::parse_gbp(Q{}, j.at("gbp"), {}, "inline");
  EXPECT_EQ(io::spec_json(again), j);
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_TRUE(structurally_equal(spec.algebra(i), again.algebra(i)));
}

TEST(Io, SpecRejectsCyclesAndMissingVertices) {
  auto cyc = io::parse_text(R"({
    "quiver": {"vertices": ["1", "2"], "arrows": [{"id": "a", "from": "1", "to": "2"},
                                                  {"id": "b", "from": "2", "to": "1"}]},
    "vertex_algebras": {"1": {"quiver": {"vertices": ["1"]}}, "2": {"quiver": {"vertices": ["1"]}}}
  })", "c");
  EXPECT_THROW(io::parse_gbp(Q{}, cyc, {}, "c"), io::schema_error);
  auto missing = io::parse_text(R"({
    "quiver": {"vertices": ["1", "2"], "arrows": []},
    "vertex_algebras": {"1": {"quiver": {"vertices": ["1"]}}}
  })", "m");
  EXPECT_THROW(io::parse_gbp(Q{}, missing, {}, "m"), io::schema_error);
}

TEST(Io, ModuleFormats) {
  Q f;
  auto a = io::parse_algebra(f, io::parse_text(kA3_text, "t"), "t");
  auto m1 = io::parse_module(a, json::parse(R"({"dims": [1, 1, 0], "maps": {"a": [["2"]]}})"), "m");
  auto m2 = io::parse_module(a, json::parse(R"({"dims": {"1": 1, "2": 1}, "maps": {"a": [[2]]}})"), "m");
  EXPECT_EQ(m1, m2);
  EXPECT_EQ(io::parse_module(a, io::module_json(m1), "rt"), m1);
  EXPECT_THROW(io::parse_module(a, json::parse(R"({"dims": [1, 1]})"), "m"), io::schema_error);
  EXPECT_THROW(io::parse_module(a, json::parse(R"({"dims": [1, 1, 0], "maps": {"a": [[1, 2]]}})"), "m"),
               io::schema_error);
  EXPECT_THROW(io::parse_module(a, json::parse(R"({"dims": [1, 0, 0], "maps": {"c": []}})"), "m"),
               io::schema_error);
}

TEST(Io, RandomModulesRoundTrip) {
  auto flat = flatten(load_spec("paper-example.json"));
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    auto m = random_module(flat.algebra(), 7, rng);
    auto j = io::module_json(m);
    auto back = io::parse_module(flat.algebra(), io::parse_text(j.dump(), "rt"), "rt");
    EXPECT_EQ(back, m);
  }
}

TEST(Io, FlatJsonListsMaps) {
  auto flat = flatten(load_spec("paper-example.json"));
  auto j = io::flat_json(flat);
  EXPECT_EQ(j["dim"], 21);
  EXPECT_EQ(j["vertex_map"].size(), 7u);
  EXPECT_EQ(j["connector_map"].size(), 6u);
  EXPECT_EQ(j["field"], "Q");
  // The flat algebra part reads back as a plain algebra.
  json body{{"quiver", j["quiver"]}, {"relations", j["relations"]}};
  auto a = io::parse_algebra(Q{}, body, "flat");
  EXPECT_EQ(a->dim(), 21u);
}

TEST(Io, SerializedDerivedKeysAreVerified) {
  auto flat = flatten(load_spec("paper-example.json"));
  auto j = io::flat_json(flat);
  EXPECT_EQ(io::parse_algebra(Q{}, io::parse_text(j.dump(), "flat"), "flat")->dim(), 21u);
  auto wrong = j;
  wrong["dim"] = 20;
  EXPECT_THROW(io::parse_algebra(Q{}, wrong, "flat"), io::schema_error);
  wrong = j;
  wrong["basis"].erase(wrong["basis"].begin());
  EXPECT_THROW(io::parse_algebra(Q{}, wrong, "flat"), io::schema_error);
}

TEST(Io, SpecFilesOverPrimeFields) {
  PrimeField f(7);
  auto spec = load_spec("paper-example.json", f);
  auto flat = flatten(spec);
  EXPECT_EQ(flat.algebra()->dim(), 21u);
}
