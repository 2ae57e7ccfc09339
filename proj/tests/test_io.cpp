#include <gtest/gtest.h>

#include <cstdio>
#include <regex>

#include "cubelab/io.hpp"

using namespace cubelab;

namespace {

json z12_triple() {
  return json::parse(R"({"context": {"kind": "fingroup", "name": "Z12"},
                         "relations": [{"generators": [2]}, {"elements": [0, 3, 6, 9]}, {"generators": [4]}]})");
}

std::string error_of(const json& j) {
  try {
    instance_from_json(j);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

std::size_t count(const std::string& s, const std::regex& re) {
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
}

}  // namespace

TEST(Instance, GroupByNameAndGenerators) {
  auto I = std::get<GroupInstance>(instance_from_json(z12_triple()));
  ASSERT_EQ(I.subgroups.size(), 3u);
  EXPECT_EQ(I.subgroups[0].order(), 6u);
  EXPECT_EQ(I.subgroups[1].order(), 4u);
  EXPECT_EQ(I.subgroups[2].order(), 3u);
  EXPECT_EQ(I.relations[2].num_classes(), 4u);
}

TEST(Instance, RoundTripsForEveryKind) {
  std::vector<json> files{
      z12_triple(),
      json::parse(R"({"context": {"kind": "finset", "size": 4}, "relations": [{"blocks": [[0, 1], [2, 3]]}, {"blocks": [[0], [1, 2, 3]]}]})"),
      json::parse(R"({"context": {"kind": "fgab", "rank": 2}, "relations": [{"symbolic": ["1"]}, {"symbolic": ["2a"]}, {"generators": [[-1, -1]]}]})"),
      json::parse(R"({"context": {"kind": "fgab", "rank": 1, "base": [[12]]}, "relations": [{"generators": [[2]]}]})"),
      json::parse(R"({"context": {"kind": "fingroup", "name": "V4"}, "relations": [{"blocks": [[0, 1], [2, 3]]}]})"),
  };
  for (const auto& f : files) {
    json once = instance_to_json(instance_from_json(f));
    EXPECT_EQ(instance_to_json(instance_from_json(once)), once) << f.dump();
  }
}

TEST(Instance, SymbolicMatchesEmbedding) {
  auto I = std::get<AbInstance>(instance_from_json(
      json::parse(R"({"context": {"kind": "fgab", "rank": 2}, "relations": [{"symbolic": ["2a"]}, {"symbolic": ["6a^2"]}]})")));
  EXPECT_EQ(I.relations[0], IntLattice::generated(2, std::vector<std::vector<Int>>{{0, 2}}));
  EXPECT_EQ(I.relations[1], IntLattice::generated(2, std::vector<std::vector<Int>>{{-6, -6}}));
}

TEST(Instance, BaseIsJoinedIn) {
  auto I = std::get<AbInstance>(instance_from_json(
      json::parse(R"({"context": {"kind": "fgab", "rank": 1, "base": [[12]]}, "relations": [{"generators": [[8]]}]})")));
  EXPECT_EQ(I.relations[0], IntLattice::generated(1, std::vector<std::vector<Int>>{{4}}));
}

TEST(Instance, ErrorsPointAtTheEntry) {
  EXPECT_NE(error_of(json::parse(R"({"context": {"kind": "fingroup", "name": "S3"}, "relations": [{"elements": [0]}, {"generators": [99]}]})"))
                .find("relations[1]"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"context": {"kind": "fingroup", "name": "Nope"}, "relations": []})")).find("unknown group"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"context": {"kind": "finset", "size": 3}, "relations": [{"blocks": [[0, 1]]}]})")).find("relations[0]"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"context": {"kind": "blob"}, "relations": []})")).find("context.kind"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"context": {"kind": "finset", "size": 3}})")).find("relations"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"context": {"kind": "fgab", "rank": 1, "base": [[4]]}, "relations": [{"generators": [[1, 2]]}]})")).find("relations[0]"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"context": {"kind": "fgab", "rank": 3}, "relations": [{"symbolic": ["a"]}]})")).find("rank 2"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"context": {"kind": "fingroup", "name": "Z4"}, "relations": [{"blocks": [[0, 1], [2, 3]]}]})")).find("congruence"),
            std::string::npos);
}

TEST(Instance, NonNormalGeneratedSubgroupRejected) {
  // a transposition generates a non-normal subgroup of S3
  auto G = symmetric_group(3);
  Elem t = 0;
  for (Elem x = 0; x < G.order(); ++x)
    if (x != G.identity() && G.mul(x, x) == G.identity()) t = x;
  json j{{"context", {{"kind", "fingroup"}, {"name", "S3"}}}, {"relations", {{{"generators", {t}}}}}};
  EXPECT_NE(error_of(j).find("conjugation"), std::string::npos);
}

TEST(Instance, ExplicitTable) {
  json j{{"context", {{"kind", "fingroup"}, {"table", cyclic_group(4).table()}}}, {"relations", {{{"elements", {0, 2}}}}}};
  auto I = std::get<GroupInstance>(instance_from_json(j));
  EXPECT_EQ(I.ctx.G.order(), 4u);
  EXPECT_TRUE(context_to_json(I.ctx).contains("table"));
}

TEST(Catalog, LoadsFromFile) {
  std::string path = ::testing::TempDir() + "catalog.json";
  json c{{"groups", {{{"name", "C3"}, {"table", cyclic_group(3).table()}}}}};
  write_text_file(path, c.dump());
  auto cat = load_catalog(path);
  ASSERT_EQ(cat.size(), 1u);
  EXPECT_EQ(cat[0].name, "C3");
  write_text_file(path, R"({"groups": [{"name": "bad", "table": [[0, 1], [0, 1]]}]})");
  EXPECT_THROW(load_catalog(path), InputError);
  std::remove(path.c_str());
}

TEST(CubeJson, SetRoundTrip) {
  auto I = std::get<GroupInstance>(instance_from_json(z12_triple()));
  auto F = build_cube(I.ctx, I.relations);
  json j = cube_to_json(F, instance_to_json(I));
  EXPECT_EQ(j["vertices"].size(), 8u);
  EXPECT_EQ(j["edges"].size(), 12u);
  EXPECT_EQ(j["vertices"]["111"]["size"], 12);
  EXPECT_EQ(j["vertices"]["000"]["size"], 1);
  auto G = cube_from_json<SetEnv>(j);
  EXPECT_EQ(cube_to_json(G, j["source"]), j);
  EXPECT_EQ(is_n_cubic_extension(G).verdict, is_n_cubic_extension(F).verdict);
}

TEST(CubeJson, AbRoundTrip) {
  auto ctx = AbContext::free(2);
  auto F = build_cube(ctx, {complexes_subgroup({"1"}), complexes_subgroup({"a"})});
  json j = cube_to_json(F);
  auto G = cube_from_json<AbEnv>(json::parse(j.dump()));
  EXPECT_EQ(cube_to_json(G), j);
}

TEST(CubeJson, MalformedRejected) {
  auto F = NCube<SetEnv>::arrow(FinMap(FinSet(2), FinSet(1), {0, 0}));
  json j = cube_to_json(F);
  json missing = j;
  missing["vertices"].erase("0");
  EXPECT_THROW(cube_from_json<SetEnv>(missing), InputError);
  json bad = j;
  bad["edges"][0]["map"]["table"] = {0, 3};
  try {
    cube_from_json<SetEnv>(bad);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("edges[0]"), std::string::npos);
  }
  json dup = j;
  dup["edges"].push_back(j["edges"][0]);
  EXPECT_THROW(cube_from_json<SetEnv>(dup), InputError);
}

TEST(GridJson, PointedRoundTrip) {
  auto I = std::get<GroupInstance>(instance_from_json(z12_triple()));
  auto E = build_sequence_pointed(I.ctx, I.subgroups);
  json j = sequence_to_json(I.ctx, E);
  EXPECT_EQ(j["grid"].size(), 27u);
  EXPECT_EQ(j["grid"]["111"]["order"], 12);
  auto g = grid_from_json(json::parse(j.dump()));
  const auto& back = std::get<GroupGrid>(g);
  EXPECT_EQ(sequence_to_json(back.ctx, back.seq), j);
  EXPECT_TRUE(verify_grid(g).verdict);
}

TEST(GridJson, AbPointedRoundTrip) {
  auto ctx = AbContext::free(2);
  auto E = build_sequence_pointed(ctx, {complexes_subgroup({"1"}), complexes_subgroup({"a"})});
  json j = sequence_to_json(ctx, E);
  EXPECT_EQ(j["grid"]["11"]["invariants"], json::parse("[0, 0]"));
  auto g = grid_from_json(j);
  EXPECT_EQ(sequence_to_json(std::get<AbGrid>(g).ctx, std::get<AbGrid>(g).seq), j);
}

TEST(GridJson, ForkRoundTrip) {
  auto G = cyclic_group(6);
  GroupContext ctx{G, "Z6"};
  auto E = build_sequence_fork(build_cube(ctx, {congruence_of(NormalSubgroup::generated(G, {2})), congruence_of(NormalSubgroup::generated(G, {3}))}));
  json j = sequence_to_json(E);
  auto g = grid_from_json(j);
  EXPECT_EQ(sequence_to_json(std::get<ForkSequence>(g)), j);
  EXPECT_TRUE(verify_grid(g).verdict);
  json bad = j;
  bad["maps"][0]["role"] = "f";
  EXPECT_THROW(grid_from_json(bad), InputError);
}

TEST(GridJson, TamperedGridRejected) {
  auto I = std::get<GroupInstance>(instance_from_json(z12_triple()));
  json j = sequence_to_json(I.ctx, build_sequence_pointed(I.ctx, I.subgroups));
  json wrong = j;
  wrong["grid"]["000"]["num"] = json{{"elements", {0}}};  // den no longer below num
  wrong["grid"]["000"]["den"] = json{{"elements", {0, 6}}};
  EXPECT_THROW(grid_from_json(wrong), InputError);
  json missing = j;
  missing["grid"].erase("012");
  EXPECT_THROW(grid_from_json(missing), InputError);
  json key = j;
  key["grid"]["0123"] = j["grid"]["000"];
  EXPECT_THROW(grid_from_json(key), InputError);
}

TEST(Dot, ThreeByThreeGrid) {
  auto G = cyclic_group(6);
  GroupContext ctx{G, "Z6"};
  auto E = build_sequence_pointed(ctx, {NormalSubgroup::generated(G, {2}), NormalSubgroup::generated(G, {3})});
  Grid g = GroupGrid{ctx, E};
  std::string dot = grid_to_dot(g);
  EXPECT_EQ(count(dot, std::regex(R"(\[label="\d\d\\n)")), 9u);
  EXPECT_EQ(count(dot, std::regex(" -> ")), 12u);
  EXPECT_EQ(count(dot, std::regex("color=red")), 0u);
  EXPECT_EQ(grid_to_dot(g), dot);
}

TEST(Dot, FailingLinesAreRed) {
  auto V = abelian_product({2, 2});
  GroupContext ctx{V, "V4"};
  std::vector<NormalSubgroup> K{NormalSubgroup::generated(V, {1}), NormalSubgroup::generated(V, {2}), NormalSubgroup::generated(V, {3})};
  Grid g = GroupGrid{ctx, build_sequence_pointed(ctx, K)};
  std::string dot = grid_to_dot(g);
  EXPECT_EQ(count(dot, std::regex(" -> ")), 54u);  // 27 lines, two steps each
  auto failures = verify_grid(g).details["failures"].size();
  EXPECT_EQ(count(dot, std::regex("color=red")), 2 * failures);
}

TEST(Dot, Cube) {
  auto I = std::get<GroupInstance>(instance_from_json(z12_triple()));
  std::string dot = cube_to_dot(build_cube(I.ctx, I.relations));
  EXPECT_EQ(count(dot, std::regex(" -> ")), 12u);
  EXPECT_EQ(count(dot, std::regex("color=red")), 0u);
}
