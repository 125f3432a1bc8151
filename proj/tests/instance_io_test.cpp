#include "chiprotor/instance_io.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace chiprotor {
namespace {

using testing::iv;

TEST(ParseTest, C2) {
  const auto inst = parse_instance("graph 2\nedge 0 1 1\nedge 1 0 1\n");
  EXPECT_EQ(inst.graph, testing::c2());
  EXPECT_FALSE(inst.ribbon.has_value());
  EXPECT_TRUE(inst.configs.empty());
}

TEST(ParseTest, CommentsDefaultConfigAndDefaultRibbon) {
  const auto inst = parse_instance(
      "# two vertices\n"
      "graph 2   # header\n"
      "edge 0 1 2\n"
      "edge 1 0 1\n"
      "chips 3 -1\n"
      "rotor 0 1\n");
  const auto* cfg = inst.find("default");
  ASSERT_NE(cfg, nullptr);
  EXPECT_EQ(cfg->chips, iv({3, -1}));
  ASSERT_TRUE(cfg->rotors.has_value());
  EXPECT_EQ(cfg->rotors->position, iv({1, 0}));
  EXPECT_EQ(inst.effective_ribbon(), RibbonStructure::default_for(inst.graph));
}

TEST(ParseTest, KiteFile) {
  const auto inst = parse_instance(
      "graph 4\n"
      "edge 0 2 1\nedge 0 1 1\nedge 0 3 1\nedge 1 3 1\nedge 1 0 1\nedge 1 2 1\nedge 2 1 1\nedge 2 0 1\n"
      "ribbon 0 : 2:1 1:1 3:1\nribbon 1 : 3:1 0:1 2:1\nribbon 2: 1:1 0:1\n"
      "config source\nchips 0 0 1 0\nrotor 1 1\n");
  EXPECT_EQ(inst.graph, testing::kite());
  EXPECT_EQ(inst.effective_ribbon(), testing::kite_ribbon(inst.graph));
  const auto* src = inst.find("source");
  ASSERT_NE(src, nullptr);
  EXPECT_EQ(src->chips, testing::kite_left().chips);
  EXPECT_EQ(src->rotors, testing::kite_left().rotors);
}

TEST(ParseTest, HugeMultiplicity) {
  const auto inst = parse_instance("graph 2\nedge 0 1 123456789012345678901234567890\n");
  EXPECT_EQ(inst.graph.out_degree(0), parse_bigint("123456789012345678901234567890"));
}

int error_line(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(ParseErrorTest, PositionedErrors) {
  EXPECT_EQ(error_line("graph 2\nedge 0 0 1\n"), 2);
  EXPECT_EQ(error_line("graph 2\nedge 0 1 2\nedge 1 0 1\nribbon 0 : 1:3\n"), 4);
  EXPECT_EQ(error_line("graph 2\nedge 0 1 2\nribbon 0 : 1:1\n"), 3);
  EXPECT_EQ(error_line("graph 2\nedge 0 1 1\nedge 1 0 1\nribbon 0 : 1:1\n"), 1);
  EXPECT_EQ(error_line("graph 2\nedge 0 1 1\nedge 1 0 1\nrotor 0 1\n"), 4);
  EXPECT_EQ(error_line("graph 2\nedge 0 1 1\nchips 1 2 3\n"), 3);
  EXPECT_EQ(error_line("edge 0 1 1\n"), 1);
  EXPECT_EQ(error_line("graph 2\nfrobnicate\n"), 2);
  EXPECT_EQ(error_line("graph 2\nedge 0 1 x\n"), 2);
  EXPECT_EQ(error_line("graph 2\nedge 0 1 1\nrotor 1 0\n"), 3);
  EXPECT_EQ(error_line("graph 2\ngraph 3\n"), 2);
  EXPECT_EQ(error_line(""), 0);
}

TEST(SerializeTest, CanonicalFormIsStable) {
  const std::string text =
      "graph 3\nedge 1 0 2\nedge 0 1 1\nedge 1 0 1\nedge 2 1 1\n"
      "ribbon 0 : 1:1\nribbon 1 : 0:1 0:2\nribbon 2 : 1:1\n"
      "config a\nchips 1 0 0\n";
  const auto inst = parse_instance(text);
  const auto canon = serialize_instance(inst);
  EXPECT_EQ(canon,
            "graph 3\nedge 0 1 1\nedge 1 0 3\nedge 2 1 1\n"
            "ribbon 0 : 1:1\nribbon 1 : 0:3\nribbon 2 : 1:1\n"
            "config a\nchips 1 0 0\nrotor 0 0\nrotor 1 0\nrotor 2 0\n");
  EXPECT_EQ(serialize_instance(parse_instance(canon)), canon);
}

TEST(SerializeTest, RoundTripsGeneratedInstances) {
  for (auto family : {InstanceFamily::Eulerian, InstanceFamily::StronglyConnected,
                      InstanceFamily::HeavyMultiplicity, InstanceFamily::Random}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      GenParams params;
      params.family = family;
      params.size = 1 + static_cast<int>(seed % 6);
      params.seed = seed;
      const auto inst = gen_instance(params);
      const auto text = serialize_instance(inst);
      const auto back = parse_instance(text);
      ASSERT_EQ(back.graph, inst.graph);
      ASSERT_EQ(back.effective_ribbon(), inst.effective_ribbon());
      ASSERT_EQ(back.configs, inst.configs);
      ASSERT_EQ(serialize_instance(back), text);
    }
  }
}

TEST(GenTest, FamilyProperties) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int size = 2 + static_cast<int>(seed % 5);
    const auto euler = gen_instance({InstanceFamily::Eulerian, size, seed, 18});
    ASSERT_TRUE(is_eulerian(euler.graph));
    ASSERT_TRUE(is_strongly_connected(euler.graph));
    ASSERT_EQ(euler.graph.vertex_count(), size);
    ASSERT_TRUE(is_strongly_connected(gen_instance({InstanceFamily::StronglyConnected, size, seed, 18}).graph));

    const auto heavy = gen_instance({InstanceFamily::HeavyMultiplicity, size, seed, 18});
    ASSERT_TRUE(is_strongly_connected(heavy.graph));
    bool has_big = false;
    for (Vertex u = 0; u < size; ++u)
      for (Vertex v = 0; v < size; ++v) has_big = has_big || heavy.graph.multiplicity(u, v) >= BigInt("100000000000000000");
    ASSERT_TRUE(has_big);
  }
}

TEST(GenTest, SameSeedSameBytes) {
  for (auto family : {InstanceFamily::Eulerian, InstanceFamily::Random, InstanceFamily::HeavyMultiplicity}) {
    const GenParams params{family, 5, 42, 18};
    EXPECT_EQ(serialize_instance(gen_instance(params)), serialize_instance(gen_instance(params)));
  }
  EXPECT_NE(serialize_instance(gen_instance({InstanceFamily::Random, 5, 1, 18})),
            serialize_instance(gen_instance({InstanceFamily::Random, 5, 2, 18})));
}

TEST(GenTest, FamilyNames) {
  EXPECT_EQ(parse_family("eulerian"), InstanceFamily::Eulerian);
  EXPECT_EQ(parse_family("strongly-connected"), InstanceFamily::StronglyConnected);
  EXPECT_EQ(parse_family("heavy-multiplicity"), InstanceFamily::HeavyMultiplicity);
  EXPECT_EQ(parse_family("random"), InstanceFamily::Random);
  EXPECT_THROW(parse_family("planar"), std::invalid_argument);
}

}  // namespace
}  // namespace chiprotor
