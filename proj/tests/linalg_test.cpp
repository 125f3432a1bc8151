#include "chiprotor/linalg.hpp"

#include <algorithm>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "chiprotor/oracle.hpp"
#include "fixtures.hpp"

namespace chiprotor {
namespace {

using testing::c2;
using testing::d21;
using testing::kite;
using testing::iv;

DirectedMultigraph two_c2() {
  return DirectedMultigraph::from_edge_list(4, {{0, 1, 1}, {1, 0, 1}, {2, 3, 1}, {3, 2, 1}});
}

TEST(PeriodVectorTest, NamedGraphs) {
  EXPECT_EQ(primitive_period_vector(c2()), iv({1, 1}));
  EXPECT_EQ(primitive_period_vector(d21()), iv({1, 2}));
  EXPECT_EQ(primitive_period_vector(DirectedMultigraph(1)), iv({1}));
}

TEST(PeriodVectorTest, RejectsNonStronglyConnected) {
  EXPECT_THROW(primitive_period_vector(kite()), GraphError);
  EXPECT_THROW(primitive_period_vector(DirectedMultigraph(2)), GraphError);
}

TEST(PeriodVectorTest, MatchesBruteForceOnSmallGraphs) {
  oracle::InstanceSampler sampler(11, {});
  int compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = static_cast<int>(sampler.uniform(2, 4));
    const auto g = sampler.graph(n, true);
    const auto p = primitive_period_vector(g);
    ASSERT_TRUE(is_zero(laplacian(g).multiply(p)));
    BigInt divisor = 0;
    for (const auto& e : p) {
      ASSERT_GT(e, 0);
      divisor = boost::multiprecision::gcd(divisor, e);
    }
    ASSERT_EQ(divisor, 1);
    // Entries of p divide into products of degrees, so a box of 30 is enough
    // for these multiplicities whenever p fits.
    BigInt largest = 0;
    for (const auto& e : p) largest = std::max(largest, e);
    if (largest > 30) continue;
    const auto brute = testing::brute_force_period_vector(g, 30);
    ASSERT_TRUE(brute.has_value());
    ASSERT_EQ(*brute, p);
    ++compared;
  }
  EXPECT_GT(compared, 300);
}

TEST(PeriodVectorTest, EulerianIsAllOnes) {
  const auto g = DirectedMultigraph::from_edge_list(3, {{0, 1, 2}, {1, 2, 2}, {2, 0, 2}, {0, 2, 1}, {2, 1, 1}, {1, 0, 1}});
  ASSERT_TRUE(is_eulerian(g));
  EXPECT_EQ(primitive_period_vector(g), iv({1, 1, 1}));
  EXPECT_EQ(period_basis(g).period_length, 3);
}

TEST(PeriodBasisTest, C2) {
  const auto basis = period_basis(c2());
  ASSERT_EQ(basis.sinks.size(), 1u);
  EXPECT_EQ(basis.sinks[0].vector, iv({1, 1}));
  EXPECT_EQ(basis.period_length, 2);
}

TEST(PeriodBasisTest, Kite) {
  const auto g = kite();
  const auto basis = period_basis(g);
  ASSERT_EQ(basis.sinks.size(), 1u);
  EXPECT_EQ(basis.sinks[0].vertices, (std::vector<Vertex>{3}));
  EXPECT_EQ(basis.sinks[0].vector, iv({0, 0, 0, 1}));
  EXPECT_EQ(basis.sinks[0].routing_vector, iv({0, 0, 0, 0}));
  const auto inner = g.induced({0, 1, 2});
  const auto inner_p = testing::brute_force_period_vector(inner, 5);
  ASSERT_TRUE(inner_p.has_value());
  EXPECT_EQ(basis.period_length, sum(*inner_p) + 1);
  EXPECT_EQ(basis.period_length, 4);
  EXPECT_EQ(basis.sink_of, (std::vector<int>{-1, -1, -1, 0}));
}

TEST(PeriodBasisTest, DisjointCopiesAdd) {
  const auto basis = period_basis(two_c2());
  ASSERT_EQ(basis.sinks.size(), 2u);
  EXPECT_EQ(basis.sinks[0].vector, iv({1, 1, 0, 0}));
  EXPECT_EQ(basis.sinks[1].vector, iv({0, 0, 1, 1}));
  EXPECT_EQ(basis.period_length, 4);
}

TEST(PeriodBasisTest, SinkVectorsSpanKernel) {
  oracle::InstanceSampler sampler(12, {});
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = sampler.graph();
    const auto lap = laplacian(g);
    const auto basis = period_basis(g);
    for (const auto& s : basis.sinks) {
      ASSERT_TRUE(is_zero(lap.multiply(s.vector)));
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const bool inside = std::find(s.vertices.begin(), s.vertices.end(), v) != s.vertices.end();
        ASSERT_EQ(s.vector[v] > 0, inside);
        ASSERT_EQ(s.routing_vector[v], s.vector[v] * g.out_degree(v));
      }
    }
    ASSERT_EQ(integer_kernel_basis(lap).size(), basis.sinks.size());
  }
}

TEST(SolveIntegerTest, Examples) {
  const auto lap = laplacian(c2());
  const auto f = solve_integer(lap, iv({-1, 1}));
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(lap.multiply(*f), iv({-1, 1}));
  const auto zero = solve_integer(lap, iv({0, 0}));
  ASSERT_TRUE(zero.has_value());
  EXPECT_TRUE(is_zero(lap.multiply(*zero)));
  EXPECT_FALSE(solve_integer(lap, iv({1, 0})).has_value());
  EXPECT_THROW(solve_integer(lap, iv({1, 0, 0})), std::invalid_argument);
}

TEST(SolveIntegerTest, RationalButNotIntegral) {
  // L f = (2(b - a), 2(a - b)) only reaches even vectors.
  DirectedMultigraph g(2);
  g.add_edge(0, 1, 2);
  g.add_edge(1, 0, 2);
  const auto lap = laplacian(g);
  EXPECT_FALSE(solve_integer(lap, iv({1, -1})).has_value());
  EXPECT_TRUE(solve_integer(lap, iv({2, -2})).has_value());
}

TEST(SolveIntegerTest, AgreesWithLatticeMembership) {
  oracle::InstanceSampler sampler(13, {});
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = sampler.graph();
    const int n = g.vertex_count();
    const auto lap = laplacian(g);
    IntVector f(n);
    for (auto& e : f) e = static_cast<long long>(rng() % 9) - 4;
    const auto d = lap.multiply(f);
    const auto solved = solve_integer(lap, d);
    ASSERT_TRUE(solved.has_value());
    ASSERT_EQ(lap.multiply(*solved), d);
    // Perturbing one entry breaks the zero column-sum condition.
    auto bad = d;
    bad[rng() % n] += 1;
    ASSERT_FALSE(solve_integer(lap, bad).has_value());
  }
}

TEST(ColumnEchelonTest, TransformIsConsistent) {
  oracle::InstanceSampler sampler(14, {});
  for (int trial = 0; trial < 300; ++trial) {
    const auto lap = laplacian(sampler.graph());
    const auto form = column_echelon(lap);
    const std::size_t n = lap.cols();
    for (std::size_t c = 0; c < n; ++c) {
      IntVector column(n);
      for (std::size_t r = 0; r < n; ++r) column[r] = form.transform(r, c);
      const auto image = lap.multiply(column);
      for (std::size_t r = 0; r < lap.rows(); ++r) ASSERT_EQ(image[r], form.echelon(r, c));
      if (c >= form.rank) ASSERT_TRUE(is_zero(image));
    }
  }
}

TEST(NonnegReducedSolutionTest, Examples) {
  EXPECT_EQ(nonneg_reduced_solution(c2(), iv({-1, 1})), iv({1, 0}));
  EXPECT_EQ(nonneg_reduced_solution(c2(), iv({0, 0})), iv({0, 0}));
  EXPECT_EQ(nonneg_reduced_solution(c2(), iv({1, -1})), iv({0, 1}));
  EXPECT_FALSE(nonneg_reduced_solution(c2(), iv({1, 0})).has_value());
  EXPECT_THROW(nonneg_reduced_solution(c2(), iv({0})), std::invalid_argument);
}

TEST(NonnegReducedSolutionTest, NoNonnegativeSolutionOutsideSinks) {
  // 0 -> 1 only: firing 0 moves a chip forward; the reverse is impossible.
  const auto g = DirectedMultigraph::from_edge_list(2, {{0, 1, 1}});
  EXPECT_EQ(nonneg_reduced_solution(g, iv({-2, 2})), iv({2, 0}));
  EXPECT_FALSE(nonneg_reduced_solution(g, iv({1, -1})).has_value());
}

// For d = L f0 with f0 >= 0, the reduced solution is f0 minus nonnegative
// multiples of the sink periods, so it lies in the same box as f0.
TEST(NonnegReducedSolutionTest, ExhaustiveBoxAgreement) {
  int checked = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const auto& g : oracle::enumerate_digraphs(n, n == 3 ? 1 : 2)) {
      const auto lap = laplacian(g);
      const auto basis = period_basis(g);
      BigInt max_p = 0;
      for (const auto& s : basis.sinks)
        for (const auto& e : s.vector) max_p = std::max(max_p, e);
      if (max_p > 3) continue;
      const int hi = 2 + static_cast<int>(max_p);
      std::map<IntVector, std::vector<IntVector>> solutions;  // d -> reduced nonneg f
      testing::for_each_in_box(n, 0, hi, [&](const IntVector& f) {
        if (is_reduced(basis, f)) solutions[lap.multiply(f)].push_back(f);
      });
      testing::for_each_in_box(n, 0, 2, [&](const IntVector& f0) {
        const auto d = lap.multiply(f0);
        const auto got = nonneg_reduced_solution(g, basis, d);
        const auto it = solutions.find(d);
        ASSERT_NE(it, solutions.end());
        ASSERT_EQ(it->second.size(), 1u) << "reduced solution not unique";
        ASSERT_TRUE(got.has_value());
        ASSERT_EQ(*got, it->second.front());
        ++checked;
      });
      // Arbitrary targets, including ones with no nonnegative solution.
      testing::for_each_in_box(n, -2, 2, [&](const IntVector& d) {
        if (sum(d) != 0) return;
        const auto got = nonneg_reduced_solution(g, basis, d);
        const auto it = solutions.find(d);
        if (got) {
          ASSERT_EQ(lap.multiply(*got), d);
          ASSERT_TRUE(is_reduced(basis, *got));
          BigInt top = 0;
          for (const auto& e : *got) top = std::max(top, e);
          if (top <= hi) ASSERT_NE(it, solutions.end());
        }
        if (it != solutions.end()) {
          ASSERT_TRUE(got.has_value());
          ASSERT_EQ(*got, it->second.front());
        }
      });
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(ReducedTest, Predicates) {
  EXPECT_TRUE(is_reduced(c2(), iv({1, 0})));
  EXPECT_FALSE(is_reduced(c2(), iv({1, 1})));
  EXPECT_TRUE(is_reduced(c2(), iv({0, 0})));
  EXPECT_TRUE(is_routing_reduced(d21(), iv({1, 1})));
  EXPECT_FALSE(is_routing_reduced(d21(), iv({2, 2})));
  EXPECT_TRUE(is_routing_reduced(d21(), iv({0, 0})));
}

TEST(ReducedTest, SinkVertexImposesNoRoutingCondition) {
  // The {3} sink component of the kite graph has a zero routing period.
  EXPECT_TRUE(is_routing_reduced(kite(), iv({5, 5, 5, 0})));
  EXPECT_FALSE(is_reduced(kite(), iv({0, 0, 0, 1})));
}

TEST(ReduceVectorTest, Examples) {
  EXPECT_EQ(reduce_vector(c2(), iv({3, 2})), iv({1, 0}));
  EXPECT_EQ(reduce_vector(c2(), iv({1, 0})), iv({1, 0}));
  // Routing period of D21 is (2, 2); floor(5/2) and floor(3/2) give a shift
  // of one full period.
  EXPECT_EQ(reduce_vector(d21(), iv({5, 3}), ReductionMode::Routing), iv({3, 1}));
  EXPECT_EQ(reduce_vector(d21(), iv({5, 3}), ReductionMode::Firing), iv({4, 1}));
  EXPECT_THROW(reduce_vector(c2(), iv({-1, 0})), std::invalid_argument);
}

TEST(ReduceVectorTest, IdempotentAndShiftInvariant) {
  oracle::InstanceSampler sampler(15, {});
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto g = sampler.graph();
    const auto basis = period_basis(g);
    const auto f = sampler.count_vector(g.vertex_count(), 8);
    for (auto mode : {ReductionMode::Firing, ReductionMode::Routing}) {
      const auto once = reduce_vector(basis, f, mode);
      ASSERT_EQ(reduce_vector(basis, once, mode), once);
      ASSERT_TRUE(mode == ReductionMode::Firing ? is_reduced(basis, once) : is_routing_reduced(basis, once));
      auto shifted = f;
      for (const auto& s : basis.sinks) {
        const auto k = static_cast<long long>(rng() % 4);
        const auto& period = mode == ReductionMode::Firing ? s.vector : s.routing_vector;
        for (std::size_t v = 0; v < shifted.size(); ++v) shifted[v] += k * period[v];
      }
      ASSERT_EQ(reduce_vector(basis, shifted, mode), once);
    }
  }
}

TEST(ReduceVectorTest, HugeEntries) {
  const BigInt big = BigInt(1000000000000000000LL) * BigInt(1000000000000000000LL);
  EXPECT_EQ(reduce_vector(c2(), {big + 3, big}), iv({3, 0}));
}

}  // namespace
}  // namespace chiprotor
