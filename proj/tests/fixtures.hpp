#pragma once

// Named graphs shared by the tests, and brute-force helpers that live only in
// test code.

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "chiprotor/chip.hpp"
#include "chiprotor/graph.hpp"
#include "chiprotor/linalg.hpp"
#include "chiprotor/rotor.hpp"

namespace chiprotor::testing {

inline IntVector iv(std::initializer_list<long long> values) {
  IntVector out;
  for (auto v : values) out.emplace_back(v);
  return out;
}

/// 0 -> 1, 1 -> 0.
inline DirectedMultigraph c2() { return DirectedMultigraph::from_edge_list(2, {{0, 1, 1}, {1, 0, 1}}); }

/// 0 -> 1 twice, 1 -> 0 once.
inline DirectedMultigraph d21() { return DirectedMultigraph::from_edge_list(2, {{0, 1, 2}, {1, 0, 1}}); }

/// Kite graph: t=0, b=1, l=2 pairwise connected both ways, r=3 a sink fed
/// by t and b.
inline DirectedMultigraph kite() {
  return DirectedMultigraph::from_edge_list(
      4, {{0, 2, 1}, {0, 1, 1}, {0, 3, 1}, {1, 3, 1}, {1, 0, 1}, {1, 2, 1}, {2, 1, 1}, {2, 0, 1}});
}

/// Counterclockwise cyclic orders: t: l, b, r; b: r, t, l; l: b, t.
inline RibbonStructure kite_ribbon(const DirectedMultigraph& g) {
  return RibbonStructure::from_runs(g, {{{2, 1}, {1, 1}, {3, 1}}, {{3, 1}, {0, 1}, {2, 1}}, {{1, 1}, {0, 1}}, {}});
}

inline RotorConfig rotors(std::initializer_list<long long> positions) {
  RotorConfig rc;
  for (auto p : positions) rc.position.emplace_back(p);
  return rc;
}

inline ChipRotorConfig kite_left() { return {iv({0, 0, 1, 0}), rotors({0, 1, 0, 0})}; }
inline ChipRotorConfig kite_middle() { return {iv({1, 0, 0, 0}), rotors({0, 1, 1, 0})}; }
inline ChipRotorConfig kite_right() { return {iv({0, 1, 0, 0}), rotors({1, 1, 1, 0})}; }

/// Smallest-sum positive vector with L p = 0 and entries <= max_entry, found
/// by exhaustive enumeration; the smallest one is necessarily primitive.
inline std::optional<CountVector> brute_force_period_vector(const DirectedMultigraph& g, int max_entry) {
  const int n = g.vertex_count();
  const IntMatrix lap = laplacian(g);
  std::optional<CountVector> best;
  BigInt best_sum = -1;
  std::vector<int> digits(n, 1);
  while (true) {
    CountVector p(digits.begin(), digits.end());
    if (is_zero(lap.multiply(p)) && (best_sum < 0 || sum(p) < best_sum)) {
      best = p;
      best_sum = sum(p);
    }
    int i = 0;
    while (i < n && digits[i] == max_entry) digits[i++] = 1;
    if (i == n) break;
    ++digits[i];
  }
  return best;
}

/// Calls `visit` on every vector in [lo, hi]^n.
inline void for_each_in_box(int n, int lo, int hi, const std::function<void(const IntVector&)>& visit) {
  std::vector<int> digits(n, lo);
  while (true) {
    visit(IntVector(digits.begin(), digits.end()));
    int i = 0;
    while (i < n && digits[i] == hi) digits[i++] = lo;
    if (i == n) break;
    ++digits[i];
  }
}

/// Maximal b-bounded legal chip game with single firings in a random order.
inline std::pair<CountVector, ChipConfig> random_bounded_chip_game(const DirectedMultigraph& g, ChipConfig x,
                                                                   const CountVector& bound, std::mt19937_64& rng,
                                                                   std::vector<Vertex>* sequence = nullptr) {
  CountVector fired = zeros(g.vertex_count());
  while (true) {
    std::vector<Vertex> eligible;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (fired[v] < bound[v] && x[v] >= g.out_degree(v)) eligible.push_back(v);
    if (eligible.empty()) break;
    const Vertex v = eligible[rng() % eligible.size()];
    x = fire(g, x, v);
    fired[v] += 1;
    if (sequence) sequence->push_back(v);
  }
  return {fired, x};
}

/// Maximal r-bounded legal rotor game with single routings in a random order.
inline std::pair<CountVector, ChipRotorConfig> random_bounded_rotor_game(const DirectedMultigraph& g,
                                                                         const RibbonStructure& ribbon,
                                                                         ChipRotorConfig cfg, const CountVector& r,
                                                                         std::mt19937_64& rng,
                                                                         std::vector<Vertex>* sequence = nullptr) {
  CountVector odometer = zeros(g.vertex_count());
  while (true) {
    std::vector<Vertex> eligible;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (odometer[v] < r[v] && is_legal_route(g, cfg.chips, v)) eligible.push_back(v);
    if (eligible.empty()) break;
    const Vertex v = eligible[rng() % eligible.size()];
    cfg = route(g, ribbon, cfg, v);
    odometer[v] += 1;
    if (sequence) sequence->push_back(v);
  }
  return {odometer, cfg};
}

/// Drops the first `counts[v]` occurrences of each vertex v.
inline std::vector<Vertex> delete_first_occurrences(const std::vector<Vertex>& sequence, const CountVector& counts) {
  CountVector remaining = counts;
  std::vector<Vertex> out;
  for (Vertex v : sequence) {
    if (remaining[v] > 0) {
      remaining[v] -= 1;
      continue;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace chiprotor::testing
