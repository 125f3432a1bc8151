#include "chiprotor/chip.hpp"

#include <cassert>
#include <map>
#include <stdexcept>

namespace chiprotor {

namespace {

void check_config(const DirectedMultigraph& g, const IntVector& x) {
  if (x.size() != static_cast<std::size_t>(g.vertex_count()))
    throw std::invalid_argument("configuration length does not match vertex count");
}

void require_strongly_connected(const DirectedMultigraph& g) {
  if (!is_strongly_connected(g)) throw GraphError("operation requires a strongly connected graph");
}

void apply_firings(const DirectedMultigraph& g, ChipConfig& x, Vertex v, const BigInt& times) {
  if (times == 0) return;
  x[v] -= times * g.out_degree(v);
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    const BigInt& m = g.multiplicity(v, u);
    if (m != 0) x[u] += times * m;
  }
}

}  // namespace

std::vector<Vertex> ChipGameTrace::expand() const {
  std::vector<Vertex> seq;
  for (const auto& b : batches)
    for (BigInt k = 0; k < b.count; ++k) seq.push_back(b.vertex);
  return seq;
}

ChipConfig fire(const DirectedMultigraph& g, const ChipConfig& x, Vertex v) {
  return fire_many(g, x, v, 1);
}

ChipConfig fire_many(const DirectedMultigraph& g, const ChipConfig& x, Vertex v, const BigInt& times) {
  check_config(g, x);
  if (v < 0 || v >= g.vertex_count()) throw GraphError("vertex out of range");
  ChipConfig out = x;
  apply_firings(g, out, v, times);
  return out;
}

bool is_legal_fire(const DirectedMultigraph& g, const ChipConfig& x, Vertex v) {
  check_config(g, x);
  return x.at(v) >= g.out_degree(v);
}

ChipGameResult bounded_chip_game(const DirectedMultigraph& g, const ChipConfig& x, const CountVector& bound,
                                 const Budget& budget) {
  check_config(g, x);
  check_config(g, bound);
  if (!is_nonnegative(bound)) throw std::invalid_argument("bound must be nonnegative");

  const int n = g.vertex_count();
  ChipConfig cur = x;
  CountVector fired = zeros(n);
  ChipGameTrace trace;
  trace.initial = x;

  std::uint64_t steps = 0;
  while (true) {
    Vertex chosen = -1;
    BigInt batch;
    for (Vertex v = 0; v < n; ++v) {
      if (fired[v] >= bound[v]) continue;
      const BigInt& deg = g.out_degree(v);
      if (cur[v] < deg) continue;
      batch = bound[v] - fired[v];
      if (deg > 0) batch = std::min(batch, BigInt(cur[v] / deg));
      chosen = v;
      break;
    }
    if (chosen < 0) break;
    if (++steps > budget.max_steps) throw BudgetExceeded("bounded chip game exceeded the step budget");
    apply_firings(g, cur, chosen, batch);
    assert(cur[chosen] >= 0 || g.out_degree(chosen) == 0);
    fired[chosen] += batch;
    trace.batches.push_back({chosen, batch});
  }
  trace.final_config = cur;
  trace.firing_vector = fired;
  return {std::move(fired), std::move(cur), std::move(trace)};
}

const char* to_string(ChipRefutation r) {
  switch (r) {
    case ChipRefutation::None: return "none";
    case ChipRefutation::NoNonnegativeSolution: return "no-nonnegative-solution";
    case ChipRefutation::BoundedGameStuck: return "bounded-game-stuck";
  }
  return "none";
}

ChipReachabilityVerdict reach_chip(const DirectedMultigraph& g, const ChipConfig& x, const ChipConfig& y,
                                   const Budget& budget) {
  check_config(g, x);
  check_config(g, y);
  ChipReachabilityVerdict verdict;
  auto f = nonneg_reduced_solution(g, subtract(y, x));
  if (!f) {
    verdict.decision = Decision::No;
    verdict.reason = ChipRefutation::NoNonnegativeSolution;
    return verdict;
  }
  verdict.firing_vector = f;
  try {
    auto game = bounded_chip_game(g, x, *f, budget);
    if (game.firing_vector == *f) {
      verdict.decision = Decision::Yes;
      verdict.trace = std::move(game.trace);
    } else {
      verdict.decision = Decision::No;
      verdict.reason = ChipRefutation::BoundedGameStuck;
    }
  } catch (const BudgetExceeded&) {
    verdict.decision = Decision::Unknown;
  }
  return verdict;
}

bool is_recurrent(const DirectedMultigraph& g, const ChipConfig& x, const Budget& budget) {
  check_config(g, x);
  require_strongly_connected(g);
  const CountVector p = primitive_period_vector(g);
  return bounded_chip_game(g, x, p, budget).firing_vector == p;
}

bool is_recurrent_via_reach(const DirectedMultigraph& g, const ChipConfig& x, const Budget& budget) {
  check_config(g, x);
  require_strongly_connected(g);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!is_legal_fire(g, x, v)) continue;
    // The reduced solution here is p_G - e_v, so this is the
    // (p_G - e_v)-bounded game from x + L e_v.
    const auto verdict = reach_chip(g, fire(g, x, v), x, budget);
    if (verdict.decision == Decision::Unknown)
      throw BudgetExceeded("recurrence check exceeded the step budget");
    return verdict.decision == Decision::Yes;
  }
  return false;
}

std::optional<CountVector> lin_equiv(const DirectedMultigraph& g, const ChipConfig& x, const ChipConfig& y) {
  check_config(g, x);
  check_config(g, y);
  require_strongly_connected(g);
  return nonneg_reduced_solution(g, subtract(y, x));
}

HaltingVerdict halts(const DirectedMultigraph& g, const ChipConfig& x, const Budget& budget) {
  check_config(g, x);
  require_strongly_connected(g);
  const int n = g.vertex_count();

  std::map<ChipConfig, CountVector> seen;  // configuration -> firings so far
  ChipConfig cur = x;
  CountVector fired = zeros(n);
  std::uint64_t steps = 0;

  while (true) {
    auto [it, inserted] = seen.emplace(cur, fired);
    if (!inserted) {
      return NonHalting{cur, it->second, subtract(fired, it->second)};
    }
    if (seen.size() > budget.max_states) return HaltingBudgetExceeded{"visited-state budget exhausted"};

    Vertex chosen = -1;
    BigInt batch;
    for (Vertex v = 0; v < n; ++v) {
      const BigInt& deg = g.out_degree(v);
      if (cur[v] < deg) continue;
      chosen = v;
      batch = deg > 0 ? BigInt(cur[v] / deg) : BigInt(1);
      break;
    }
    if (chosen < 0) return Halts{cur, fired};
    if (++steps > budget.max_steps) return HaltingBudgetExceeded{"step budget exhausted"};
    apply_firings(g, cur, chosen, batch);
    fired[chosen] += batch;
  }
}

bool verify_nonhalting_certificate(const DirectedMultigraph& g, const ChipConfig& x, const ChipConfig& y,
                                   const Budget& budget) {
  if (!lin_equiv(g, x, y)) return false;
  return is_recurrent(g, y, budget);
}

bool validate_legal_firing_sequence(const DirectedMultigraph& g, const ChipConfig& x,
                                    const std::vector<Vertex>& sequence) {
  check_config(g, x);
  ChipConfig cur = x;
  for (Vertex v : sequence) {
    if (v < 0 || v >= g.vertex_count()) return false;
    if (cur[v] < g.out_degree(v)) return false;
    apply_firings(g, cur, v, 1);
  }
  return true;
}

}  // namespace chiprotor
