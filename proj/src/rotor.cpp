#include "chiprotor/rotor.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace chiprotor {

namespace {

void check_config(const RibbonStructure& ribbon, const ChipRotorConfig& cfg) {
  const auto n = static_cast<std::size_t>(ribbon.vertex_count());
  if (cfg.chips.size() != n || cfg.rotors.position.size() != n)
    throw std::invalid_argument("configuration length does not match vertex count");
}

void check_routing_vector(const RibbonStructure& ribbon, const CountVector& r) {
  if (r.size() != static_cast<std::size_t>(ribbon.vertex_count()))
    throw std::invalid_argument("routing vector length does not match vertex count");
  for (Vertex v = 0; v < ribbon.vertex_count(); ++v) {
    if (r[v] < 0) throw std::invalid_argument("routing vector must be nonnegative");
    if (ribbon.degree(v) == 0 && r[v] != 0)
      throw std::invalid_argument("routing vector is positive at sink " + std::to_string(v));
  }
}

// Size of [lo, hi] intersected with [start, end]; empty ranges give 0.
BigInt overlap(const BigInt& lo, const BigInt& hi, const BigInt& start, const BigInt& end) {
  const BigInt a = std::max(lo, start);
  const BigInt b = std::min(hi, end);
  return b >= a ? BigInt(b - a + 1) : BigInt(0);
}

// Unconstrained routing of v, k times, in place.
void apply_routings(const RibbonStructure& ribbon, ChipRotorConfig& cfg, Vertex v, const BigInt& k) {
  const BigInt& deg = ribbon.degree(v);
  if (deg == 0 || k == 0) return;
  const BigInt& q = cfg.rotors.position[v];
  const BigInt full = k / deg;
  const BigInt rem = k % deg;
  // Positions q+1 .. q+rem, split at the wrap-around point.
  const BigInt lo1 = q + 1;
  const BigInt hi1 = std::min(BigInt(q + rem), BigInt(deg - 1));
  const BigInt hi2 = q + rem - deg;  // second piece is [0, hi2] when hi2 >= 0

  const auto& runs = ribbon.runs(v);
  BigInt start = 0;
  for (const auto& run : runs) {
    const BigInt end = start + run.count - 1;
    BigInt inflow = full * run.count;
    if (rem > 0) {
      inflow += overlap(lo1, hi1, start, end);
      if (hi2 >= 0) inflow += overlap(0, hi2, start, end);
    }
    if (inflow != 0) cfg.chips[run.head] += inflow;
    start = end + 1;
  }
  cfg.chips[v] -= k;
  cfg.rotors.position[v] = (q + k) % deg;
}

}  // namespace

RibbonStructure RibbonStructure::from_runs(const DirectedMultigraph& g, std::vector<std::vector<Run>> runs) {
  const int n = g.vertex_count();
  if (runs.size() != static_cast<std::size_t>(n)) throw GraphError("ribbon must list every vertex");
  for (Vertex v = 0; v < n; ++v) {
    std::vector<BigInt> per_head(n);
    for (const auto& run : runs[v]) {
      if (run.head < 0 || run.head >= n) throw GraphError("ribbon head out of range at vertex " + std::to_string(v));
      if (run.count < 1) throw GraphError("ribbon run multiplicity must be at least 1 at vertex " + std::to_string(v));
      per_head[run.head] += run.count;
    }
    for (Vertex h = 0; h < n; ++h) {
      if (per_head[h] != g.multiplicity(v, h)) {
        throw GraphError("ribbon at vertex " + std::to_string(v) + " lists " + per_head[h].str() + " edges to " +
                         std::to_string(h) + " but the graph has " + g.multiplicity(v, h).str());
      }
    }
  }
  RibbonStructure ribbon;
  ribbon.runs_ = std::move(runs);
  ribbon.index_runs();
  return ribbon;
}

RibbonStructure RibbonStructure::default_for(const DirectedMultigraph& g) {
  std::vector<std::vector<Run>> runs(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (Vertex h = 0; h < g.vertex_count(); ++h)
      if (g.multiplicity(v, h) > 0) runs[v].push_back({h, g.multiplicity(v, h)});
  RibbonStructure ribbon;
  ribbon.runs_ = std::move(runs);
  ribbon.index_runs();
  return ribbon;
}

void RibbonStructure::index_runs() {
  starts_.assign(runs_.size(), {});
  degree_.assign(runs_.size(), BigInt(0));
  for (std::size_t v = 0; v < runs_.size(); ++v) {
    BigInt offset = 0;
    for (const auto& run : runs_[v]) {
      starts_[v].push_back(offset);
      offset += run.count;
    }
    degree_[v] = offset;
  }
}

Vertex RibbonStructure::head_at(Vertex v, const BigInt& position) const {
  const auto& starts = starts_.at(v);
  if (position < 0 || position >= degree_[v])
    throw GraphError("rotor position out of range at vertex " + std::to_string(v));
  const auto it = std::upper_bound(starts.begin(), starts.end(), position);
  return runs_[v][static_cast<std::size_t>(it - starts.begin()) - 1].head;
}

RibbonStructure RibbonStructure::merged() const {
  RibbonStructure out;
  out.runs_.resize(runs_.size());
  for (std::size_t v = 0; v < runs_.size(); ++v) {
    for (const auto& run : runs_[v]) {
      if (!out.runs_[v].empty() && out.runs_[v].back().head == run.head)
        out.runs_[v].back().count += run.count;
      else
        out.runs_[v].push_back(run);
    }
  }
  out.index_runs();
  return out;
}

void validate_rotors(const RibbonStructure& ribbon, const RotorConfig& rotors) {
  if (rotors.position.size() != static_cast<std::size_t>(ribbon.vertex_count()))
    throw GraphError("rotor configuration length does not match vertex count");
  for (Vertex v = 0; v < ribbon.vertex_count(); ++v) {
    const BigInt& pos = rotors.position[v];
    if (ribbon.degree(v) == 0) {
      if (pos != 0) throw GraphError("sink " + std::to_string(v) + " carries no rotor");
    } else if (pos < 0 || pos >= ribbon.degree(v)) {
      throw GraphError("rotor position out of range at vertex " + std::to_string(v));
    }
  }
}

RotorConfig initial_rotors(const RibbonStructure& ribbon) {
  return RotorConfig{std::vector<BigInt>(ribbon.vertex_count(), BigInt(0))};
}

RotorEdge rotor_edge(const RibbonStructure& ribbon, const RotorConfig& rotors, Vertex v) {
  if (ribbon.degree(v) == 0) throw GraphError("sink " + std::to_string(v) + " has no rotor");
  const BigInt& pos = rotors.position.at(v);
  return {ribbon.head_at(v, pos), pos};
}

ChipRotorConfig route(const DirectedMultigraph& g, const RibbonStructure& ribbon, const ChipRotorConfig& cfg,
                      Vertex v) {
  check_config(ribbon, cfg);
  if (v < 0 || v >= g.vertex_count()) throw GraphError("vertex out of range");
  ChipRotorConfig out = cfg;
  const BigInt& deg = ribbon.degree(v);
  if (deg == 0) return out;
  BigInt& pos = out.rotors.position[v];
  pos = (pos + 1) % deg;
  const Vertex head = ribbon.head_at(v, pos);
  out.chips[v] -= 1;
  out.chips[head] += 1;
  return out;
}

bool is_legal_route(const DirectedMultigraph& g, const ChipConfig& x, Vertex v) {
  return !g.is_sink(v) && x.at(v) > 0;
}

ChipRotorConfig pi_r(const DirectedMultigraph& /*g*/, const RibbonStructure& ribbon, const ChipRotorConfig& cfg,
                     const CountVector& r) {
  check_config(ribbon, cfg);
  check_routing_vector(ribbon, r);
  ChipRotorConfig out = cfg;
  for (Vertex v = 0; v < ribbon.vertex_count(); ++v) apply_routings(ribbon, out, v, r[v]);
  return out;
}

ChipRotorConfig route_many(const DirectedMultigraph& g, const RibbonStructure& ribbon,
                           const ChipRotorConfig& cfg, Vertex v, const BigInt& k) {
  CountVector r = zeros(ribbon.vertex_count());
  r.at(v) = k;
  return pi_r(g, ribbon, cfg, r);
}

CountVector normalize_routing_vector(const DirectedMultigraph& g, CountVector r) {
  for (Vertex v = 0; v < g.vertex_count() && static_cast<std::size_t>(v) < r.size(); ++v)
    if (g.is_sink(v)) r[v] = 0;
  return r;
}

std::vector<Vertex> RotorGameTrace::expand() const {
  std::vector<Vertex> seq;
  for (const auto& b : batches)
    for (BigInt k = 0; k < b.count; ++k) seq.push_back(b.vertex);
  return seq;
}

RotorGameResult bounded_rotor_game(const DirectedMultigraph& g, const RibbonStructure& ribbon,
                                   const ChipRotorConfig& cfg, const CountVector& r, const Budget& budget) {
  check_config(ribbon, cfg);
  check_routing_vector(ribbon, r);
  const int n = g.vertex_count();
  ChipRotorConfig cur = cfg;
  CountVector odometer = zeros(n);
  RotorGameTrace trace;
  trace.initial = cfg;

  std::uint64_t steps = 0;
  while (true) {
    Vertex chosen = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (ribbon.degree(v) == 0 || cur.chips[v] <= 0 || odometer[v] >= r[v]) continue;
      chosen = v;
      break;
    }
    if (chosen < 0) break;
    if (++steps > budget.max_steps) throw BudgetExceeded("bounded rotor game exceeded the step budget");
    // No loops, so v receives nothing while it is being routed.
    const BigInt batch = std::min(cur.chips[chosen], BigInt(r[chosen] - odometer[chosen]));
    apply_routings(ribbon, cur, chosen, batch);
    odometer[chosen] += batch;
    trace.batches.push_back({chosen, batch});
  }
  trace.final_config = cur;
  trace.odometer = odometer;
  return {std::move(odometer), std::move(cur), std::move(trace)};
}

std::optional<CountVector> unconstrained_reach(const DirectedMultigraph& g, const RibbonStructure& ribbon,
                                               const ChipRotorConfig& source, const ChipRotorConfig& target) {
  return unconstrained_reach(g, period_basis(g), ribbon, source, target);
}

std::optional<CountVector> unconstrained_reach(const DirectedMultigraph& g, const PeriodBasis& basis,
                                               const RibbonStructure& ribbon, const ChipRotorConfig& source,
                                               const ChipRotorConfig& target) {
  check_config(ribbon, source);
  check_config(ribbon, target);
  validate_rotors(ribbon, source.rotors);
  validate_rotors(ribbon, target.rotors);
  const int n = g.vertex_count();

  // Align rotors with fewer than deg+(v) routings per vertex.
  CountVector align = zeros(n);
  for (Vertex v = 0; v < n; ++v) {
    const BigInt& deg = ribbon.degree(v);
    if (deg > 0) align[v] = floor_mod(target.rotors.position[v] - source.rotors.position[v], deg);
  }
  const ChipRotorConfig aligned = pi_r(g, ribbon, source, align);

  // Full turns act like firings.
  const auto z = nonneg_reduced_solution(g, basis, subtract(target.chips, aligned.chips));
  if (!z) return std::nullopt;
  CountVector r = align;
  for (Vertex v = 0; v < n; ++v) r[v] += (*z)[v] * ribbon.degree(v);
  return r;
}

ReachabilitySets reachability_sets(const RibbonStructure& ribbon, const ChipConfig& y, const RotorConfig& rotors,
                                   const CountVector& r) {
  const int n = ribbon.vertex_count();
  if (y.size() != static_cast<std::size_t>(n) || r.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("vector length does not match vertex count");
  ReachabilitySets sets;
  std::vector<bool> in_t(n, false);
  for (Vertex v = 0; v < n; ++v) {
    if (r[v] <= 0) continue;
    if (y[v] < 0) sets.s1.push_back(v);
    if (y[v] == 0) {
      sets.t.push_back(v);
      in_t[v] = true;
    }
  }

  // Reverse reachability from V \ T along rotor edges.
  std::vector<std::vector<Vertex>> into(n);
  for (Vertex v = 0; v < n; ++v)
    if (ribbon.degree(v) > 0) into[rotor_edge(ribbon, rotors, v).head].push_back(v);
  std::vector<bool> escapes(n, false);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v)
    if (!in_t[v]) {
      escapes[v] = true;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    const Vertex w = queue.front();
    queue.pop_front();
    for (Vertex u : into[w])
      if (!escapes[u]) {
        escapes[u] = true;
        queue.push_back(u);
      }
  }
  for (Vertex v : sets.t)
    if (!escapes[v]) sets.s2.push_back(v);
  return sets;
}

const char* to_string(RotorRefutation r) {
  switch (r) {
    case RotorRefutation::None: return "none";
    case RotorRefutation::NotUnconstrainedReachable: return "not-unconstrained-reachable";
    case RotorRefutation::S1NonEmpty: return "S1-nonempty";
    case RotorRefutation::S2NonEmpty: return "S2-nonempty";
  }
  return "none";
}

RotorReachabilityVerdict reach_rotor(const DirectedMultigraph& g, const RibbonStructure& ribbon,
                                     const ChipRotorConfig& source, const ChipRotorConfig& target,
                                     const Budget& budget, bool emit_trace) {
  RotorReachabilityVerdict verdict;
  verdict.r = unconstrained_reach(g, ribbon, source, target);
  if (!verdict.r) {
    verdict.decision = Decision::No;
    verdict.reason = RotorRefutation::NotUnconstrainedReachable;
    return verdict;
  }
  verdict.sets = reachability_sets(ribbon, target.chips, target.rotors, *verdict.r);
  if (!verdict.sets.s1.empty()) {
    verdict.decision = Decision::No;
    verdict.reason = RotorRefutation::S1NonEmpty;
    return verdict;
  }
  if (!verdict.sets.s2.empty()) {
    verdict.decision = Decision::No;
    verdict.reason = RotorRefutation::S2NonEmpty;
    return verdict;
  }
  verdict.decision = Decision::Yes;
  if (emit_trace) {
    try {
      auto game = bounded_rotor_game(g, ribbon, source, *verdict.r, budget);
      if (game.odometer != *verdict.r || game.final_config != target)
        throw std::logic_error("bounded rotor game disagrees with the reachability characterization");
      verdict.trace = std::move(game.trace);
    } catch (const BudgetExceeded&) {
      // The decision stands; only the witness is dropped.
    }
  }
  return verdict;
}

bool odometer_equals_bound(const DirectedMultigraph& g, const RibbonStructure& ribbon, const ChipRotorConfig& cfg,
                           const CountVector& r) {
  const ChipRotorConfig end = pi_r(g, ribbon, cfg, r);
  const auto sets = reachability_sets(ribbon, end.chips, end.rotors, r);
  return sets.s1.empty() && sets.s2.empty();
}

bool validate_legal_routing_sequence(const DirectedMultigraph& g, const RibbonStructure& ribbon,
                                     const ChipRotorConfig& cfg, const std::vector<Vertex>& sequence) {
  check_config(ribbon, cfg);
  ChipRotorConfig cur = cfg;
  for (Vertex v : sequence) {
    if (v < 0 || v >= g.vertex_count()) return false;
    if (!is_legal_route(g, cur.chips, v)) return false;
    apply_routings(ribbon, cur, v, 1);
  }
  return true;
}

}  // namespace chiprotor
