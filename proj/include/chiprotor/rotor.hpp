#pragma once

#include <optional>
#include <vector>

#include "chiprotor/bigint.hpp"
#include "chiprotor/budget.hpp"
#include "chiprotor/graph.hpp"
#include "chiprotor/linalg.hpp"

namespace chiprotor {

/// `count` consecutive parallel edges to `head` in a cyclic order.
struct Run {
  Vertex head;
  BigInt count;
  friend bool operator==(const Run&, const Run&) = default;
};

/// Cyclic order of the out-edges at every vertex, run-length encoded. A
/// position at v is a flat index in [0, deg+(v)) into the expanded order.
class RibbonStructure {
 public:
  /// Validates that run multiplicities are positive and that, per vertex and
  /// head, they add up to the edge multiplicity in `g`. Throws GraphError.
  static RibbonStructure from_runs(const DirectedMultigraph& g, std::vector<std::vector<Run>> runs);

  /// Heads in ascending order, all parallel edges consecutive.
  static RibbonStructure default_for(const DirectedMultigraph& g);

  int vertex_count() const { return static_cast<int>(runs_.size()); }
  const std::vector<Run>& runs(Vertex v) const { return runs_.at(v); }
  const BigInt& degree(Vertex v) const { return degree_.at(v); }

  /// Head of the edge at `position` (binary search over run offsets).
  Vertex head_at(Vertex v, const BigInt& position) const;

  /// Same cyclic orders with adjacent equal heads merged.
  RibbonStructure merged() const;

  /// Equal as expanded cyclic orders starting from position 0.
  friend bool operator==(const RibbonStructure& a, const RibbonStructure& b) {
    return a.merged().runs_ == b.merged().runs_;
  }

 private:
  RibbonStructure() = default;
  void index_runs();

  std::vector<std::vector<Run>> runs_;
  std::vector<std::vector<BigInt>> starts_;  // offset of each run
  std::vector<BigInt> degree_;
};

/// Rotor position per vertex. Sinks carry no rotor; their entry is 0 and
/// never read.
struct RotorConfig {
  std::vector<BigInt> position;
  friend bool operator==(const RotorConfig&, const RotorConfig&) = default;
};

struct ChipRotorConfig {
  ChipConfig chips;
  RotorConfig rotors;
  friend bool operator==(const ChipRotorConfig&, const ChipRotorConfig&) = default;
};

/// Throws GraphError unless every non-sink position lies in [0, deg+) and
/// sink entries are 0.
void validate_rotors(const RibbonStructure& ribbon, const RotorConfig& rotors);

RotorConfig initial_rotors(const RibbonStructure& ribbon);

struct RotorEdge {
  Vertex head;
  BigInt position;
};

/// Edge currently selected by the rotor at v. Throws GraphError at a sink.
RotorEdge rotor_edge(const RibbonStructure& ribbon, const RotorConfig& rotors, Vertex v);

/// One unconstrained routing: advance the rotor at v, then send one chip
/// along the new rotor edge. Routing a sink changes nothing.
ChipRotorConfig route(const DirectedMultigraph& g, const RibbonStructure& ribbon, const ChipRotorConfig& cfg,
                      Vertex v);

/// x(v) > 0 at a non-sink vertex.
bool is_legal_route(const DirectedMultigraph& g, const ChipConfig& x, Vertex v);

/// Routes every vertex v exactly r(v) times, unconstrained. Closed form: the
/// rotor ends at (q + r) mod D and each edge receives floor(r / D) chips plus
/// one if its position lies in the cyclic interval (q, q + r mod D]. Costs
/// O(runs) big-integer operations per vertex, independent of magnitudes.
/// Throws std::invalid_argument if r is negative or positive at a sink.
ChipRotorConfig pi_r(const DirectedMultigraph& g, const RibbonStructure& ribbon, const ChipRotorConfig& cfg,
                     const CountVector& r);

/// pi_r with r = k e_v.
ChipRotorConfig route_many(const DirectedMultigraph& g, const RibbonStructure& ribbon,
                           const ChipRotorConfig& cfg, Vertex v, const BigInt& k);

/// Zeroes r at sink vertices.
CountVector normalize_routing_vector(const DirectedMultigraph& g, CountVector r);

struct RoutingBatch {
  Vertex vertex;
  BigInt count;
  friend bool operator==(const RoutingBatch&, const RoutingBatch&) = default;
};

struct RotorGameTrace {
  ChipRotorConfig initial;
  std::vector<RoutingBatch> batches;
  ChipRotorConfig final_config;
  CountVector odometer;

  std::vector<Vertex> expand() const;
};

struct RotorGameResult {
  CountVector odometer;
  ChipRotorConfig final_config;
  RotorGameTrace trace;
};

/// Maximal r-bounded legal rotor game, smallest eligible vertex first, each
/// step a batch of min(x(v), r(v) - o(v)) legal routings. Throws
/// BudgetExceeded past budget.max_steps batches.
RotorGameResult bounded_rotor_game(const DirectedMultigraph& g, const RibbonStructure& ribbon,
                                   const ChipRotorConfig& cfg, const CountVector& r, const Budget& budget = {});

/// The unique routing-reduced r >= 0 with pi_r(source) = target, or nullopt.
std::optional<CountVector> unconstrained_reach(const DirectedMultigraph& g, const RibbonStructure& ribbon,
                                               const ChipRotorConfig& source, const ChipRotorConfig& target);
std::optional<CountVector> unconstrained_reach(const DirectedMultigraph& g, const PeriodBasis& basis,
                                               const RibbonStructure& ribbon, const ChipRotorConfig& source,
                                               const ChipRotorConfig& target);

struct ReachabilitySets {
  std::vector<Vertex> s1;  // y(v) < 0 and r(v) > 0
  std::vector<Vertex> t;   // y(v) = 0 and r(v) > 0
  std::vector<Vertex> s2;  // members of t whose rotor-subgraph closure stays in t
};

ReachabilitySets reachability_sets(const RibbonStructure& ribbon, const ChipConfig& y, const RotorConfig& rotors,
                                   const CountVector& r);

enum class RotorRefutation { None, NotUnconstrainedReachable, S1NonEmpty, S2NonEmpty };

const char* to_string(RotorRefutation r);

struct RotorReachabilityVerdict {
  Decision decision = Decision::No;
  std::optional<CountVector> r;
  ReachabilitySets sets;
  RotorRefutation reason = RotorRefutation::None;
  std::optional<RotorGameTrace> trace;
};

/// Polynomial-time decision of (x, rho_x) ~> (y, rho_y): unconstrained
/// reachability via the routing-reduced r, then S1 and S2 both empty. On YES
/// the witness is the r-bounded game, whose odometer is then exactly r; it is
/// omitted if `emit_trace` is false or the game exceeds the budget.
RotorReachabilityVerdict reach_rotor(const DirectedMultigraph& g, const RibbonStructure& ribbon,
                                     const ChipRotorConfig& source, const ChipRotorConfig& target,
                                     const Budget& budget = {}, bool emit_trace = true);

/// odom(x, rho; r) == r, decided from the S1/S2 sets of pi_r(x, rho) without
/// simulation.
bool odometer_equals_bound(const DirectedMultigraph& g, const RibbonStructure& ribbon, const ChipRotorConfig& cfg,
                           const CountVector& r);

bool validate_legal_routing_sequence(const DirectedMultigraph& g, const RibbonStructure& ribbon,
                                     const ChipRotorConfig& cfg, const std::vector<Vertex>& sequence);

}  // namespace chiprotor
