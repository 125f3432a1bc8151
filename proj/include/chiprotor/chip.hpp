#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chiprotor/bigint.hpp"
#include "chiprotor/budget.hpp"
#include "chiprotor/graph.hpp"
#include "chiprotor/linalg.hpp"

namespace chiprotor {

/// One trace entry: `count` consecutive legal firings of `vertex`.
struct FiringBatch {
  Vertex vertex;
  BigInt count;
  friend bool operator==(const FiringBatch&, const FiringBatch&) = default;
};

struct ChipGameTrace {
  ChipConfig initial;
  std::vector<FiringBatch> batches;
  ChipConfig final_config;
  CountVector firing_vector;

  /// Flattened vertex sequence; only sensible for short games.
  std::vector<Vertex> expand() const;
};

struct ChipGameResult {
  CountVector firing_vector;
  ChipConfig final_config;
  ChipGameTrace trace;
};

/// x + L e_v, with no legality check.
ChipConfig fire(const DirectedMultigraph& g, const ChipConfig& x, Vertex v);

/// Fires v `times` times at once.
ChipConfig fire_many(const DirectedMultigraph& g, const ChipConfig& x, Vertex v, const BigInt& times);

/// x(v) >= deg+(v).
bool is_legal_fire(const DirectedMultigraph& g, const ChipConfig& x, Vertex v);

/// Maximal b-bounded legal game. Schedule: smallest eligible vertex first,
/// fired in the largest legal batch. Throws BudgetExceeded when more than
/// budget.max_steps batches are needed.
ChipGameResult bounded_chip_game(const DirectedMultigraph& g, const ChipConfig& x, const CountVector& bound,
                                 const Budget& budget = {});

enum class ChipRefutation { None, NoNonnegativeSolution, BoundedGameStuck };

const char* to_string(ChipRefutation r);

struct ChipReachabilityVerdict {
  Decision decision = Decision::Unknown;
  std::optional<CountVector> firing_vector;  // reduced solution, when one exists
  ChipRefutation reason = ChipRefutation::None;
  std::optional<ChipGameTrace> trace;        // legal witness on YES
};

/// Decides x ~> y: take the reduced f >= 0 with y = x + L f and check that the
/// f-bounded game fires exactly f. Budget exhaustion yields Decision::Unknown.
ChipReachabilityVerdict reach_chip(const DirectedMultigraph& g, const ChipConfig& x, const ChipConfig& y,
                                   const Budget& budget = {});

/// The maximal p_G-bounded game from x fires exactly p_G.
/// Requires a strongly connected graph; may throw BudgetExceeded.
bool is_recurrent(const DirectedMultigraph& g, const ChipConfig& x, const Budget& budget = {});

/// Recurrence through reachability: fire the smallest legal vertex v and ask
/// whether x + L e_v ~> x. Stable configurations are not recurrent.
bool is_recurrent_via_reach(const DirectedMultigraph& g, const ChipConfig& x, const Budget& budget = {});

/// Reduced f >= 0 with y = x + L f, or nullopt. Requires strong connectivity.
std::optional<CountVector> lin_equiv(const DirectedMultigraph& g, const ChipConfig& x, const ChipConfig& y);

struct Halts {
  ChipConfig final_config;
  CountVector firing_vector;
};

struct NonHalting {
  ChipConfig certificate;          // recurrent y with x ~ y
  CountVector firing_to_certificate;  // legal game x ~> y
  CountVector cycle_firing_vector;    // legal game y ~> y
};

struct HaltingBudgetExceeded {
  std::string detail;
};

using HaltingVerdict = std::variant<Halts, NonHalting, HaltingBudgetExceeded>;

/// Plays the greedy legal game, remembering every configuration seen at batch
/// boundaries. A repeat yields a non-halting certificate.
HaltingVerdict halts(const DirectedMultigraph& g, const ChipConfig& x, const Budget& budget = {});

/// y is recurrent and linearly equivalent to x.
bool verify_nonhalting_certificate(const DirectedMultigraph& g, const ChipConfig& x, const ChipConfig& y,
                                   const Budget& budget = {});

bool validate_legal_firing_sequence(const DirectedMultigraph& g, const ChipConfig& x,
                                    const std::vector<Vertex>& sequence);

}  // namespace chiprotor
