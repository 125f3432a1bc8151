#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "chiprotor/bigint.hpp"
#include "chiprotor/graph.hpp"
#include "chiprotor/rotor.hpp"

/// Brute-force ground truth by exhaustive search of configuration spaces.
/// Nothing here calls into the chip or rotor engines: the search carries its
/// own machine-integer game step so that agreement with the engines is
/// evidence rather than tautology.
namespace chiprotor::oracle {

struct Limits {
  std::size_t max_states = 2'000'000;
};

enum class Answer { Yes, No, BudgetExceeded };

const char* to_string(Answer a);

struct SearchResult {
  Answer answer = Answer::BudgetExceeded;
  std::size_t states_visited = 0;
};

/// Breadth-first search over legal firings from x; Yes iff y is visited.
SearchResult bfs_reach_chip(const DirectedMultigraph& g, const ChipConfig& x, const ChipConfig& y,
                            const Limits& limits = {});

/// Breadth-first search over legal routings.
SearchResult bfs_reach_rotor(const DirectedMultigraph& g, const RibbonStructure& ribbon,
                             const ChipRotorConfig& source, const ChipRotorConfig& target,
                             const Limits& limits = {});

/// Yes iff some nonempty legal firing sequence leads from x back to x.
SearchResult bfs_recurrent_chip(const DirectedMultigraph& g, const ChipConfig& x, const Limits& limits = {});

/// Yes iff every legal game from x is finite, i.e. the reachable part of the
/// configuration graph is acyclic.
SearchResult bfs_halts_chip(const DirectedMultigraph& g, const ChipConfig& x, const Limits& limits = {});

/// Upper bound on the number of chip configurations a legal game from x can
/// visit: every coordinate stays >= min(x(v), 0) and the total is conserved.
std::uint64_t chip_state_bound(const ChipConfig& x);

/// chip_state_bound times the number of rotor configurations.
std::uint64_t rotor_state_bound(const RibbonStructure& ribbon, const ChipConfig& x);

/// All loopless digraphs on n vertices with every multiplicity in
/// [0, max_multiplicity], in lexicographic order of the off-diagonal entries.
std::vector<DirectedMultigraph> enumerate_digraphs(int n, int max_multiplicity);

struct SamplerParams {
  int min_vertices = 1;
  int max_vertices = 4;
  int max_multiplicity = 3;
  int min_chip = -2;
  int max_chip = 3;
  int max_abs_total_chips = 3;
  int max_routing = 6;    // entries of random routing vectors
  int max_firing = 3;     // entries of random firing vectors
  bool strongly_connected = false;
};

struct RotorInstance {
  DirectedMultigraph graph;
  RibbonStructure ribbon;
  ChipRotorConfig source;
  ChipRotorConfig target;
};

struct ChipInstance {
  DirectedMultigraph graph;
  ChipConfig source;
  ChipConfig target;
};

/// Seeded, replayable stream of small random instances.
class InstanceSampler {
 public:
  explicit InstanceSampler(std::uint64_t seed, SamplerParams params = {}) : rng_(seed), params_(params) {}

  const SamplerParams& params() const { return params_; }

  /// Uniform integer in [lo, hi], identical across standard libraries.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  DirectedMultigraph graph();
  DirectedMultigraph graph(int n, bool strongly_connected);
  RibbonStructure ribbon(const DirectedMultigraph& g);
  ChipConfig chips(int n);
  RotorConfig rotors(const RibbonStructure& ribbon);
  CountVector routing_vector(const DirectedMultigraph& g, int max_entry);
  CountVector count_vector(int n, int max_entry);

  /// Source is random; the target is either pi_r(source) for a random r
  /// (computed by step simulation here) or an independent random
  /// configuration with the same chip total.
  RotorInstance rotor_instance();

  /// Target is either x + L f for a random f >= 0 or an independent random
  /// configuration with the same total.
  ChipInstance chip_instance();

 private:
  std::mt19937_64 rng_;
  SamplerParams params_;
};

}  // namespace chiprotor::oracle
