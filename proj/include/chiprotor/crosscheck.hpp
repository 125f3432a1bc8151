#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chiprotor/oracle.hpp"

namespace chiprotor {

/// Engine-versus-oracle agreement over a seeded stream of small instances.
struct CrossCheckStats {
  std::uint64_t checked = 0;
  std::uint64_t agreements = 0;
  std::uint64_t disagreements = 0;
  std::uint64_t positive = 0;              // instances both sides answered YES
  std::uint64_t oracle_budget_exceeded = 0;
  std::uint64_t engine_unknown = 0;
  std::vector<std::string> first_failures;  // up to a handful, for diagnostics
};

/// reach_rotor against bfs_reach_rotor.
CrossCheckStats crosscheck_rotor_reach(std::uint64_t seed, std::uint64_t count, const oracle::SamplerParams& params,
                                       const oracle::Limits& limits = {});

/// reach_chip against bfs_reach_chip.
CrossCheckStats crosscheck_chip_reach(std::uint64_t seed, std::uint64_t count, const oracle::SamplerParams& params,
                                      const oracle::Limits& limits = {});

/// is_recurrent, is_recurrent_via_reach and bfs_recurrent_chip on strongly
/// connected graphs.
CrossCheckStats crosscheck_recurrence(std::uint64_t seed, std::uint64_t count, oracle::SamplerParams params,
                                      const oracle::Limits& limits = {});

}  // namespace chiprotor
