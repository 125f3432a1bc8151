#include "chiprotor/crosscheck.hpp"

#include <sstream>

#include "chiprotor/chip.hpp"
#include "chiprotor/rotor.hpp"

namespace chiprotor {

namespace {

constexpr std::size_t kMaxReported = 5;

void record_failure(CrossCheckStats& stats, const std::string& what) {
  ++stats.disagreements;
  if (stats.first_failures.size() < kMaxReported) stats.first_failures.push_back(what);
}

std::string describe(const DirectedMultigraph& g) {
  std::ostringstream out;
  out << "graph " << g.vertex_count() << ";";
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (g.multiplicity(u, v) > 0) out << " " << u << "->" << v << "x" << g.multiplicity(u, v);
  return out.str();
}

}  // namespace

CrossCheckStats crosscheck_rotor_reach(std::uint64_t seed, std::uint64_t count, const oracle::SamplerParams& params,
                                       const oracle::Limits& limits) {
  CrossCheckStats stats;
  oracle::InstanceSampler sampler(seed, params);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto inst = sampler.rotor_instance();
    ++stats.checked;
    const auto truth = oracle::bfs_reach_rotor(inst.graph, inst.ribbon, inst.source, inst.target, limits);
    if (truth.answer == oracle::Answer::BudgetExceeded) {
      ++stats.oracle_budget_exceeded;
      continue;
    }
    const auto verdict = reach_rotor(inst.graph, inst.ribbon, inst.source, inst.target);
    if (verdict.decision == Decision::Unknown) {
      ++stats.engine_unknown;
      continue;
    }
    const bool engine_yes = verdict.decision == Decision::Yes;
    const bool oracle_yes = truth.answer == oracle::Answer::Yes;
    if (engine_yes != oracle_yes) {
      std::ostringstream out;
      out << "instance " << i << ": engine=" << to_string(verdict.decision) << " oracle=" << oracle::to_string(truth.answer)
          << " " << describe(inst.graph) << " x=" << join(inst.source.chips) << " rho_x=" << join(inst.source.rotors.position)
          << " y=" << join(inst.target.chips) << " rho_y=" << join(inst.target.rotors.position);
      record_failure(stats, out.str());
      continue;
    }
    if (engine_yes) {
      ++stats.positive;
      if (!verdict.trace || !validate_legal_routing_sequence(inst.graph, inst.ribbon, inst.source, verdict.trace->expand()) ||
          verdict.trace->final_config != inst.target) {
        record_failure(stats, "instance " + std::to_string(i) + ": YES witness is not a legal game to the target");
        continue;
      }
    }
    ++stats.agreements;
  }
  return stats;
}

CrossCheckStats crosscheck_chip_reach(std::uint64_t seed, std::uint64_t count, const oracle::SamplerParams& params,
                                      const oracle::Limits& limits) {
  CrossCheckStats stats;
  oracle::InstanceSampler sampler(seed, params);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto inst = sampler.chip_instance();
    ++stats.checked;
    const auto truth = oracle::bfs_reach_chip(inst.graph, inst.source, inst.target, limits);
    if (truth.answer == oracle::Answer::BudgetExceeded) {
      ++stats.oracle_budget_exceeded;
      continue;
    }
    const auto verdict = reach_chip(inst.graph, inst.source, inst.target);
    if (verdict.decision == Decision::Unknown) {
      ++stats.engine_unknown;
      continue;
    }
    const bool engine_yes = verdict.decision == Decision::Yes;
    const bool oracle_yes = truth.answer == oracle::Answer::Yes;
    if (engine_yes != oracle_yes) {
      std::ostringstream out;
      out << "instance " << i << ": engine=" << to_string(verdict.decision) << " oracle=" << oracle::to_string(truth.answer)
          << " " << describe(inst.graph) << " x=" << join(inst.source) << " y=" << join(inst.target);
      record_failure(stats, out.str());
      continue;
    }
    if (engine_yes) {
      ++stats.positive;
      if (!verdict.trace || !validate_legal_firing_sequence(inst.graph, inst.source, verdict.trace->expand()) ||
          verdict.trace->final_config != inst.target) {
        record_failure(stats, "instance " + std::to_string(i) + ": YES witness is not a legal game to the target");
        continue;
      }
    }
    ++stats.agreements;
  }
  return stats;
}

CrossCheckStats crosscheck_recurrence(std::uint64_t seed, std::uint64_t count, oracle::SamplerParams params,
                                      const oracle::Limits& limits) {
  params.strongly_connected = true;
  CrossCheckStats stats;
  oracle::InstanceSampler sampler(seed, params);
  for (std::uint64_t i = 0; i < count; ++i) {
    const DirectedMultigraph g = sampler.graph();
    const ChipConfig x = sampler.chips(g.vertex_count());
    ++stats.checked;
    const auto truth = oracle::bfs_recurrent_chip(g, x, limits);
    if (truth.answer == oracle::Answer::BudgetExceeded) {
      ++stats.oracle_budget_exceeded;
      continue;
    }
    bool bounded = false;
    bool via_reach = false;
    try {
      bounded = is_recurrent(g, x);
      via_reach = is_recurrent_via_reach(g, x);
    } catch (const BudgetExceeded&) {
      ++stats.engine_unknown;
      continue;
    }
    const bool oracle_yes = truth.answer == oracle::Answer::Yes;
    if (bounded != oracle_yes || via_reach != oracle_yes) {
      std::ostringstream out;
      out << "instance " << i << ": bounded=" << bounded << " via_reach=" << via_reach << " oracle=" << oracle_yes << " "
          << describe(g) << " x=" << join(x);
      record_failure(stats, out.str());
      continue;
    }
    if (oracle_yes) ++stats.positive;
    ++stats.agreements;
  }
  return stats;
}

}  // namespace chiprotor
