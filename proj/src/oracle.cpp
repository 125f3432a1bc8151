#include "chiprotor/oracle.hpp"

#include <cstring>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace chiprotor::oracle {

namespace {

using Small = std::int64_t;
using State = std::vector<Small>;

Small to_small(const BigInt& v) {
  if (v > std::numeric_limits<Small>::max() / 4 || v < std::numeric_limits<Small>::min() / 4)
    throw std::invalid_argument("oracle: value too large for exhaustive search");
  return static_cast<Small>(v);
}

State to_small(const IntVector& v) {
  State out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_small(x));
  return out;
}

std::string key_of(const State& s) {
  std::string key(s.size() * sizeof(Small), '\0');
  std::memcpy(key.data(), s.data(), key.size());
  return key;
}

struct SmallGraph {
  int n;
  std::vector<Small> degree;
  std::vector<std::vector<std::pair<int, Small>>> out;  // (head, multiplicity)
};

SmallGraph small_graph(const DirectedMultigraph& g) {
  SmallGraph sg{g.vertex_count(), {}, {}};
  sg.degree.resize(sg.n);
  sg.out.resize(sg.n);
  for (int v = 0; v < sg.n; ++v) {
    sg.degree[v] = to_small(g.out_degree(v));
    for (int u = 0; u < sg.n; ++u)
      if (g.multiplicity(v, u) > 0) sg.out[v].emplace_back(u, to_small(g.multiplicity(v, u)));
  }
  return sg;
}

// Explicit cyclic order of heads at each vertex.
std::vector<std::vector<int>> expand_heads(const RibbonStructure& ribbon) {
  std::vector<std::vector<int>> heads(ribbon.vertex_count());
  for (int v = 0; v < ribbon.vertex_count(); ++v) {
    if (ribbon.degree(v) > 1'000'000) throw std::invalid_argument("oracle: degree too large to expand");
    for (const auto& run : ribbon.runs(v))
      for (BigInt k = 0; k < run.count; ++k) heads[v].push_back(run.head);
  }
  return heads;
}

// Chip successors: every legal firing (sinks fire as a no-op).
template <typename Visit>
void chip_successors(const SmallGraph& g, const State& x, Visit&& visit) {
  for (int v = 0; v < g.n; ++v) {
    if (x[v] < g.degree[v]) continue;
    State next = x;
    next[v] -= g.degree[v];
    for (const auto& [u, m] : g.out[v]) next[u] += m;
    visit(next);
  }
}

// Rotor state layout: n chip counts followed by n rotor positions.
template <typename Visit>
void rotor_successors(const std::vector<std::vector<int>>& heads, const State& s, Visit&& visit) {
  const int n = static_cast<int>(heads.size());
  for (int v = 0; v < n; ++v) {
    if (heads[v].empty() || s[v] <= 0) continue;
    State next = s;
    Small& pos = next[n + v];
    pos = (pos + 1) % static_cast<Small>(heads[v].size());
    next[v] -= 1;
    next[heads[v][pos]] += 1;
    visit(next);
  }
}

template <typename Successors>
SearchResult bfs(const State& start, const State& goal, bool require_nonempty, const Limits& limits,
                 Successors&& successors) {
  SearchResult result;
  const std::string goal_key = key_of(goal);
  std::unordered_set<std::string> seen;
  std::deque<State> frontier;

  if (!require_nonempty) {
    if (start == goal) return {Answer::Yes, 1};
    seen.insert(key_of(start));
    frontier.push_back(start);
  } else {
    // Seed with the successors of start so that only nonempty games count.
    frontier.push_back(start);
  }
  bool first = require_nonempty;
  bool found = false;
  bool overflow = false;
  while (!frontier.empty() && !found && !overflow) {
    const State cur = std::move(frontier.front());
    frontier.pop_front();
    successors(cur, [&](const State& next) {
      if (found || overflow) return;
      std::string key = key_of(next);
      if (key == goal_key) {
        found = true;
        return;
      }
      if (seen.insert(std::move(key)).second) {
        if (seen.size() > limits.max_states) overflow = true;
        frontier.push_back(next);
      }
    });
    if (first) first = false;
  }
  result.states_visited = seen.size();
  result.answer = found ? Answer::Yes : (overflow ? Answer::BudgetExceeded : Answer::No);
  return result;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

const char* to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "YES";
    case Answer::No: return "NO";
    case Answer::BudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "BUDGET_EXCEEDED";
}

SearchResult bfs_reach_chip(const DirectedMultigraph& g, const ChipConfig& x, const ChipConfig& y,
                            const Limits& limits) {
  const SmallGraph sg = small_graph(g);
  return bfs(to_small(x), to_small(y), false, limits,
             [&](const State& s, auto&& visit) { chip_successors(sg, s, visit); });
}

SearchResult bfs_recurrent_chip(const DirectedMultigraph& g, const ChipConfig& x, const Limits& limits) {
  const SmallGraph sg = small_graph(g);
  const State start = to_small(x);
  return bfs(start, start, true, limits, [&](const State& s, auto&& visit) { chip_successors(sg, s, visit); });
}

SearchResult bfs_reach_rotor(const DirectedMultigraph& /*g*/, const RibbonStructure& ribbon,
                             const ChipRotorConfig& source, const ChipRotorConfig& target, const Limits& limits) {
  const auto heads = expand_heads(ribbon);
  auto pack = [](const ChipRotorConfig& c) {
    State s = to_small(c.chips);
    const State rot = to_small(c.rotors.position);
    s.insert(s.end(), rot.begin(), rot.end());
    return s;
  };
  return bfs(pack(source), pack(target), false, limits,
             [&](const State& s, auto&& visit) { rotor_successors(heads, s, visit); });
}

SearchResult bfs_halts_chip(const DirectedMultigraph& g, const ChipConfig& x, const Limits& limits) {
  const SmallGraph sg = small_graph(g);
  // Enumerate the reachable configuration graph, then look for a cycle with
  // Kahn's algorithm.
  std::unordered_map<std::string, std::size_t> index;
  std::vector<State> states;
  std::vector<std::vector<std::size_t>> edges;
  auto intern = [&](const State& s) -> std::pair<std::size_t, bool> {
    auto [it, inserted] = index.emplace(key_of(s), states.size());
    if (inserted) {
      states.push_back(s);
      edges.emplace_back();
    }
    return {it->second, inserted};
  };
  intern(to_small(x));
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states.size() > limits.max_states) return {Answer::BudgetExceeded, states.size()};
    const State cur = states[i];
    chip_successors(sg, cur, [&](const State& next) {
      const auto id = intern(next).first;
      edges[i].push_back(id);
    });
  }
  std::vector<std::size_t> indegree(states.size(), 0);
  for (const auto& out : edges)
    for (auto j : out) ++indegree[j];
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (indegree[i] == 0) ready.push_back(i);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const auto i = ready.back();
    ready.pop_back();
    ++removed;
    for (auto j : edges[i])
      if (--indegree[j] == 0) ready.push_back(j);
  }
  return {removed == states.size() ? Answer::Yes : Answer::No, states.size()};
}

std::uint64_t chip_state_bound(const ChipConfig& x) {
  std::uint64_t slack = 0;
  for (const auto& v : x)
    if (v > 0) slack += static_cast<std::uint64_t>(v);
  const std::uint64_t n = x.size();
  return binomial(slack + n - 1, n - 1);
}

std::uint64_t rotor_state_bound(const RibbonStructure& ribbon, const ChipConfig& x) {
  std::uint64_t bound = chip_state_bound(x);
  for (int v = 0; v < ribbon.vertex_count(); ++v)
    if (ribbon.degree(v) > 0) bound *= static_cast<std::uint64_t>(ribbon.degree(v));
  return bound;
}

std::vector<DirectedMultigraph> enumerate_digraphs(int n, int max_multiplicity) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) pairs.emplace_back(u, v);
  std::vector<int> digits(pairs.size(), 0);
  std::vector<DirectedMultigraph> out;
  while (true) {
    DirectedMultigraph g(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (digits[i] > 0) g.add_edge(pairs[i].first, pairs[i].second, digits[i]);
    out.push_back(std::move(g));
    std::size_t i = 0;
    while (i < digits.size() && digits[i] == max_multiplicity) digits[i++] = 0;
    if (i == digits.size()) break;
    ++digits[i];
  }
  return out;
}

std::int64_t InstanceSampler::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng_() % span);
}

DirectedMultigraph InstanceSampler::graph() {
  const int n = static_cast<int>(uniform(params_.min_vertices, params_.max_vertices));
  return graph(n, params_.strongly_connected);
}

DirectedMultigraph InstanceSampler::graph(int n, bool strongly_connected) {
  std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && uniform(0, 1) == 1) mult[u][v] = static_cast<int>(uniform(1, params_.max_multiplicity));
  if (strongly_connected && n > 1) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[uniform(0, i)]);
    for (int i = 0; i < n; ++i) {
      int& m = mult[order[i]][order[(i + 1) % n]];
      if (m == 0) m = 1;
    }
  }
  DirectedMultigraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (mult[u][v] > 0) g.add_edge(u, v, mult[u][v]);
  return g;
}

RibbonStructure InstanceSampler::ribbon(const DirectedMultigraph& g) {
  std::vector<std::vector<Run>> runs(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> heads;
    for (int u = 0; u < g.vertex_count(); ++u)
      for (Small k = 0; k < to_small(g.multiplicity(v, u)); ++k) heads.push_back(u);
    for (int i = static_cast<int>(heads.size()) - 1; i > 0; --i) std::swap(heads[i], heads[uniform(0, i)]);
    for (int h : heads) {
      if (!runs[v].empty() && runs[v].back().head == h)
        runs[v].back().count += 1;
      else
        runs[v].push_back({h, 1});
    }
  }
  return RibbonStructure::from_runs(g, std::move(runs));
}

ChipConfig InstanceSampler::chips(int n) {
  while (true) {
    ChipConfig x(n);
    Small total = 0;
    for (int v = 0; v < n; ++v) {
      const Small c = uniform(params_.min_chip, params_.max_chip);
      x[v] = c;
      total += c;
    }
    if (total >= -params_.max_abs_total_chips && total <= params_.max_abs_total_chips) return x;
  }
}

RotorConfig InstanceSampler::rotors(const RibbonStructure& ribbon) {
  RotorConfig rc{std::vector<BigInt>(ribbon.vertex_count(), BigInt(0))};
  for (int v = 0; v < ribbon.vertex_count(); ++v)
    if (ribbon.degree(v) > 0) rc.position[v] = uniform(0, to_small(ribbon.degree(v)) - 1);
  return rc;
}

CountVector InstanceSampler::routing_vector(const DirectedMultigraph& g, int max_entry) {
  CountVector r(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) r[v] = g.is_sink(v) ? 0 : uniform(0, max_entry);
  return r;
}

CountVector InstanceSampler::count_vector(int n, int max_entry) {
  CountVector r(n);
  for (int v = 0; v < n; ++v) r[v] = uniform(0, max_entry);
  return r;
}

RotorInstance InstanceSampler::rotor_instance() {
  DirectedMultigraph g = graph();
  RibbonStructure rib = ribbon(g);
  const int n = g.vertex_count();
  ChipRotorConfig source{chips(n), rotors(rib)};
  const auto heads = expand_heads(rib);

  State s = to_small(source.chips);
  State pos = to_small(source.rotors.position);
  auto step = [&](int v) {
    pos[v] = (pos[v] + 1) % static_cast<Small>(heads[v].size());
    s[v] -= 1;
    s[heads[v][pos[v]]] += 1;
  };

  ChipRotorConfig target;
  switch (uniform(0, 2)) {
    case 0: {  // random legal walk
      const auto moves = uniform(0, 8);
      for (Small m = 0; m < moves; ++m) {
        std::vector<int> legal;
        for (int v = 0; v < n; ++v)
          if (!heads[v].empty() && s[v] > 0) legal.push_back(v);
        if (legal.empty()) break;
        step(legal[uniform(0, static_cast<Small>(legal.size()) - 1)]);
      }
      break;
    }
    case 1: {  // unconstrained routing by a random r
      const CountVector r = routing_vector(g, params_.max_routing);
      for (int v = 0; v < n; ++v)
        for (Small k = 0; k < to_small(r[v]); ++k) step(v);
      break;
    }
    default: {  // independent configuration with the same total
      const ChipConfig other = chips(n);
      s = to_small(other);
      Small diff = 0;
      for (int v = 0; v < n; ++v) diff += to_small(source.chips[v]) - s[v];
      s[uniform(0, n - 1)] += diff;
      pos = to_small(rotors(rib).position);
      break;
    }
  }
  for (Small c : s) target.chips.push_back(c);
  for (Small p : pos) target.rotors.position.push_back(p);
  return {std::move(g), std::move(rib), std::move(source), std::move(target)};
}

ChipInstance InstanceSampler::chip_instance() {
  DirectedMultigraph g = graph();
  const int n = g.vertex_count();
  const SmallGraph sg = small_graph(g);
  ChipConfig source = chips(n);
  State s = to_small(source);
  auto fire_once = [&](int v) {
    s[v] -= sg.degree[v];
    for (const auto& [u, m] : sg.out[v]) s[u] += m;
  };

  switch (uniform(0, 2)) {
    case 0: {  // random legal game
      const auto moves = uniform(0, 6);
      for (Small m = 0; m < moves; ++m) {
        std::vector<int> legal;
        for (int v = 0; v < n; ++v)
          if (s[v] >= sg.degree[v] && sg.degree[v] > 0) legal.push_back(v);
        if (legal.empty()) break;
        fire_once(legal[uniform(0, static_cast<Small>(legal.size()) - 1)]);
      }
      break;
    }
    case 1: {  // x + L f
      const CountVector f = count_vector(n, params_.max_firing);
      for (int v = 0; v < n; ++v)
        for (Small k = 0; k < to_small(f[v]); ++k) fire_once(v);
      break;
    }
    default: {
      const ChipConfig other = chips(n);
      Small diff = 0;
      State t = to_small(other);
      for (int v = 0; v < n; ++v) diff += s[v] - t[v];
      t[uniform(0, n - 1)] += diff;
      s = t;
      break;
    }
  }
  ChipConfig target;
  for (Small c : s) target.push_back(c);
  return {std::move(g), std::move(source), std::move(target)};
}

}  // namespace chiprotor::oracle
