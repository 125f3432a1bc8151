#include "chiprotor/instance_io.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace chiprotor {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

BigInt number(std::string_view token, int line) {
  try {
    return parse_bigint(token);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

Vertex vertex(std::string_view token, int n, int line) {
  const BigInt v = number(token, line);
  if (v < 0 || v >= n) throw ParseError(line, "vertex " + std::string(token) + " out of range");
  return static_cast<Vertex>(v);
}

}  // namespace

RibbonStructure Instance::effective_ribbon() const {
  return ribbon ? *ribbon : RibbonStructure::default_for(graph);
}

const NamedConfig* Instance::find(const std::string& name) const {
  for (const auto& [key, cfg] : configs)
    if (key == name) return &cfg;
  return nullptr;
}

NamedConfig& Instance::config(const std::string& name) {
  for (auto& [key, cfg] : configs)
    if (key == name) return cfg;
  configs.emplace_back(name, NamedConfig{});
  return configs.back().second;
}

Instance parse_instance(std::string_view text) {
  std::optional<DirectedMultigraph> graph;
  int graph_line = 0;
  std::map<Vertex, std::pair<int, std::vector<Run>>> ribbon_lines;
  struct PendingRotor {
    std::string config;
    Vertex v;
    BigInt position;
    int line;
  };
  std::vector<PendingRotor> rotor_lines;
  std::map<std::string, std::map<Vertex, int>> rotor_seen;
  Instance instance;
  std::string current = "default";

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = tokenize(line);
    if (tok.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    const std::string_view kw = tok[0];

    if (kw == "graph") {
      if (graph) throw ParseError(line_no, "duplicate graph line");
      if (tok.size() != 2) throw ParseError(line_no, "expected: graph <n>");
      const BigInt n = number(tok[1], line_no);
      if (n < 1 || n > 100000) throw ParseError(line_no, "vertex count must be between 1 and 100000");
      graph.emplace(static_cast<int>(n));
      graph_line = line_no;
    } else if (!graph) {
      throw ParseError(line_no, "'graph <n>' must come first");
    } else if (kw == "edge") {
      if (tok.size() != 4) throw ParseError(line_no, "expected: edge <u> <v> <mult>");
      const int n = graph->vertex_count();
      const Vertex u = vertex(tok[1], n, line_no);
      const Vertex v = vertex(tok[2], n, line_no);
      const BigInt m = number(tok[3], line_no);
      try {
        graph->add_edge(u, v, m);
      } catch (const GraphError& e) {
        throw ParseError(line_no, e.what());
      }
    } else if (kw == "ribbon") {
      if (tok.size() < 2) throw ParseError(line_no, "expected: ribbon <v> : <head>:<count> ...");
      std::string_view vtok = tok[1];
      std::size_t first_run = 2;
      if (!vtok.empty() && vtok.back() == ':') {
        vtok.remove_suffix(1);
      } else {
        if (tok.size() < 3 || tok[2] != ":") throw ParseError(line_no, "expected ':' after ribbon vertex");
        first_run = 3;
      }
      const Vertex v = vertex(vtok, graph->vertex_count(), line_no);
      if (ribbon_lines.count(v)) throw ParseError(line_no, "duplicate ribbon for vertex " + std::to_string(v));
      std::vector<Run> runs;
      for (std::size_t i = first_run; i < tok.size(); ++i) {
        const auto colon = tok[i].find(':');
        if (colon == std::string_view::npos) throw ParseError(line_no, "expected <head>:<count>");
        const Vertex h = vertex(tok[i].substr(0, colon), graph->vertex_count(), line_no);
        const BigInt c = number(tok[i].substr(colon + 1), line_no);
        if (c < 1) throw ParseError(line_no, "run count must be at least 1");
        runs.push_back({h, c});
      }
      ribbon_lines[v] = {line_no, std::move(runs)};
    } else if (kw == "config") {
      if (tok.size() != 2) throw ParseError(line_no, "expected: config <name>");
      current = std::string(tok[1]);
      instance.config(current);
    } else if (kw == "chips") {
      const auto n = static_cast<std::size_t>(graph->vertex_count());
      if (tok.size() != n + 1)
        throw ParseError(line_no, "chips line needs " + std::to_string(n) + " values, got " +
                                      std::to_string(tok.size() - 1));
      NamedConfig& cfg = instance.config(current);
      if (cfg.chips) throw ParseError(line_no, "duplicate chips line in config '" + current + "'");
      ChipConfig x;
      for (std::size_t i = 1; i < tok.size(); ++i) x.push_back(number(tok[i], line_no));
      cfg.chips = std::move(x);
    } else if (kw == "rotor") {
      if (tok.size() != 3) throw ParseError(line_no, "expected: rotor <v> <position>");
      const Vertex v = vertex(tok[1], graph->vertex_count(), line_no);
      if (rotor_seen[current].count(v)) throw ParseError(line_no, "duplicate rotor for vertex " + std::to_string(v));
      rotor_seen[current][v] = line_no;
      instance.config(current);
      rotor_lines.push_back({current, v, number(tok[2], line_no), line_no});
    } else {
      throw ParseError(line_no, "unknown keyword '" + std::string(kw) + "'");
    }
    if (eol == text.size()) break;
  }
  if (!graph) throw ParseError(0, "missing 'graph <n>' line");
  instance.graph = std::move(*graph);
  const int n = instance.graph.vertex_count();

  if (!ribbon_lines.empty()) {
    std::vector<std::vector<Run>> runs(n);
    for (auto& [v, entry] : ribbon_lines) runs[v] = entry.second;
    try {
      instance.ribbon = RibbonStructure::from_runs(instance.graph, std::move(runs));
    } catch (const GraphError& e) {
      // Point at the first vertex whose runs disagree with the multiplicities.
      int where = graph_line;
      for (Vertex v = 0; v < n; ++v) {
        std::vector<BigInt> per_head(n);
        const auto it = ribbon_lines.find(v);
        if (it != ribbon_lines.end())
          for (const auto& run : it->second.second) per_head[run.head] += run.count;
        bool ok = true;
        for (Vertex h = 0; h < n; ++h) ok = ok && per_head[h] == instance.graph.multiplicity(v, h);
        if (!ok) {
          where = it != ribbon_lines.end() ? it->second.first : graph_line;
          break;
        }
      }
      throw ParseError(where, e.what());
    }
  }

  const RibbonStructure ribbon = instance.effective_ribbon();
  for (const auto& pr : rotor_lines) {
    NamedConfig& cfg = instance.config(pr.config);
    if (!cfg.rotors) cfg.rotors = initial_rotors(ribbon);
    if (ribbon.degree(pr.v) == 0) throw ParseError(pr.line, "sink " + std::to_string(pr.v) + " carries no rotor");
    if (pr.position < 0 || pr.position >= ribbon.degree(pr.v))
      throw ParseError(pr.line, "rotor position out of range at vertex " + std::to_string(pr.v));
    cfg.rotors->position[pr.v] = pr.position;
  }
  for (auto& [name, cfg] : instance.configs)
    if (!cfg.rotors) cfg.rotors = initial_rotors(ribbon);
  return instance;
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  const auto& g = instance.graph;
  const int n = g.vertex_count();
  out << "graph " << n << '\n';
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (g.multiplicity(u, v) > 0) out << "edge " << u << ' ' << v << ' ' << g.multiplicity(u, v) << '\n';
  if (instance.ribbon) {
    const RibbonStructure merged = instance.ribbon->merged();
    for (Vertex v = 0; v < n; ++v) {
      if (merged.degree(v) == 0) continue;
      out << "ribbon " << v << " :";
      for (const auto& run : merged.runs(v)) out << ' ' << run.head << ':' << run.count;
      out << '\n';
    }
  }
  for (const auto& [name, cfg] : instance.configs) {
    out << "config " << name << '\n';
    if (cfg.chips) {
      out << "chips";
      for (const auto& c : *cfg.chips) out << ' ' << c;
      out << '\n';
    }
    if (cfg.rotors)
      for (Vertex v = 0; v < n; ++v)
        if (!g.is_sink(v)) out << "rotor " << v << ' ' << cfg.rotors->position[v] << '\n';
  }
  return out.str();
}

InstanceFamily parse_family(std::string_view name) {
  if (name == "eulerian") return InstanceFamily::Eulerian;
  if (name == "strongly-connected") return InstanceFamily::StronglyConnected;
  if (name == "heavy-multiplicity") return InstanceFamily::HeavyMultiplicity;
  if (name == "random") return InstanceFamily::Random;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

namespace {

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_() % (static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform enough in [lo, hi] for test data.
  BigInt big_uniform(const BigInt& lo, const BigInt& hi) {
    const BigInt span = hi - lo + 1;
    BigInt acc = 0;
    for (int i = 0; i < 4; ++i) acc = (acc << 64) + BigInt(rng_());
    return lo + acc % span;
  }

  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[uniform(0, i)]);
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

Instance gen_instance(const GenParams& params) {
  if (params.size < 1) throw std::invalid_argument("size must be at least 1");
  if (params.magnitude_exponent < 1 || params.magnitude_exponent > 1000)
    throw std::invalid_argument("magnitude exponent must be between 1 and 1000");
  Generator gen(params.seed);
  const int n = params.size;
  std::vector<std::vector<BigInt>> mult(n, std::vector<BigInt>(n, BigInt(0)));

  auto add_cycle = [&](const std::vector<int>& cycle) {
    if (cycle.size() < 2) return;
    for (std::size_t i = 0; i < cycle.size(); ++i) mult[cycle[i]][cycle[(i + 1) % cycle.size()]] += 1;
  };

  switch (params.family) {
    case InstanceFamily::Eulerian: {
      add_cycle(gen.permutation(n));
      const int extra = static_cast<int>(gen.uniform(0, n));
      for (int c = 0; c < extra; ++c) {
        auto p = gen.permutation(n);
        p.resize(static_cast<std::size_t>(gen.uniform(std::min(2, n), n)));
        add_cycle(p);
      }
      break;
    }
    case InstanceFamily::StronglyConnected:
    case InstanceFamily::Random: {
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (u != v && gen.uniform(0, 1) == 1) mult[u][v] = gen.uniform(1, 3);
      if (params.family == InstanceFamily::StronglyConnected) {
        const auto p = gen.permutation(n);
        for (int i = 0; n > 1 && i < n; ++i) {
          auto& m = mult[p[i]][p[(i + 1) % n]];
          if (m == 0) m = 1;
        }
      }
      break;
    }
    case InstanceFamily::HeavyMultiplicity: {
      BigInt high = 1;
      for (int i = 0; i < params.magnitude_exponent; ++i) high *= 10;
      const BigInt low = high / 10;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (u != v && gen.uniform(0, 2) == 0) mult[u][v] = gen.big_uniform(1, high);
      const auto p = gen.permutation(n);
      for (int i = 0; n > 1 && i < n; ++i) mult[p[i]][p[(i + 1) % n]] = gen.big_uniform(low, high);
      break;
    }
  }

  Instance inst;
  inst.graph = DirectedMultigraph(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (mult[u][v] > 0) inst.graph.add_edge(u, v, mult[u][v]);

  // Random ribbon: each head's parallel edges split into at most two runs,
  // runs shuffled.
  std::vector<std::vector<Run>> runs(n);
  for (int v = 0; v < n; ++v) {
    for (int h = 0; h < n; ++h) {
      const BigInt& m = mult[v][h];
      if (m == 0) continue;
      if (m >= 2 && gen.uniform(0, 1) == 1) {
        const BigInt first = gen.big_uniform(1, m - 1);
        runs[v].push_back({h, first});
        runs[v].push_back({h, m - first});
      } else {
        runs[v].push_back({h, m});
      }
    }
    for (int i = static_cast<int>(runs[v].size()) - 1; i > 0; --i) std::swap(runs[v][i], runs[v][gen.uniform(0, i)]);
  }
  inst.ribbon = RibbonStructure::from_runs(inst.graph, std::move(runs));

  NamedConfig& source = inst.config("source");
  ChipConfig chips(n);
  RotorConfig rotors = initial_rotors(*inst.ribbon);
  for (int v = 0; v < n; ++v) {
    const BigInt& deg = inst.graph.out_degree(v);
    chips[v] = deg > 0 ? gen.big_uniform(0, 2 * deg) : BigInt(gen.uniform(0, 3));
    if (deg > 0) rotors.position[v] = gen.big_uniform(0, deg - 1);
  }
  source.chips = std::move(chips);
  source.rotors = std::move(rotors);
  return inst;
}

}  // namespace chiprotor
