#include "chiprotor/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "chiprotor/chip.hpp"
#include "chiprotor/crosscheck.hpp"
#include "chiprotor/instance_io.hpp"
#include "chiprotor/linalg.hpp"
#include "chiprotor/rotor.hpp"

namespace chiprotor {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t budget_steps = 1'000'000;
  std::uint64_t budget_states = 1'000'000;
  bool trace = false;
  std::uint64_t seed = 1;

  std::string instance_path;
  std::string from = "source";
  std::string to = "target";
  std::string vector;

  std::uint64_t count = 1000;
  std::string kind = "all";
  int max_vertices = 4;

  std::string family = "random";
  int size = 4;
  int magnitude = 18;

  Budget budget() const { return {budget_steps, budget_states}; }
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string render_set(const std::vector<Vertex>& vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(vs[i]);
  }
  return out + "}";
}

std::string render_rotors(const DirectedMultigraph& g, const RotorConfig& rc) {
  std::string out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (v) out += ',';
    out += g.is_sink(v) ? std::string("-") : rc.position[v].str();
  }
  return out;
}

template <typename Batch>
std::string render_batches(const std::vector<Batch>& batches) {
  std::string out;
  for (std::size_t i = 0; i < batches.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(batches[i].vertex) + "*" + batches[i].count.str();
  }
  return out.empty() ? "-" : out;
}

struct Loaded {
  Instance instance;
  RibbonStructure ribbon;
};

Loaded load(const Options& opt) {
  Instance inst = parse_instance(read_file(opt.instance_path));
  RibbonStructure ribbon = inst.effective_ribbon();
  return {std::move(inst), std::move(ribbon)};
}

ChipConfig chips_of(const Instance& inst, const std::string& name) {
  const NamedConfig* cfg = inst.find(name);
  if (!cfg || !cfg->chips) throw InputError("config '" + name + "' has no chips line");
  return *cfg->chips;
}

ChipRotorConfig chip_rotor_of(const Instance& inst, const RibbonStructure& ribbon, const std::string& name) {
  const NamedConfig* cfg = inst.find(name);
  if (!cfg || !cfg->chips) throw InputError("config '" + name + "' has no chips line");
  return {*cfg->chips, cfg->rotors ? *cfg->rotors : initial_rotors(ribbon)};
}

CountVector vector_option(const Options& opt, const DirectedMultigraph& g, const char* what) {
  if (opt.vector.empty()) throw InputError(std::string("missing --") + what);
  CountVector r;
  try {
    r = parse_vector(opt.vector);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--") + what + ": " + e.what());
  }
  if (r.size() != static_cast<std::size_t>(g.vertex_count()))
    throw InputError(std::string("--") + what + " needs " + std::to_string(g.vertex_count()) + " entries");
  if (!is_nonnegative(r)) throw InputError(std::string("--") + what + " must be nonnegative");
  return normalize_routing_vector(g, std::move(r));
}

void require_strongly_connected(const DirectedMultigraph& g) {
  if (!is_strongly_connected(g)) throw InputError("this command needs a strongly connected graph");
}

int cmd_period(const Options& opt, std::ostream& out) {
  const auto [inst, ribbon] = load(opt);
  const auto basis = period_basis(inst.graph);
  CountVector combined = zeros(inst.graph.vertex_count());
  for (const auto& sp : basis.sinks) combined = add(combined, sp.vector);
  out << "p=" << join(combined) << " per=" << basis.period_length << '\n';
  for (std::size_t i = 0; i < basis.sinks.size(); ++i) {
    out << "sink_component=" << i << " vertices=" << render_set(basis.sinks[i].vertices)
        << " p=" << join(basis.sinks[i].vector) << " routing_period=" << join(basis.sinks[i].routing_vector) << '\n';
  }
  return kExitOk;
}

int cmd_scc(const Options& opt, std::ostream& out) {
  const auto [inst, ribbon] = load(opt);
  const auto scc = scc_decompose(inst.graph);
  out << "components=" << scc.components.size() << " strongly_connected=" << (scc.components.size() == 1)
      << " eulerian=" << is_eulerian(inst.graph) << '\n';
  for (std::size_t i = 0; i < scc.components.size(); ++i) {
    const auto& c = scc.components[i];
    out << "component=" << i << " vertices=" << render_set(c.vertices) << " sink=" << c.is_sink
        << " trivial=" << c.is_trivial << '\n';
  }
  return kExitOk;
}

int cmd_chip_reach(const Options& opt, std::ostream& out) {
  const auto [inst, ribbon] = load(opt);
  const auto verdict = reach_chip(inst.graph, chips_of(inst, opt.from), chips_of(inst, opt.to), opt.budget());
  out << "decision=" << to_string(verdict.decision);
  if (verdict.decision == Decision::Unknown) {
    out << " reason=budget-exceeded\n";
    return kExitBudget;
  }
  if (verdict.decision == Decision::No) out << " reason=" << to_string(verdict.reason);
  if (verdict.firing_vector) out << " f=" << join(*verdict.firing_vector);
  if (opt.trace && verdict.trace) out << " trace=" << render_batches(verdict.trace->batches);
  out << '\n';
  return kExitOk;
}

int cmd_chip_recurrent(const Options& opt, std::ostream& out) {
  const auto [inst, ribbon] = load(opt);
  require_strongly_connected(inst.graph);
  const ChipConfig x = chips_of(inst, opt.from);
  const bool bounded = is_recurrent(inst.graph, x, opt.budget());
  const bool via_reach = is_recurrent_via_reach(inst.graph, x, opt.budget());
  out << "recurrent=" << bounded << " bounded_game=" << bounded << " via_reach=" << via_reach << '\n';
  return kExitOk;
}

int cmd_chip_halting(const Options& opt, std::ostream& out) {
  const auto [inst, ribbon] = load(opt);
  require_strongly_connected(inst.graph);
  const ChipConfig x = chips_of(inst, opt.from);
  const auto verdict = halts(inst.graph, x, opt.budget());
  if (const auto* h = std::get_if<Halts>(&verdict)) {
    out << "verdict=HALTS final=" << join(h->final_config) << " f=" << join(h->firing_vector) << '\n';
    return kExitOk;
  }
  if (const auto* nh = std::get_if<NonHalting>(&verdict)) {
    const bool valid = verify_nonhalting_certificate(inst.graph, x, nh->certificate, opt.budget());
    out << "verdict=NONHALTING certificate=" << join(nh->certificate) << " f=" << join(nh->firing_to_certificate)
        << " cycle=" << join(nh->cycle_firing_vector) << " certificate_valid=" << valid << '\n';
    return kExitOk;
  }
  out << "verdict=UNKNOWN reason=" << std::get<HaltingBudgetExceeded>(verdict).detail << '\n';
  return kExitBudget;
}

int cmd_lin_equiv(const Options& opt, std::ostream& out) {
  const auto [inst, ribbon] = load(opt);
  require_strongly_connected(inst.graph);
  const auto f = lin_equiv(inst.graph, chips_of(inst, opt.from), chips_of(inst, opt.to));
  out << "equivalent=" << f.has_value();
  if (f) out << " f=" << join(*f);
  out << '\n';
  return kExitOk;
}

int cmd_rotor_route(const Options& opt, std::ostream& out) {
  const auto [inst, ribbon] = load(opt);
  const auto cfg = chip_rotor_of(inst, ribbon, opt.from);
  const CountVector r = vector_option(opt, inst.graph, "r");
  const auto end = pi_r(inst.graph, ribbon, cfg, r);
  out << "chips=" << join(end.chips) << " rotors=" << render_rotors(inst.graph, end.rotors) << '\n';
  return kExitOk;
}

int cmd_rotor_odom(const Options& opt, std::ostream& out) {
  const auto [inst, ribbon] = load(opt);
  const auto cfg = chip_rotor_of(inst, ribbon, opt.from);
  const CountVector r = vector_option(opt, inst.graph, "r");
  const auto game = bounded_rotor_game(inst.graph, ribbon, cfg, r, opt.budget());
  out << "odometer=" << join(game.odometer) << " chips=" << join(game.final_config.chips)
      << " rotors=" << render_rotors(inst.graph, game.final_config.rotors) << " equals_bound=" << (game.odometer == r)
      << " formula=" << odometer_equals_bound(inst.graph, ribbon, cfg, r);
  if (opt.trace) out << " trace=" << render_batches(game.trace.batches);
  out << '\n';
  return kExitOk;
}

int cmd_rotor_unconstrained(const Options& opt, std::ostream& out) {
  const auto [inst, ribbon] = load(opt);
  const auto r = unconstrained_reach(inst.graph, ribbon, chip_rotor_of(inst, ribbon, opt.from),
                                     chip_rotor_of(inst, ribbon, opt.to));
  out << "reachable=" << r.has_value();
  if (r) out << " r=" << join(*r);
  out << '\n';
  return kExitOk;
}

int cmd_rotor_reach(const Options& opt, std::ostream& out) {
  const auto [inst, ribbon] = load(opt);
  const auto verdict = reach_rotor(inst.graph, ribbon, chip_rotor_of(inst, ribbon, opt.from),
                                   chip_rotor_of(inst, ribbon, opt.to), opt.budget(), opt.trace);
  out << "decision=" << to_string(verdict.decision);
  if (verdict.decision == Decision::No) out << " reason=" << to_string(verdict.reason);
  if (verdict.r) {
    out << " r=" << join(*verdict.r) << " S1=" << render_set(verdict.sets.s1) << " T=" << render_set(verdict.sets.t)
        << " S2=" << render_set(verdict.sets.s2);
  }
  if (opt.trace && verdict.decision == Decision::Yes)
    out << " trace=" << (verdict.trace ? render_batches(verdict.trace->batches) : std::string("omitted"));
  out << '\n';
  return kExitOk;
}

int cmd_oracle_check(const Options& opt, std::ostream& out) {
  if (opt.max_vertices < 1 || opt.max_vertices > 6) throw InputError("--max-vertices must be between 1 and 6");
  oracle::SamplerParams params;
  params.max_vertices = opt.max_vertices;
  const oracle::Limits limits{opt.budget_states};
  bool failed = false;
  auto report = [&](const char* kind, const CrossCheckStats& s) {
    out << "kind=" << kind << " checked=" << s.checked << " agree=" << s.agreements << " positive=" << s.positive
        << " disagreements=" << s.disagreements << " oracle_budget_exceeded=" << s.oracle_budget_exceeded
        << " engine_unknown=" << s.engine_unknown << '\n';
    for (const auto& f : s.first_failures) out << "failure=\"" << f << "\"\n";
    failed = failed || s.disagreements > 0;
  };
  const bool all = opt.kind == "all";
  if (!all && opt.kind != "rotor" && opt.kind != "chip" && opt.kind != "recurrence")
    throw InputError("--kind must be one of rotor, chip, recurrence, all");
  if (all || opt.kind == "rotor") report("rotor", crosscheck_rotor_reach(opt.seed, opt.count, params, limits));
  if (all || opt.kind == "chip") report("chip", crosscheck_chip_reach(opt.seed, opt.count, params, limits));
  if (all || opt.kind == "recurrence")
    report("recurrence", crosscheck_recurrence(opt.seed, opt.count, params, limits));
  return failed ? kExitFailure : kExitOk;
}

int cmd_gen(const Options& opt, std::ostream& out) {
  GenParams params;
  try {
    params.family = parse_family(opt.family);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  params.size = opt.size;
  params.seed = opt.seed;
  params.magnitude_exponent = opt.magnitude;
  out << serialize_instance(gen_instance(params));
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  struct FlagsGuard {
    std::ostream& os;
    std::ios_base::fmtflags saved;
    ~FlagsGuard() { os.flags(saved); }
  } guard{out, out.flags()};
  out << std::boolalpha;
  Options opt;
  CLI::App app{"Reachability, recurrence and halting for chip-firing and rotor-routing", "chiprotor"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget-steps", opt.budget_steps, "Maximum batched moves per simulated game");
  app.add_option("--budget-states", opt.budget_states, "Maximum stored configurations");
  app.add_flag("--trace", opt.trace, "Print witness traces");
  app.add_option("--seed", opt.seed, "Random seed for gen and oracle-check");

  auto with_instance = [&](CLI::App* sub) {
    sub->add_option("instance", opt.instance_path, "Instance file ('-' for stdin)")->required();
    return sub;
  };
  auto with_pair = [&](CLI::App* sub) {
    with_instance(sub);
    sub->add_option("--from", opt.from, "Source config name")->capture_default_str();
    sub->add_option("--to", opt.to, "Target config name")->capture_default_str();
    return sub;
  };
  auto with_single = [&](CLI::App* sub) {
    with_instance(sub);
    sub->add_option("--from", opt.from, "Config name")->capture_default_str();
    return sub;
  };

  using Handler = int (*)(const Options&, std::ostream&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  commands.emplace_back(with_instance(app.add_subcommand("period", "Primitive period vectors and per(G)")), cmd_period);
  commands.emplace_back(with_instance(app.add_subcommand("scc", "Strongly connected components")), cmd_scc);
  commands.emplace_back(with_pair(app.add_subcommand("chip-reach", "Decide chip-firing reachability")), cmd_chip_reach);
  commands.emplace_back(with_single(app.add_subcommand("chip-recurrent", "Decide recurrence (two methods)")),
                        cmd_chip_recurrent);
  commands.emplace_back(with_single(app.add_subcommand("chip-halting", "Simulate to halting or a certificate")),
                        cmd_chip_halting);
  commands.emplace_back(with_pair(app.add_subcommand("lin-equiv", "Linear equivalence of chip configurations")),
                        cmd_lin_equiv);
  auto* route_cmd = with_single(app.add_subcommand("rotor-route", "Apply unconstrained routing by --r"));
  route_cmd->add_option("--r", opt.vector, "Routing vector, comma separated")->required();
  commands.emplace_back(route_cmd, cmd_rotor_route);
  auto* odom_cmd = with_single(app.add_subcommand("rotor-odom", "Simulate the r-bounded rotor game"));
  odom_cmd->add_option("--r", opt.vector, "Bound vector, comma separated")->required();
  commands.emplace_back(odom_cmd, cmd_rotor_odom);
  commands.emplace_back(with_pair(app.add_subcommand("rotor-unconstrained", "Routing-reduced r with pi_r(from) = to")),
                        cmd_rotor_unconstrained);
  commands.emplace_back(with_pair(app.add_subcommand("rotor-reach", "Decide rotor-routing reachability")),
                        cmd_rotor_reach);
  auto* check_cmd = app.add_subcommand("oracle-check", "Compare engines with brute-force search");
  check_cmd->add_option("--count", opt.count, "Instances per kind")->capture_default_str();
  check_cmd->add_option("--kind", opt.kind, "rotor, chip, recurrence or all")->capture_default_str();
  check_cmd->add_option("--max-vertices", opt.max_vertices, "Largest instance size")->capture_default_str();
  commands.emplace_back(check_cmd, cmd_oracle_check);
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--family", opt.family, "eulerian, strongly-connected, heavy-multiplicity or random")
      ->capture_default_str();
  gen_cmd->add_option("--size", opt.size, "Vertex count")->capture_default_str();
  gen_cmd->add_option("--k", opt.magnitude, "Heavy multiplicities are about 10^k")->capture_default_str();
  commands.emplace_back(gen_cmd, cmd_gen);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    for (const auto& [sub, handler] : commands)
      if (sub->parsed()) return handler(opt, out);
  } catch (const BudgetExceeded& e) {
    out << "decision=UNKNOWN reason=budget-exceeded\n";
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace chiprotor
