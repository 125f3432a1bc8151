#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chiprotor/graph.hpp"
#include "chiprotor/rotor.hpp"

namespace chiprotor {

/// Syntax or validation failure in an instance file; line() is 1-based, or 0
/// when the problem is not tied to a single line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct NamedConfig {
  std::optional<ChipConfig> chips;
  std::optional<RotorConfig> rotors;
  friend bool operator==(const NamedConfig&, const NamedConfig&) = default;
};

/// Line-oriented instance document:
///
///   graph <n>
///   edge <u> <v> <mult>
///   ribbon <v> : <head>:<count> ...
///   config <name>
///   chips <c0> ... <c_{n-1}>
///   rotor <v> <position>
///
/// `#` starts a comment. chips/rotor lines before the first `config` line
/// belong to the config named "default". Unlisted rotors sit at position 0.
struct Instance {
  DirectedMultigraph graph{1};
  std::optional<RibbonStructure> ribbon;
  std::vector<std::pair<std::string, NamedConfig>> configs;

  /// The explicit ribbon, or the ascending-head default.
  RibbonStructure effective_ribbon() const;
  const NamedConfig* find(const std::string& name) const;
  NamedConfig& config(const std::string& name);  // created on first use

  friend bool operator==(const Instance&, const Instance&) = default;
};

Instance parse_instance(std::string_view text);

/// Canonical form: edges sorted, ribbon runs merged, every non-sink rotor
/// listed. parse_instance(serialize_instance(i)) == i.
std::string serialize_instance(const Instance& instance);

enum class InstanceFamily { Eulerian, StronglyConnected, HeavyMultiplicity, Random };

InstanceFamily parse_family(std::string_view name);

struct GenParams {
  InstanceFamily family = InstanceFamily::Random;
  int size = 4;                 // vertex count
  std::uint64_t seed = 0;
  int magnitude_exponent = 18;  // heavy-multiplicity edges are about 10^k
};

/// Deterministic random instance with a random ribbon and one config named
/// "source". The Eulerian family is a union of directed cycles over a
/// Hamiltonian cycle; the strongly-connected and heavy families superimpose
/// a directed cycle on random edges.
Instance gen_instance(const GenParams& params);

}  // namespace chiprotor
