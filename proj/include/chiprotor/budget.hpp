#pragma once

#include <cstdint>
#include <stdexcept>

namespace chiprotor {

/// Caps for simulations whose length can be exponential in the input size.
/// `max_steps` counts batched moves; `max_states` counts stored configurations.
struct Budget {
  std::uint64_t max_steps = 1'000'000;
  std::uint64_t max_states = 1'000'000;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Decision { Yes, No, Unknown };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::Yes: return "YES";
    case Decision::No: return "NO";
    case Decision::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

}  // namespace chiprotor
