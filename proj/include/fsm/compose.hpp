#pragma once

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fsm/core.hpp"

namespace fsm {

/// Chooses a component's local input from the global input and the current
/// outputs of all components; std::nullopt leaves the component idle.
using Connection = std::function<std::optional<std::string>(
    const std::string& global_input, std::span<const OutputValue> outputs)>;

struct ProductSpec {
  std::vector<MooreMachine> components;
  std::vector<std::string> global_alphabet;
  /// One per component.
  std::vector<Connection> connections;
};

struct Product {
  /// Token-valued outputs `(o1,o2,...)`; states named `(s1,s2,...)`.
  MooreMachine machine;
  /// Component states of each product state.
  std::vector<std::vector<StateIndex>> tuples;
};

/// General product over the reachable state tuples. A component directed to
/// an input it cannot take blocks the whole global transition; nondeterministic
/// components multiply successors. Throws ErrorCode::ConnectionRange when a
/// connection names a symbol outside its component's alphabet.
Product general_product(const ProductSpec& spec);

/// Single component fed the global input unchanged.
ProductSpec passthrough_spec(MooreMachine component);

/// Process wired to make_experimenter(presses): on global input g both step
/// iff the experimenter's output is {g}, otherwise both idle.
ProductSpec experimenter_spec(MooreMachine process, const Word& presses);

/// Every component sharing the global label steps, the rest idle.
ProductSpec sync_spec(std::vector<MooreMachine> components);

struct ExperimentOutcome {
  bool blocked = false;
  /// Presses completed before the locked one; zero for success.
  std::size_t presses_completed = 0;

  static ExperimentOutcome success() { return {false, 0}; }
  static ExperimentOutcome blocked_after(std::size_t presses) { return {true, presses}; }

  /// Success sorts first, then Blocked(k) by k.
  friend auto operator<=>(const ExperimentOutcome&, const ExperimentOutcome&) = default;
};

/// `Success` or `Blocked(k)`.
std::string to_string(const ExperimentOutcome& outcome);

/// Presses the buttons in order over every nondeterministic resolution. A
/// press succeeds when the button is in the state's output and the state has
/// a transition for it. Requires symbol-set outputs.
std::set<ExperimentOutcome> experiment(const MooreMachine& process, const Word& presses);

/// Linear machine e0..ek stepping through the presses; output at e_i is the
/// next wanted press, empty at the end.
MooreMachine make_experimenter(const Word& presses, std::vector<std::string> alphabet);

/// Outcome set read off the product built from experimenter_spec.
std::set<ExperimentOutcome> experiment_via_product(const MooreMachine& process,
                                                   const Word& presses);

} // namespace fsm
