#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fsm/core.hpp"

namespace fsm {

/// Uniform observable view: a recognizer is seen through its accept bit, a
/// Moore machine through its output map.
class ObservedSystem {
public:
  ObservedSystem(const Recognizer& r); // NOLINT(google-explicit-constructor)
  ObservedSystem(MooreMachine m);      // NOLINT(google-explicit-constructor)

  const MooreMachine& machine() const noexcept { return machine_; }
  const TransitionSystem& ts() const noexcept { return machine_.ts(); }
  OutputKind kind() const noexcept { return machine_.kind(); }
  const OutputValue& output(StateIndex s) const { return machine_.output(s); }

private:
  MooreMachine machine_;
};

/// Pairs (state of A, state of B), sorted.
struct SimulationWitness {
  std::vector<std::pair<StateIndex, StateIndex>> pairs;

  bool contains(StateIndex a, StateIndex b) const;
};

/// Largest output-respecting, step-closed relation from `a` into `b`.
/// Throws ErrorCode::AlphabetMismatch or ErrorCode::OutputKindMismatch.
SimulationWitness greatest_simulation(const ObservedSystem& a, const ObservedSystem& b);

struct CoverVerdict {
  bool covers = false;
  SimulationWitness witness;
  /// Reachable state of the covered machine with no partner at all, taking
  /// the one farthest from the initial state; the initial state when every
  /// reachable state has some partner. Empty when `covers`.
  std::optional<StateIndex> stuck_state;
};

/// Does `b` cover `a`: is the initial state of `a` simulated by that of `b`.
CoverVerdict covers(const ObservedSystem& b, const ObservedSystem& a);

bool covering_equivalent(const ObservedSystem& a, const ObservedSystem& b);

/// Stable partition of the disjoint union of two systems. Blocks are numbered
/// in order of their first member (all states of the first system, then the
/// second).
class BisimulationPartition {
public:
  BisimulationPartition(std::vector<std::size_t> block_of, std::size_t first_size);

  std::size_t block_count() const noexcept { return block_count_; }
  std::size_t block_of_first(StateIndex s) const { return block_of_.at(s); }
  std::size_t block_of_second(StateIndex s) const { return block_of_.at(first_size_ + s); }
  std::size_t first_size() const noexcept { return first_size_; }
  std::size_t second_size() const noexcept { return block_of_.size() - first_size_; }

  /// Members of each block as (side, state) with side 0 for the first system.
  std::vector<std::vector<std::pair<int, StateIndex>>> blocks() const;

private:
  std::vector<std::size_t> block_of_;
  std::size_t first_size_;
  std::size_t block_count_;
};

struct BisimulationVerdict {
  bool bisimilar = false;
  BisimulationPartition partition;
};

/// Partition refinement on the disjoint union, starting from output classes.
BisimulationVerdict bisimilar(const ObservedSystem& a, const ObservedSystem& b);

/// Bisimulation quotient; blocks are named `{...}` after their members.
MooreMachine quotient(const ObservedSystem& m);

} // namespace fsm
