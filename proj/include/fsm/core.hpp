#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "fsm/error.hpp"

namespace fsm {

using StateIndex = std::uint32_t;
using SymbolIndex = std::uint32_t;

/// A sequence of symbol names.
using Word = std::vector<std::string>;

struct Transition {
  StateIndex source;
  SymbolIndex label;
  StateIndex target;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

struct NamedTransition {
  std::string source;
  std::string label;
  std::string target;
};

/// Symbol names: ASCII alphanumerics plus `_` and `'`.
bool is_identifier(std::string_view name) noexcept;

/// State and machine names: printable ASCII without whitespace or `"`.
/// Constructed states (subsets, blocks, tuples) use braces and commas, so the
/// rule is wider than for symbols.
bool is_valid_state_name(std::string_view name) noexcept;

/// States, a sorted alphabet, an initial state and a transition relation.
/// Immutable once built. States keep the order they were given in; the
/// alphabet is always sorted by name, so symbol index order is name order.
class TransitionSystem {
public:
  /// Index-based construction. `alphabet` must be sorted and duplicate free;
  /// transitions may be given in any order and are deduplicated.
  TransitionSystem(std::vector<std::string> alphabet,
                   std::vector<std::string> states, StateIndex initial,
                   std::vector<Transition> transitions);

  /// Name-based construction; the alphabet is sorted and deduplicated.
  static TransitionSystem from_names(std::vector<std::string> alphabet,
                                     std::vector<std::string> states,
                                     std::string_view initial,
                                     std::span<const NamedTransition> transitions);

  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::vector<std::string>& states() const noexcept { return states_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  std::size_t symbol_count() const noexcept { return alphabet_.size(); }
  StateIndex initial() const noexcept { return initial_; }

  /// Sorted by (source, label, target).
  std::span<const Transition> transitions() const noexcept { return transitions_; }

  std::span<const StateIndex> successors(StateIndex state, SymbolIndex symbol) const;

  const std::string& state_name(StateIndex state) const { return states_.at(state); }
  const std::string& symbol_name(SymbolIndex symbol) const { return alphabet_.at(symbol); }

  std::optional<StateIndex> find_state(std::string_view name) const;
  std::optional<SymbolIndex> find_symbol(std::string_view name) const;

  /// Throws ErrorCode::UnknownState.
  StateIndex state_index(std::string_view name) const;
  /// Throws ErrorCode::AlphabetMismatch.
  SymbolIndex symbol_index(std::string_view name) const;

  /// At most one successor per state and symbol.
  bool is_deterministic() const noexcept;
  /// At least one successor per state and symbol.
  bool is_complete() const noexcept;

private:
  std::vector<std::string> alphabet_;
  std::vector<std::string> states_;
  StateIndex initial_;
  std::vector<Transition> transitions_;
  // CSR layout: successors of (s, x) are targets_[offsets_[s*k+x] .. offsets_[s*k+x+1]).
  std::vector<std::size_t> offsets_;
  std::vector<StateIndex> targets_;
  std::unordered_map<std::string, StateIndex> state_lookup_;
};

bool same_alphabet(const TransitionSystem& a, const TransitionSystem& b) noexcept;

/// Throws ErrorCode::AlphabetMismatch unless the alphabets are equal.
void require_same_alphabet(const TransitionSystem& a, const TransitionSystem& b);

class Recognizer {
public:
  Recognizer(TransitionSystem ts, std::vector<bool> accepting);
  Recognizer(TransitionSystem ts, std::span<const std::string> accepting);

  const TransitionSystem& ts() const noexcept { return ts_; }
  bool is_accepting(StateIndex state) const { return accepting_.at(state); }
  const std::vector<bool>& accepting() const noexcept { return accepting_; }

private:
  TransitionSystem ts_;
  std::vector<bool> accepting_;
};

using SymbolSet = std::set<std::string>;

struct Token {
  std::string text;

  friend auto operator<=>(const Token&, const Token&) = default;
};

/// Boolean, symbol-set or opaque token; one kind per machine.
using OutputValue = std::variant<bool, SymbolSet, Token>;

enum class OutputKind { Boolean = 0, SymbolSet = 1, Token = 2 };

OutputKind kind_of(const OutputValue& value) noexcept;
const char* to_string(OutputKind kind) noexcept;

/// `true`, `false`, `{a,b}` or the token text.
std::string render(const OutputValue& value);

/// Transition system with a total output map. The relation may be
/// nondeterministic.
class MooreMachine {
public:
  MooreMachine(TransitionSystem ts, OutputKind kind, std::vector<OutputValue> outputs);

  const TransitionSystem& ts() const noexcept { return ts_; }
  OutputKind kind() const noexcept { return kind_; }
  const OutputValue& output(StateIndex state) const { return outputs_.at(state); }
  const std::vector<OutputValue>& outputs() const noexcept { return outputs_; }

private:
  TransitionSystem ts_;
  OutputKind kind_;
  std::vector<OutputValue> outputs_;
};

/// States reachable from the initial state, ascending by index.
std::vector<StateIndex> reachable(const TransitionSystem& ts);

/// Restriction to the reachable states, keeping their relative order.
Recognizer trim(const Recognizer& r);
MooreMachine trim(const MooreMachine& m);

/// True iff some run of `word` from the initial state ends accepting.
/// Throws ErrorCode::AlphabetMismatch for symbols outside the alphabet.
bool accepts(const Recognizer& r, const Word& word);

/// Subset construction over the reachable subsets. Subset states are named
/// `{m1,m2,...}` with member names sorted.
Recognizer determinize(const Recognizer& r);

/// Adds a fresh non-accepting sink (`__sink`, primed until fresh) when some
/// state/symbol pair has no successor. Throws ErrorCode::DeterminismRequired.
Recognizer complete(const Recognizer& r);

/// Minimal complete DFA by Hopcroft partition refinement; the input is
/// completed and trimmed first. States are named `{...}` after the sorted
/// names of the merged states. Throws ErrorCode::DeterminismRequired.
Recognizer minimize(const Recognizer& r);

struct LanguageVerdict {
  bool equivalent = true;
  /// Shortest distinguishing word, ties broken lexicographically by symbol
  /// name. Empty when equivalent.
  Word counterexample;
};

/// Throws ErrorCode::AlphabetMismatch.
LanguageVerdict language_equivalent(const Recognizer& a, const Recognizer& b);

/// Isomorphism over all states: a bijection preserving initial state,
/// transitions and accepting set (or output values). Names are ignored.
bool isomorphic(const Recognizer& a, const Recognizer& b);
bool isomorphic(const MooreMachine& a, const MooreMachine& b);

/// `{a,b,c}` with the given names sorted.
std::string brace_name(std::vector<std::string> members);

} // namespace fsm
