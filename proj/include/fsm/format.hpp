#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fsm/core.hpp"

namespace fsm {

using Machine = std::variant<Recognizer, MooreMachine>;

struct NamedMachine {
  std::string name;
  Machine machine;
};

/// Ordered machine definitions with unique names.
class MachineDocument {
public:
  /// Throws ErrorCode::InvalidMachine on a duplicate name.
  void add(NamedMachine machine);

  const std::vector<NamedMachine>& machines() const noexcept { return machines_; }
  std::size_t size() const noexcept { return machines_.size(); }
  const NamedMachine* find(std::string_view name) const noexcept;

private:
  std::vector<NamedMachine> machines_;
};

/// Reads the `.fsm` machine description language:
///
///   machine NAME {
///     alphabet: a, b;          # symbols
///     states: s0, s1;
///     initial: s0;
///     accepting: s1;           # recognizer form, or
///     output s0 = {a};         # Moore form: {set}, true/false or "token"
///     s0 - a -> s1;
///   }
///
/// Names that are not plain identifiers are written in double quotes.
/// Throws ParseError carrying the line and column of the offending token.
MachineDocument parse(std::string_view text);

/// Canonical text: declarations in a fixed order, names sorted, one
/// declaration per line. Byte-identical for equal machines.
std::string serialize(const MachineDocument& doc);
std::string serialize(const NamedMachine& machine);

/// Graphviz digraph: one node per state plus an invisible start node.
std::string to_dot(const NamedMachine& machine);

} // namespace fsm
