#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fsm/core.hpp"

namespace fsm {

/// Immutable regular-expression tree; copies share structure.
class Regex {
public:
  enum class Kind { Empty, Epsilon, Literal, Concat, Union, Star };

  static Regex empty();
  static Regex epsilon();
  static Regex literal(std::string symbol);
  static Regex concat(Regex left, Regex right);
  static Regex alternation(Regex left, Regex right);
  static Regex star(Regex inner);

  Kind kind() const noexcept;
  /// Literal symbol; empty for other kinds.
  const std::string& symbol() const noexcept;
  const Regex& left() const;
  const Regex& right() const;
  const Regex& inner() const { return left(); }

  friend bool operator==(const Regex& a, const Regex& b);

private:
  struct Node;
  explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Simplifying constructors used by state elimination: they fold the
/// identities for the empty language and the empty word.
Regex simplified_concat(Regex left, Regex right);
Regex simplified_alternation(Regex left, Regex right);
Regex simplified_star(Regex inner);

/// Textual form. Single-character symbols are written bare, longer ones as
/// `<name>`; `@empty` and `@eps` denote the empty language and the empty
/// word; `|`, `*`, juxtaposition and parentheses as usual.
std::string to_string(const Regex& e);

/// Inverse of to_string. Throws ParseError.
Regex parse_regex(std::string_view text);

/// Thompson construction followed by epsilon elimination; states are named
/// `q0, q1, ...`. Throws ErrorCode::AlphabetMismatch for foreign literals.
Recognizer regex_to_nfa(const Regex& e, std::vector<std::string> alphabet);

/// State elimination, removing states in name order.
Regex nfa_to_regex(const Recognizer& r);

} // namespace fsm
