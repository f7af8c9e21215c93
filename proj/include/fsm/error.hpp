#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsm {

enum class ErrorCode {
  InvalidMachine,
  AlphabetMismatch,
  UnknownState,
  DeterminismRequired,
  OutputKindMismatch,
  ConnectionRange,
  Parse,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

enum class ParseErrorKind {
  Lexical,
  Syntax,
  UnknownState,
  UnknownSymbol,
  DuplicateInitial,
  DuplicateMachine,
  MixedDeclarations,
  MissingDeclaration,
  InvalidOutput,
};

/// Parse failure with a 1-based source position pointing at or before the
/// offending token.
class ParseError : public Error {
public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
             const std::string& message);

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

} // namespace fsm
