#include "fsm/format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <tuple>

namespace fsm {

void MachineDocument::add(NamedMachine machine) {
  if (find(machine.name))
    throw Error(ErrorCode::InvalidMachine, "duplicate machine '" + machine.name + "'");
  machines_.push_back(std::move(machine));
}

const NamedMachine* MachineDocument::find(std::string_view name) const noexcept {
  for (const auto& m : machines_)
    if (m.name == name) return &m;
  return nullptr;
}

namespace {

enum class TokenType { Ident, Quoted, Punct, End };

struct Lexeme {
  TokenType type;
  std::string text;
  std::size_t line;
  std::size_t column;

  bool is_name() const { return type == TokenType::Ident || type == TokenType::Quoted; }
  bool is(std::string_view punct) const { return type == TokenType::Punct && text == punct; }
  bool is_word(std::string_view word) const { return type == TokenType::Ident && text == word; }
};

bool identifier_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Lexeme> tokenize(std::string_view text) {
  std::vector<Lexeme> out;
  std::size_t line = 1, column = 1, i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t j = 0; j < count; ++j, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (identifier_char(c)) {
      std::size_t j = i;
      while (j < text.size() && identifier_char(text[j])) ++j;
      out.push_back({TokenType::Ident, std::string(text.substr(i, j - i)), line, column});
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"')
        throw ParseError(ParseErrorKind::Lexical, line, column, "unterminated quoted name");
      std::string body(text.substr(i + 1, j - i - 1));
      if (!is_valid_state_name(body))
        throw ParseError(ParseErrorKind::Lexical, line, column,
                         "quoted name must be nonempty printable ASCII without spaces");
      out.push_back({TokenType::Quoted, std::move(body), line, column});
      advance(j + 1 - i);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({TokenType::Punct, "->", line, column});
      advance(2);
    } else if (std::string_view("{};,:=-").find(c) != std::string_view::npos) {
      out.push_back({TokenType::Punct, std::string(1, c), line, column});
      advance(1);
    } else {
      throw ParseError(ParseErrorKind::Lexical, line, column,
                       std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({TokenType::End, "", line, column});
  return out;
}

struct NameRef {
  std::string name;
  std::size_t line;
  std::size_t column;
};

struct OutputDecl {
  NameRef state;
  OutputValue value;
  std::vector<NameRef> symbols; // members of a set value
};

struct TransitionDecl {
  NameRef source;
  NameRef label;
  NameRef target;
};

class Parser {
public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  MachineDocument document() {
    MachineDocument doc;
    if (peek().type == TokenType::End)
      fail(ParseErrorKind::Syntax, peek(), "expected 'machine'");
    while (peek().type != TokenType::End) {
      const Lexeme& start = peek();
      NamedMachine m = machine();
      if (doc.find(m.name))
        fail(ParseErrorKind::DuplicateMachine, start, "duplicate machine '" + m.name + "'");
      doc.add(std::move(m));
    }
    return doc;
  }

private:
  [[noreturn]] static void fail(ParseErrorKind kind, std::size_t line, std::size_t column,
                                const std::string& message) {
    throw ParseError(kind, line, column, message);
  }
  [[noreturn]] static void fail(ParseErrorKind kind, const Lexeme& at, const std::string& message) {
    fail(kind, at.line, at.column, message);
  }
  [[noreturn]] static void fail(ParseErrorKind kind, const NameRef& at, const std::string& message) {
    fail(kind, at.line, at.column, message);
  }

  const Lexeme& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Lexeme& next() {
    const Lexeme& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  void expect(std::string_view punct) {
    if (!peek().is(punct)) fail(ParseErrorKind::Syntax, peek(), "expected '" + std::string(punct) + "'");
    next();
  }
  NameRef name() {
    const Lexeme& t = peek();
    if (!t.is_name()) fail(ParseErrorKind::Syntax, t, "expected a name");
    next();
    return {t.text, t.line, t.column};
  }
  NameRef symbol() {
    const Lexeme& t = peek();
    NameRef ref = name();
    if (!is_identifier(ref.name))
      fail(ParseErrorKind::Lexical, t, "symbol '" + ref.name + "' is not a plain identifier");
    return ref;
  }
  std::vector<NameRef> name_list(bool symbols) {
    std::vector<NameRef> out;
    if (peek().is(";")) {
      next();
      return out;
    }
    out.push_back(symbols ? symbol() : name());
    while (peek().is(",")) {
      next();
      out.push_back(symbols ? symbol() : name());
    }
    expect(";");
    return out;
  }

  NamedMachine machine() {
    if (!peek().is_word("machine")) fail(ParseErrorKind::Syntax, peek(), "expected 'machine'");
    next();
    const NameRef machine_name = name();
    expect("{");

    std::optional<std::vector<NameRef>> alphabet, states;
    std::optional<NameRef> initial;
    std::optional<Lexeme> accepting_at, output_at;
    std::vector<NameRef> accepting;
    std::vector<OutputDecl> outputs;
    std::vector<TransitionDecl> transitions;

    while (!peek().is("}")) {
      const Lexeme& head = peek();
      if (head.type == TokenType::End) fail(ParseErrorKind::Syntax, head, "expected '}'");
      if (!head.is_name()) fail(ParseErrorKind::Syntax, head, "expected a declaration");
      if (head.type == TokenType::Ident && peek(1).is(":")) {
        const std::string keyword = head.text;
        next();
        next();
        if (keyword == "alphabet") {
          auto list = name_list(true);
          if (!alphabet) alphabet.emplace();
          alphabet->insert(alphabet->end(), list.begin(), list.end());
        } else if (keyword == "states") {
          auto list = name_list(false);
          if (!states) states.emplace();
          states->insert(states->end(), list.begin(), list.end());
        } else if (keyword == "initial") {
          if (initial) fail(ParseErrorKind::DuplicateInitial, head, "initial state declared twice");
          initial = name();
          expect(";");
        } else if (keyword == "accepting") {
          if (output_at)
            fail(ParseErrorKind::MixedDeclarations, head,
                 "accepting declaration in a machine with output declarations");
          if (!accepting_at) accepting_at = head;
          auto list = name_list(false);
          accepting.insert(accepting.end(), list.begin(), list.end());
        } else {
          fail(ParseErrorKind::Syntax, head, "unknown declaration '" + keyword + "'");
        }
      } else if (head.is_word("output") && peek(1).is_name()) {
        if (accepting_at)
          fail(ParseErrorKind::MixedDeclarations, head,
               "output declaration in a machine with accepting declarations");
        if (!output_at) output_at = head;
        next();
        outputs.push_back(output_decl());
      } else if (peek(1).is("-")) {
        TransitionDecl t;
        t.source = name();
        expect("-");
        t.label = symbol();
        expect("->");
        t.target = name();
        expect(";");
        transitions.push_back(std::move(t));
      } else {
        fail(ParseErrorKind::Syntax, head, "expected a declaration");
      }
    }
    const Lexeme close = next();

    if (!alphabet) fail(ParseErrorKind::MissingDeclaration, close, "missing 'alphabet' declaration");
    if (!states) fail(ParseErrorKind::MissingDeclaration, close, "missing 'states' declaration");
    if (!initial) fail(ParseErrorKind::MissingDeclaration, close, "missing 'initial' declaration");

    std::vector<std::string> alphabet_names, state_names;
    std::set<std::string> symbol_set, state_set;
    for (const auto& s : *alphabet)
      if (symbol_set.insert(s.name).second) alphabet_names.push_back(s.name);
    for (const auto& s : *states)
      if (state_set.insert(s.name).second) state_names.push_back(s.name);

    auto check_state = [&](const NameRef& ref) {
      if (!state_set.contains(ref.name))
        fail(ParseErrorKind::UnknownState, ref, "unknown state '" + ref.name + "'");
    };
    auto check_symbol = [&](const NameRef& ref) {
      if (!symbol_set.contains(ref.name))
        fail(ParseErrorKind::UnknownSymbol, ref, "unknown symbol '" + ref.name + "'");
    };

    check_state(*initial);
    std::vector<NamedTransition> named;
    for (const auto& t : transitions) {
      check_state(t.source);
      check_symbol(t.label);
      check_state(t.target);
      named.push_back({t.source.name, t.label.name, t.target.name});
    }
    TransitionSystem ts =
        TransitionSystem::from_names(alphabet_names, state_names, initial->name, named);

    if (!output_at) {
      std::vector<std::string> accepted;
      for (const auto& a : accepting) {
        check_state(a);
        accepted.push_back(a.name);
      }
      return {machine_name.name, Recognizer(std::move(ts), accepted)};
    }

    std::vector<std::optional<OutputValue>> by_state(ts.state_count());
    const OutputKind kind = kind_of(outputs.front().value);
    for (const auto& decl : outputs) {
      check_state(decl.state);
      for (const auto& sym : decl.symbols) check_symbol(sym);
      if (kind_of(decl.value) != kind)
        fail(ParseErrorKind::InvalidOutput, decl.state, "output kinds differ within a machine");
      auto& slot = by_state[ts.state_index(decl.state.name)];
      if (slot)
        fail(ParseErrorKind::InvalidOutput, decl.state,
             "output of '" + decl.state.name + "' declared twice");
      slot = decl.value;
    }
    std::vector<OutputValue> values;
    for (StateIndex s = 0; s < ts.state_count(); ++s) {
      if (!by_state[s])
        fail(ParseErrorKind::MissingDeclaration, close,
             "missing output for state '" + ts.state_name(s) + "'");
      values.push_back(*by_state[s]);
    }
    return {machine_name.name, MooreMachine(std::move(ts), kind, std::move(values))};
  }

  OutputDecl output_decl() {
    OutputDecl decl{name(), false, {}};
    expect("=");
    const Lexeme& v = peek();
    if (v.is_word("true") || v.is_word("false")) {
      decl.value = v.text == "true";
      next();
    } else if (v.type == TokenType::Quoted) {
      decl.value = Token{v.text};
      next();
    } else if (v.is("{")) {
      next();
      SymbolSet set;
      if (!peek().is("}")) {
        decl.symbols.push_back(symbol());
        while (peek().is(",")) {
          next();
          decl.symbols.push_back(symbol());
        }
      }
      expect("}");
      for (const auto& s : decl.symbols) set.insert(s.name);
      decl.value = std::move(set);
    } else {
      fail(ParseErrorKind::Syntax, v, "expected true, false, a symbol set or a quoted token");
    }
    expect(";");
    return decl;
  }

  std::vector<Lexeme> tokens_;
  std::size_t pos_ = 0;
};

std::string quote_name(const std::string& name) {
  return is_identifier(name) ? name : "\"" + name + "\"";
}

std::string join_sorted(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += quote_name(names[i]);
  }
  return out;
}

std::string output_text(const OutputValue& value) {
  if (const Token* t = std::get_if<Token>(&value)) return "\"" + t->text + "\"";
  if (const auto* set = std::get_if<SymbolSet>(&value)) {
    std::string out = "{";
    bool first = true;
    for (const auto& s : *set) {
      if (!first) out += ", ";
      out += s;
      first = false;
    }
    return out + "}";
  }
  return render(value);
}

const TransitionSystem& system_of(const Machine& m) {
  return std::visit([](const auto& x) -> const TransitionSystem& { return x.ts(); }, m);
}

std::vector<std::tuple<std::string, std::string, std::string>> sorted_transitions(
    const TransitionSystem& ts) {
  std::vector<std::tuple<std::string, std::string, std::string>> out;
  for (const auto& t : ts.transitions())
    out.emplace_back(ts.state_name(t.source), ts.symbol_name(t.label), ts.state_name(t.target));
  std::sort(out.begin(), out.end());
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\' || c == '"') out += '\\';
    out += c;
  }
  return out;
}

} // namespace

MachineDocument parse(std::string_view text) { return Parser(text).document(); }

std::string serialize(const NamedMachine& machine) {
  const TransitionSystem& ts = system_of(machine.machine);
  std::string out = "machine " + quote_name(machine.name) + " {\n";
  out += "  alphabet: " + join_sorted(ts.alphabet()) + ";\n";
  out += "  states: " + join_sorted(ts.states()) + ";\n";
  out += "  initial: " + quote_name(ts.state_name(ts.initial())) + ";\n";

  if (const auto* r = std::get_if<Recognizer>(&machine.machine)) {
    std::vector<std::string> accepting;
    for (StateIndex s = 0; s < ts.state_count(); ++s)
      if (r->is_accepting(s)) accepting.push_back(ts.state_name(s));
    out += "  accepting: " + join_sorted(std::move(accepting)) + ";\n";
  } else {
    const auto& m = std::get<MooreMachine>(machine.machine);
    std::vector<std::pair<std::string, std::string>> lines;
    for (StateIndex s = 0; s < ts.state_count(); ++s)
      lines.emplace_back(ts.state_name(s), output_text(m.output(s)));
    std::sort(lines.begin(), lines.end());
    for (const auto& [state, value] : lines)
      out += "  output " + quote_name(state) + " = " + value + ";\n";
  }
  for (const auto& [source, label, target] : sorted_transitions(ts))
    out += "  " + quote_name(source) + " - " + label + " -> " + quote_name(target) + ";\n";
  return out + "}\n";
}

std::string serialize(const MachineDocument& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (i) out += "\n";
    out += serialize(doc.machines()[i]);
  }
  return out;
}

std::string to_dot(const NamedMachine& machine) {
  const TransitionSystem& ts = system_of(machine.machine);
  const auto* recognizer = std::get_if<Recognizer>(&machine.machine);
  const auto* moore = std::get_if<MooreMachine>(&machine.machine);

  std::string start = "__start";
  while (ts.find_state(start)) start += '\'';

  std::vector<StateIndex> order(ts.state_count());
  for (StateIndex s = 0; s < order.size(); ++s) order[s] = s;
  std::sort(order.begin(), order.end(),
            [&](StateIndex a, StateIndex b) { return ts.state_name(a) < ts.state_name(b); });

  std::string out = "digraph \"" + dot_escape(machine.name) + "\" {\n";
  out += "  rankdir=LR;\n";
  out += "  \"" + dot_escape(start) + "\" [shape=point, style=invis];\n";
  for (StateIndex s : order) {
    const std::string& name = ts.state_name(s);
    const bool double_circle = recognizer && recognizer->is_accepting(s);
    out += "  \"" + dot_escape(name) + "\" [shape=" +
           (double_circle ? "doublecircle" : "circle");
    if (moore)
      out += ", label=\"" + dot_escape(name) + "\\n" + dot_escape(render(moore->output(s))) + "\"";
    out += "];\n";
  }
  out += "  \"" + dot_escape(start) + "\" -> \"" + dot_escape(ts.state_name(ts.initial())) +
         "\";\n";
  for (const auto& [source, label, target] : sorted_transitions(ts))
    out += "  \"" + dot_escape(source) + "\" -> \"" + dot_escape(target) + "\" [label=\"" +
           label + "\"];\n";
  return out + "}\n";
}

} // namespace fsm
