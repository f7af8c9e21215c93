#include "fsm/regex.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace fsm {

struct Regex::Node {
  Kind kind;
  std::string symbol;
  std::vector<Regex> children;
};

Regex Regex::empty() { return Regex(std::make_shared<const Node>(Node{Kind::Empty, {}, {}})); }

Regex Regex::epsilon() {
  return Regex(std::make_shared<const Node>(Node{Kind::Epsilon, {}, {}}));
}

Regex Regex::literal(std::string symbol) {
  if (!is_identifier(symbol))
    throw Error(ErrorCode::InvalidMachine, "invalid symbol name '" + symbol + "'");
  return Regex(std::make_shared<const Node>(Node{Kind::Literal, std::move(symbol), {}}));
}

Regex Regex::concat(Regex left, Regex right) {
  return Regex(std::make_shared<const Node>(
      Node{Kind::Concat, {}, {std::move(left), std::move(right)}}));
}

Regex Regex::alternation(Regex left, Regex right) {
  return Regex(std::make_shared<const Node>(
      Node{Kind::Union, {}, {std::move(left), std::move(right)}}));
}

Regex Regex::star(Regex inner) {
  return Regex(std::make_shared<const Node>(Node{Kind::Star, {}, {std::move(inner)}}));
}

Regex::Kind Regex::kind() const noexcept { return node_->kind; }
const std::string& Regex::symbol() const noexcept { return node_->symbol; }
const Regex& Regex::left() const { return node_->children.at(0); }
const Regex& Regex::right() const { return node_->children.at(1); }

bool operator==(const Regex& a, const Regex& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.symbol() != b.symbol()) return false;
  return a.node_->children == b.node_->children;
}

Regex simplified_concat(Regex left, Regex right) {
  if (left.kind() == Regex::Kind::Empty || right.kind() == Regex::Kind::Empty)
    return Regex::empty();
  if (left.kind() == Regex::Kind::Epsilon) return right;
  if (right.kind() == Regex::Kind::Epsilon) return left;
  return Regex::concat(std::move(left), std::move(right));
}

Regex simplified_alternation(Regex left, Regex right) {
  if (left.kind() == Regex::Kind::Empty) return right;
  if (right.kind() == Regex::Kind::Empty) return left;
  if (left == right) return left;
  return Regex::alternation(std::move(left), std::move(right));
}

Regex simplified_star(Regex inner) {
  switch (inner.kind()) {
  case Regex::Kind::Empty:
  case Regex::Kind::Epsilon: return Regex::epsilon();
  case Regex::Kind::Star: return inner;
  default: return Regex::star(std::move(inner));
  }
}

namespace {

// Binding strength: alternation < concatenation < star < atom.
void print(const Regex& e, int context, std::string& out) {
  switch (e.kind()) {
  case Regex::Kind::Empty: out += "@empty"; return;
  case Regex::Kind::Epsilon: out += "@eps"; return;
  case Regex::Kind::Literal:
    if (e.symbol().size() == 1)
      out += e.symbol();
    else
      out += "<" + e.symbol() + ">";
    return;
  case Regex::Kind::Union:
    if (context > 0) out += '(';
    print(e.left(), 0, out);
    out += '|';
    print(e.right(), 1, out);
    if (context > 0) out += ')';
    return;
  case Regex::Kind::Concat:
    if (context > 1) out += '(';
    print(e.left(), 1, out);
    print(e.right(), 2, out);
    if (context > 1) out += ')';
    return;
  case Regex::Kind::Star:
    print(e.inner(), 3, out);
    out += '*';
    return;
  }
}

class RegexParser {
public:
  explicit RegexParser(std::string_view text) : text_(text) {}

  Regex parse() {
    Regex e = alternation();
    skip_space();
    if (pos_ != text_.size()) fail(ParseErrorKind::Syntax, "unexpected character");
    return e;
  }

private:
  [[noreturn]] void fail(ParseErrorKind kind, const std::string& message) const {
    throw ParseError(kind, 1, pos_ + 1, "regex: " + message);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_atom_start() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || c == '<' || c == '@' || is_identifier(std::string_view(&text_[pos_], 1));
  }

  Regex alternation() {
    Regex e = concatenation();
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      e = Regex::alternation(std::move(e), concatenation());
      skip_space();
    }
    return e;
  }

  Regex concatenation() {
    if (!at_atom_start()) fail(ParseErrorKind::Syntax, "expected an expression");
    Regex e = repetition();
    while (at_atom_start()) e = Regex::concat(std::move(e), repetition());
    return e;
  }

  Regex repetition() {
    Regex e = atom();
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      e = Regex::star(std::move(e));
      skip_space();
    }
    return e;
  }

  Regex atom() {
    skip_space();
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Regex e = alternation();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail(ParseErrorKind::Syntax, "expected ')'");
      ++pos_;
      return e;
    }
    if (c == '<') {
      const std::size_t close = text_.find('>', pos_);
      if (close == std::string_view::npos) fail(ParseErrorKind::Lexical, "unterminated '<'");
      std::string name(text_.substr(pos_ + 1, close - pos_ - 1));
      if (!is_identifier(name)) fail(ParseErrorKind::Lexical, "invalid symbol name");
      pos_ = close + 1;
      return Regex::literal(std::move(name));
    }
    if (c == '@') {
      for (auto [word, make] : {std::pair{std::string_view("@empty"), &Regex::empty},
                                std::pair{std::string_view("@eps"), &Regex::epsilon}}) {
        if (text_.substr(pos_, word.size()) == word) {
          pos_ += word.size();
          return make();
        }
      }
      fail(ParseErrorKind::Lexical, "unknown '@' keyword");
    }
    ++pos_;
    return Regex::literal(std::string(1, c));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

constexpr int kEpsilon = -1;

struct EpsilonNfa {
  struct Edge {
    int label; // symbol index or kEpsilon
    std::size_t target;
  };
  std::vector<std::vector<Edge>> edges;

  std::size_t add_state() {
    edges.emplace_back();
    return edges.size() - 1;
  }
};

struct Fragment {
  std::size_t start;
  std::size_t accept;
};

Fragment thompson(const Regex& e, const TransitionSystem& alphabet_source, EpsilonNfa& nfa) {
  switch (e.kind()) {
  case Regex::Kind::Empty: {
    const std::size_t s = nfa.add_state(), f = nfa.add_state();
    return {s, f};
  }
  case Regex::Kind::Epsilon: {
    const std::size_t s = nfa.add_state(), f = nfa.add_state();
    nfa.edges[s].push_back({kEpsilon, f});
    return {s, f};
  }
  case Regex::Kind::Literal: {
    const auto x = static_cast<int>(alphabet_source.symbol_index(e.symbol()));
    const std::size_t s = nfa.add_state(), f = nfa.add_state();
    nfa.edges[s].push_back({x, f});
    return {s, f};
  }
  case Regex::Kind::Concat: {
    const Fragment a = thompson(e.left(), alphabet_source, nfa);
    const Fragment b = thompson(e.right(), alphabet_source, nfa);
    nfa.edges[a.accept].push_back({kEpsilon, b.start});
    return {a.start, b.accept};
  }
  case Regex::Kind::Union: {
    const Fragment a = thompson(e.left(), alphabet_source, nfa);
    const Fragment b = thompson(e.right(), alphabet_source, nfa);
    const std::size_t s = nfa.add_state(), f = nfa.add_state();
    nfa.edges[s].push_back({kEpsilon, a.start});
    nfa.edges[s].push_back({kEpsilon, b.start});
    nfa.edges[a.accept].push_back({kEpsilon, f});
    nfa.edges[b.accept].push_back({kEpsilon, f});
    return {s, f};
  }
  case Regex::Kind::Star: {
    const Fragment a = thompson(e.inner(), alphabet_source, nfa);
    const std::size_t s = nfa.add_state(), f = nfa.add_state();
    nfa.edges[s].push_back({kEpsilon, a.start});
    nfa.edges[s].push_back({kEpsilon, f});
    nfa.edges[a.accept].push_back({kEpsilon, a.start});
    nfa.edges[a.accept].push_back({kEpsilon, f});
    return {s, f};
  }
  }
  return {0, 0};
}

} // namespace

std::string to_string(const Regex& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

Regex parse_regex(std::string_view text) { return RegexParser(text).parse(); }

Recognizer regex_to_nfa(const Regex& e, std::vector<std::string> alphabet) {
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  // A one-state system carrying the alphabet, used for symbol lookup.
  const TransitionSystem alphabet_source(alphabet, {"q"}, 0, {});

  EpsilonNfa nfa;
  const Fragment top = thompson(e, alphabet_source, nfa);
  const std::size_t n = nfa.edges.size();

  auto closure = [&](std::size_t from) {
    std::vector<bool> in(n, false);
    std::vector<std::size_t> stack{from};
    in[from] = true;
    while (!stack.empty()) {
      const std::size_t s = stack.back();
      stack.pop_back();
      for (const auto& edge : nfa.edges[s])
        if (edge.label == kEpsilon && !in[edge.target]) {
          in[edge.target] = true;
          stack.push_back(edge.target);
        }
    }
    return in;
  };

  // Only the start state and targets of symbol edges survive elimination.
  std::vector<StateIndex> renumber(n, ~StateIndex{0});
  std::vector<std::size_t> kept;
  std::deque<std::size_t> queue{top.start};
  renumber[top.start] = 0;
  kept.push_back(top.start);
  std::vector<Transition> transitions;
  std::vector<bool> accepting;
  while (!queue.empty()) {
    const std::size_t p = queue.front();
    queue.pop_front();
    const auto in = closure(p);
    accepting.push_back(in[top.accept]);
    for (std::size_t q = 0; q < n; ++q) {
      if (!in[q]) continue;
      for (const auto& edge : nfa.edges[q]) {
        if (edge.label == kEpsilon) continue;
        if (renumber[edge.target] == ~StateIndex{0}) {
          renumber[edge.target] = static_cast<StateIndex>(kept.size());
          kept.push_back(edge.target);
          queue.push_back(edge.target);
        }
        transitions.push_back({renumber[p], static_cast<SymbolIndex>(edge.label),
                               renumber[edge.target]});
      }
    }
  }

  std::vector<std::string> names;
  for (std::size_t i = 0; i < kept.size(); ++i) names.push_back("q" + std::to_string(i));
  return Recognizer(TransitionSystem(std::move(alphabet), std::move(names), 0,
                                     std::move(transitions)),
                    std::move(accepting));
}

Regex nfa_to_regex(const Recognizer& r) {
  const auto& ts = r.ts();
  const std::size_t n = ts.state_count();
  const std::size_t start = n, final = n + 1;
  std::vector<std::vector<Regex>> edge(n + 2, std::vector<Regex>(n + 2, Regex::empty()));

  for (const auto& t : ts.transitions())
    edge[t.source][t.target] = simplified_alternation(edge[t.source][t.target],
                                                      Regex::literal(ts.symbol_name(t.label)));
  edge[start][ts.initial()] = Regex::epsilon();
  for (StateIndex s = 0; s < n; ++s)
    if (r.is_accepting(s)) edge[s][final] = Regex::epsilon();

  std::vector<StateIndex> order(n);
  for (StateIndex s = 0; s < n; ++s) order[s] = s;
  std::sort(order.begin(), order.end(),
            [&](StateIndex a, StateIndex b) { return ts.state_name(a) < ts.state_name(b); });

  std::vector<bool> removed(n + 2, false);
  for (StateIndex k : order) {
    removed[k] = true;
    const Regex loop = simplified_star(edge[k][k]);
    for (std::size_t i = 0; i < n + 2; ++i) {
      if (removed[i] || edge[i][k].kind() == Regex::Kind::Empty) continue;
      for (std::size_t j = 0; j < n + 2; ++j) {
        if (removed[j] || edge[k][j].kind() == Regex::Kind::Empty) continue;
        edge[i][j] = simplified_alternation(
            edge[i][j], simplified_concat(edge[i][k], simplified_concat(loop, edge[k][j])));
      }
    }
  }
  return edge[start][final];
}

} // namespace fsm
