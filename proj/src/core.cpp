#include "fsm/core.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace fsm {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::InvalidMachine: return "invalid machine";
  case ErrorCode::AlphabetMismatch: return "alphabet mismatch";
  case ErrorCode::UnknownState: return "unknown state";
  case ErrorCode::DeterminismRequired: return "determinism required";
  case ErrorCode::OutputKindMismatch: return "output kind mismatch";
  case ErrorCode::ConnectionRange: return "connection range";
  case ErrorCode::Parse: return "parse error";
  }
  return "error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(ErrorCode::Parse, std::to_string(line) + ":" + std::to_string(column) +
                                  ": " + message),
      kind_(kind), line_(line), column_(column) {}

bool is_identifier(std::string_view name) noexcept {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '\'';
  });
}

bool is_valid_state_name(std::string_view name) noexcept {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return c > ' ' && c < 127 && c != '"'; });
}

TransitionSystem::TransitionSystem(std::vector<std::string> alphabet,
                                   std::vector<std::string> states, StateIndex initial,
                                   std::vector<Transition> transitions)
    : alphabet_(std::move(alphabet)), states_(std::move(states)), initial_(initial),
      transitions_(std::move(transitions)) {
  for (const auto& symbol : alphabet_) {
    if (!is_identifier(symbol))
      throw Error(ErrorCode::InvalidMachine, "invalid symbol name '" + symbol + "'");
  }
  if (std::adjacent_find(alphabet_.begin(), alphabet_.end(),
                         std::greater_equal<>()) != alphabet_.end())
    throw Error(ErrorCode::InvalidMachine, "alphabet must be sorted and duplicate free");
  if (states_.empty()) throw Error(ErrorCode::InvalidMachine, "machine has no states");
  state_lookup_.reserve(states_.size());
  for (StateIndex i = 0; i < states_.size(); ++i) {
    if (!is_valid_state_name(states_[i]))
      throw Error(ErrorCode::InvalidMachine, "invalid state name '" + states_[i] + "'");
    if (!state_lookup_.emplace(states_[i], i).second)
      throw Error(ErrorCode::InvalidMachine, "duplicate state '" + states_[i] + "'");
  }
  if (initial_ >= states_.size())
    throw Error(ErrorCode::InvalidMachine, "initial state out of range");

  const std::size_t n = states_.size();
  const std::size_t k = alphabet_.size();
  for (const auto& t : transitions_) {
    if (t.source >= n || t.target >= n || t.label >= k)
      throw Error(ErrorCode::InvalidMachine, "transition refers outside the machine");
  }
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()),
                     transitions_.end());

  offsets_.assign(n * k + 1, 0);
  targets_.reserve(transitions_.size());
  for (const auto& t : transitions_) {
    ++offsets_[t.source * k + t.label + 1];
    targets_.push_back(t.target);
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

TransitionSystem TransitionSystem::from_names(std::vector<std::string> alphabet,
                                              std::vector<std::string> states,
                                              std::string_view initial,
                                              std::span<const NamedTransition> transitions) {
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

  std::unordered_map<std::string, StateIndex> index;
  for (StateIndex i = 0; i < states.size(); ++i) {
    if (!index.emplace(states[i], i).second)
      throw Error(ErrorCode::InvalidMachine, "duplicate state '" + states[i] + "'");
  }
  auto state_of = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end())
      throw Error(ErrorCode::UnknownState, "unknown state '" + name + "'");
    return it->second;
  };
  auto symbol_of = [&](const std::string& name) {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end() || *it != name)
      throw Error(ErrorCode::AlphabetMismatch, "symbol '" + name + "' not in alphabet");
    return static_cast<SymbolIndex>(it - alphabet.begin());
  };

  std::vector<Transition> indexed;
  indexed.reserve(transitions.size());
  for (const auto& t : transitions)
    indexed.push_back({state_of(t.source), symbol_of(t.label), state_of(t.target)});
  const StateIndex init = state_of(std::string(initial));
  return TransitionSystem(std::move(alphabet), std::move(states), init, std::move(indexed));
}

std::span<const StateIndex> TransitionSystem::successors(StateIndex state,
                                                         SymbolIndex symbol) const {
  const std::size_t k = alphabet_.size();
  if (state >= states_.size() || symbol >= k)
    throw Error(ErrorCode::InvalidMachine, "successor query out of range");
  const std::size_t slot = state * k + symbol;
  return std::span<const StateIndex>(targets_).subspan(offsets_[slot],
                                                       offsets_[slot + 1] - offsets_[slot]);
}

std::optional<StateIndex> TransitionSystem::find_state(std::string_view name) const {
  auto it = state_lookup_.find(std::string(name));
  if (it == state_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<SymbolIndex> TransitionSystem::find_symbol(std::string_view name) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end() || *it != name) return std::nullopt;
  return static_cast<SymbolIndex>(it - alphabet_.begin());
}

StateIndex TransitionSystem::state_index(std::string_view name) const {
  if (auto s = find_state(name)) return *s;
  throw Error(ErrorCode::UnknownState, "unknown state '" + std::string(name) + "'");
}

SymbolIndex TransitionSystem::symbol_index(std::string_view name) const {
  if (auto x = find_symbol(name)) return *x;
  throw Error(ErrorCode::AlphabetMismatch,
              "symbol '" + std::string(name) + "' not in alphabet");
}

bool TransitionSystem::is_deterministic() const noexcept {
  for (std::size_t slot = 0; slot + 1 < offsets_.size(); ++slot)
    if (offsets_[slot + 1] - offsets_[slot] > 1) return false;
  return true;
}

bool TransitionSystem::is_complete() const noexcept {
  for (std::size_t slot = 0; slot + 1 < offsets_.size(); ++slot)
    if (offsets_[slot + 1] == offsets_[slot]) return false;
  return true;
}

bool same_alphabet(const TransitionSystem& a, const TransitionSystem& b) noexcept {
  return a.alphabet() == b.alphabet();
}

void require_same_alphabet(const TransitionSystem& a, const TransitionSystem& b) {
  if (!same_alphabet(a, b))
    throw Error(ErrorCode::AlphabetMismatch, "machines have different alphabets");
}

Recognizer::Recognizer(TransitionSystem ts, std::vector<bool> accepting)
    : ts_(std::move(ts)), accepting_(std::move(accepting)) {
  if (accepting_.size() != ts_.state_count())
    throw Error(ErrorCode::InvalidMachine, "accepting mask does not match state count");
}

Recognizer::Recognizer(TransitionSystem ts, std::span<const std::string> accepting)
    : ts_(std::move(ts)), accepting_(ts_.state_count(), false) {
  for (const auto& name : accepting) accepting_[ts_.state_index(name)] = true;
}

OutputKind kind_of(const OutputValue& value) noexcept {
  return static_cast<OutputKind>(value.index());
}

const char* to_string(OutputKind kind) noexcept {
  switch (kind) {
  case OutputKind::Boolean: return "boolean";
  case OutputKind::SymbolSet: return "symbol-set";
  case OutputKind::Token: return "token";
  }
  return "unknown";
}

std::string render(const OutputValue& value) {
  if (const bool* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  if (const Token* t = std::get_if<Token>(&value)) return t->text;
  std::string out = "{";
  bool first = true;
  for (const auto& s : std::get<SymbolSet>(value)) {
    if (!first) out += ',';
    out += s;
    first = false;
  }
  return out + "}";
}

MooreMachine::MooreMachine(TransitionSystem ts, OutputKind kind,
                           std::vector<OutputValue> outputs)
    : ts_(std::move(ts)), kind_(kind), outputs_(std::move(outputs)) {
  if (outputs_.size() != ts_.state_count())
    throw Error(ErrorCode::InvalidMachine, "output map does not match state count");
  for (const auto& out : outputs_) {
    if (kind_of(out) != kind_)
      throw Error(ErrorCode::OutputKindMismatch,
                  std::string("output of kind ") + to_string(kind_of(out)) +
                      " in a machine of kind " + to_string(kind_));
    if (const auto* set = std::get_if<SymbolSet>(&out)) {
      for (const auto& s : *set)
        if (!ts_.find_symbol(s))
          throw Error(ErrorCode::AlphabetMismatch,
                      "output symbol '" + s + "' not in alphabet");
    } else if (const auto* token = std::get_if<Token>(&out)) {
      if (!is_valid_state_name(token->text))
        throw Error(ErrorCode::InvalidMachine, "invalid output token '" + token->text + "'");
    }
  }
}

std::vector<StateIndex> reachable(const TransitionSystem& ts) {
  std::vector<bool> seen(ts.state_count(), false);
  std::vector<StateIndex> stack{ts.initial()};
  seen[ts.initial()] = true;
  while (!stack.empty()) {
    const StateIndex s = stack.back();
    stack.pop_back();
    for (SymbolIndex x = 0; x < ts.symbol_count(); ++x)
      for (StateIndex t : ts.successors(s, x))
        if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
  }
  std::vector<StateIndex> out;
  for (StateIndex s = 0; s < seen.size(); ++s)
    if (seen[s]) out.push_back(s);
  return out;
}

namespace {

struct Restriction {
  TransitionSystem ts;
  std::vector<StateIndex> kept; // new index -> old index
};

Restriction restrict_to_reachable(const TransitionSystem& ts) {
  std::vector<StateIndex> kept = reachable(ts);
  std::vector<StateIndex> renumber(ts.state_count(), 0);
  std::vector<std::string> names;
  for (StateIndex i = 0; i < kept.size(); ++i) {
    renumber[kept[i]] = i;
    names.push_back(ts.state_name(kept[i]));
  }
  std::vector<bool> keep(ts.state_count(), false);
  for (StateIndex s : kept) keep[s] = true;
  std::vector<Transition> transitions;
  for (const auto& t : ts.transitions())
    if (keep[t.source]) transitions.push_back({renumber[t.source], t.label, renumber[t.target]});
  return {TransitionSystem(ts.alphabet(), std::move(names), renumber[ts.initial()],
                           std::move(transitions)),
          std::move(kept)};
}

} // namespace

Recognizer trim(const Recognizer& r) {
  auto [ts, kept] = restrict_to_reachable(r.ts());
  std::vector<bool> accepting;
  for (StateIndex s : kept) accepting.push_back(r.is_accepting(s));
  return Recognizer(std::move(ts), std::move(accepting));
}

MooreMachine trim(const MooreMachine& m) {
  auto [ts, kept] = restrict_to_reachable(m.ts());
  std::vector<OutputValue> outputs;
  for (StateIndex s : kept) outputs.push_back(m.output(s));
  return MooreMachine(std::move(ts), m.kind(), std::move(outputs));
}

bool accepts(const Recognizer& r, const Word& word) {
  const auto& ts = r.ts();
  std::vector<SymbolIndex> symbols;
  symbols.reserve(word.size());
  for (const auto& s : word) symbols.push_back(ts.symbol_index(s));

  std::vector<bool> current(ts.state_count(), false);
  current[ts.initial()] = true;
  for (SymbolIndex x : symbols) {
    std::vector<bool> next(ts.state_count(), false);
    for (StateIndex s = 0; s < current.size(); ++s)
      if (current[s])
        for (StateIndex t : ts.successors(s, x)) next[t] = true;
    current = std::move(next);
  }
  for (StateIndex s = 0; s < current.size(); ++s)
    if (current[s] && r.is_accepting(s)) return true;
  return false;
}

std::string brace_name(std::vector<std::string> members) {
  std::sort(members.begin(), members.end());
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ',';
    out += members[i];
  }
  return out + "}";
}

Recognizer determinize(const Recognizer& r) {
  const auto& ts = r.ts();
  using Subset = std::vector<StateIndex>; // sorted by index

  std::map<Subset, StateIndex> index;
  std::vector<Subset> subsets;
  std::vector<Transition> transitions;
  std::deque<StateIndex> queue;

  auto intern = [&](Subset s) {
    auto [it, inserted] = index.emplace(s, static_cast<StateIndex>(subsets.size()));
    if (inserted) {
      subsets.push_back(std::move(s));
      queue.push_back(it->second);
    }
    return it->second;
  };

  intern({ts.initial()});
  while (!queue.empty()) {
    const StateIndex current = queue.front();
    queue.pop_front();
    for (SymbolIndex x = 0; x < ts.symbol_count(); ++x) {
      Subset next;
      for (StateIndex s : subsets[current])
        for (StateIndex t : ts.successors(s, x)) next.push_back(t);
      if (next.empty()) continue;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      const StateIndex target = intern(std::move(next));
      transitions.push_back({current, x, target});
    }
  }

  std::vector<std::string> names;
  std::vector<bool> accepting;
  for (const auto& subset : subsets) {
    std::vector<std::string> members;
    bool acc = false;
    for (StateIndex s : subset) {
      members.push_back(ts.state_name(s));
      acc = acc || r.is_accepting(s);
    }
    names.push_back(brace_name(std::move(members)));
    accepting.push_back(acc);
  }
  return Recognizer(TransitionSystem(ts.alphabet(), std::move(names), 0, std::move(transitions)),
                    std::move(accepting));
}

namespace {

std::string fresh_name(const TransitionSystem& ts, std::string base) {
  while (ts.find_state(base)) base += '\'';
  return base;
}

void require_deterministic(const TransitionSystem& ts, const char* operation) {
  if (!ts.is_deterministic())
    throw Error(ErrorCode::DeterminismRequired,
                std::string(operation) + " requires a deterministic machine");
}

} // namespace

Recognizer complete(const Recognizer& r) {
  const auto& ts = r.ts();
  require_deterministic(ts, "complete");
  if (ts.is_complete()) return r;

  const auto sink = static_cast<StateIndex>(ts.state_count());
  std::vector<std::string> names = ts.states();
  names.push_back(fresh_name(ts, "__sink"));
  std::vector<Transition> transitions(ts.transitions().begin(), ts.transitions().end());
  for (StateIndex s = 0; s < ts.state_count(); ++s)
    for (SymbolIndex x = 0; x < ts.symbol_count(); ++x)
      if (ts.successors(s, x).empty()) transitions.push_back({s, x, sink});
  for (SymbolIndex x = 0; x < ts.symbol_count(); ++x) transitions.push_back({sink, x, sink});

  std::vector<bool> accepting = r.accepting();
  accepting.push_back(false);
  return Recognizer(TransitionSystem(ts.alphabet(), std::move(names), ts.initial(),
                                     std::move(transitions)),
                    std::move(accepting));
}

Recognizer minimize(const Recognizer& r) {
  require_deterministic(r.ts(), "minimize");
  const Recognizer dfa = complete(trim(r));
  const auto& ts = dfa.ts();
  const std::size_t n = ts.state_count();
  const std::size_t k = ts.symbol_count();

  // predecessors[x][t]: states with an x-transition into t
  std::vector<std::vector<std::vector<StateIndex>>> predecessors(
      k, std::vector<std::vector<StateIndex>>(n));
  for (const auto& t : ts.transitions()) predecessors[t.label][t.target].push_back(t.source);

  std::vector<std::vector<StateIndex>> blocks;
  std::vector<std::size_t> block_of(n, 0);
  {
    std::vector<StateIndex> accepting, rejecting;
    for (StateIndex s = 0; s < n; ++s) (dfa.is_accepting(s) ? accepting : rejecting).push_back(s);
    for (auto* part : {&accepting, &rejecting}) {
      if (part->empty()) continue;
      for (StateIndex s : *part) block_of[s] = blocks.size();
      blocks.push_back(std::move(*part));
    }
  }

  std::deque<std::pair<std::size_t, SymbolIndex>> work;
  std::vector<std::vector<bool>> queued;
  auto enqueue = [&](std::size_t block, SymbolIndex x) {
    if (queued.size() <= block) queued.resize(block + 1, std::vector<bool>(k, false));
    if (queued[block][x]) return;
    queued[block][x] = true;
    work.emplace_back(block, x);
  };
  if (!blocks.empty()) {
    const std::size_t smaller =
        blocks.size() == 2 && blocks[1].size() < blocks[0].size() ? 1 : 0;
    for (SymbolIndex x = 0; x < k; ++x) enqueue(smaller, x);
    if (blocks.size() == 2)
      for (SymbolIndex x = 0; x < k; ++x) enqueue(1 - smaller, x);
  }

  while (!work.empty()) {
    const auto [splitter, x] = work.front();
    work.pop_front();
    queued[splitter][x] = false;

    std::map<std::size_t, std::vector<StateIndex>> hit;
    std::vector<bool> marked(n, false);
    for (StateIndex t : blocks[splitter])
      for (StateIndex s : predecessors[x][t])
        if (!marked[s]) {
          marked[s] = true;
          hit[block_of[s]].push_back(s);
        }

    for (auto& [block, inside] : hit) {
      if (inside.size() == blocks[block].size()) continue;
      std::vector<StateIndex> outside;
      for (StateIndex s : blocks[block])
        if (!marked[s]) outside.push_back(s);
      const std::size_t fresh = blocks.size();
      std::sort(inside.begin(), inside.end());
      for (StateIndex s : inside) block_of[s] = fresh;
      blocks[block] = std::move(outside);
      blocks.push_back(std::move(inside));
      for (SymbolIndex c = 0; c < k; ++c) {
        if (queued.size() > block && queued[block][c])
          enqueue(fresh, c);
        else
          enqueue(blocks[fresh].size() < blocks[block].size() ? fresh : block, c);
      }
    }
  }

  // Order result states by the smallest original index in each block.
  std::vector<std::size_t> order(blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return *std::min_element(blocks[a].begin(), blocks[a].end()) <
           *std::min_element(blocks[b].begin(), blocks[b].end());
  });
  std::vector<StateIndex> renumber(blocks.size());
  for (StateIndex i = 0; i < order.size(); ++i) renumber[order[i]] = i;

  std::vector<std::string> names;
  std::vector<bool> accepting;
  std::vector<Transition> transitions;
  for (StateIndex i = 0; i < order.size(); ++i) {
    const auto& members = blocks[order[i]];
    std::vector<std::string> member_names;
    for (StateIndex s : members) member_names.push_back(ts.state_name(s));
    names.push_back(brace_name(std::move(member_names)));
    accepting.push_back(dfa.is_accepting(members.front()));
    for (SymbolIndex x = 0; x < k; ++x)
      transitions.push_back(
          {i, x, renumber[block_of[ts.successors(members.front(), x).front()]]});
  }
  return Recognizer(TransitionSystem(ts.alphabet(), std::move(names),
                                     renumber[block_of[ts.initial()]], std::move(transitions)),
                    std::move(accepting));
}

LanguageVerdict language_equivalent(const Recognizer& a, const Recognizer& b) {
  require_same_alphabet(a.ts(), b.ts());
  const Recognizer da = complete(determinize(a));
  const Recognizer db = complete(determinize(b));
  const std::size_t k = da.ts().symbol_count();
  const std::size_t nb = db.ts().state_count();

  struct Visit {
    std::size_t parent;
    SymbolIndex symbol;
  };
  auto key = [nb](StateIndex p, StateIndex q) { return std::size_t{p} * nb + q; };
  std::map<std::size_t, Visit> visited;
  std::deque<std::pair<StateIndex, StateIndex>> queue;

  auto word_to = [&](std::size_t node) {
    Word word;
    const std::size_t root = key(da.ts().initial(), db.ts().initial());
    while (node != root) {
      const Visit& v = visited.at(node);
      word.push_back(da.ts().symbol_name(v.symbol));
      node = v.parent;
    }
    std::reverse(word.begin(), word.end());
    return word;
  };

  const StateIndex ia = da.ts().initial(), ib = db.ts().initial();
  visited.emplace(key(ia, ib), Visit{0, 0});
  if (da.is_accepting(ia) != db.is_accepting(ib)) return {false, {}};
  queue.emplace_back(ia, ib);
  while (!queue.empty()) {
    const auto [p, q] = queue.front();
    queue.pop_front();
    for (SymbolIndex x = 0; x < k; ++x) {
      const StateIndex p2 = da.ts().successors(p, x).front();
      const StateIndex q2 = db.ts().successors(q, x).front();
      const std::size_t node = key(p2, q2);
      if (!visited.emplace(node, Visit{key(p, q), x}).second) continue;
      if (da.is_accepting(p2) != db.is_accepting(q2)) return {false, word_to(node)};
      queue.emplace_back(p2, q2);
    }
  }
  return {true, {}};
}

namespace {

/// Backtracking isomorphism search; `same_label(i, j)` compares state labels.
template <typename SameLabel>
bool isomorphic_systems(const TransitionSystem& a, const TransitionSystem& b,
                        SameLabel same_label) {
  const std::size_t n = a.state_count();
  const std::size_t k = a.symbol_count();
  if (n != b.state_count() || !same_alphabet(a, b) ||
      a.transitions().size() != b.transitions().size())
    return false;

  auto degrees = [k](const TransitionSystem& ts) {
    std::vector<std::vector<std::size_t>> deg(ts.state_count(),
                                              std::vector<std::size_t>(2 * k, 0));
    for (const auto& t : ts.transitions()) {
      ++deg[t.source][t.label];
      ++deg[t.target][k + t.label];
    }
    return deg;
  };
  const auto deg_a = degrees(a);
  const auto deg_b = degrees(b);

  // Visit a's states in BFS order over both edge directions from the initial
  // state, so each newly mapped state is usually constrained by a neighbour.
  std::vector<StateIndex> order;
  {
    std::vector<std::vector<StateIndex>> neighbours(n);
    for (const auto& t : a.transitions()) {
      neighbours[t.source].push_back(t.target);
      neighbours[t.target].push_back(t.source);
    }
    std::vector<bool> seen(n, false);
    auto bfs = [&](StateIndex root) {
      std::deque<StateIndex> q{root};
      seen[root] = true;
      while (!q.empty()) {
        StateIndex s = q.front();
        q.pop_front();
        order.push_back(s);
        for (StateIndex t : neighbours[s])
          if (!seen[t]) {
            seen[t] = true;
            q.push_back(t);
          }
      }
    };
    bfs(a.initial());
    for (StateIndex s = 0; s < n; ++s)
      if (!seen[s]) bfs(s);
  }

  constexpr StateIndex unmapped = ~StateIndex{0};
  std::vector<StateIndex> map(n, unmapped);
  std::vector<bool> used(n, false);

  auto has_edge = [](const TransitionSystem& ts, StateIndex s, SymbolIndex x, StateIndex t) {
    auto succ = ts.successors(s, x);
    return std::binary_search(succ.begin(), succ.end(), t);
  };
  // Every a-edge between mapped states must have an image in b.
  auto consistent = [&](StateIndex s, StateIndex image) {
    for (SymbolIndex x = 0; x < k; ++x)
      for (StateIndex t : a.successors(s, x)) {
        StateIndex mt = t == s ? image : map[t];
        if (mt != unmapped && !has_edge(b, image, x, mt)) return false;
      }
    for (const auto& t : a.transitions()) {
      if (t.target != s || t.source == s || map[t.source] == unmapped) continue;
      if (!has_edge(b, map[t.source], t.label, image)) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const StateIndex s = order[depth];
    for (StateIndex candidate = 0; candidate < n; ++candidate) {
      if (used[candidate] || deg_a[s] != deg_b[candidate] || !same_label(s, candidate))
        continue;
      if ((s == a.initial()) != (candidate == b.initial())) continue;
      if (!consistent(s, candidate)) continue;
      map[s] = candidate;
      used[candidate] = true;
      if (self(self, depth + 1)) return true;
      map[s] = unmapped;
      used[candidate] = false;
    }
    return false;
  };
  return search(search, 0);
}

} // namespace

bool isomorphic(const Recognizer& a, const Recognizer& b) {
  return isomorphic_systems(a.ts(), b.ts(), [&](StateIndex s, StateIndex t) {
    return a.is_accepting(s) == b.is_accepting(t);
  });
}

bool isomorphic(const MooreMachine& a, const MooreMachine& b) {
  if (a.kind() != b.kind()) return false;
  return isomorphic_systems(a.ts(), b.ts(), [&](StateIndex s, StateIndex t) {
    return a.output(s) == b.output(t);
  });
}

} // namespace fsm
