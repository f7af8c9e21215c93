#pragma once

// Shared fixtures, random generators and brute-force oracles for the tests.
// The oracles here deliberately avoid the library's algorithms: they work on
// explicit runs, word enumeration and naive fixpoints.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fsm/compose.hpp"
#include "fsm/core.hpp"
#include "fsm/encode.hpp"
#include "fsm/equiv.hpp"

namespace fsm::testing {

inline Recognizer make_recognizer(std::vector<std::string> alphabet,
                                  std::vector<std::string> states, const std::string& initial,
                                  const std::vector<NamedTransition>& transitions,
                                  const std::vector<std::string>& accepting) {
  return Recognizer(TransitionSystem::from_names(std::move(alphabet), std::move(states), initial,
                                                 transitions),
                    accepting);
}

inline Recognizer machine_a() {
  return make_recognizer({"a", "b", "c"}, {"A0", "A1", "A2", "A3"}, "A0",
                         {{"A0", "a", "A1"}, {"A1", "b", "A2"}, {"A1", "c", "A3"}}, {"A2"});
}

inline Recognizer machine_b() {
  return make_recognizer(
      {"a", "b", "c"}, {"B0", "B1", "B1x", "B2", "B3"}, "B0",
      {{"B0", "a", "B1"}, {"B0", "a", "B1x"}, {"B1", "b", "B2"}, {"B1x", "c", "B3"}}, {"B2"});
}

/// s0 -a-> s1 -b-> s2 plus a dead a-branch s0 -a-> s3; nothing accepts.
inline Recognizer sim_eq_1() {
  return make_recognizer({"a", "b"}, {"s0", "s1", "s2", "s3"}, "s0",
                         {{"s0", "a", "s1"}, {"s1", "b", "s2"}, {"s0", "a", "s3"}}, {});
}

/// t0 -a-> t1 -b-> t2; nothing accepts.
inline Recognizer sim_eq_2() {
  return make_recognizer({"a", "b"}, {"t0", "t1", "t2"}, "t0",
                         {{"t0", "a", "t1"}, {"t1", "b", "t2"}}, {});
}

inline const char* ab_document_text() {
  return R"(# the A/B recognizers
machine A {
  alphabet: a, b, c;
  states: A0, A1, A2, A3;
  initial: A0;
  accepting: A2;
  A0 - a -> A1;
  A1 - b -> A2;
  A1 - c -> A3;
}

machine B {
  alphabet: a, b, c;
  states: B0, B1, B1x, B2, B3;
  initial: B0;
  accepting: B2;
  B0 - a -> B1;
  B0 - a -> B1x;
  B1 - b -> B2;
  B1x - c -> B3;
}
)";
}

inline std::vector<std::string> symbols(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

inline std::vector<std::string> state_names(std::size_t n, const std::string& prefix = "s") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// Random NFA: 1..max_states states, 1..max_symbols symbols.
inline Recognizer random_recognizer(std::mt19937& rng, std::size_t max_states = 5,
                                    std::size_t max_symbols = 3, double density = 0.3) {
  std::uniform_int_distribution<std::size_t> n_dist(1, max_states), k_dist(1, max_symbols);
  std::bernoulli_distribution edge(density), acc(0.4);
  const std::size_t n = n_dist(rng), k = k_dist(rng);
  std::vector<Transition> transitions;
  for (StateIndex s = 0; s < n; ++s)
    for (SymbolIndex x = 0; x < k; ++x)
      for (StateIndex t = 0; t < n; ++t)
        if (edge(rng)) transitions.push_back({s, x, t});
  std::vector<bool> accepting(n);
  for (std::size_t i = 0; i < n; ++i) accepting[i] = acc(rng);
  return Recognizer(TransitionSystem(symbols(k), state_names(n), 0, std::move(transitions)),
                    std::move(accepting));
}

/// Random NFA over a fixed alphabet size.
inline Recognizer random_recognizer_over(std::mt19937& rng, std::size_t k,
                                         std::size_t max_states = 5, double density = 0.3) {
  std::uniform_int_distribution<std::size_t> n_dist(1, max_states);
  std::bernoulli_distribution edge(density), acc(0.4);
  const std::size_t n = n_dist(rng);
  std::vector<Transition> transitions;
  for (StateIndex s = 0; s < n; ++s)
    for (SymbolIndex x = 0; x < k; ++x)
      for (StateIndex t = 0; t < n; ++t)
        if (edge(rng)) transitions.push_back({s, x, t});
  std::vector<bool> accepting(n);
  for (std::size_t i = 0; i < n; ++i) accepting[i] = acc(rng);
  return Recognizer(TransitionSystem(symbols(k), state_names(n), 0, std::move(transitions)),
                    std::move(accepting));
}

/// Random complete DFA restricted to its reachable states.
inline Recognizer random_complete_dfa(std::mt19937& rng, std::size_t k,
                                      std::size_t max_states = 5) {
  std::uniform_int_distribution<std::size_t> n_dist(1, max_states);
  const std::size_t n = n_dist(rng);
  std::uniform_int_distribution<StateIndex> target(0, static_cast<StateIndex>(n - 1));
  std::bernoulli_distribution acc(0.4);
  std::vector<Transition> transitions;
  for (StateIndex s = 0; s < n; ++s)
    for (SymbolIndex x = 0; x < k; ++x) transitions.push_back({s, x, target(rng)});
  std::vector<bool> accepting(n);
  for (std::size_t i = 0; i < n; ++i) accepting[i] = acc(rng);
  return trim(Recognizer(TransitionSystem(symbols(k), state_names(n, "d"), 0,
                                          std::move(transitions)),
                         std::move(accepting)));
}

/// A copy of `r` where one state is split into two identical clones; the
/// result is bisimilar to `r`.
inline Recognizer split_state(const Recognizer& r, std::mt19937& rng) {
  const auto& ts = r.ts();
  const std::size_t n = ts.state_count();
  const StateIndex victim = std::uniform_int_distribution<StateIndex>(
      0, static_cast<StateIndex>(n - 1))(rng);
  const auto clone = static_cast<StateIndex>(n);
  std::bernoulli_distribution coin(0.5);
  std::vector<Transition> transitions;
  for (const auto& t : ts.transitions()) {
    const StateIndex target = (t.target == victim && coin(rng)) ? clone : t.target;
    transitions.push_back({t.source, t.label, target});
    if (t.source == victim) transitions.push_back({clone, t.label, target});
  }
  std::vector<std::string> names = ts.states();
  std::string clone_name = ts.state_name(victim) + "_clone";
  while (ts.find_state(clone_name)) clone_name += "'";
  names.push_back(std::move(clone_name));
  std::vector<bool> accepting = r.accepting();
  accepting.push_back(r.is_accepting(victim));
  return Recognizer(TransitionSystem(ts.alphabet(), std::move(names), ts.initial(),
                                     std::move(transitions)),
                    std::move(accepting));
}

/// All words over `alphabet` of length <= max_length, shortlex order.
inline std::vector<Word> all_words(const std::vector<std::string>& alphabet,
                                   std::size_t max_length) {
  std::vector<Word> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& s : alphabet) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

/// Depth-first enumeration of explicit runs.
inline bool brute_accepts(const Recognizer& r, const Word& word) {
  const auto& ts = r.ts();
  std::function<bool(StateIndex, std::size_t)> run = [&](StateIndex s, std::size_t i) {
    if (i == word.size()) return r.is_accepting(s);
    for (const auto& t : ts.transitions())
      if (t.source == s && ts.symbol_name(t.label) == word[i] && run(t.target, i + 1))
        return true;
    return false;
  };
  return run(ts.initial(), 0);
}

/// Shortlex-first word of length <= max_length on which the two disagree.
inline std::optional<Word> brute_distinguish(const Recognizer& a, const Recognizer& b,
                                             std::size_t max_length) {
  for (const auto& w : all_words(a.ts().alphabet(), max_length))
    if (brute_accepts(a, w) != brute_accepts(b, w)) return w;
  return std::nullopt;
}

/// Number of Myhill-Nerode classes seen among prefixes of length <= bound,
/// comparing residuals on suffixes of length <= bound.
inline std::size_t residual_classes(const Recognizer& r, std::size_t bound) {
  const auto words = all_words(r.ts().alphabet(), bound);
  std::set<std::vector<bool>> classes;
  for (const auto& prefix : words) {
    std::vector<bool> residual;
    for (const auto& suffix : words) {
      Word w = prefix;
      w.insert(w.end(), suffix.begin(), suffix.end());
      residual.push_back(brute_accepts(r, w));
    }
    classes.insert(residual);
  }
  return classes.size();
}

/// Bounded-depth simulation: s <=_0 t iff outputs agree; s <=_{d+1} t iff
/// also every move of s is answered by t into <=_d. Iterated until stable.
inline std::set<std::pair<StateIndex, StateIndex>> oracle_simulation(const ObservedSystem& a,
                                                                       const ObservedSystem& b) {
  const auto& ta = a.ts();
  const auto& tb = b.ts();
  std::set<std::pair<StateIndex, StateIndex>> level;
  for (StateIndex s = 0; s < ta.state_count(); ++s)
    for (StateIndex t = 0; t < tb.state_count(); ++t)
      if (a.output(s) == b.output(t)) level.insert({s, t});
  while (true) {
    std::set<std::pair<StateIndex, StateIndex>> next;
    for (const auto& [s, t] : level) {
      bool ok = true;
      for (const auto& move : ta.transitions()) {
        if (move.source != s) continue;
        bool answered = false;
        for (const auto& reply : tb.transitions())
          if (reply.source == t && reply.label == move.label &&
              level.contains({move.target, reply.target}))
            answered = true;
        if (!answered) ok = false;
      }
      if (ok) next.insert({s, t});
    }
    if (next == level) return level;
    level = std::move(next);
  }
}

/// Naive greatest-fixpoint bisimulation on the disjoint union: start from all
/// output-equal pairs and delete pairs violating the transfer condition in
/// either direction. Union index: a's states first, then b's.
inline std::vector<std::vector<bool>> oracle_bisimulation(const ObservedSystem& a,
                                                          const ObservedSystem& b) {
  struct Node {
    const ObservedSystem* sys;
    StateIndex s;
    std::size_t offset;
  };
  std::vector<Node> nodes;
  for (StateIndex s = 0; s < a.ts().state_count(); ++s) nodes.push_back({&a, s, 0});
  const std::size_t na = a.ts().state_count();
  for (StateIndex s = 0; s < b.ts().state_count(); ++s) nodes.push_back({&b, s, na});
  const std::size_t n = nodes.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      rel[u][v] = nodes[u].sys->output(nodes[u].s) == nodes[v].sys->output(nodes[v].s);

  auto moves = [&](std::size_t u) {
    std::vector<std::pair<SymbolIndex, std::size_t>> out;
    for (const auto& t : nodes[u].sys->ts().transitions())
      if (t.source == nodes[u].s) out.emplace_back(t.label, nodes[u].offset + t.target);
    return out;
  };
  auto transfers = [&](std::size_t u, std::size_t v) {
    for (const auto& [x, u2] : moves(u)) {
      bool matched = false;
      for (const auto& [y, v2] : moves(v))
        if (x == y && rel[u2][v2]) matched = true;
      if (!matched) return false;
    }
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (rel[u][v] && (!transfers(u, v) || !transfers(v, u))) {
          rel[u][v] = false;
          changed = true;
        }
  }
  return rel;
}

inline bool oracle_bisimilar(const ObservedSystem& a, const ObservedSystem& b) {
  const auto rel = oracle_bisimulation(a, b);
  return rel[a.ts().initial()][a.ts().state_count() + b.ts().initial()];
}

/// Checks the simulation witness invariants directly.
inline bool is_valid_simulation(const ObservedSystem& a, const ObservedSystem& b,
                                const SimulationWitness& w) {
  std::set<std::pair<StateIndex, StateIndex>> rel(w.pairs.begin(), w.pairs.end());
  for (const auto& [s, t] : rel) {
    if (!(a.output(s) == b.output(t))) return false;
    for (const auto& move : a.ts().transitions()) {
      if (move.source != s) continue;
      bool answered = false;
      for (const auto& reply : b.ts().transitions())
        if (reply.source == t && reply.label == move.label &&
            rel.contains({move.target, reply.target}))
          answered = true;
      if (!answered) return false;
    }
  }
  return true;
}

/// Checks output-uniformity and stability of a bisimulation partition.
inline bool is_stable_partition(const ObservedSystem& a, const ObservedSystem& b,
                                const BisimulationPartition& p) {
  const std::size_t na = a.ts().state_count();
  auto block = [&](std::size_t u) {
    return u < na ? p.block_of_first(static_cast<StateIndex>(u))
                  : p.block_of_second(static_cast<StateIndex>(u - na));
  };
  auto output = [&](std::size_t u) -> const OutputValue& {
    return u < na ? a.output(static_cast<StateIndex>(u))
                  : b.output(static_cast<StateIndex>(u - na));
  };
  auto moves = [&](std::size_t u) {
    std::set<std::pair<SymbolIndex, std::size_t>> out;
    const auto& ts = u < na ? a.ts() : b.ts();
    const std::size_t offset = u < na ? 0 : na;
    const auto s = static_cast<StateIndex>(u - offset);
    for (const auto& t : ts.transitions())
      if (t.source == s) out.insert({t.label, block(offset + t.target)});
    return out;
  };
  const std::size_t n = na + b.ts().state_count();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      if (block(u) != block(v)) continue;
      if (!(output(u) == output(v))) return false;
      if (moves(u) != moves(v)) return false;
    }
  return true;
}

/// Outcome set by explicit enumeration of all runs of the press sequence.
inline std::set<ExperimentOutcome> oracle_experiment(const MooreMachine& m, const Word& presses) {
  std::set<ExperimentOutcome> out;
  const auto& ts = m.ts();
  std::function<void(StateIndex, std::size_t)> go = [&](StateIndex s, std::size_t i) {
    if (i == presses.size()) {
      out.insert(ExperimentOutcome::success());
      return;
    }
    std::vector<StateIndex> next;
    for (const auto& t : ts.transitions())
      if (t.source == s && ts.symbol_name(t.label) == presses[i]) next.push_back(t.target);
    const auto& unlocked = std::get<SymbolSet>(m.output(s));
    if (!unlocked.contains(presses[i]) || next.empty()) {
      out.insert(ExperimentOutcome::blocked_after(i));
      return;
    }
    for (StateIndex t : next) go(t, i + 1);
  };
  go(ts.initial(), 0);
  return out;
}

} // namespace fsm::testing
