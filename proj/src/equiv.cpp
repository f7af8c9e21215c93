#include "fsm/equiv.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>

#include "fsm/encode.hpp"

namespace fsm {

ObservedSystem::ObservedSystem(const Recognizer& r) : machine_(recognizer_to_moore(r)) {}

ObservedSystem::ObservedSystem(MooreMachine m) : machine_(std::move(m)) {}

bool SimulationWitness::contains(StateIndex a, StateIndex b) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::pair{a, b});
}

namespace {

void require_comparable(const ObservedSystem& a, const ObservedSystem& b) {
  require_same_alphabet(a.ts(), b.ts());
  if (a.kind() != b.kind())
    throw Error(ErrorCode::OutputKindMismatch,
                std::string("cannot compare ") + to_string(a.kind()) + " outputs with " +
                    to_string(b.kind()) + " outputs");
}

using Relation = std::vector<std::vector<bool>>;

Relation simulation_matrix(const ObservedSystem& a, const ObservedSystem& b) {
  const auto& ta = a.ts();
  const auto& tb = b.ts();
  const std::size_t k = ta.symbol_count();
  Relation rel(ta.state_count(), std::vector<bool>(tb.state_count(), false));
  for (StateIndex s = 0; s < ta.state_count(); ++s)
    for (StateIndex t = 0; t < tb.state_count(); ++t) rel[s][t] = a.output(s) == b.output(t);

  bool changed = true;
  while (changed) {
    changed = false;
    for (StateIndex s = 0; s < ta.state_count(); ++s)
      for (StateIndex t = 0; t < tb.state_count(); ++t) {
        if (!rel[s][t]) continue;
        bool matched = true;
        for (SymbolIndex x = 0; x < k && matched; ++x)
          for (StateIndex s2 : ta.successors(s, x)) {
            auto answers = tb.successors(t, x);
            if (std::none_of(answers.begin(), answers.end(),
                             [&](StateIndex t2) { return rel[s2][t2]; })) {
              matched = false;
              break;
            }
          }
        if (!matched) {
          rel[s][t] = false;
          changed = true;
        }
      }
  }
  return rel;
}

/// Kanellakis-Smolka refinement over a disjoint union of systems. Returns the
/// block of every union state, blocks numbered by first member.
std::vector<std::size_t> refine(const std::vector<const ObservedSystem*>& parts) {
  struct UnionState {
    std::size_t part;
    StateIndex state;
  };
  std::vector<UnionState> states;
  std::vector<std::size_t> offset;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    offset.push_back(states.size());
    for (StateIndex s = 0; s < parts[p]->ts().state_count(); ++s) states.push_back({p, s});
  }
  const std::size_t k = parts.front()->ts().symbol_count();
  auto successors = [&](std::size_t u, SymbolIndex x) {
    const auto& [part, state] = states[u];
    std::vector<std::size_t> out;
    for (StateIndex t : parts[part]->ts().successors(state, x)) out.push_back(offset[part] + t);
    return out;
  };

  std::vector<std::size_t> block_of(states.size());
  std::vector<std::vector<std::size_t>> blocks;
  {
    std::map<OutputValue, std::size_t> by_output;
    for (std::size_t u = 0; u < states.size(); ++u) {
      const auto& out = parts[states[u].part]->output(states[u].state);
      auto [it, inserted] = by_output.emplace(out, blocks.size());
      if (inserted) blocks.emplace_back();
      blocks[it->second].push_back(u);
      block_of[u] = it->second;
    }
  }

  // Split any block whose members disagree on which blocks an x-step reaches.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t b = 0; b < blocks.size() && !changed; ++b) {
      for (SymbolIndex x = 0; x < k && !changed; ++x) {
        std::map<std::set<std::size_t>, std::vector<std::size_t>> groups;
        std::vector<std::set<std::size_t>> order;
        for (std::size_t u : blocks[b]) {
          std::set<std::size_t> reached;
          for (std::size_t v : successors(u, x)) reached.insert(block_of[v]);
          auto [it, inserted] = groups.try_emplace(reached);
          if (inserted) order.push_back(reached);
          it->second.push_back(u);
        }
        if (groups.size() < 2) continue;
        changed = true;
        blocks[b] = groups[order.front()];
        for (std::size_t g = 1; g < order.size(); ++g) {
          for (std::size_t u : groups[order[g]]) block_of[u] = blocks.size();
          blocks.push_back(groups[order[g]]);
        }
      }
    }
  }

  std::vector<std::size_t> renumber(blocks.size(), blocks.size());
  std::size_t next = 0;
  for (std::size_t u = 0; u < states.size(); ++u)
    if (renumber[block_of[u]] == blocks.size()) renumber[block_of[u]] = next++;
  for (auto& b : block_of) b = renumber[b];
  return block_of;
}

} // namespace

SimulationWitness greatest_simulation(const ObservedSystem& a, const ObservedSystem& b) {
  require_comparable(a, b);
  const Relation rel = simulation_matrix(a, b);
  SimulationWitness witness;
  for (StateIndex s = 0; s < rel.size(); ++s)
    for (StateIndex t = 0; t < rel[s].size(); ++t)
      if (rel[s][t]) witness.pairs.emplace_back(s, t);
  return witness;
}

CoverVerdict covers(const ObservedSystem& b, const ObservedSystem& a) {
  CoverVerdict verdict;
  verdict.witness = greatest_simulation(a, b);
  const auto& ta = a.ts();
  verdict.covers = verdict.witness.contains(ta.initial(), b.ts().initial());
  if (verdict.covers) return verdict;

  std::vector<bool> has_partner(ta.state_count(), false);
  for (const auto& [s, t] : verdict.witness.pairs) has_partner[s] = true;

  // A partnerless state makes all its predecessors partnerless, so the
  // deepest one is where matching first becomes impossible.
  std::vector<std::size_t> depth(ta.state_count(), SIZE_MAX);
  std::deque<StateIndex> queue{ta.initial()};
  depth[ta.initial()] = 0;
  while (!queue.empty()) {
    const StateIndex s = queue.front();
    queue.pop_front();
    for (SymbolIndex x = 0; x < ta.symbol_count(); ++x)
      for (StateIndex t : ta.successors(s, x))
        if (depth[t] == SIZE_MAX) {
          depth[t] = depth[s] + 1;
          queue.push_back(t);
        }
  }
  verdict.stuck_state = ta.initial();
  std::size_t best_depth = 0;
  bool found = false;
  for (StateIndex s = 0; s < ta.state_count(); ++s) {
    if (depth[s] == SIZE_MAX || has_partner[s]) continue;
    const bool better = !found || depth[s] > best_depth ||
                        (depth[s] == best_depth &&
                         ta.state_name(s) < ta.state_name(*verdict.stuck_state));
    if (better) {
      verdict.stuck_state = s;
      best_depth = depth[s];
      found = true;
    }
  }
  return verdict;
}

bool covering_equivalent(const ObservedSystem& a, const ObservedSystem& b) {
  return covers(a, b).covers && covers(b, a).covers;
}

BisimulationPartition::BisimulationPartition(std::vector<std::size_t> block_of,
                                             std::size_t first_size)
    : block_of_(std::move(block_of)), first_size_(first_size), block_count_(0) {
  for (std::size_t b : block_of_) block_count_ = std::max(block_count_, b + 1);
}

std::vector<std::vector<std::pair<int, StateIndex>>> BisimulationPartition::blocks() const {
  std::vector<std::vector<std::pair<int, StateIndex>>> out(block_count_);
  for (std::size_t u = 0; u < block_of_.size(); ++u) {
    if (u < first_size_)
      out[block_of_[u]].emplace_back(0, static_cast<StateIndex>(u));
    else
      out[block_of_[u]].emplace_back(1, static_cast<StateIndex>(u - first_size_));
  }
  return out;
}

BisimulationVerdict bisimilar(const ObservedSystem& a, const ObservedSystem& b) {
  require_comparable(a, b);
  BisimulationPartition partition(refine({&a, &b}), a.ts().state_count());
  const bool same = partition.block_of_first(a.ts().initial()) ==
                    partition.block_of_second(b.ts().initial());
  return {same, std::move(partition)};
}

MooreMachine quotient(const ObservedSystem& m) {
  const auto& ts = m.ts();
  const std::vector<std::size_t> block_of = refine({&m});
  std::size_t count = 0;
  for (std::size_t b : block_of) count = std::max(count, b + 1);

  std::vector<std::vector<std::string>> members(count);
  std::vector<OutputValue> outputs(count, m.output(0));
  for (StateIndex s = 0; s < ts.state_count(); ++s) {
    members[block_of[s]].push_back(ts.state_name(s));
    outputs[block_of[s]] = m.output(s);
  }
  std::vector<std::string> names;
  for (auto& group : members) names.push_back(brace_name(std::move(group)));

  std::vector<Transition> transitions;
  for (const auto& t : ts.transitions())
    transitions.push_back({static_cast<StateIndex>(block_of[t.source]), t.label,
                           static_cast<StateIndex>(block_of[t.target])});
  return MooreMachine(TransitionSystem(ts.alphabet(), std::move(names),
                                       static_cast<StateIndex>(block_of[ts.initial()]),
                                       std::move(transitions)),
                      m.kind(), std::move(outputs));
}

} // namespace fsm
