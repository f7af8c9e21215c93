#include "fsm/compose.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace fsm {

namespace {

std::string tuple_text(const std::vector<std::string>& parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out + ")";
}

} // namespace

Product general_product(const ProductSpec& spec) {
  const auto& components = spec.components;
  if (components.empty())
    throw Error(ErrorCode::InvalidMachine, "product needs at least one component");
  if (spec.connections.size() != components.size())
    throw Error(ErrorCode::InvalidMachine, "product needs one connection per component");

  std::vector<std::string> global = spec.global_alphabet;
  std::sort(global.begin(), global.end());
  global.erase(std::unique(global.begin(), global.end()), global.end());

  using Tuple = std::vector<StateIndex>;
  std::map<Tuple, StateIndex> index;
  std::vector<Tuple> tuples;
  std::deque<StateIndex> queue;
  std::vector<Transition> transitions;

  auto intern = [&](const Tuple& t) {
    auto [it, inserted] = index.emplace(t, static_cast<StateIndex>(tuples.size()));
    if (inserted) {
      tuples.push_back(t);
      queue.push_back(it->second);
    }
    return it->second;
  };

  Tuple start;
  for (const auto& c : components) start.push_back(c.ts().initial());
  intern(start);

  while (!queue.empty()) {
    const StateIndex current = queue.front();
    queue.pop_front();
    const Tuple tuple = tuples[current];
    std::vector<OutputValue> outputs;
    for (std::size_t i = 0; i < components.size(); ++i)
      outputs.push_back(components[i].output(tuple[i]));

    for (SymbolIndex g = 0; g < global.size(); ++g) {
      // choices[i]: the states component i may move to
      std::vector<std::vector<StateIndex>> choices;
      bool blocked = false;
      for (std::size_t i = 0; i < components.size() && !blocked; ++i) {
        const auto& ts = components[i].ts();
        const std::optional<std::string> local = spec.connections[i](global[g], outputs);
        if (!local) {
          choices.push_back({tuple[i]});
          continue;
        }
        const auto x = ts.find_symbol(*local);
        if (!x)
          throw Error(ErrorCode::ConnectionRange,
                      "connection " + std::to_string(i) + " produced '" + *local +
                          "' outside the component alphabet");
        auto succ = ts.successors(tuple[i], *x);
        if (succ.empty()) blocked = true;
        choices.emplace_back(succ.begin(), succ.end());
      }
      if (blocked) continue;

      std::vector<std::size_t> pick(components.size(), 0);
      while (true) {
        Tuple next(components.size());
        for (std::size_t i = 0; i < components.size(); ++i) next[i] = choices[i][pick[i]];
        transitions.push_back({current, g, intern(next)});
        std::size_t i = 0;
        while (i < components.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
        if (i == components.size()) break;
      }
    }
  }

  std::vector<std::string> names;
  std::vector<OutputValue> outputs;
  for (const auto& tuple : tuples) {
    std::vector<std::string> state_parts, output_parts;
    for (std::size_t i = 0; i < components.size(); ++i) {
      state_parts.push_back(components[i].ts().state_name(tuple[i]));
      output_parts.push_back(render(components[i].output(tuple[i])));
    }
    names.push_back(tuple_text(state_parts));
    outputs.emplace_back(Token{tuple_text(output_parts)});
  }
  return {MooreMachine(TransitionSystem(std::move(global), std::move(names), 0,
                                        std::move(transitions)),
                       OutputKind::Token, std::move(outputs)),
          std::move(tuples)};
}

ProductSpec passthrough_spec(MooreMachine component) {
  std::vector<std::string> alphabet = component.ts().alphabet();
  ProductSpec spec{{std::move(component)}, std::move(alphabet), {}};
  spec.connections.push_back(
      [](const std::string& g, std::span<const OutputValue>) -> std::optional<std::string> {
        return g;
      });
  return spec;
}

ProductSpec experimenter_spec(MooreMachine process, const Word& presses) {
  if (process.kind() != OutputKind::SymbolSet)
    throw Error(ErrorCode::OutputKindMismatch, "experiments need symbol-set outputs");
  std::vector<std::string> alphabet = process.ts().alphabet();
  MooreMachine experimenter = make_experimenter(presses, alphabet);
  ProductSpec spec{{std::move(process), std::move(experimenter)}, std::move(alphabet), {}};
  auto wanted = [](const std::string& g,
                   std::span<const OutputValue> outputs) -> std::optional<std::string> {
    const auto& want = std::get<SymbolSet>(outputs[1]);
    if (want.size() == 1 && *want.begin() == g) return g;
    return std::nullopt;
  };
  spec.connections = {wanted, wanted};
  return spec;
}

ProductSpec sync_spec(std::vector<MooreMachine> components) {
  ProductSpec spec;
  for (const auto& c : components)
    spec.global_alphabet.insert(spec.global_alphabet.end(), c.ts().alphabet().begin(),
                                c.ts().alphabet().end());
  for (const auto& c : components) {
    std::vector<std::string> own = c.ts().alphabet();
    spec.connections.push_back(
        [own = std::move(own)](const std::string& g,
                               std::span<const OutputValue>) -> std::optional<std::string> {
          if (std::binary_search(own.begin(), own.end(), g)) return g;
          return std::nullopt;
        });
  }
  spec.components = std::move(components);
  return spec;
}

std::string to_string(const ExperimentOutcome& outcome) {
  if (!outcome.blocked) return "Success";
  return "Blocked(" + std::to_string(outcome.presses_completed) + ")";
}

std::set<ExperimentOutcome> experiment(const MooreMachine& process, const Word& presses) {
  if (process.kind() != OutputKind::SymbolSet)
    throw Error(ErrorCode::OutputKindMismatch, "experiments need symbol-set outputs");
  const auto& ts = process.ts();
  std::vector<SymbolIndex> symbols;
  for (const auto& p : presses) symbols.push_back(ts.symbol_index(p));

  std::set<ExperimentOutcome> outcomes;
  std::set<std::pair<StateIndex, std::size_t>> visited{{ts.initial(), 0}};
  std::deque<std::pair<StateIndex, std::size_t>> queue{{ts.initial(), 0}};
  while (!queue.empty()) {
    const auto [state, done] = queue.front();
    queue.pop_front();
    if (done == symbols.size()) {
      outcomes.insert(ExperimentOutcome::success());
      continue;
    }
    const auto& unlocked = std::get<SymbolSet>(process.output(state));
    auto succ = ts.successors(state, symbols[done]);
    if (!unlocked.contains(presses[done]) || succ.empty()) {
      outcomes.insert(ExperimentOutcome::blocked_after(done));
      continue;
    }
    for (StateIndex next : succ)
      if (visited.emplace(next, done + 1).second) queue.emplace_back(next, done + 1);
  }
  return outcomes;
}

MooreMachine make_experimenter(const Word& presses, std::vector<std::string> alphabet) {
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  std::vector<std::string> names;
  std::vector<OutputValue> outputs;
  std::vector<NamedTransition> transitions;
  for (std::size_t i = 0; i <= presses.size(); ++i) {
    names.push_back("e" + std::to_string(i));
    outputs.emplace_back(i < presses.size() ? SymbolSet{presses[i]} : SymbolSet{});
    if (i > 0) transitions.push_back({names[i - 1], presses[i - 1], names[i]});
  }
  return MooreMachine(
      TransitionSystem::from_names(std::move(alphabet), std::move(names), "e0", transitions),
      OutputKind::SymbolSet, std::move(outputs));
}

std::set<ExperimentOutcome> experiment_via_product(const MooreMachine& process,
                                                   const Word& presses) {
  const Product product = general_product(experimenter_spec(process, presses));
  const auto& ts = product.machine.ts();
  std::set<ExperimentOutcome> outcomes;
  for (StateIndex s = 0; s < ts.state_count(); ++s) {
    // make_experimenter lays out e0..ek at indices 0..k.
    const std::size_t at = product.tuples[s][1];
    if (at == presses.size()) {
      outcomes.insert(ExperimentOutcome::success());
      continue;
    }
    if (ts.successors(s, ts.symbol_index(presses[at])).empty())
      outcomes.insert(ExperimentOutcome::blocked_after(at));
  }
  return outcomes;
}

} // namespace fsm
