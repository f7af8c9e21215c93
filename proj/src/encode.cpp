#include "fsm/encode.hpp"

namespace fsm {

SymbolSet enabled_actions(const TransitionSystem& ts, std::string_view state) {
  return enabled_actions(ts, ts.state_index(state));
}

SymbolSet enabled_actions(const TransitionSystem& ts, StateIndex state) {
  if (state >= ts.state_count())
    throw Error(ErrorCode::UnknownState, "state index out of range");
  SymbolSet enabled;
  for (SymbolIndex x = 0; x < ts.symbol_count(); ++x)
    if (!ts.successors(state, x).empty()) enabled.insert(ts.symbol_name(x));
  return enabled;
}

MooreMachine lts_to_moore(const TransitionSystem& ts) {
  std::vector<OutputValue> outputs;
  outputs.reserve(ts.state_count());
  for (StateIndex s = 0; s < ts.state_count(); ++s) outputs.emplace_back(enabled_actions(ts, s));
  return MooreMachine(ts, OutputKind::SymbolSet, std::move(outputs));
}

MooreMachine recognizer_to_moore(const Recognizer& r) {
  std::vector<OutputValue> outputs;
  outputs.reserve(r.ts().state_count());
  for (StateIndex s = 0; s < r.ts().state_count(); ++s) outputs.emplace_back(r.is_accepting(s));
  return MooreMachine(r.ts(), OutputKind::Boolean, std::move(outputs));
}

} // namespace fsm
