#pragma once

#include <string_view>

#include "fsm/core.hpp"

namespace fsm {

/// Labels of the transitions leaving `state`: the buttons that are unlocked
/// there. Throws ErrorCode::UnknownState.
SymbolSet enabled_actions(const TransitionSystem& ts, std::string_view state);
SymbolSet enabled_actions(const TransitionSystem& ts, StateIndex state);

/// Same transition system with each state's enabled actions as its output.
MooreMachine lts_to_moore(const TransitionSystem& ts);

/// Same transition system with the accept bit as a Boolean output.
MooreMachine recognizer_to_moore(const Recognizer& r);

} // namespace fsm
