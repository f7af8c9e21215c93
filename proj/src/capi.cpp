#include "fsm/fsm.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "fsm/compose.hpp"
#include "fsm/encode.hpp"
#include "fsm/equiv.hpp"
#include "fsm/format.hpp"
#include "fsm/regex.hpp"

struct fsm_document {
  fsm::MachineDocument value;
};

struct fsm_machine {
  fsm::NamedMachine value;
};

struct fsm_outcomes {
  std::vector<fsm::ExperimentOutcome> items;
};

namespace {

thread_local std::string last_error;

class StatusError : public std::runtime_error {
public:
  StatusError(fsm_status status, const std::string& message)
      : std::runtime_error(message), status(status) {}
  fsm_status status;
};

fsm_status status_of(fsm::ErrorCode code) {
  switch (code) {
  case fsm::ErrorCode::InvalidMachine: return FSM_ERR_INVALID_MACHINE;
  case fsm::ErrorCode::AlphabetMismatch: return FSM_ERR_ALPHABET_MISMATCH;
  case fsm::ErrorCode::UnknownState: return FSM_ERR_UNKNOWN_STATE;
  case fsm::ErrorCode::DeterminismRequired: return FSM_ERR_DETERMINISM_REQUIRED;
  case fsm::ErrorCode::OutputKindMismatch: return FSM_ERR_OUTPUT_KIND_MISMATCH;
  case fsm::ErrorCode::ConnectionRange: return FSM_ERR_CONNECTION_RANGE;
  case fsm::ErrorCode::Parse: return FSM_ERR_PARSE;
  }
  return FSM_ERR_INTERNAL;
}

template <typename Body>
fsm_status guarded(Body&& body) noexcept {
  try {
    body();
    last_error.clear();
    return FSM_OK;
  } catch (const StatusError& e) {
    last_error = e.what();
    return e.status;
  } catch (const fsm::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FSM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FSM_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return FSM_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw StatusError(FSM_ERR_INVALID_ARGUMENT, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fsm::Word to_word(const char* const* symbols, std::size_t length) {
  require(length == 0 || symbols, "word is null");
  fsm::Word word;
  for (std::size_t i = 0; i < length; ++i) {
    require(symbols[i], "word symbol is null");
    word.emplace_back(symbols[i]);
  }
  return word;
}

const fsm::Recognizer& recognizer_of(const fsm_machine* m) {
  const auto* r = std::get_if<fsm::Recognizer>(&m->value.machine);
  if (!r)
    throw fsm::Error(fsm::ErrorCode::OutputKindMismatch,
                     "machine '" + m->value.name + "' is a Moore machine, not a recognizer");
  return *r;
}

fsm::ObservedSystem observed(const fsm_machine* m) {
  return std::visit([](const auto& x) { return fsm::ObservedSystem(x); }, m->value.machine);
}

fsm::MooreMachine enabled_view(const fsm_machine* m) {
  if (const auto* r = std::get_if<fsm::Recognizer>(&m->value.machine))
    return fsm::lts_to_moore(r->ts());
  return std::get<fsm::MooreMachine>(m->value.machine);
}

const fsm::TransitionSystem& system_of(const fsm_machine* m) {
  return std::visit([](const auto& x) -> const fsm::TransitionSystem& { return x.ts(); },
                    m->value.machine);
}

fsm_machine* wrap(std::string name, fsm::Machine machine) {
  return new fsm_machine{fsm::NamedMachine{std::move(name), std::move(machine)}};
}

} // namespace

extern "C" {

const char* fsm_version(void) { return "1.0.0"; }

const char* fsm_last_error(void) { return last_error.c_str(); }

const char* fsm_status_string(fsm_status status) {
  switch (status) {
  case FSM_OK: return "ok";
  case FSM_ERR_INVALID_ARGUMENT: return "invalid argument";
  case FSM_ERR_PARSE: return "parse error";
  case FSM_ERR_IO: return "i/o error";
  case FSM_ERR_NOT_FOUND: return "not found";
  case FSM_ERR_INVALID_MACHINE: return "invalid machine";
  case FSM_ERR_ALPHABET_MISMATCH: return "alphabet mismatch";
  case FSM_ERR_UNKNOWN_STATE: return "unknown state";
  case FSM_ERR_DETERMINISM_REQUIRED: return "determinism required";
  case FSM_ERR_OUTPUT_KIND_MISMATCH: return "output kind mismatch";
  case FSM_ERR_CONNECTION_RANGE: return "connection range";
  case FSM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void fsm_string_free(char* s) { std::free(s); }

fsm_status fsm_document_parse(const char* text, fsm_document** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new fsm_document{fsm::parse(text)};
  });
}

fsm_status fsm_document_load(const char* path, fsm_document** out) {
  return guarded([&] {
    require(path && out, "null argument");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StatusError(FSM_ERR_IO, std::string("cannot open '") + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    *out = new fsm_document{fsm::parse(text.str())};
  });
}

void fsm_document_free(fsm_document* doc) { delete doc; }

size_t fsm_document_size(const fsm_document* doc) { return doc ? doc->value.size() : 0; }

fsm_status fsm_document_get(const fsm_document* doc, size_t index, fsm_machine** out) {
  return guarded([&] {
    require(doc && out, "null argument");
    if (index >= doc->value.size())
      throw StatusError(FSM_ERR_NOT_FOUND, "machine index out of range");
    *out = new fsm_machine{doc->value.machines()[index]};
  });
}

fsm_status fsm_document_find(const fsm_document* doc, const char* name, fsm_machine** out) {
  return guarded([&] {
    require(doc && name && out, "null argument");
    const fsm::NamedMachine* m = doc->value.find(name);
    if (!m) throw StatusError(FSM_ERR_NOT_FOUND, std::string("no machine named '") + name + "'");
    *out = new fsm_machine{*m};
  });
}

fsm_status fsm_document_serialize(const fsm_document* doc, char** out) {
  return guarded([&] {
    require(doc && out, "null argument");
    *out = copy_string(fsm::serialize(doc->value));
  });
}

void fsm_machine_free(fsm_machine* m) { delete m; }

fsm_machine_kind fsm_machine_get_kind(const fsm_machine* m) {
  return std::holds_alternative<fsm::Recognizer>(m->value.machine) ? FSM_RECOGNIZER : FSM_MOORE;
}

const char* fsm_machine_name(const fsm_machine* m) { return m->value.name.c_str(); }

size_t fsm_machine_state_count(const fsm_machine* m) { return system_of(m).state_count(); }

size_t fsm_machine_transition_count(const fsm_machine* m) {
  return system_of(m).transitions().size();
}

fsm_status fsm_machine_serialize(const fsm_machine* m, char** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = copy_string(fsm::serialize(m->value));
  });
}

fsm_status fsm_machine_to_dot(const fsm_machine* m, char** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = copy_string(fsm::to_dot(m->value));
  });
}

fsm_status fsm_accepts(const fsm_machine* m, const char* const* word, size_t length,
                       int* accepted) {
  return guarded([&] {
    require(m && accepted, "null argument");
    *accepted = fsm::accepts(recognizer_of(m), to_word(word, length)) ? 1 : 0;
  });
}

fsm_status fsm_determinize(const fsm_machine* m, fsm_machine** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = wrap(m->value.name, fsm::determinize(recognizer_of(m)));
  });
}

fsm_status fsm_complete(const fsm_machine* m, fsm_machine** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = wrap(m->value.name, fsm::complete(recognizer_of(m)));
  });
}

fsm_status fsm_minimize(const fsm_machine* m, fsm_machine** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = wrap(m->value.name, fsm::minimize(recognizer_of(m)));
  });
}

fsm_status fsm_regex_to_nfa(const char* expression, const char* const* alphabet,
                            size_t alphabet_size, fsm_machine** out) {
  return guarded([&] {
    require(expression && out, "null argument");
    *out = wrap("regex", fsm::regex_to_nfa(fsm::parse_regex(expression),
                                           to_word(alphabet, alphabet_size)));
  });
}

fsm_status fsm_nfa_to_regex(const fsm_machine* m, char** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = copy_string(fsm::to_string(fsm::nfa_to_regex(recognizer_of(m))));
  });
}

fsm_status fsm_encode_moore(const fsm_machine* m, fsm_output_view view, fsm_machine** out) {
  return guarded([&] {
    require(m && out, "null argument");
    require(view == FSM_VIEW_ENABLED || view == FSM_VIEW_ACCEPT, "unknown output view");
    if (const auto* r = std::get_if<fsm::Recognizer>(&m->value.machine)) {
      *out = wrap(m->value.name, view == FSM_VIEW_ENABLED ? fsm::lts_to_moore(r->ts())
                                                          : fsm::recognizer_to_moore(*r));
    } else {
      *out = new fsm_machine{m->value};
    }
  });
}

fsm_status fsm_language_equivalent(const fsm_machine* a, const fsm_machine* b, int* equivalent,
                                   char** counterexample) {
  return guarded([&] {
    require(a && b && equivalent, "null argument");
    const fsm::LanguageVerdict verdict =
        fsm::language_equivalent(recognizer_of(a), recognizer_of(b));
    *equivalent = verdict.equivalent ? 1 : 0;
    if (counterexample) {
      *counterexample = nullptr;
      if (!verdict.equivalent) {
        std::string joined;
        for (std::size_t i = 0; i < verdict.counterexample.size(); ++i) {
          if (i) joined += ',';
          joined += verdict.counterexample[i];
        }
        *counterexample = copy_string(joined);
      }
    }
  });
}

fsm_status fsm_covers(const fsm_machine* b, const fsm_machine* a, int* covers,
                      char** stuck_state) {
  return guarded([&] {
    require(a && b && covers, "null argument");
    const fsm::ObservedSystem covered = observed(a);
    const fsm::CoverVerdict verdict = fsm::covers(observed(b), covered);
    *covers = verdict.covers ? 1 : 0;
    if (stuck_state) {
      *stuck_state = nullptr;
      if (verdict.stuck_state)
        *stuck_state = copy_string(covered.ts().state_name(*verdict.stuck_state));
    }
  });
}

fsm_status fsm_bisimilar(const fsm_machine* a, const fsm_machine* b, int* bisimilar,
                         size_t* block_of_a_initial, size_t* block_of_b_initial) {
  return guarded([&] {
    require(a && b && bisimilar, "null argument");
    const fsm::ObservedSystem oa = observed(a);
    const fsm::ObservedSystem ob = observed(b);
    const fsm::BisimulationVerdict verdict = fsm::bisimilar(oa, ob);
    *bisimilar = verdict.bisimilar ? 1 : 0;
    if (block_of_a_initial)
      *block_of_a_initial = verdict.partition.block_of_first(oa.ts().initial());
    if (block_of_b_initial)
      *block_of_b_initial = verdict.partition.block_of_second(ob.ts().initial());
  });
}

fsm_status fsm_experiment(const fsm_machine* m, const char* const* presses, size_t length,
                          fsm_outcomes** out) {
  return guarded([&] {
    require(m && out, "null argument");
    const auto outcomes = fsm::experiment(enabled_view(m), to_word(presses, length));
    *out = new fsm_outcomes{{outcomes.begin(), outcomes.end()}};
  });
}

void fsm_outcomes_free(fsm_outcomes* outcomes) { delete outcomes; }

size_t fsm_outcomes_size(const fsm_outcomes* outcomes) {
  return outcomes ? outcomes->items.size() : 0;
}

fsm_status fsm_outcomes_get(const fsm_outcomes* outcomes, size_t index, int* success,
                            size_t* presses_completed) {
  return guarded([&] {
    require(outcomes && success && presses_completed, "null argument");
    if (index >= outcomes->items.size())
      throw StatusError(FSM_ERR_NOT_FOUND, "outcome index out of range");
    *success = outcomes->items[index].blocked ? 0 : 1;
    *presses_completed = outcomes->items[index].presses_completed;
  });
}

fsm_status fsm_product_experimenter(const fsm_machine* process, const char* const* presses,
                                    size_t length, fsm_machine** out) {
  return guarded([&] {
    require(process && out, "null argument");
    fsm::Product product = fsm::general_product(
        fsm::experimenter_spec(enabled_view(process), to_word(presses, length)));
    *out = wrap("product", std::move(product.machine));
  });
}

fsm_status fsm_product_sync(const fsm_machine* const* machines, size_t count,
                            fsm_machine** out) {
  return guarded([&] {
    require(machines && count > 0 && out, "null argument");
    std::vector<fsm::MooreMachine> components;
    for (size_t i = 0; i < count; ++i) {
      require(machines[i], "null machine");
      components.push_back(enabled_view(machines[i]));
    }
    fsm::Product product = fsm::general_product(fsm::sync_spec(std::move(components)));
    *out = wrap("product", std::move(product.machine));
  });
}

} // extern "C"
