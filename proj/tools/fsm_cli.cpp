// Command-line front end over the C interface of libfsm.

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fsm/fsm.h"

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;
constexpr int kMixed = 3;

struct Failure {
  std::string message;
};

struct DocumentDeleter {
  void operator()(fsm_document* d) const { fsm_document_free(d); }
};
struct MachineDeleter {
  void operator()(fsm_machine* m) const { fsm_machine_free(m); }
};
struct OutcomesDeleter {
  void operator()(fsm_outcomes* o) const { fsm_outcomes_free(o); }
};
struct StringDeleter {
  void operator()(char* s) const { fsm_string_free(s); }
};
using Document = std::unique_ptr<fsm_document, DocumentDeleter>;
using Machine = std::unique_ptr<fsm_machine, MachineDeleter>;
using Outcomes = std::unique_ptr<fsm_outcomes, OutcomesDeleter>;
using String = std::unique_ptr<char, StringDeleter>;

void check(fsm_status status) {
  if (status != FSM_OK) throw Failure{fsm_last_error()};
}

std::string take(char* s) {
  String owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

Document load(const std::string& path) {
  fsm_document* doc = nullptr;
  check(fsm_document_load(path.c_str(), &doc));
  return Document(doc);
}

/// FILE#NAME, or FILE alone when the file holds exactly one machine.
Machine select(const std::string& reference) {
  const auto hash = reference.rfind('#');
  const std::string path = hash == std::string::npos ? reference : reference.substr(0, hash);
  Document doc = load(path);
  fsm_machine* m = nullptr;
  if (hash == std::string::npos) {
    if (fsm_document_size(doc.get()) != 1)
      throw Failure{"'" + path + "' holds several machines; use FILE#NAME"};
    check(fsm_document_get(doc.get(), 0, &m));
  } else {
    check(fsm_document_find(doc.get(), reference.substr(hash + 1).c_str(), &m));
  }
  return Machine(m);
}

/// Comma-separated symbols, or one symbol per character.
std::vector<std::string> split_word(const std::string& text) {
  std::vector<std::string> word;
  if (text.find(',') != std::string::npos) {
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      word.push_back(text.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  } else {
    for (char c : text) word.emplace_back(1, c);
  }
  return word;
}

std::vector<const char*> c_strings(const std::vector<std::string>& items) {
  std::vector<const char*> out;
  for (const auto& s : items) out.push_back(s.c_str());
  return out;
}

std::string show_word(const std::string& comma_joined) {
  if (comma_joined.empty()) return "(empty word)";
  const auto word = split_word(comma_joined);
  for (const auto& s : word)
    if (s.size() != 1) return comma_joined;
  std::string out;
  for (const auto& s : word) out += s;
  return out;
}

void print_machine(const fsm_machine* m) {
  char* text = nullptr;
  check(fsm_machine_serialize(m, &text));
  std::cout << take(text);
}

int run_transform(const std::string& reference,
                  fsm_status (*transform)(const fsm_machine*, fsm_machine**)) {
  Machine m = select(reference);
  fsm_machine* result = nullptr;
  check(transform(m.get(), &result));
  Machine owned(result);
  print_machine(owned.get());
  return kYes;
}

int run_equiv(const std::string& kind, const std::string& first, const std::string& second) {
  Machine a = select(first);
  Machine b = select(second);
  if (kind == "language") {
    int equivalent = 0;
    char* counterexample = nullptr;
    check(fsm_language_equivalent(a.get(), b.get(), &equivalent, &counterexample));
    const std::string word = take(counterexample);
    if (equivalent) {
      std::cout << "equivalent\n";
      return kYes;
    }
    std::cout << "inequivalent\ncounterexample: " << show_word(word) << "\n";
    return kNo;
  }
  if (kind == "covering") {
    bool all = true;
    std::vector<std::string> report;
    for (auto [coverer, covered, coverer_ref, covered_ref] :
         {std::tuple{b.get(), a.get(), second, first},
          std::tuple{a.get(), b.get(), first, second}}) {
      int covers = 0;
      char* stuck = nullptr;
      check(fsm_covers(coverer, covered, &covers, &stuck));
      const std::string stuck_state = take(stuck);
      if (!covers) {
        all = false;
        report.push_back(coverer_ref + " does not cover " + covered_ref +
                         " (stuck state: " + stuck_state + ")");
      }
    }
    if (all) {
      std::cout << "equivalent\n";
      return kYes;
    }
    std::cout << "inequivalent\n";
    for (const auto& line : report) std::cout << line << "\n";
    return kNo;
  }
  int bisimilar = 0;
  std::size_t block_a = 0, block_b = 0;
  check(fsm_bisimilar(a.get(), b.get(), &bisimilar, &block_a, &block_b));
  std::cout << (bisimilar ? "equivalent\n" : "inequivalent\n");
  std::cout << "initial blocks: " << first << " -> " << block_a << ", " << second << " -> "
            << block_b << "\n";
  return bisimilar ? kYes : kNo;
}

int run_covers(const std::string& coverer_ref, const std::string& covered_ref) {
  Machine coverer = select(coverer_ref);
  Machine covered = select(covered_ref);
  int covers = 0;
  char* stuck = nullptr;
  check(fsm_covers(coverer.get(), covered.get(), &covers, &stuck));
  const std::string stuck_state = take(stuck);
  if (covers) {
    std::cout << coverer_ref << " covers " << covered_ref << "\n";
    return kYes;
  }
  std::cout << coverer_ref << " does not cover " << covered_ref << "\n"
            << "stuck state: " << stuck_state << "\n";
  return kNo;
}

int run_experiment(const std::string& reference, const std::string& presses) {
  Machine m = select(reference);
  const auto word = split_word(presses);
  const auto symbols = c_strings(word);
  fsm_outcomes* raw = nullptr;
  check(fsm_experiment(m.get(), symbols.data(), symbols.size(), &raw));
  Outcomes outcomes(raw);
  bool success = false, blocked = false;
  for (std::size_t i = 0; i < fsm_outcomes_size(outcomes.get()); ++i) {
    int ok = 0;
    std::size_t done = 0;
    check(fsm_outcomes_get(outcomes.get(), i, &ok, &done));
    if (ok) {
      success = true;
      std::cout << "Success\n";
    } else {
      blocked = true;
      std::cout << "Blocked(" << done << ")\n";
    }
  }
  if (success && !blocked) return kYes;
  return success ? kMixed : kNo;
}

int run_product(const std::string& path, const std::string& wiring) {
  Document doc = load(path);
  const std::size_t count = fsm_document_size(doc.get());
  std::vector<Machine> machines;
  for (std::size_t i = 0; i < count; ++i) {
    fsm_machine* m = nullptr;
    check(fsm_document_get(doc.get(), i, &m));
    machines.emplace_back(m);
  }
  fsm_machine* result = nullptr;
  if (wiring == "sync") {
    std::vector<const fsm_machine*> raw;
    for (const auto& m : machines) raw.push_back(m.get());
    check(fsm_product_sync(raw.data(), raw.size(), &result));
  } else if (wiring.rfind("experimenter:", 0) == 0) {
    const auto word = split_word(wiring.substr(std::string("experimenter:").size()));
    const auto symbols = c_strings(word);
    check(fsm_product_experimenter(machines.front().get(), symbols.data(), symbols.size(),
                                   &result));
  } else {
    throw Failure{"unknown wiring '" + wiring + "'; use experimenter:WORD or sync"};
  }
  Machine owned(result);
  print_machine(owned.get());
  return kYes;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-state machine toolkit: conversions, equivalences, experiments, products"};
  app.set_version_flag("--version", std::string("fsm ") + fsm_version());
  app.require_subcommand(1);

  std::string machine_ref, second_ref, word, kind = "language", output_view, expression,
                                                alphabet, wiring;

  auto* show = app.add_subcommand("show", "Print a machine in canonical form");
  show->add_option("machine", machine_ref, "FILE#NAME")->required();
  auto* dot = app.add_subcommand("dot", "Print a machine as a Graphviz digraph");
  dot->add_option("machine", machine_ref, "FILE#NAME")->required();
  auto* accepts = app.add_subcommand("accepts", "Exit 0 if the recognizer accepts WORD, else 1");
  accepts->add_option("machine", machine_ref, "FILE#NAME")->required();
  accepts->add_option("word", word, "symbols, concatenated or comma-separated")->required();
  auto* determinize = app.add_subcommand("determinize", "Subset construction");
  determinize->add_option("machine", machine_ref, "FILE#NAME")->required();
  auto* minimize = app.add_subcommand("minimize", "Minimal complete DFA");
  minimize->add_option("machine", machine_ref, "FILE#NAME")->required();
  auto* complete = app.add_subcommand("complete", "Add a sink for missing transitions");
  complete->add_option("machine", machine_ref, "FILE#NAME")->required();
  auto* encode = app.add_subcommand("encode-moore", "Attach an output map");
  encode->add_option("machine", machine_ref, "FILE#NAME")->required();
  encode->add_option("--output", output_view, "enabled or accept")
      ->required()
      ->check(CLI::IsMember({"enabled", "accept"}));
  auto* equiv = app.add_subcommand("equiv", "Exit 0 if equivalent, 1 if not");
  equiv->add_option("--kind", kind, "language, covering or bisim")
      ->check(CLI::IsMember({"language", "covering", "bisim"}));
  equiv->add_option("first", machine_ref, "FILE#NAME")->required();
  equiv->add_option("second", second_ref, "FILE#NAME")->required();
  auto* covers = app.add_subcommand("covers", "Exit 0 if the first machine covers the second");
  covers->add_option("coverer", machine_ref, "FILE#NAME")->required();
  covers->add_option("covered", second_ref, "FILE#NAME")->required();
  auto* experiment = app.add_subcommand("experiment", "Press buttons over all resolutions");
  experiment->add_option("machine", machine_ref, "FILE#NAME")->required();
  experiment->add_option("word", word, "button presses")->required();
  auto* product = app.add_subcommand("product", "Compose machines of a file");
  product->add_option("file", machine_ref, "FILE")->required();
  product->add_option("--wiring", wiring, "experimenter:WORD or sync")->required();
  auto* regex2nfa = app.add_subcommand("regex2nfa", "Regular expression to NFA");
  regex2nfa->add_option("expression", expression, "e.g. a(b|c)*")->required();
  regex2nfa->add_option("--alphabet", alphabet, "comma-separated symbols")->required();
  auto* nfa2regex = app.add_subcommand("nfa2regex", "NFA to regular expression");
  nfa2regex->add_option("machine", machine_ref, "FILE#NAME")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (show->parsed()) {
      print_machine(select(machine_ref).get());
      return kYes;
    }
    if (dot->parsed()) {
      char* text = nullptr;
      check(fsm_machine_to_dot(select(machine_ref).get(), &text));
      std::cout << take(text);
      return kYes;
    }
    if (accepts->parsed()) {
      const auto w = split_word(word);
      const auto symbols = c_strings(w);
      int accepted = 0;
      check(fsm_accepts(select(machine_ref).get(), symbols.data(), symbols.size(), &accepted));
      std::cout << (accepted ? "accepted\n" : "rejected\n");
      return accepted ? kYes : kNo;
    }
    if (determinize->parsed()) return run_transform(machine_ref, fsm_determinize);
    if (minimize->parsed()) return run_transform(machine_ref, fsm_minimize);
    if (complete->parsed()) return run_transform(machine_ref, fsm_complete);
    if (encode->parsed()) {
      fsm_machine* result = nullptr;
      check(fsm_encode_moore(select(machine_ref).get(),
                             output_view == "enabled" ? FSM_VIEW_ENABLED : FSM_VIEW_ACCEPT,
                             &result));
      Machine owned(result);
      print_machine(owned.get());
      return kYes;
    }
    if (equiv->parsed()) return run_equiv(kind, machine_ref, second_ref);
    if (covers->parsed()) return run_covers(machine_ref, second_ref);
    if (experiment->parsed()) return run_experiment(machine_ref, word);
    if (product->parsed()) return run_product(machine_ref, wiring);
    if (regex2nfa->parsed()) {
      const auto symbols = split_word(alphabet);
      const auto raw = c_strings(symbols);
      fsm_machine* result = nullptr;
      check(fsm_regex_to_nfa(expression.c_str(), raw.data(), raw.size(), &result));
      Machine owned(result);
      print_machine(owned.get());
      return kYes;
    }
    if (nfa2regex->parsed()) {
      char* text = nullptr;
      check(fsm_nfa_to_regex(select(machine_ref).get(), &text));
      std::cout << take(text) << "\n";
      return kYes;
    }
  } catch (const Failure& f) {
    std::cerr << "fsm: " << f.message << "\n";
    return kUsage;
  }
  return kUsage;
}
