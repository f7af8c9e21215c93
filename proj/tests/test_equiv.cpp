#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "fsm/error.hpp"

using namespace fsm;
using namespace fsm::testing;

namespace {

std::set<std::pair<std::string, std::string>> named_pairs(const SimulationWitness& w,
                                                          const Recognizer& a,
                                                          const Recognizer& b) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [s, t] : w.pairs) out.insert({a.ts().state_name(s), b.ts().state_name(t)});
  return out;
}

/// Language equivalence by word enumeration up to the length at which any
/// difference between machines of these sizes must already show.
bool oracle_language_equivalent(const Recognizer& a, const Recognizer& b) {
  const std::size_t bound = minimize(a).ts().state_count() + minimize(b).ts().state_count();
  return !brute_distinguish(a, b, bound).has_value();
}

} // namespace

TEST_CASE("A and B: covering goes one way only") {
  const auto a = machine_a(), b = machine_b();

  const auto a_over_b = covers(a, b);
  CHECK(a_over_b.covers);
  CHECK_FALSE(a_over_b.stuck_state.has_value());

  const auto b_over_a = covers(b, a);
  CHECK_FALSE(b_over_a.covers);
  REQUIRE(b_over_a.stuck_state.has_value());
  CHECK(a.ts().state_name(*b_over_a.stuck_state) == "A1");

  CHECK_FALSE(covering_equivalent(a, b));
  CHECK_FALSE(bisimilar(a, b).bisimilar);
  CHECK(language_equivalent(a, b).equivalent);
}

TEST_CASE("simulation of B by A relates the expected states") {
  const auto a = machine_a(), b = machine_b();
  const auto w = greatest_simulation(b, a);
  const std::set<std::pair<std::string, std::string>> expected{
      {"B0", "A0"}, {"B1", "A1"}, {"B1x", "A1"}, {"B2", "A2"}, {"B3", "A3"}};
  // Rejecting dead ends are simulated by any rejecting state as well.
  for (const auto& p : expected) CHECK(named_pairs(w, b, a).contains(p));
  CHECK(named_pairs(w, b, a) ==
        [&] {
          std::set<std::pair<std::string, std::string>> o;
          for (const auto& [s, t] : oracle_simulation(b, a))
            o.insert({b.ts().state_name(s), a.ts().state_name(t)});
          return o;
        }());
  CHECK(is_valid_simulation(b, a, w));
}

TEST_CASE("SIM_EQ pair is covering-equivalent but not bisimilar") {
  const auto s1 = sim_eq_1(), s2 = sim_eq_2();
  CHECK(covering_equivalent(s1, s2));
  CHECK_FALSE(bisimilar(s1, s2).bisimilar);
  CHECK_FALSE(oracle_bisimilar(s1, s2));
  CHECK(language_equivalent(s1, s2).equivalent);
}

TEST_CASE("every machine is equivalent to itself") {
  for (const auto& m : {machine_a(), machine_b(), sim_eq_1(), sim_eq_2()}) {
    CHECK(covering_equivalent(m, m));
    CHECK(bisimilar(m, m).bisimilar);
    const auto w = greatest_simulation(m, m);
    for (StateIndex s = 0; s < m.ts().state_count(); ++s) CHECK(w.contains(s, s));
  }
}

TEST_CASE("equivalences reject mismatched inputs") {
  const auto a = machine_a();
  const auto other = make_recognizer({"a", "b"}, {"s"}, "s", {}, {});
  CHECK_THROWS_AS(covers(a, other), Error);
  CHECK_THROWS_AS(bisimilar(a, other), Error);

  const ObservedSystem bits(a);
  const ObservedSystem sets(lts_to_moore(a.ts()));
  try {
    bisimilar(bits, sets);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutputKindMismatch);
  }
  try {
    covers(bits, sets);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutputKindMismatch);
  }
}

TEST_CASE("quotient") {
  SECTION("B has nothing to merge") {
    const auto q = quotient(machine_b());
    CHECK(q.ts().state_count() == 5);
    CHECK(isomorphic(q, recognizer_to_moore(machine_b())));
  }
  SECTION("identical accepting sinks merge") {
    const auto m = make_recognizer({"a"}, {"s", "t", "u"}, "s", {{"s", "a", "t"}, {"s", "a", "u"}},
                                   {"t", "u"});
    const auto q = quotient(m);
    CHECK(q.ts().state_count() == 2);
    CHECK(q.ts().find_state("{t,u}").has_value());
  }
  SECTION("random machines are bisimilar to their quotient") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const auto m = random_recognizer(rng);
      const auto q = quotient(m);
      REQUIRE(oracle_bisimilar(m, q));
      CHECK(q.ts().state_count() <= m.ts().state_count());
    }
  }
}

TEST_CASE("simulation agrees with the bounded-depth oracle") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const auto a = random_recognizer(rng);
    const auto b = random_recognizer_over(rng, a.ts().symbol_count());
    const auto w = greatest_simulation(a, b);
    const auto oracle = oracle_simulation(a, b);
    REQUIRE(std::set(w.pairs.begin(), w.pairs.end()) == oracle);
    REQUIRE(is_valid_simulation(a, b, w));
    const auto v = covers(b, a);
    REQUIRE(v.covers == oracle.contains({a.ts().initial(), b.ts().initial()}));
    if (v.covers) {
      // Every reachable state of the covered machine has a partner.
      for (StateIndex s : reachable(a.ts())) {
        bool partnered = false;
        for (const auto& [x, y] : w.pairs) partnered |= x == s;
        REQUIRE(partnered);
      }
    } else {
      REQUIRE(v.stuck_state.has_value());
      REQUIRE(*v.stuck_state < a.ts().state_count());
    }
  }
}

TEST_CASE("partition refinement agrees with the naive fixpoint") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_recognizer(rng);
    const auto b = trial % 3 == 0 ? split_state(a, rng)
                                  : random_recognizer_over(rng, a.ts().symbol_count());
    const auto v = bisimilar(a, b);
    REQUIRE(v.bisimilar == oracle_bisimilar(a, b));
    REQUIRE(is_stable_partition(a, b, v.partition));
    if (trial % 3 == 0) REQUIRE(v.bisimilar);

    // Blocks coincide exactly with the classes of the greatest bisimulation.
    const auto rel = oracle_bisimulation(a, b);
    const std::size_t n = a.ts().state_count();
    auto block = [&](std::size_t u) {
      return u < n ? v.partition.block_of_first(static_cast<StateIndex>(u))
                   : v.partition.block_of_second(static_cast<StateIndex>(u - n));
    };
    for (std::size_t u = 0; u < rel.size(); ++u)
      for (std::size_t w = 0; w < rel.size(); ++w) REQUIRE((block(u) == block(w)) == rel[u][w]);
  }
}

TEST_CASE("block numbering follows first members") {
  const auto v = bisimilar(machine_a(), machine_a());
  CHECK(v.partition.block_of_first(0) == 0);
  std::size_t seen = 0;
  for (StateIndex s = 0; s < 4; ++s) {
    CHECK(v.partition.block_of_first(s) <= seen);
    if (v.partition.block_of_first(s) == seen) ++seen;
  }
  std::size_t members = 0;
  for (const auto& b : v.partition.blocks()) members += b.size();
  CHECK(members == 8);
}

TEST_CASE("hierarchy: bisimilar implies covering implies language") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_recognizer(rng);
    const auto b = trial % 4 == 0 ? split_state(a, rng)
                                  : random_recognizer_over(rng, a.ts().symbol_count());
    const bool bis = bisimilar(a, b).bisimilar;
    const bool cov = covering_equivalent(a, b);
    const bool lang = language_equivalent(a, b).equivalent;
    if (bis) REQUIRE(cov);
    if (cov) REQUIRE(lang);
  }
}

TEST_CASE("the three equivalences coincide on complete DFAs") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const auto a = random_complete_dfa(rng, k);
    const auto b = trial % 5 == 0 ? a : random_complete_dfa(rng, k);
    const bool lang = language_equivalent(a, b).equivalent;
    REQUIRE(lang == oracle_language_equivalent(a, b));
    REQUIRE(lang == covering_equivalent(a, b));
    REQUIRE(lang == bisimilar(a, b).bisimilar);
  }
}

TEST_CASE("simulation composes and bisimilarity is an equivalence") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_recognizer(rng, 4, 2);
    const std::size_t k = a.ts().symbol_count();
    const auto b = trial % 2 ? split_state(a, rng) : random_recognizer_over(rng, k, 4);
    const auto c = trial % 2 ? split_state(b, rng) : random_recognizer_over(rng, k, 4);

    const auto ab = greatest_simulation(a, b), bc = greatest_simulation(b, c);
    const auto ac = greatest_simulation(a, c);
    for (const auto& [s, t] : ab.pairs)
      for (const auto& [t2, u] : bc.pairs)
        if (t == t2) REQUIRE(ac.contains(s, u));

    REQUIRE(bisimilar(a, b).bisimilar == bisimilar(b, a).bisimilar);
    if (bisimilar(a, b).bisimilar && bisimilar(b, c).bisimilar) REQUIRE(bisimilar(a, c).bisimilar);
  }
}

TEST_CASE("Moore views of A and B") {
  const auto ma = lts_to_moore(machine_a().ts()), mb = lts_to_moore(machine_b().ts());
  CHECK_FALSE(bisimilar(ma, mb).bisimilar);
  CHECK_FALSE(oracle_bisimilar(ma, mb));
  CHECK(covers(ma, mb).covers == oracle_simulation(mb, ma).contains({0, 0}));
}
