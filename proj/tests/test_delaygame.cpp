#include <gtest/gtest.h>

#include <random>

#include "lookahead/delaygame.hpp"
#include "lookahead/errors.hpp"
#include "lookahead/generate.hpp"
#include "lookahead/sggame.hpp"
#include "oracles.hpp"

using namespace lookahead;

namespace {

ParityAutomaton copy_dpa() { return oracle::load_fixture("copy.dpa"); }

// Delay-0 machine emitting the input (flip = false) or its complement.
StrategyMachine echo_machine(const ParityAutomaton& a, bool flip) {
  return StrategyMachine(0, a.inputs(), a.outputs(), 1, 0,
                         {{0, Letter(flip ? 1 : 0)}, {0, Letter(flip ? 0 : 1)}});
}

// Delay-1 copy: remembers the previous letter.
StrategyMachine delayed_copy(const ParityAutomaton& a) {
  return StrategyMachine(1, a.inputs(), a.outputs(), 3, 0,
                         {{1, kWait}, {2, kWait}, {1, 0}, {2, 0}, {1, 1}, {2, 1}});
}

std::vector<BigInt> naive_f2(const DelaySpec& f, std::size_t k) {
  std::vector<BigInt> out{BigInt(f.at(0))};
  BigInt sum = out[0];
  while (out.size() < k) {
    BigInt next = 0;
    for (BigInt j = 0; j <= 2 * sum; ++j) next += f.at(static_cast<std::size_t>(j));
    out.push_back(next);
    sum += next;
  }
  return out;
}

}  // namespace

TEST(DelaySpec, ConstructionAndValues) {
  EXPECT_THROW(DelaySpec({1, 0}, 1), InvalidArgument);
  EXPECT_THROW(DelaySpec({}, 0), InvalidArgument);
  auto c3 = DelaySpec::constant(3);
  EXPECT_EQ(c3.at(0), 4u);
  EXPECT_EQ(c3.at(7), 1u);
  EXPECT_TRUE(c3.bounded());
  EXPECT_EQ(c3.capacity(), 4u);
  EXPECT_EQ(DelaySpec({2, 3}, 1).capacity(), 4u);
  EXPECT_FALSE(DelaySpec({}, 2).bounded());
  EXPECT_THROW(DelaySpec({}, 2).capacity(), InvalidArgument);
  EXPECT_EQ(to_string(DelaySpec({2, 3}, 1)), "[2,3],1");
}

TEST(FPrime, Examples) {
  EXPECT_EQ(f_prime(DelaySpec::constant(3)), DelaySpec({5}, 1));
  EXPECT_EQ(f_prime(DelaySpec({2, 3}, 1)), DelaySpec({5}, 1));
  EXPECT_EQ(f_prime(DelaySpec({}, 1)), DelaySpec({2}, 1));
  EXPECT_EQ(f_prime(DelaySpec({1, 2, 7}, 3)), DelaySpec({3, 7}, 3));
}

TEST(FDoublePrime, Examples) {
  EXPECT_EQ(f_double_prime(DelaySpec({}, 1), 3), (std::vector<BigInt>{1, 3, 9}));
  EXPECT_EQ(f_double_prime(DelaySpec::constant(1), 2), (std::vector<BigInt>{2, 6}));
  EXPECT_THROW(f_double_prime(DelaySpec({}, 1), 0), InvalidArgument);
}

TEST(FDoublePrime, MatchesNaiveSumAndIsMonotone) {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::uint64_t> head(rng() % 4);
    for (auto& v : head) v = 1 + rng() % 5;
    DelaySpec f(head, 1 + rng() % 3);
    auto got = f_double_prime(f, 4);
    EXPECT_EQ(got, naive_f2(f, 4));
    for (std::size_t j = 1; j < got.size(); ++j) EXPECT_GE(got[j], got[j - 1]);
  }
}

TEST(FDoublePrime, BitBudget) {
  EXPECT_THROW(f_double_prime(DelaySpec({}, 1), 40, 16), BudgetExceeded);
}

TEST(DelayArena, RejectsUnboundedTail) {
  EXPECT_THROW(build_delay_arena(copy_dpa(), DelaySpec({}, 2)), InvalidArgument);
}

TEST(DelayArena, CopyAtDelayZero) {
  auto a = copy_dpa();
  auto g = build_delay_arena(a, DelaySpec::constant(0));
  // I: (0, round 0), (0|1, round 1); O: one per I vertex and buffered letter.
  EXPECT_EQ(g.arena.size(), 9u);
  auto sol = solve(g.arena);
  EXPECT_EQ(sol.winner[g.initial], Player::O);
  EXPECT_EQ(g.arena.color(g.initial), 0u);
  EXPECT_EQ(g.describe(g.initial, a), "I q=0 buf=- round=0 rem=1");
}

TEST(DelayArena, StructureAndBufferBound) {
  std::mt19937_64 rng(83);
  for (int i = 0; i < 40; ++i) {
    auto a = random_dpa(rng, 1 + i % 4, 1 + i % 3);
    std::vector<std::uint64_t> head(1 + rng() % 3);
    for (auto& v : head) v = 1 + rng() % 3;
    DelaySpec f(head, 1);
    auto g = build_delay_arena(a, f);
    EXPECT_LE(BigInt(g.arena.size()), delay_arena_size_bound(a, f));
    for (Vertex v = 0; v < g.arena.size(); ++v) {
      const auto& x = g.vertices[v];
      EXPECT_LE(x.buffer.size(), f.capacity());
      EXPECT_EQ(g.find(x), v);
      if (x.kind == DelayVertex::Kind::Input) {
        EXPECT_EQ(g.arena.owner(v), Player::I);
        EXPECT_EQ(g.arena.successors(v).size(), a.inputs().size());
        EXPECT_GE(x.remaining, 1u);
      } else {
        EXPECT_EQ(g.arena.owner(v), Player::O);
        EXPECT_EQ(g.arena.successors(v).size(), a.outputs().size());
        EXPECT_FALSE(x.buffer.empty());
        EXPECT_EQ(g.arena.color(v), 0u);
      }
    }
  }
}

TEST(DelayArena, BudgetReportsBound) {
  auto a = oracle::load_fixture("ex33.dpa");
  try {
    build_delay_arena(a, DelaySpec::constant(3), 10);
    FAIL() << "no error";
  } catch (const BudgetExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("size budget of 10 exceeded"), std::string::npos);
  }
}

TEST(SolveFixedDelay, Ex33) {
  auto a = oracle::load_fixture("ex33.dpa");
  const Player expected[] = {Player::I, Player::I, Player::I, Player::O};
  for (std::size_t d = 0; d < 4; ++d) EXPECT_EQ(solve_fixed_delay(a, d).winner, expected[d]) << d;
}

TEST(SolveFixedDelay, ShiftAndInfinitelyManyOnes) {
  auto s1 = oracle::load_fixture("shift1.dpa");
  EXPECT_EQ(solve_fixed_delay(s1, 0).winner, Player::I);
  EXPECT_EQ(solve_fixed_delay(s1, 1).winner, Player::O);
  auto inf = oracle::load_fixture("infones.dpa");
  for (std::size_t d = 0; d <= 3; ++d) EXPECT_EQ(solve_fixed_delay(inf, d).winner, Player::I);
  auto c = copy_dpa();
  for (std::size_t d = 0; d <= 4; ++d) EXPECT_EQ(solve_fixed_delay(c, d).winner, Player::O);
}

TEST(SolveFixedDelay, Monotone) {
  std::mt19937_64 rng(89);
  for (int i = 0; i < 60; ++i) {
    auto a = random_dpa(rng, 1 + i % 4, 1 + i % 3);
    Player prev = solve_fixed_delay(a, 0).winner;
    for (std::size_t d = 1; d <= 4; ++d) {
      Player cur = solve_fixed_delay(a, d).winner;
      if (prev == Player::O) EXPECT_EQ(cur, Player::O);
      prev = cur;
    }
  }
}

TEST(OracleMachine, WinsAndObeysContract) {
  auto a = oracle::load_fixture("ex33.dpa");
  auto r = solve_fixed_delay(a, 3);
  auto m = oracle_machine(a, r);
  EXPECT_EQ(m.delay(), 3u);
  EXPECT_NO_THROW(check_emission_contract(m));
  EXPECT_TRUE(verify_synthesized(a, m, 3));
  EXPECT_TRUE(oracle::raw_verify(a, m, 3));
  EXPECT_EQ(parse_strategy(strategy_dump(a, r)), m);
}

TEST(OracleMachine, RandomAutomataAgreeWithVerifier) {
  std::mt19937_64 rng(97);
  for (int i = 0; i < 40; ++i) {
    auto a = random_dpa(rng, 1 + i % 3, 1 + i % 3);
    const std::size_t d = i % 3;
    auto r = solve_fixed_delay(a, d);
    auto m = oracle_machine(a, r);
    EXPECT_EQ(oracle::raw_verify(a, m, d), r.winner == Player::O);
  }
}

TEST(StrategyDump, InputStrategyTable) {
  auto a = oracle::load_fixture("ex33.dpa");
  auto dump = strategy_dump(a, solve_fixed_delay(a, 2));
  EXPECT_EQ(dump.rfind("input-strategy\ndelay: 2\n", 0), 0u);
  EXPECT_NE(dump.find("end\n"), std::string::npos);
}

TEST(SimulatePlay, CopyAgainstZeros) {
  auto a = copy_dpa();
  LassoInput zeros({}, {0});
  auto t = simulate_play(a, DelaySpec::constant(0), zeros, echo_machine(a, false), 100);
  ASSERT_TRUE(t.verdict);
  EXPECT_EQ(*t.verdict, Player::O);
  EXPECT_EQ(t.word.front(), (PairLetter{0, 0}));
}

TEST(SimulatePlay, ComplementLoses) {
  auto a = copy_dpa();
  LassoInput zeros({}, {0});
  auto t = simulate_play(a, DelaySpec::constant(0), zeros, echo_machine(a, true), 100);
  ASSERT_TRUE(t.verdict);
  EXPECT_EQ(*t.verdict, Player::I);
  EXPECT_NE(format_trace(a, t).find("verdict: I"), std::string::npos);
}

TEST(SimulatePlay, RejectsMisalignedMachine) {
  auto a = copy_dpa();
  LassoInput zeros({}, {0});
  EXPECT_THROW(simulate_play(a, DelaySpec::constant(1), zeros, echo_machine(a, false), 10),
               InvalidArgument);
  EXPECT_THROW(simulate_play(a, DelaySpec::constant(0), zeros, delayed_copy(a), 10),
               InvalidArgument);
}

TEST(SimulatePlay, RandomInputHasNoVerdict) {
  auto a = copy_dpa();
  RandomInput in(2, 5);
  auto t = simulate_play(a, DelaySpec::constant(1), in, delayed_copy(a), 50);
  EXPECT_FALSE(t.verdict);
  EXPECT_EQ(t.rounds, 50u);
  for (auto c : t.colors) EXPECT_EQ(c, 2u);
}

TEST(SimulatePlay, OracleStrategiesAgainstEachOther) {
  auto a = oracle::load_fixture("ex33.dpa");
  // I's winning strategy at delay 2 beats O's fallback machine at delay 2.
  auto r2 = solve_fixed_delay(a, 2);
  ArenaInputStrategy spoiler(r2);
  auto t = simulate_play(a, DelaySpec::constant(2), spoiler, oracle_machine(a, r2), 1000);
  ASSERT_TRUE(t.verdict);
  EXPECT_EQ(*t.verdict, Player::I);
  // O's winning machine at delay 3 beats every lasso input tried.
  auto r3 = solve_fixed_delay(a, 3);
  auto m3 = oracle_machine(a, r3);
  for (const auto& prefix : oracle::all_words(2, 4))
    for (const auto& cycle : {Word{0}, Word{1}, Word{0, 1}, Word{1, 1, 0}}) {
      LassoInput in(prefix, cycle);
      auto u = simulate_play(a, DelaySpec::constant(3), in, m3, 1000);
      ASSERT_TRUE(u.verdict);
      EXPECT_EQ(*u.verdict, Player::O);
    }
}

TEST(PlaySession, CopyAndComplement) {
  auto a = copy_dpa();
  PlaySession copy(a, echo_machine(a, false));
  auto s = copy.feed(1);
  EXPECT_EQ(s.output, 1u);
  EXPECT_EQ(s.color, 2u);
  copy.feed(1);
  EXPECT_EQ(copy.declare_loop(1), Player::O);
  EXPECT_EQ(copy.outputs(), (Word{1, 1}));

  PlaySession flip(a, echo_machine(a, true));
  flip.feed(0);
  EXPECT_EQ(flip.state(), 1u);
  flip.feed(0);
  EXPECT_EQ(flip.declare_loop(1), Player::I);
  EXPECT_THROW(flip.declare_loop(0), InvalidArgument);
  EXPECT_THROW(flip.declare_loop(3), InvalidArgument);
}

TEST(PlaySession, DelayedCopyBuffers) {
  auto a = copy_dpa();
  PlaySession p(a, delayed_copy(a));
  auto s = p.feed(0);
  EXPECT_FALSE(s.output);
  EXPECT_EQ(p.buffer(), (Word{0}));
  s = p.feed(1);
  EXPECT_EQ(s.output, 0u);
  EXPECT_EQ(p.buffer(), (Word{1}));
  p.feed(0);
  // configurations 1 and 3 differ in the step counter
  EXPECT_THROW(p.declare_loop(2), InvalidArgument);
  p.feed(1);
  EXPECT_EQ(p.declare_loop(2), Player::O);
  EXPECT_THROW(p.feed(5), InvalidArgument);
}

TEST(PlaySession, RejectsContractViolation) {
  auto a = copy_dpa();
  StrategyMachine eager(1, a.inputs(), a.outputs(), 1, 0, {{0, 0}, {0, 1}});
  EXPECT_THROW(PlaySession(a, eager), InvalidArgument);
}
