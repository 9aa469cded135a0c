// Acceptance checks; one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "lookahead/delaygame.hpp"
#include "lookahead/generate.hpp"
#include "lookahead/monoid.hpp"
#include "lookahead/sggame.hpp"
#include "lookahead/xcheck.hpp"
#include "oracles.hpp"

using namespace lookahead;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* name, double limit_s, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > limit_s) {
    r.ok = false;
    r.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s limit)";
  }
  if (!r.ok) ++failures;
  std::printf("%s criterion %d: %s [%.2f s] %s\n", r.ok ? "PASS" : "FAIL", n, name, secs,
              r.detail.c_str());
  std::fflush(stdout);
}

std::string verdicts(const ParityAutomaton& a, std::size_t top) {
  std::string s;
  for (std::size_t d = 0; d <= top; ++d) s += to_char(solve_fixed_delay(a, d).winner);
  return s;
}

std::size_t min_winning_delay(const ParityAutomaton& a, std::size_t top) {
  for (std::size_t d = 0; d <= top; ++d)
    if (solve_fixed_delay(a, d).winner == Player::O) return d;
  return top + 1;
}

}  // namespace

int main() {
  criterion(1, "ex33 oracle verdicts for d = 0..3", 10, [] {
    auto got = verdicts(oracle::load_fixture("ex33.dpa"), 3);
    return Outcome{got == "IIIO", "got " + got};
  });

  criterion(2, "ex33 decision, synthesis and verification", 120, [] {
    auto a = oracle::load_fixture("ex33.dpa");
    auto s = synthesize_constant_delay_strategy(a);
    if (s.verdict.winner != Player::O || !s.machine) return Outcome{false, "solve reports I"};
    const std::size_t d = 2 * s.verdict.n_prime - 1;
    const bool verified = verify_synthesized(a, *s.machine, d);
    const bool bound_ok = s.verdict.bound && *s.verdict.bound == d && d >= 3;
    return Outcome{verified && bound_ok && s.machine->delay() == d,
                   "n'=" + std::to_string(s.verdict.n_prime) + " bound=" + std::to_string(d) +
                       " machine states=" + std::to_string(s.machine->state_count()) +
                       " verify=" + (verified ? "PASS" : "FAIL")};
  });

  criterion(3, "shift family minimal constant delay", 60, [] {
    auto k1 = min_winning_delay(oracle::load_fixture("shift1.dpa"), 4);
    auto k3 = min_winning_delay(oracle::load_fixture("shift3.dpa"), 4);
    return Outcome{k1 == 1 && k3 == 3,
                   "shift1=" + std::to_string(k1) + " shift3=" + std::to_string(k3)};
  });

  criterion(4, "infones: I wins the decision and every d <= 6", 60, [] {
    auto a = oracle::load_fixture("infones.dpa");
    auto v = decide_finite_delay(a);
    auto got = verdicts(a, 6);
    return Outcome{v.winner == Player::I && got == "IIIIIII",
                   std::string("solve=") + to_char(v.winner) + " oracle=" + got};
  });

  XcheckReport report;
  criterion(5, "decision vs oracle on 200 random automata", 600, [&] {
    report = run_xcheck(XcheckOptions{});
    return Outcome{report.evaluated == 200 && report.decision_failures == 0 &&
                       report.synthesis_failures == 0,
                   "evaluated=" + std::to_string(report.evaluated) +
                       " skipped=" + std::to_string(report.skipped) +
                       " checks=" + std::to_string(report.decision_checks) +
                       " failures=" + std::to_string(report.decision_failures) +
                       " synthesis failures=" + std::to_string(report.synthesis_failures)};
  });

  criterion(6, "monotonicity in the delay on the same corpus", 600, [&] {
    return Outcome{report.evaluated == 200 && report.monotonicity_checks > 0 &&
                       report.monotonicity_failures == 0,
                   "checks=" + std::to_string(report.monotonicity_checks) +
                       " violations=" + std::to_string(report.monotonicity_failures)};
  });

  criterion(7, "1000 random splits of word_matrix", 10, [] {
    std::mt19937_64 rng(2024);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      auto a = random_dpa(rng, 1 + rng() % 4, 1 + rng() % 3);
      const std::size_t len = 2 + rng() % 15;
      Word u(len), v(len);
      for (auto& x : u) x = static_cast<Letter>(rng() % 2);
      for (auto& x : v) x = static_cast<Letter>(rng() % 2);
      const std::size_t cut = 1 + rng() % (len - 1);
      std::span<const Letter> su(u), sv(v);
      auto whole = word_matrix(a, su, sv);
      auto split = word_matrix(a, su.first(cut), sv.first(cut)) *
                   word_matrix(a, su.subspan(cut), sv.subspan(cut));
      if (whole != split || oracle::dense(whole) != oracle::dense_block(a, u, v)) ++bad;
    }
    return Outcome{bad == 0, "mismatches=" + std::to_string(bad)};
  });

  criterion(8, "profile automaton vs brute force, 50 automata, |u| <= 8", 120, [] {
    std::mt19937_64 rng(8);
    std::size_t bad = 0, words = 0;
    for (int i = 0; i < 50; ++i) {
      auto a = random_dpa(rng, 1 + i % 3, 1 + rng() % 3);
      auto p = build_profile_automaton(a);
      for (std::size_t len = 1; len <= 8; ++len)
        for (const auto& u : oracle::all_words(2, len)) {
          ++words;
          std::set<oracle::Dense> got;
          for (const auto& m : p.profile(p.state_of(u)).matrices()) got.insert(oracle::dense(m));
          if (got != oracle::dense_profile(a, u)) ++bad;
        }
    }
    return Outcome{bad == 0, "words=" + std::to_string(words) + " mismatches=" + std::to_string(bad)};
  });

  criterion(9, "parity solver vs exhaustive strategies and partition", 600, [] {
    std::mt19937_64 rng(9);
    std::size_t bad = 0, partition_bad = 0;
    for (int i = 0; i < 500; ++i) {
      auto g = random_arena(rng, 1 + rng() % 8, 1 + rng() % 5);
      auto s = solve(g);
      auto o = oracle::brute_force_wins(g, Player::O);
      auto in = oracle::brute_force_wins(g, Player::I);
      for (Vertex v = 0; v < g.size(); ++v)
        if ((s.winner[v] == Player::O) != (o[v] != 0) || (s.winner[v] == Player::I) != (in[v] != 0))
          ++bad;
    }
    for (int i = 0; i < 500; ++i) {
      auto g = random_arena(rng, 1 + rng() % 40, 1 + rng() % 6);
      auto s = solve(g);
      for (Player p : {Player::O, Player::I}) {
        auto strat = s.strategy_of(p, g);
        for (Vertex v : s.region(p))
          if (!verify_positional_strategy(g, p, strat, v)) ++partition_bad;
      }
      if (s.region(Player::O).size() + s.region(Player::I).size() != g.size()) ++partition_bad;
    }
    return Outcome{bad == 0 && partition_bad == 0,
                   "mismatches=" + std::to_string(bad) +
                       " partition violations=" + std::to_string(partition_bad)};
  });

  criterion(10, "f'' for f = 1 starts 1, 3, 9", 10, [] {
    auto v = f_double_prime(DelaySpec({}, 1), 3);
    std::string got;
    for (const auto& x : v) got += (got.empty() ? "" : ",") + x.str();
    return Outcome{got == "1,3,9", "got " + got};
  });

  return failures == 0 ? 0 : 1;
}
