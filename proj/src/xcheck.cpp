#include "lookahead/xcheck.hpp"

#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "lookahead/delaygame.hpp"
#include "lookahead/errors.hpp"
#include "lookahead/generate.hpp"
#include "lookahead/monoid.hpp"
#include "lookahead/sggame.hpp"

namespace lookahead {

namespace {

constexpr std::size_t kKeptFailures = 5;

void record(XcheckReport& r, std::string property, std::string detail, const ParityAutomaton& a) {
  if (r.failures.size() < kKeptFailures)
    r.failures.push_back({std::move(property), std::move(detail), to_text(a)});
}

}  // namespace

XcheckReport run_xcheck(const XcheckOptions& o) {
  XcheckReport r;
  std::unique_ptr<ScopedProductFault> fault;
  if (o.fault_product) fault = std::make_unique<ScopedProductFault>();
  std::mt19937_64 rng(o.seed);

  while (r.evaluated < o.count && r.generated < o.max_attempts) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, o.max_states)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, o.max_colors)(rng);
    ParityAutomaton a = random_dpa(rng, n, m);
    ++r.generated;

    FiniteDelayVerdict verdict;
    try {
      verdict = decide_finite_delay(a, o.nprime_cap);
    } catch (const BudgetExceeded&) {
      ++r.skipped;
      continue;
    }
    ++r.evaluated;
    if (verdict.winner == Player::O) ++r.o_wins;

    const std::size_t top = 2 * verdict.n_prime - 1;
    std::map<std::size_t, Player> oracle;
    auto winner_at = [&](std::size_t d) {
      auto it = oracle.find(d);
      if (it == oracle.end()) it = oracle.emplace(d, solve_fixed_delay(a, d).winner).first;
      return it->second;
    };

    ++r.decision_checks;
    if (verdict.winner == Player::O) {
      if (winner_at(top) != Player::O) {
        ++r.decision_failures;
        record(r, "decision O, oracle I", "oracle says I wins at d=" + std::to_string(top), a);
      }
    } else {
      for (std::size_t d = 0; d <= top; ++d) {
        if (winner_at(d) != Player::I) {
          ++r.decision_failures;
          record(r, "decision I, oracle O", "oracle says O wins at d=" + std::to_string(d), a);
          break;
        }
      }
    }

    for (std::size_t d = 0; d <= o.max_delay; ++d) {
      ++r.monotonicity_checks;
      if (winner_at(d) == Player::O && winner_at(d + 1) == Player::I) {
        ++r.monotonicity_failures;
        record(r, "monotonicity", "O wins at d=" + std::to_string(d) + " but not at d=" +
                                      std::to_string(d + 1),
               a);
      }
    }

    if (o.synthesize && verdict.winner == Player::O) {
      ++r.synthesis_checks;
      std::string problem;
      try {
        Synthesis s = synthesize_constant_delay_strategy(a);
        if (!s.machine)
          problem = "synthesis reported I";
        else if (!verify_synthesized(a, *s.machine, top))
          problem = "synthesized machine loses at d=" + std::to_string(top);
      } catch (const Error& e) {
        problem = e.what();
      }
      if (!problem.empty()) {
        ++r.synthesis_failures;
        record(r, "synthesis", problem, a);
      }
    }
  }
  return r;
}

std::string format_report(const XcheckReport& r) {
  std::ostringstream os;
  os << "generated: " << r.generated << '\n'
     << "evaluated: " << r.evaluated << '\n'
     << "skipped: " << r.skipped << '\n'
     << "o_wins: " << r.o_wins << '\n'
     << "decision_vs_oracle: " << r.decision_checks - r.decision_failures << " pass, "
     << r.decision_failures << " fail\n"
     << "monotonicity: " << r.monotonicity_checks - r.monotonicity_failures << " pass, "
     << r.monotonicity_failures << " fail\n"
     << "synthesis: " << r.synthesis_checks - r.synthesis_failures << " pass, "
     << r.synthesis_failures << " fail\n"
     << "failures: " << r.failure_count() << '\n';
  if (!r.failures.empty()) {
    const auto& f = r.failures.front();
    os << "first counterexample (" << f.property << "): " << f.detail << '\n' << f.dpa;
  }
  return os.str();
}

}  // namespace lookahead
