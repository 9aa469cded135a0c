#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lookahead {

struct XcheckOptions {
  std::uint64_t seed = 1;
  std::size_t count = 200;       ///< automata to evaluate (skipped ones don't count)
  std::size_t max_states = 4;
  std::size_t max_colors = 3;
  std::size_t max_delay = 4;     ///< monotonicity is checked for d = 0..max_delay
  std::size_t nprime_cap = 6;    ///< skip automata with a larger n'
  bool synthesize = true;
  bool fault_product = false;    ///< run with a corrupted matrix product
  std::size_t max_attempts = 100000;
};

struct XcheckFailure {
  std::string property;
  std::string detail;
  std::string dpa;
};

struct XcheckReport {
  std::size_t generated = 0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::size_t o_wins = 0;
  std::size_t decision_checks = 0, decision_failures = 0;
  std::size_t monotonicity_checks = 0, monotonicity_failures = 0;
  std::size_t synthesis_checks = 0, synthesis_failures = 0;
  std::vector<XcheckFailure> failures;  ///< the first few

  std::size_t failure_count() const {
    return decision_failures + monotonicity_failures + synthesis_failures;
  }
};

XcheckReport run_xcheck(const XcheckOptions& options);
std::string format_report(const XcheckReport& r);

}  // namespace lookahead
