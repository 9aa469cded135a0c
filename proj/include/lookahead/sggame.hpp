#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lookahead/automata.hpp"
#include "lookahead/delaygame.hpp"
#include "lookahead/monoid.hpp"
#include "lookahead/paritygame.hpp"
#include "lookahead/strategy_machine.hpp"

namespace lookahead {

struct SgVertex {
  enum class Kind : std::uint8_t { Init, Init2, Answer, Pick };
  Kind kind = Kind::Init;
  State q = 0;        ///< DPA state (Answer, Pick)
  State pending = 0;  ///< profile state to answer (Answer) or chosen first (Init2)
  State next = 0;     ///< profile state chosen next (Answer, Pick)
  Color color = 0;    ///< emitted color (Pick)
};

/// The semigroup game. Player I moves by infinite profiles, one block ahead;
/// Player O answers the pending profile with one of its matrices.
///
/// Answer vertices have one edge per matrix of the pending profile, in the
/// profile's order; pick vertices carry the color of the answered block.
struct SemigroupGame {
  ProfileAutomaton profiles;
  std::vector<State> usable;  ///< infinite-language profile states
  ParityGameArena arena;
  std::vector<SgVertex> vertices;
  Vertex initial = 0;

  std::optional<Vertex> answer_vertex(State q, State pending, State next) const;
  std::string describe(Vertex v) const;

  /// Answer vertex id per (q, pending, next); kNoVertex where absent.
  std::vector<Vertex> answer_index;
};

SemigroupGame build_semigroup_game(const ParityAutomaton& a,
                                   std::size_t max_profiles = kUnlimited);

struct FiniteDelayVerdict {
  Player winner = Player::I;
  std::size_t n_prime = 0;
  std::size_t d_prime = 0;
  std::size_t monoid_size = 0;
  std::size_t arena_size = 0;
  /// 2n' - 1 when O wins.
  std::optional<std::size_t> bound;
  /// Exponent E of the worst-case bound 2 * 2^E - 1 with E = (mn)^(2n).
  BigInt worst_case_exponent;
};

FiniteDelayVerdict decide_finite_delay(const ParityAutomaton& a,
                                       std::size_t max_profiles = kUnlimited);

struct Synthesis {
  FiniteDelayVerdict verdict;
  std::optional<StrategyMachine> machine;  ///< present iff O wins
};

inline constexpr std::size_t kDefaultMachineBudget = 200'000;

/// Block strategy with blocks of length n' and delay 2n' - 1. Throws
/// BudgetExceeded if the machine would have more than `budget` states.
Synthesis synthesize_constant_delay_strategy(const ParityAutomaton& a,
                                             std::size_t budget = kDefaultMachineBudget);

inline constexpr std::size_t kDefaultProductBudget = 4'000'000;

/// Checks that `m` wins the game with constant delay d against every input
/// sequence. Throws InvalidArgument if `m` breaks the emission contract or
/// its delay is not d, and BudgetExceeded if the product grows too large.
bool verify_synthesized(const ParityAutomaton& a, const StrategyMachine& m, std::size_t d,
                        std::size_t budget = kDefaultProductBudget);

}  // namespace lookahead
