#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lookahead/automata.hpp"

namespace lookahead {

/// Emission meaning "no output yet".
inline constexpr Letter kWait = std::numeric_limits<Letter>::max();

struct MachineStep {
  State target = 0;
  Letter emit = kWait;
  friend bool operator==(const MachineStep&, const MachineStep&) = default;
};

/// Finite-state transducer for Player O with constant delay d.
///
/// It reads one input letter per step and emits either an output letter or
/// kWait. A well-formed machine waits on exactly the first d inputs and emits
/// on every later one, so after k inputs it has produced max(0, k - d)
/// outputs.
class StrategyMachine {
 public:
  /// `transitions` is indexed by s * |inputs| + a.
  StrategyMachine(std::size_t delay, Alphabet inputs, Alphabet outputs, std::size_t state_count,
                  State initial, std::vector<MachineStep> transitions);

  std::size_t delay() const noexcept { return delay_; }
  const Alphabet& inputs() const noexcept { return inputs_; }
  const Alphabet& outputs() const noexcept { return outputs_; }
  std::size_t state_count() const noexcept { return state_count_; }
  State initial() const noexcept { return initial_; }
  const MachineStep& step(State s, Letter a) const {
    return transitions_[s * inputs_.size() + a];
  }

  /// Emissions (kWait included) produced on `input`.
  std::vector<Letter> run(std::span<const Letter> input) const;
  /// Output word with waits removed.
  Word outputs_on(std::span<const Letter> input) const;

  friend bool operator==(const StrategyMachine&, const StrategyMachine&) = default;

 private:
  std::size_t delay_ = 0;
  Alphabet inputs_;
  Alphabet outputs_;
  std::size_t state_count_ = 0;
  State initial_ = 0;
  std::vector<MachineStep> transitions_;
};

/// Throws InvalidArgument if some reachable step emits before input d+1 or
/// waits after input d.
void check_emission_contract(const StrategyMachine& m);

StrategyMachine parse_strategy(std::string_view text);
std::string to_text(const StrategyMachine& m);

}  // namespace lookahead
