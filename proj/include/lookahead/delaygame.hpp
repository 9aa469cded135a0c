#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lookahead/automata.hpp"
#include "lookahead/paritygame.hpp"
#include "lookahead/strategy_machine.hpp"

namespace lookahead {

using BigInt = boost::multiprecision::cpp_int;

/// Delay function f given by explicit values f(0..k-1) followed by a
/// constant tail. All values are positive.
struct DelaySpec {
  std::vector<std::uint64_t> head;
  std::uint64_t tail = 1;

  DelaySpec() = default;
  DelaySpec(std::vector<std::uint64_t> head, std::uint64_t tail);

  /// f(0) = d + 1, f(i) = 1 afterwards.
  static DelaySpec constant(std::size_t d);

  std::uint64_t at(std::size_t i) const { return i < head.size() ? head[i] : tail; }
  bool bounded() const noexcept { return tail == 1; }
  /// Largest number of buffered input letters at an O move (bounded only).
  std::uint64_t capacity() const;

  friend bool operator==(const DelaySpec&, const DelaySpec&) = default;
};

std::string to_string(const DelaySpec& f);

/// f'(0) = f(0) + f(1) and f'(i) = f(i + 1).
DelaySpec f_prime(const DelaySpec& f);

/// The first k values of f''. Throws BudgetExceeded if a value needs more
/// than `max_bits` bits.
std::vector<BigInt> f_double_prime(const DelaySpec& f, std::size_t k,
                                   std::size_t max_bits = 4096);

// ---------------------------------------------------------------------------
// Fixed-delay arena

struct DelayVertex {
  enum class Kind : std::uint8_t { Input, Output };
  Kind kind = Kind::Input;
  State q = 0;
  Word buffer;
  std::size_t phase = 0;      ///< round index, saturated at |head|
  std::uint64_t remaining = 0;  ///< letters I still appends this round (Input only)
};

/// Explicit arena of the game with delay function f. Player I vertices append
/// one input letter each; Player O vertices consume the oldest buffered letter
/// together with an output letter. Successors are ordered by letter.
struct DelayArena {
  ParityGameArena arena;
  std::vector<DelayVertex> vertices;
  Vertex initial = 0;
  DelaySpec spec;

  std::optional<Vertex> find(const DelayVertex& v) const;
  std::string describe(Vertex v, const ParityAutomaton& a) const;

  /// Keyed by the encoded vertex; see find().
  std::unordered_map<std::string, Vertex> index;
};

inline constexpr std::size_t kDefaultArenaBudget = 4'000'000;

/// Number of vertices the arena can have at most (reachable or not).
BigInt delay_arena_size_bound(const ParityAutomaton& a, const DelaySpec& f);

/// Throws InvalidArgument for an unbounded tail and BudgetExceeded when the
/// arena would exceed `budget` vertices.
DelayArena build_delay_arena(const ParityAutomaton& a, const DelaySpec& f,
                             std::size_t budget = kDefaultArenaBudget);

struct FixedDelayResult {
  Player winner = Player::I;
  std::size_t delay = 0;
  DelayArena game;
  Solution solution;
};

FixedDelayResult solve_fixed_delay(const ParityAutomaton& a, std::size_t d,
                                   std::size_t budget = kDefaultArenaBudget);

/// O's positional strategy from the oracle as a transducer. Vertices where O
/// has no winning choice fall back to the first output letter.
StrategyMachine oracle_machine(const ParityAutomaton& a, const FixedDelayResult& r);

/// Text dump of the winner's strategy: a StrategyMachine for O, or the
/// input-letter table over reachable observations for I.
std::string strategy_dump(const ParityAutomaton& a, const FixedDelayResult& r);

// ---------------------------------------------------------------------------
// Plays

struct PlayObservation {
  State q;
  const Word& buffer;
  std::size_t round;
  std::uint64_t remaining;
};

/// Player I in a simulated play.
class InputStrategy {
 public:
  virtual ~InputStrategy() = default;
  virtual void reset() {}
  virtual Letter next(const PlayObservation& obs) = 0;
  /// Memory content of a finite-state strategy; nullopt if it is not one.
  virtual std::optional<std::uint64_t> memory() const { return std::nullopt; }
};

/// Plays the letters of prefix·cycle^ω.
class LassoInput : public InputStrategy {
 public:
  LassoInput(Word prefix, Word cycle);
  void reset() override { pos_ = 0; }
  Letter next(const PlayObservation&) override;
  std::optional<std::uint64_t> memory() const override { return pos_; }

 private:
  Word prefix_, cycle_;
  std::uint64_t pos_ = 0;
};

/// I's positional oracle strategy (first letter where I has no winning move).
class ArenaInputStrategy : public InputStrategy {
 public:
  explicit ArenaInputStrategy(const FixedDelayResult& r) : r_(r) {}
  Letter next(const PlayObservation& obs) override;
  std::optional<std::uint64_t> memory() const override { return 0; }

 private:
  const FixedDelayResult& r_;
};

class RandomInput : public InputStrategy {
 public:
  RandomInput(std::size_t alphabet_size, std::uint64_t seed)
      : size_(alphabet_size), seed_(seed), rng_(seed) {}
  void reset() override { rng_.seed(seed_); }
  Letter next(const PlayObservation&) override;

 private:
  std::size_t size_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

struct PlayEvent {
  enum class Kind : std::uint8_t { Input, Output };
  Kind kind;
  Letter letter;
  State q;      ///< DPA state after the event
  Color color;  ///< c(q) for outputs, 0 for inputs
};

struct PlayTrace {
  std::vector<PlayEvent> events;
  PairWord word;
  std::vector<Color> colors;  ///< one per output
  std::size_t rounds = 0;
  std::optional<Player> verdict;
  std::size_t loop_start = 0;  ///< first round of the detected cycle
};

/// Plays `in` against `out` for at most `max_rounds` rounds. The machine must
/// emit exactly once per round, on the round's last input letter. When `in`
/// is finite-state, stops at the first repeated configuration and adjudicates
/// the resulting lasso.
PlayTrace simulate_play(const ParityAutomaton& a, const DelaySpec& f, InputStrategy& in,
                        const StrategyMachine& out, std::size_t max_rounds);

std::string format_trace(const ParityAutomaton& a, const PlayTrace& t);

/// Step-by-step play against a machine for the interactive mode.
class PlaySession {
 public:
  PlaySession(const ParityAutomaton& a, StrategyMachine m);

  struct Step {
    std::optional<Letter> output;
    std::optional<Color> color;
  };

  Step feed(Letter in);
  /// Treats the last k steps as a cycle. Throws InvalidArgument unless the
  /// configuration k steps ago equals the current one.
  Player declare_loop(std::size_t k) const;

  const Word& buffer() const noexcept { return buffer_; }
  State state() const noexcept { return q_; }
  std::size_t steps() const noexcept { return configs_.size() - 1; }
  const std::vector<Color>& color_history() const noexcept { return colors_; }
  const Word& outputs() const noexcept { return outputs_; }
  const StrategyMachine& machine() const noexcept { return m_; }

 private:
  struct Config {
    State s, q;
    Word buffer;
    std::size_t t;
    friend bool operator==(const Config&, const Config&) = default;
  };

  const ParityAutomaton& a_;
  StrategyMachine m_;
  State s_, q_;
  Word buffer_;
  Word outputs_;
  std::vector<Color> colors_;
  std::vector<std::optional<Color>> step_colors_;
  std::vector<Config> configs_;
};

}  // namespace lookahead
