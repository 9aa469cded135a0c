#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lookahead {

using State = std::uint32_t;
using Color = std::uint32_t;
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// Ordered set of distinct printable tokens. Letters are indices into it.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  /// The alphabet {"0","1"}.
  static Alphabet boolean();

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& symbol(Letter a) const { return symbols_.at(a); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  bool contains(Letter a) const noexcept { return a < symbols_.size(); }

  std::optional<Letter> find(std::string_view token) const;
  /// Like `find`, but throws InvalidArgument for unknown tokens.
  Letter index(std::string_view token) const;

  std::string format(std::span<const Letter> word) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

/// One letter of the paired alphabet: an input symbol and an output symbol.
struct PairLetter {
  Letter in = 0;
  Letter out = 0;
  friend bool operator==(PairLetter, PairLetter) = default;
};
using PairWord = std::vector<PairLetter>;

/// Builds the paired word (u/v). Throws InvalidArgument on length mismatch.
PairWord zip(std::span<const Letter> u, std::span<const Letter> v);

/// Ultimately periodic word prefix·cycle^ω over the paired alphabet.
struct Lasso {
  PairWord prefix;
  PairWord cycle;

  Lasso(PairWord prefix, PairWord cycle);
};

/// Deterministic max-parity automaton over pairs (input, output).
///
/// The transition function is total; colors are nonnegative and the automaton
/// accepts an infinite word iff the largest color seen infinitely often along
/// its run is even.
class ParityAutomaton {
 public:
  /// `transitions` is indexed by (q * |in| + a) * |out| + b.
  ParityAutomaton(Alphabet inputs, Alphabet outputs, std::size_t state_count,
                  State initial, std::vector<State> transitions,
                  std::vector<Color> colors);

  const Alphabet& inputs() const noexcept { return inputs_; }
  const Alphabet& outputs() const noexcept { return outputs_; }
  std::size_t state_count() const noexcept { return colors_.size(); }
  State initial() const noexcept { return initial_; }
  Color color(State q) const { return colors_.at(q); }
  const std::vector<Color>& colors() const noexcept { return colors_; }
  Color max_color() const noexcept { return max_color_; }

  State next(State q, Letter a, Letter b) const {
    return transitions_[(q * inputs_.size() + a) * outputs_.size() + b];
  }
  State next(State q, PairLetter x) const { return next(q, x.in, x.out); }

  const std::vector<State>& transitions() const noexcept { return transitions_; }

  /// Throws InvalidArgument unless both symbols belong to the alphabets.
  void check_letter(PairLetter x) const;

  friend bool operator==(const ParityAutomaton&, const ParityAutomaton&) = default;

 private:
  Alphabet inputs_;
  Alphabet outputs_;
  State initial_ = 0;
  std::vector<State> transitions_;
  std::vector<Color> colors_;
  Color max_color_ = 0;
};

/// Deterministic finite automaton over a single alphabet.
class FiniteAutomaton {
 public:
  /// `transitions` is indexed by q * |alphabet| + a.
  FiniteAutomaton(Alphabet alphabet, std::size_t state_count, State initial,
                  std::vector<State> transitions, std::vector<bool> finals);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return finals_.size(); }
  State initial() const noexcept { return initial_; }
  State next(State q, Letter a) const { return transitions_[q * alphabet_.size() + a]; }
  bool is_final(State q) const { return finals_.at(q); }

  bool accepts(std::span<const Letter> word) const;

  friend bool operator==(const FiniteAutomaton&, const FiniteAutomaton&) = default;

 private:
  Alphabet alphabet_;
  State initial_ = 0;
  std::vector<State> transitions_;
  std::vector<bool> finals_;
};

/// Paired alphabet used by automata that read (input/output) letters, with
/// symbols "a/b" in (input-major, output-minor) order.
Alphabet paired_alphabet(const Alphabet& inputs, const Alphabet& outputs);
inline Letter paired_index(const ParityAutomaton& a, PairLetter x) {
  return static_cast<Letter>(x.in * a.outputs().size() + x.out);
}

// ---------------------------------------------------------------------------
// Text formats

ParityAutomaton parse_dpa(std::string_view text);
std::string to_text(const ParityAutomaton& a);

FiniteAutomaton parse_dfa(std::string_view text);
std::string to_text(const FiniteAutomaton& a);

/// Parses whitespace-separated "a/b" tokens against the automaton's alphabets.
PairWord parse_pair_word(const ParityAutomaton& a, std::string_view text);
/// Parses whitespace-separated symbols; an unbroken string of single-character
/// symbols such as "0110" is also accepted.
Word parse_word(const Alphabet& alphabet, std::string_view text);

// ---------------------------------------------------------------------------
// Runs

struct RunResult {
  std::vector<State> states;  ///< q0 followed by one state per letter
  /// Largest color among the states reached after the first letter; empty on
  /// the empty word (the start state's color is not counted).
  std::optional<Color> max_color;
};

RunResult run_prefix(const ParityAutomaton& a, std::span<const PairLetter> word);

/// Same as `run_prefix` but starting in `from`.
RunResult run_from(const ParityAutomaton& a, State from,
                   std::span<const PairLetter> word);

bool accepts_lasso(const ParityAutomaton& a, const Lasso& lasso);

// ---------------------------------------------------------------------------
// Finite-word languages

/// True iff the automaton accepts infinitely many words.
bool language_infinite(const FiniteAutomaton& f);

/// An accepted word u with i <= |u| <= i + state_count. Requires an infinite
/// language, otherwise throws InvalidArgument.
Word length_witness(const FiniteAutomaton& f, std::size_t i);

}  // namespace lookahead
