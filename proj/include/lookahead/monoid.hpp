#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lookahead/automata.hpp"

namespace lookahead {

// ---------------------------------------------------------------------------
// The semiring S = {⊥} ∪ colors: addition is max with ⊥ least, multiplication
// is max when both operands are colors and ⊥ otherwise. ⊥ is std::nullopt.

using SemiringValue = std::optional<Color>;

inline SemiringValue semiring_add(SemiringValue x, SemiringValue y) {
  if (!x) return y;
  if (!y) return x;
  return std::max(*x, *y);
}

inline SemiringValue semiring_mul(SemiringValue x, SemiringValue y) {
  if (!x || !y) return std::nullopt;
  return std::max(*x, *y);
}

/// The unique non-⊥ entry of a matrix row.
struct MatrixEntry {
  State target = 0;
  Color color = 0;
  friend auto operator<=>(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Square matrix over S with exactly one non-⊥ entry per row.
///
/// Entry (p, q) is the largest color seen on the path from p to q over some
/// block, or ⊥ if the block does not lead from p to q. The color of p itself
/// is not counted. Because every row is functional the matrix is stored as a
/// row function and multiplied in O(n).
class ColorMatrix {
 public:
  ColorMatrix() = default;
  explicit ColorMatrix(std::vector<MatrixEntry> rows);

  std::size_t dimension() const noexcept { return rows_.size(); }
  const MatrixEntry& row(State p) const { return rows_.at(p); }
  const std::vector<MatrixEntry>& rows() const noexcept { return rows_; }

  SemiringValue at(State p, State q) const {
    const auto& e = rows_.at(p);
    return e.target == q ? SemiringValue(e.color) : std::nullopt;
  }

  std::size_t hash() const noexcept;
  /// Dense rendering, one row per line, '.' for ⊥.
  std::string to_string() const;

  friend auto operator<=>(const ColorMatrix&, const ColorMatrix&) = default;

 private:
  std::vector<MatrixEntry> rows_;
};

/// Semiring matrix product. Throws InvalidArgument on dimension mismatch.
ColorMatrix operator*(const ColorMatrix& m, const ColorMatrix& n);
inline ColorMatrix matrix_mul(const ColorMatrix& m, const ColorMatrix& n) { return m * n; }

/// Mutation-testing hook: while alive, every matrix product combines colors
/// with min instead of max. Used by the cross-check harness to show that it
/// detects a broken product.
class ScopedProductFault {
 public:
  ScopedProductFault();
  ~ScopedProductFault();
  ScopedProductFault(const ScopedProductFault&) = delete;
  ScopedProductFault& operator=(const ScopedProductFault&) = delete;
};

struct ColorMatrixHash {
  std::size_t operator()(const ColorMatrix& m) const noexcept { return m.hash(); }
};

ColorMatrix letter_matrix(const ParityAutomaton& a, Letter in, Letter out);
/// Table of letter matrices indexed by [in][out].
std::vector<std::vector<ColorMatrix>> letter_matrices(const ParityAutomaton& a);

/// Matrix of the nonempty block (u/v); requires |u| == |v| >= 1.
ColorMatrix word_matrix(const ParityAutomaton& a, std::span<const Letter> u,
                        std::span<const Letter> v);

/// All matrices of nonempty blocks, sorted.
std::vector<ColorMatrix> enumerate_monoid(const ParityAutomaton& a);

/// DFA over the paired alphabet accepting the blocks that lead from p to q
/// with largest color k.
FiniteAutomaton tracking_automaton(const ParityAutomaton& a, State p, State q, Color k);

/// DFA over the paired alphabet accepting exactly the blocks whose matrix is m.
FiniteAutomaton class_automaton(const ParityAutomaton& a, const ColorMatrix& m);

// ---------------------------------------------------------------------------
// Profiles

/// The set of matrices realizable over one input block, canonically sorted.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<ColorMatrix> matrices);

  const std::vector<ColorMatrix>& matrices() const noexcept { return matrices_; }
  std::size_t size() const noexcept { return matrices_.size(); }
  bool contains(const ColorMatrix& m) const;
  std::size_t hash() const noexcept;

  friend auto operator<=>(const Profile&, const Profile&) = default;

 private:
  std::vector<ColorMatrix> matrices_;
};

struct ProfileHash {
  std::size_t operator()(const Profile& p) const noexcept { return p.hash(); }
};

/// Profile of a nonempty input word computed by enumerating every output word.
/// Exponential; intended as a test oracle.
Profile brute_force_profile(const ParityAutomaton& a, std::span<const Letter> u);

/// Deterministic automaton over input letters whose states are profiles.
///
/// State 0 is the pseudo-state for the empty word; every other state is the
/// profile shared by all input words that reach it.
class ProfileAutomaton {
 public:
  static constexpr State kInit = 0;

  ProfileAutomaton(Alphabet alphabet, std::vector<Profile> profiles,
                   std::vector<State> transitions);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return profiles_.size(); }
  /// Profile of a state; the init state has an empty profile.
  const Profile& profile(State s) const { return profiles_.at(s); }
  State next(State s, Letter a) const { return transitions_[s * alphabet_.size() + a]; }
  State state_of(std::span<const Letter> u) const;
  std::optional<State> find(const Profile& p) const;

  /// Whether only finitely many words reach the state.
  bool language_finite(State s) const { return finite_.at(s); }
  std::vector<State> infinite_states() const;

  /// Reachable state count, including the init state.
  std::size_t n_prime() const noexcept { return profiles_.size(); }
  /// Length of a longest word reaching a finite-language state (0 if none).
  std::size_t d_prime() const noexcept { return d_prime_; }

  /// The automaton with `s` as its only final state; it recognizes the class
  /// of words whose profile is profile(s).
  FiniteAutomaton class_recognizer(State s) const;

 private:
  Alphabet alphabet_;
  std::vector<Profile> profiles_;
  std::vector<State> transitions_;
  std::vector<bool> finite_;
  std::size_t d_prime_ = 0;
};

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

/// Subset construction over matrices. Throws BudgetExceeded when more than
/// `max_states` states would be created.
ProfileAutomaton build_profile_automaton(const ParityAutomaton& a,
                                         std::size_t max_states = kUnlimited);

// ---------------------------------------------------------------------------
// Representatives

/// For an input block read so far, the lexicographically least output word
/// realizing each matrix of the block's profile. Extending the block by one
/// letter costs O(|profile| * |out|) products.
class MatchTable {
 public:
  MatchTable() = default;
  explicit MatchTable(const ParityAutomaton& a);

  void extend(Letter in);
  std::size_t length() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }
  const std::map<ColorMatrix, Word>& entries() const noexcept { return entries_; }
  Profile profile() const;
  const Word* lookup(const ColorMatrix& m) const;

  friend bool operator==(const MatchTable& x, const MatchTable& y) {
    return x.length_ == y.length_ && x.entries_ == y.entries_;
  }

 private:
  std::shared_ptr<const std::vector<std::vector<ColorMatrix>>> letters_;
  std::map<ColorMatrix, Word> entries_;
  std::size_t length_ = 0;
};

/// An output word v with |v| = |u| and word_matrix(u, v) = m, or nullopt if m
/// is not realizable over u. Forward dynamic programming over the profile of
/// each prefix; returns the lexicographically least such v.
std::optional<Word> find_matching_output(const ParityAutomaton& a, std::span<const Letter> u,
                                         const ColorMatrix& m);

}  // namespace lookahead
