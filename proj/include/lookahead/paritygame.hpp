#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lookahead/automata.hpp"
#include "lookahead/graph.hpp"

namespace lookahead {

enum class Player : std::uint8_t { I = 0, O = 1 };

constexpr Player opponent(Player p) { return p == Player::I ? Player::O : Player::I; }
/// Player O wins plays whose largest recurring color is even.
constexpr Player color_winner(Color c) { return c % 2 == 0 ? Player::O : Player::I; }
char to_char(Player p);

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

/// Finite max-parity game graph. Every vertex has at least one successor.
class ParityGameArena {
 public:
  ParityGameArena() = default;
  ParityGameArena(std::vector<Player> owners, std::vector<Color> colors, Digraph edges,
                  std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return owners_.size(); }
  Player owner(Vertex v) const { return owners_[v]; }
  Color color(Vertex v) const { return colors_[v]; }
  std::span<const Vertex> successors(Vertex v) const { return edges_.successors(v); }
  const Digraph& graph() const noexcept { return edges_; }
  const std::vector<Color>& colors() const noexcept { return colors_; }
  const std::vector<Player>& owners() const noexcept { return owners_; }
  Color max_color() const noexcept { return max_color_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::string& label(Vertex v) const { return labels_.at(v); }

 private:
  std::vector<Player> owners_;
  std::vector<Color> colors_;
  Digraph edges_;
  std::vector<std::string> labels_;
  Color max_color_ = 0;
};

/// Incremental arena construction for game builders.
class ArenaBuilder {
 public:
  Vertex add_vertex(Player owner, Color color, std::string label = {});
  void add_edge(Vertex from, Vertex to);
  std::size_t size() const noexcept { return owners_.size(); }
  ParityGameArena build() &&;

 private:
  std::vector<Player> owners_;
  std::vector<Color> colors_;
  std::vector<std::vector<Vertex>> edges_;
  std::vector<std::string> labels_;
  bool labelled_ = false;
};

struct Solution {
  std::vector<Player> winner;  ///< per vertex
  /// Chosen successor on vertices whose owner wins there, kNoVertex elsewhere.
  std::vector<Vertex> strategy;

  std::vector<Vertex> region(Player p) const;
  /// The strategy restricted to `p`'s vertices (kNoVertex elsewhere).
  std::vector<Vertex> strategy_of(Player p, const ParityGameArena& g) const;
};

/// Zielonka's recursive algorithm with positional strategy extraction.
Solution solve(const ParityGameArena& g);

/// Restricts `player`'s moves to `strategy` and checks that every cycle
/// reachable from `start` has a largest color of `player`'s parity. Throws
/// InvalidArgument if a reachable vertex of `player` has no valid choice.
bool verify_positional_strategy(const ParityGameArena& g, Player player,
                                std::span<const Vertex> strategy, Vertex start);

/// Whether every cycle inside the `alive` vertices (all, if empty) has a
/// largest color winning for `player`. Eliminates strongly connected
/// components by descending color.
bool every_cycle_wins(const Digraph& g, std::span<const Color> colors, Player player,
                      std::span<const char> alive = {});

/// Winner of the play prefix·cycle^ω; the prefix colors are irrelevant.
Player lasso_winner(std::span<const Color> prefix, std::span<const Color> cycle);

/// One line per vertex: `v owner color succ,succ,...`.
std::string dump_arena(const ParityGameArena& g);

}  // namespace lookahead
