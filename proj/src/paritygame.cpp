#include "lookahead/paritygame.hpp"

#include <algorithm>
#include <sstream>

#include "lookahead/errors.hpp"

namespace lookahead {

char to_char(Player p) { return p == Player::O ? 'O' : 'I'; }

ParityGameArena::ParityGameArena(std::vector<Player> owners, std::vector<Color> colors,
                                 Digraph edges, std::vector<std::string> labels)
    : owners_(std::move(owners)),
      colors_(std::move(colors)),
      edges_(std::move(edges)),
      labels_(std::move(labels)) {
  if (colors_.size() != owners_.size() || edges_.size() != owners_.size())
    throw InvalidArgument("arena: owners, colors and edges differ in size");
  if (!labels_.empty() && labels_.size() != owners_.size())
    throw InvalidArgument("arena: label count mismatch");
  for (Vertex v = 0; v < owners_.size(); ++v) {
    if (edges_.successors(v).empty())
      throw InvalidArgument("arena: vertex " + std::to_string(v) + " has no successor");
    for (Vertex w : edges_.successors(v))
      if (w >= owners_.size()) throw InvalidArgument("arena: edge target out of range");
  }
  for (Color c : colors_) max_color_ = std::max(max_color_, c);
}

Vertex ArenaBuilder::add_vertex(Player owner, Color color, std::string label) {
  owners_.push_back(owner);
  colors_.push_back(color);
  edges_.emplace_back();
  if (!label.empty()) labelled_ = true;
  labels_.push_back(std::move(label));
  return static_cast<Vertex>(owners_.size() - 1);
}

void ArenaBuilder::add_edge(Vertex from, Vertex to) { edges_.at(from).push_back(to); }

ParityGameArena ArenaBuilder::build() && {
  if (!labelled_) labels_.clear();
  return ParityGameArena(std::move(owners_), std::move(colors_), Digraph(edges_),
                         std::move(labels_));
}

std::vector<Vertex> Solution::region(Player p) const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < winner.size(); ++v)
    if (winner[v] == p) out.push_back(v);
  return out;
}

std::vector<Vertex> Solution::strategy_of(Player p, const ParityGameArena& g) const {
  std::vector<Vertex> out(strategy.size(), kNoVertex);
  for (Vertex v = 0; v < strategy.size(); ++v)
    if (g.owner(v) == p) out[v] = strategy[v];
  return out;
}

// ---------------------------------------------------------------------------
// Zielonka

namespace {

class Zielonka {
 public:
  explicit Zielonka(const ParityGameArena& g)
      : g_(g),
        pred_(g.graph().reversed()),
        alive_(g.size(), 1),
        mark_(g.size(), 0),
        count_(g.size(), kUncounted) {
    result_.winner.assign(g.size(), Player::I);
    result_.strategy.assign(g.size(), kNoVertex);
  }

  Solution run() {
    std::vector<Vertex> all(g_.size());
    for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
    solve(all);
    for (Vertex v = 0; v < g_.size(); ++v)
      if (g_.owner(v) != result_.winner[v]) result_.strategy[v] = kNoVertex;
    return std::move(result_);
  }

 private:
  static constexpr std::uint32_t kUncounted = UINT32_MAX;

  // Precondition: alive_ is set exactly on `vs`.
  void solve(const std::vector<Vertex>& vs) {
    if (vs.empty()) return;
    Color top = 0;
    for (Vertex v : vs) top = std::max(top, g_.color(v));
    const Player p = color_winner(top);
    const Player q = opponent(p);

    std::vector<Vertex> target;
    for (Vertex v : vs)
      if (g_.color(v) == top) target.push_back(v);
    for (Vertex v : target) {
      if (g_.owner(v) != p) continue;
      for (Vertex w : g_.successors(v)) {
        if (alive_[w]) {
          result_.strategy[v] = w;
          break;
        }
      }
    }
    std::vector<Vertex> attr = attract(p, target);

    std::vector<Vertex> rest = without(vs, attr);
    for (Vertex v : attr) alive_[v] = 0;
    solve(rest);
    for (Vertex v : attr) alive_[v] = 1;

    std::vector<Vertex> lost;
    for (Vertex v : rest)
      if (result_.winner[v] == q) lost.push_back(v);
    if (lost.empty()) {
      for (Vertex v : vs) result_.winner[v] = p;
      return;
    }

    std::vector<Vertex> b = attract(q, lost);
    std::vector<Vertex> rest2 = without(vs, b);
    for (Vertex v : b) alive_[v] = 0;
    solve(rest2);
    for (Vertex v : b) {
      alive_[v] = 1;
      result_.winner[v] = q;
    }
  }

  std::vector<Vertex> without(const std::vector<Vertex>& vs, const std::vector<Vertex>& drop) {
    for (Vertex v : drop) mark_[v] = 1;
    std::vector<Vertex> out;
    out.reserve(vs.size() - std::min(vs.size(), drop.size()));
    for (Vertex v : vs)
      if (!mark_[v]) out.push_back(v);
    for (Vertex v : drop) mark_[v] = 0;
    return out;
  }

  /// Attractor of `target` for `p` inside the alive vertices; records the
  /// attracting move of `p` on newly added vertices.
  std::vector<Vertex> attract(Player p, const std::vector<Vertex>& target) {
    std::vector<Vertex> attr = target;
    std::vector<Vertex> touched;
    for (Vertex v : attr) mark_[v] = 1;
    for (std::size_t head = 0; head < attr.size(); ++head) {
      Vertex v = attr[head];
      for (Vertex u : pred_.successors(v)) {
        if (!alive_[u] || mark_[u]) continue;
        if (g_.owner(u) == p) {
          mark_[u] = 1;
          result_.strategy[u] = v;
          attr.push_back(u);
          continue;
        }
        if (count_[u] == kUncounted) {
          std::uint32_t c = 0;
          for (Vertex w : g_.successors(u)) c += alive_[w] ? 1 : 0;
          count_[u] = c;
          touched.push_back(u);
        }
        if (--count_[u] == 0) {
          mark_[u] = 1;
          attr.push_back(u);
        }
      }
    }
    for (Vertex v : attr) mark_[v] = 0;
    for (Vertex v : touched) count_[v] = kUncounted;
    return attr;
  }

  const ParityGameArena& g_;
  Digraph pred_;
  std::vector<char> alive_;
  std::vector<char> mark_;
  std::vector<std::uint32_t> count_;
  Solution result_;
};

}  // namespace

Solution solve(const ParityGameArena& g) { return Zielonka(g).run(); }

// ---------------------------------------------------------------------------
// Verification

namespace {

/// Tarjan restricted to an explicit vertex list, reusing scratch arrays.
class SubsetScc {
 public:
  explicit SubsetScc(std::size_t n) : index_(n, kUnvisited), low_(n, 0), in_(n, 0), on_stack_(n, 0) {}

  /// Cyclic components of the subgraph induced by `vs`.
  std::vector<std::vector<Vertex>> cyclic_components(const Digraph& g,
                                                     const std::vector<Vertex>& vs) {
    for (Vertex v : vs) in_[v] = 1;
    std::vector<std::vector<Vertex>> out;
    std::uint32_t counter = 0;
    std::vector<Vertex> stack;
    std::vector<std::pair<Vertex, std::size_t>> call;
    for (Vertex root : vs) {
      if (index_[root] != kUnvisited) continue;
      call.emplace_back(root, 0);
      index_[root] = low_[root] = counter++;
      stack.push_back(root);
      on_stack_[root] = 1;
      while (!call.empty()) {
        Vertex v = call.back().first;
        std::size_t& pos = call.back().second;
        auto succ = g.successors(v);
        if (pos < succ.size()) {
          Vertex w = succ[pos++];
          if (!in_[w]) continue;
          if (index_[w] == kUnvisited) {
            index_[w] = low_[w] = counter++;
            stack.push_back(w);
            on_stack_[w] = 1;
            call.emplace_back(w, 0);
          } else if (on_stack_[w]) {
            low_[v] = std::min(low_[v], index_[w]);
          }
          continue;
        }
        call.pop_back();
        if (!call.empty()) low_[call.back().first] = std::min(low_[call.back().first], low_[v]);
        if (low_[v] != index_[v]) continue;
        std::vector<Vertex> comp;
        for (;;) {
          Vertex w = stack.back();
          stack.pop_back();
          on_stack_[w] = 0;
          comp.push_back(w);
          if (w == v) break;
        }
        bool cyclic = comp.size() > 1;
        if (!cyclic)
          for (Vertex w : g.successors(v)) cyclic |= (w == v);
        if (cyclic) out.push_back(std::move(comp));
      }
    }
    for (Vertex v : vs) {
      in_[v] = 0;
      index_[v] = kUnvisited;
    }
    return out;
  }

 private:
  static constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> index_, low_;
  std::vector<char> in_, on_stack_;
};

}  // namespace

bool every_cycle_wins(const Digraph& g, std::span<const Color> colors, Player player,
                      std::span<const char> alive) {
  std::vector<Vertex> all;
  for (Vertex v = 0; v < g.size(); ++v)
    if (alive.empty() || alive[v]) all.push_back(v);
  SubsetScc scc(g.size());
  std::vector<std::vector<Vertex>> work{std::move(all)};
  while (!work.empty()) {
    std::vector<Vertex> vs = std::move(work.back());
    work.pop_back();
    for (auto& comp : scc.cyclic_components(g, vs)) {
      Color top = 0;
      for (Vertex v : comp) top = std::max(top, colors[v]);
      if (color_winner(top) != player) return false;
      std::vector<Vertex> rest;
      for (Vertex v : comp)
        if (colors[v] != top) rest.push_back(v);
      if (!rest.empty()) work.push_back(std::move(rest));
    }
  }
  return true;
}

bool verify_positional_strategy(const ParityGameArena& g, Player player,
                                std::span<const Vertex> strategy, Vertex start) {
  if (start >= g.size()) throw InvalidArgument("start vertex out of range");
  if (strategy.size() != g.size()) throw InvalidArgument("strategy size mismatch");
  std::vector<std::vector<Vertex>> adj(g.size());
  std::vector<char> seen(g.size(), 0);
  std::vector<Vertex> todo{start};
  seen[start] = 1;
  while (!todo.empty()) {
    Vertex v = todo.back();
    todo.pop_back();
    auto succ = g.successors(v);
    if (g.owner(v) == player) {
      Vertex w = strategy[v];
      if (w == kNoVertex || std::find(succ.begin(), succ.end(), w) == succ.end())
        throw InvalidArgument("strategy has no valid choice at reachable vertex " +
                              std::to_string(v));
      adj[v].push_back(w);
    } else {
      adj[v].assign(succ.begin(), succ.end());
    }
    for (Vertex w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        todo.push_back(w);
      }
    }
  }
  return every_cycle_wins(Digraph(adj), g.colors(), player, seen);
}

Player lasso_winner(std::span<const Color> /*prefix*/, std::span<const Color> cycle) {
  if (cycle.empty()) throw InvalidArgument("lasso cycle must be nonempty");
  return color_winner(*std::max_element(cycle.begin(), cycle.end()));
}

std::string dump_arena(const ParityGameArena& g) {
  std::ostringstream os;
  for (Vertex v = 0; v < g.size(); ++v) {
    os << v << ' ' << to_char(g.owner(v)) << ' ' << g.color(v) << ' ';
    bool first = true;
    for (Vertex w : g.successors(v)) {
      if (!first) os << ',';
      os << w;
      first = false;
    }
    if (g.has_labels() && !g.label(v).empty()) os << "  # " << g.label(v);
    os << '\n';
  }
  return os.str();
}

}  // namespace lookahead
