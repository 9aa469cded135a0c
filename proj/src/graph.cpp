#include "lookahead/graph.hpp"

#include <algorithm>
#include <utility>

namespace lookahead {

Digraph::Digraph(const std::vector<std::vector<Vertex>>& adjacency) {
  offsets_.reserve(adjacency.size() + 1);
  offsets_.push_back(0);
  for (const auto& succ : adjacency) {
    targets_.insert(targets_.end(), succ.begin(), succ.end());
    offsets_.push_back(targets_.size());
  }
}

Digraph::Digraph(std::vector<std::size_t> offsets, std::vector<Vertex> targets)
    : offsets_(std::move(offsets)), targets_(std::move(targets)) {}

Digraph Digraph::reversed() const {
  const std::size_t n = size();
  std::vector<std::size_t> offsets(n + 1, 0);
  for (Vertex t : targets_) ++offsets[t + 1];
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  std::vector<Vertex> targets(targets_.size());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex t : successors(v)) targets[fill[t]++] = v;
  return Digraph(std::move(offsets), std::move(targets));
}

SccDecomposition strongly_connected_components(const Digraph& g,
                                               std::span<const char> alive) {
  const std::size_t n = g.size();
  auto is_alive = [&](Vertex v) { return alive.empty() || alive[v] != 0; };

  constexpr std::uint32_t unvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(n, unvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  // (vertex, next successor position)
  std::vector<std::pair<Vertex, std::size_t>> call;

  SccDecomposition result;
  result.component.assign(n, SccDecomposition::npos);
  std::uint32_t counter = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (!is_alive(root) || index[root] != unvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;

    while (!call.empty()) {
      auto& [v, pos] = call.back();
      auto succ = g.successors(v);
      if (pos < succ.size()) {
        Vertex w = succ[pos++];
        if (!is_alive(w)) continue;
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      Vertex done = v;
      call.pop_back();
      if (!call.empty()) {
        Vertex parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] != index[done]) continue;

      const std::uint32_t id = result.count++;
      bool cyclic = false;
      std::size_t members = 0;
      for (;;) {
        Vertex w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        result.component[w] = id;
        ++members;
        if (w == done) break;
      }
      if (members > 1) {
        cyclic = true;
      } else {
        for (Vertex w : g.successors(done))
          if (w == done) cyclic = true;
      }
      result.cyclic.push_back(cyclic);
    }
  }
  return result;
}

std::vector<char> reachable_from(const Digraph& g, std::span<const Vertex> sources) {
  std::vector<char> seen(g.size(), 0);
  std::vector<Vertex> todo;
  for (Vertex s : sources) {
    if (!seen[s]) {
      seen[s] = 1;
      todo.push_back(s);
    }
  }
  while (!todo.empty()) {
    Vertex v = todo.back();
    todo.pop_back();
    for (Vertex w : g.successors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        todo.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace lookahead
