#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lookahead {

using Vertex = std::uint32_t;

/// Immutable adjacency structure in compressed-row form.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(const std::vector<std::vector<Vertex>>& adjacency);
  Digraph(std::vector<std::size_t> offsets, std::vector<Vertex> targets);

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::span<const Vertex> successors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t edge_count() const noexcept { return targets_.size(); }

  Digraph reversed() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

struct SccDecomposition {
  /// Component id per vertex; ids are in reverse topological order (a
  /// component's successors have smaller ids). Vertices outside the alive set
  /// get `npos`.
  std::vector<std::uint32_t> component;
  std::uint32_t count = 0;
  /// Whether the component contains a cycle (more than one vertex or a loop).
  std::vector<bool> cyclic;

  static constexpr std::uint32_t npos = UINT32_MAX;
};

/// Tarjan's algorithm, iterative. Only vertices with alive[v] != 0 (all, if
/// `alive` is empty) and edges between them are considered.
SccDecomposition strongly_connected_components(const Digraph& g,
                                               std::span<const char> alive = {});

/// Vertices reachable from `sources` (inclusive).
std::vector<char> reachable_from(const Digraph& g, std::span<const Vertex> sources);

}  // namespace lookahead
