#include "lookahead/generate.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lookahead/errors.hpp"

namespace lookahead {

namespace {

Alphabet numbered(std::size_t k) {
  std::vector<std::string> syms;
  for (std::size_t i = 0; i < k; ++i) syms.push_back(std::to_string(i));
  return Alphabet(std::move(syms));
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

ParityAutomaton random_dpa(std::mt19937_64& rng, std::size_t states, std::size_t colors,
                           std::size_t inputs, std::size_t outputs) {
  if (states == 0 || colors == 0) throw InvalidArgument("need at least one state and one color");
  std::vector<State> delta(states * inputs * outputs);
  for (auto& t : delta) t = static_cast<State>(uniform(rng, 0, states - 1));
  std::vector<Color> c(states);
  for (auto& x : c) x = static_cast<Color>(uniform(rng, 0, colors - 1));
  return ParityAutomaton(numbered(inputs), numbered(outputs), states, 0, std::move(delta),
                         std::move(c));
}

ParityAutomaton random_dpa(std::uint64_t seed, std::size_t states, std::size_t colors) {
  std::mt19937_64 rng(seed);
  return random_dpa(rng, states, colors);
}

ParityGameArena random_arena(std::mt19937_64& rng, std::size_t vertices, std::size_t colors,
                             std::size_t max_degree) {
  if (vertices == 0 || colors == 0 || max_degree == 0)
    throw InvalidArgument("random arena needs vertices, colors and degree >= 1");
  ArenaBuilder b;
  for (std::size_t v = 0; v < vertices; ++v)
    b.add_vertex(uniform(rng, 0, 1) ? Player::O : Player::I,
                 static_cast<Color>(uniform(rng, 0, colors - 1)));
  std::vector<Vertex> all(vertices);
  std::iota(all.begin(), all.end(), 0);
  for (Vertex v = 0; v < vertices; ++v) {
    std::size_t k = uniform(rng, 1, std::min(max_degree, vertices));
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<Vertex> succ(all.begin(), all.begin() + k);
    std::sort(succ.begin(), succ.end());
    for (Vertex w : succ) b.add_edge(v, w);
  }
  return std::move(b).build();
}

}  // namespace lookahead
