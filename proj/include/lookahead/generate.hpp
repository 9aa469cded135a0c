#pragma once

#include <cstdint>
#include <random>

#include "lookahead/automata.hpp"
#include "lookahead/paritygame.hpp"

namespace lookahead {

/// Uniformly random total DPA over binary (or larger) alphabets with color
/// values 0..colors-1.
ParityAutomaton random_dpa(std::mt19937_64& rng, std::size_t states, std::size_t colors,
                           std::size_t inputs = 2, std::size_t outputs = 2);
ParityAutomaton random_dpa(std::uint64_t seed, std::size_t states, std::size_t colors);

/// Random arena; every vertex gets between 1 and `max_degree` distinct
/// successors and a color in 0..colors-1.
ParityGameArena random_arena(std::mt19937_64& rng, std::size_t vertices, std::size_t colors,
                             std::size_t max_degree = 3);

}  // namespace lookahead
