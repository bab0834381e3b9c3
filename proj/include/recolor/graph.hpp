#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "recolor/types.hpp"

namespace recolor {

using Adjacency = std::vector<std::vector<Vertex>>;

// Duplicate requests collapse to one edge.
Adjacency build_adjacency(int n, std::span<const Request> edges);
int max_degree(const Adjacency& g);
bool is_proper(const Adjacency& g, std::span<const Color> colors);

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
// Independent stream seed for trial `trial` under a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial);

// Uniform index in [0, m): draws X in [0,1) with 53 bits and returns
// ceil(X' * m) - 1 for X' = X + 2^-53, i.e. floor(X * m).
inline std::size_t uniform_index(Rng& rng, std::size_t m) {
    const unsigned __int128 x = rng() >> 11;
    return static_cast<std::size_t>((x * m) >> 53);
}

}  // namespace recolor
