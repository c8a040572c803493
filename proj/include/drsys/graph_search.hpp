#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace drs::graph {

using Mask = std::uint64_t;
constexpr std::size_t kMaxExact = 64;

// adj[v] is the neighbour mask of v (no self loops), at most 64 vertices.
std::vector<std::size_t> max_independent_set(const std::vector<Mask>& adj);

// Dominating set: every vertex is chosen or adjacent to a chosen one.
std::vector<std::size_t> min_dominating_set(const std::vector<Mask>& adj);

// Greedy set cover over closed neighbourhoods (upper bound), for graphs of
// any size given as adjacency lists.
std::vector<std::size_t> greedy_dominating_set(const std::vector<std::vector<std::size_t>>& adj);

}  // namespace drs::graph
