#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "dgt/cycle_rank.hpp"
#include "dgt/digraph.hpp"

namespace dgt {

using LinearOrdering = std::vector<VertexId>;

// Path-length bound; kInfinite stands for |V(G)|.
inline constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

enum class ReachMode { Weak, Strong };

auto is_ordering_of(const Digraph& g, const LinearOrdering& order) -> bool;

auto reach_set(const Digraph& g, const LinearOrdering& order, VertexId v, std::size_t k, ReachMode mode) -> VertexSet;
auto coloring_number_of_ordering(const Digraph& g, const LinearOrdering& order, std::size_t k, ReachMode mode)
    -> std::size_t;

struct ColoringResult {
    std::size_t value = 0;
    LinearOrdering witness;
};

inline constexpr std::size_t kDefaultOrderingCap = 9;

// Minimum over all orderings; throws TooLarge when |V(G)| exceeds cap.
auto coloring_number_exact(const Digraph& g, std::size_t k, ReachMode mode, std::size_t cap = kDefaultOrderingCap)
    -> ColoringResult;

// Weak infinite-radius coloring number through the cycle rank solver.
auto wcol_inf(const Digraph& g) -> std::size_t;

auto ordering_from_decomposition(const Digraph& g, const CycleRankDecomposition& t) -> LinearOrdering;
auto decomposition_from_ordering(const Digraph& g, const LinearOrdering& order) -> CycleRankDecomposition;

} // namespace dgt
