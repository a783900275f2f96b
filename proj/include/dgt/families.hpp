#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "dgt/digraph.hpp"

namespace dgt {

// L_k: paths p1..pk and q1..qk with 2-cycles p_i <-> q_{k+1-i}.
// p_i has id i-1 and q_i has id k+i-1.
auto gen_ladder(std::size_t k) -> Digraph;
auto ladder_p(std::size_t k, std::size_t i) -> VertexId;
auto ladder_q(std::size_t k, std::size_t i) -> VertexId;

// CC_k on v1..vk (id i-1), with endpoints v1 and vk.
auto gen_cycle_chain(std::size_t k) -> TwoTerminalDigraph;

// TC_k; vertex labels are "v" followed by k digits in {1,2}, the first digit
// naming the top-level copy. The id is that digit string read in binary.
auto gen_tree_chain(std::size_t k) -> TwoTerminalDigraph;

// Cylindrical grid of order k; v^i_j is labelled "v{i}_{j}".
auto gen_cylindrical_grid(std::size_t k) -> Digraph;
auto grid_vertex(std::size_t k, std::size_t i, std::size_t j) -> VertexId;

// Complete binary tree of the given depth in heap order (node 1 is the root,
// children of n are 2n and 2n+1). a[n-1] is the link parameter of internal node n.
struct TreeChainRecipe {
    std::size_t depth = 0;
    std::vector<std::size_t> a;

    [[nodiscard]] auto internal_nodes() const -> std::size_t { return (std::size_t{1} << depth) - 1; }
    [[nodiscard]] auto value(std::size_t node) const -> std::size_t { return a.at(node - 1); }
    [[nodiscard]] auto valid() const -> bool;
};

auto random_recipe(std::size_t depth, std::size_t max_a, std::mt19937_64& rng) -> TreeChainRecipe;

// Per heap node: terminals of the sub-chain and, for internal nodes, the link.
struct TreeChainNode {
    VertexId s;
    VertexId t;
    std::size_t a = 0;
    std::vector<VertexId> chain; // c_1..c_{a-1}; v = c_1 and w = c_{a-1}
};

struct RelaxedTreeChain {
    TwoTerminalDigraph chain;
    std::vector<TreeChainNode> trace; // trace[n-1] for heap node n, leaves included
    std::size_t depth = 0;

    [[nodiscard]] auto node(std::size_t n) const -> const TreeChainNode& { return trace.at(n - 1); }
};

auto gen_relaxed_tree_chain(const TreeChainRecipe& recipe) -> RelaxedTreeChain;

} // namespace dgt
