#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgt/digraph.hpp"

namespace dgt {

// Rooted forest over V(G); one tree per strongly connected component.
struct CycleRankDecomposition {
    std::vector<VertexId> roots;
    std::map<VertexId, VertexId> parent;

    [[nodiscard]] auto children() const -> std::map<VertexId, std::vector<VertexId>>;
    [[nodiscard]] auto nodes() const -> VertexSet;
    // Vertex count of the longest root-to-leaf path; assumes a forest.
    [[nodiscard]] auto height() const -> std::size_t;
    [[nodiscard]] auto is_ancestor(VertexId a, VertexId d) const -> bool;
    [[nodiscard]] auto subtree(VertexId t) const -> VertexSet;

    friend auto operator==(const CycleRankDecomposition&, const CycleRankDecomposition&) -> bool = default;
};

struct CycleRankResult {
    std::size_t rank = 0;
    CycleRankDecomposition certificate;
};

struct DecompositionCheck {
    bool valid = false;
    std::size_t height = 0;
    std::optional<std::string> witness;
};

auto cycle_rank(const Digraph& g) -> CycleRankResult;
auto validate_cr_decomposition(const Digraph& g, const CycleRankDecomposition& t) -> DecompositionCheck;
// Decomposition of butterfly_contract(g, e) whose height does not exceed that of t.
auto contract_cr_decomposition(const Digraph& g, const CycleRankDecomposition& t, Edge e) -> CycleRankDecomposition;

} // namespace dgt
