#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "dgt/digraph.hpp"
#include "dgt/families.hpp"
#include "dgt/structures.hpp"

namespace dgt {

// Image of one pattern vertex: a tree made of an out-arborescence on {root} + out_part
// and an in-arborescence on {root} + in_part.
struct Branch {
    VertexId root;
    VertexSet in_part;
    VertexSet out_part;
    std::set<Edge> edges;

    [[nodiscard]] auto vertices() const -> VertexSet;
    [[nodiscard]] auto can_send(VertexId v) const -> bool { return v == root || out_part.contains(v); }
    [[nodiscard]] auto can_receive(VertexId v) const -> bool { return v == root || in_part.contains(v); }
    friend auto operator==(const Branch&, const Branch&) -> bool = default;
};

struct ButterflyMinorModel {
    std::map<VertexId, Branch> vertex_map;
    std::map<Edge, Edge> edge_map;

    // Every host vertex and edge used by the model.
    [[nodiscard]] auto image() const -> Digraph;
    [[nodiscard]] auto image_vertices() const -> VertexSet;
    friend auto operator==(const ButterflyMinorModel&, const ButterflyMinorModel&) -> bool = default;
};

struct ModelCheck {
    bool valid = false;
    std::optional<std::string> witness;
};

auto validate_model(const Digraph& pattern, const Digraph& host, const ButterflyMinorModel& model) -> ModelCheck;

// Model of a pattern whose vertices map to single host vertices with every pattern edge present.
auto singleton_model(const Digraph& pattern, const Digraph& host, const std::map<VertexId, VertexId>& place)
    -> ButterflyMinorModel;

// Restriction of a model to the pattern induced by `keep`.
auto restrict_model(const ButterflyMinorModel& model, const Digraph& pattern, const VertexSet& keep)
    -> ButterflyMinorModel;

// Deletions and butterfly contractions applied to a host, remembering enough to carry a
// model of a pattern in the current digraph back to the original host.
class MinorTracker {
public:
    explicit MinorTracker(Digraph host);

    [[nodiscard]] auto original() const -> const Digraph& { return original_; }
    [[nodiscard]] auto current() const -> const Digraph& { return current_; }
    [[nodiscard]] auto script() const -> const std::vector<std::string>& { return script_; }

    void delete_edge(Edge e);
    void delete_vertex(VertexId v);
    // Keeps only the given edges and the vertices they touch.
    void keep_edges(const std::vector<Edge>& edges);
    // Throws NotContractible when e is not butterfly contractible in the current digraph.
    void contract(Edge e);
    // Current vertex an original vertex was merged into, if it survives.
    [[nodiscard]] auto find(VertexId original_vertex) const -> std::optional<VertexId>;

    [[nodiscard]] auto lift(const ButterflyMinorModel& in_current) const -> ButterflyMinorModel;

private:
    struct Step {
        Digraph before;
        Edge edge;
    };
    Digraph original_;
    Digraph current_;
    std::vector<Step> steps_;
    std::map<VertexId, VertexId> merged_into_;
    std::vector<std::string> script_;
};

// Removes tree leaves that carry no edge image until none is left.
auto minimize_model(const Digraph& pattern, const Digraph& host, const ButterflyMinorModel& model)
    -> ButterflyMinorModel;

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

struct Found {
    ButterflyMinorModel model;
};
struct NotContained {
    std::string reason;
};
struct Indeterminate {
    std::uint64_t expanded = 0;
};
using SearchOutcome = std::variant<Found, NotContained, Indeterminate>;

// Exact search; throws TooLarge for hosts above 64 vertices.
auto find_model(const Digraph& pattern, const Digraph& host, std::uint64_t budget = kDefaultSearchBudget)
    -> SearchOutcome;

enum class GridTarget { Chain, Ladder };

struct Extraction {
    Digraph host;
    Digraph pattern;
    ButterflyMinorModel model;
    std::vector<std::string> script;
};

// Chain: CC_{k+1} in the cylindrical grid of order k. Ladder: L_k in the grid of order 2k.
auto extract_from_grid(std::size_t k, GridTarget target) -> Extraction;

// L_k inside a relaxed ladder of order at least 4k.
auto ladder_from_relaxed_ladder(const Digraph& host, const RelaxedLadder& h, std::size_t k) -> ButterflyMinorModel;

// CC_k inside a relaxed chain of length k >= 1.
auto cycle_chain_from_relaxed_chain(const Digraph& host, const RelaxedChain& h) -> ButterflyMinorModel;

struct ChainOrLadder {
    GridTarget kind;
    Digraph pattern;
    ButterflyMinorModel model;
};

// CC_k or L_k inside a mixed chain of weight at least 4k^2 + k - 1.
auto chain_or_ladder_from_mixed_chain(const Digraph& host, const MixedChain& h, std::size_t k) -> ChainOrLadder;

// TC_k inside the relaxed tree chain built from a recipe of depth 2k - 1.
auto tc_from_relaxed_tree_chain(const TreeChainRecipe& recipe, std::size_t k) -> ButterflyMinorModel;

} // namespace dgt
