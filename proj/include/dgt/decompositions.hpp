#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "dgt/cycle_rank.hpp"
#include "dgt/digraph.hpp"
#include "dgt/structures.hpp"

namespace dgt {

// True iff no directed cycle of G - X meets both Y and V(G) \ Y.
auto strongly_guards(const Digraph& g, const VertexSet& x, const VertexSet& y) -> bool;

// Nodes of the arborescence; the guard of arc (parent, d) is stored on d.
struct DtdNode {
    std::optional<std::size_t> parent;
    VertexSet bag;
    VertexSet guard;

    friend auto operator==(const DtdNode&, const DtdNode&) -> bool = default;
};

struct DirectedTreeDecomposition {
    std::vector<DtdNode> nodes;

    [[nodiscard]] auto root() const -> std::size_t;
    [[nodiscard]] auto children(std::size_t t) const -> std::vector<std::size_t>;
    // Union of the bags of the subtree rooted at t.
    [[nodiscard]] auto below(std::size_t t) const -> VertexSet;
    // Bag of t together with the guards of every arc at t.
    [[nodiscard]] auto gamma(std::size_t t) const -> VertexSet;
    // Children before parents.
    [[nodiscard]] auto post_order() const -> std::vector<std::size_t>;
};

struct DtdCheck {
    bool valid = false;
    std::size_t width = 0;
    std::optional<std::string> witness;
};

auto validate_dtd(const Digraph& g, const DirectedTreeDecomposition& d) -> DtdCheck;

// One node per vertex, guarded by its ancestors; width is the height minus one.
auto dtd_from_cr_decomposition(const Digraph& g, const CycleRankDecomposition& t) -> DirectedTreeDecomposition;

// Best of `tries` random arborescences over random bag partitions, each arc guarded by a
// smallest guard found by exhaustive subset search. Throws TooLarge above 10 vertices.
auto search_dtd(const Digraph& g, std::size_t tries, std::mt19937_64& rng) -> DirectedTreeDecomposition;

// Chain decompositions. Internal nodes have children {left, right} and a mixed chain
// whose left endpoints lie in the left child and right endpoints in the right child.
struct ChainNode {
    Digraph graph;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
    std::optional<MixedChain> chain;
};

struct ChainDecomposition {
    std::vector<ChainNode> nodes;
    std::size_t root = 0;
    std::vector<std::size_t> weight_vector;
    std::size_t full_height = 0;

    auto add_leaf(Digraph g) -> std::size_t;
    // The new node's digraph is the union of both children and the chain's subdigraph.
    auto add_link(std::size_t left, std::size_t right, MixedChain h, const Digraph& chain_graph) -> std::size_t;
    // Sets the root and the cached weight vector and full height.
    void finalize(std::size_t root_node);

    [[nodiscard]] auto is_leaf(std::size_t d) const -> bool { return nodes.at(d).children.empty(); }
    [[nodiscard]] auto is_proper_descendant(std::size_t d, std::size_t of) const -> bool;
    // Nodes in the breadth-first order with left children first.
    [[nodiscard]] auto bfs_order() const -> std::vector<std::size_t>;
};

struct ChainDecompositionCheck {
    bool valid = false;
    std::vector<std::size_t> weight_vector;
    std::size_t full_height = 0;
    std::optional<std::string> witness;
};

auto validate_chain_decomposition(const ChainDecomposition& t) -> ChainDecompositionCheck;

enum class EndpointType { None, Left, Right, Central };

auto to_string(EndpointType t) -> std::string;

struct EndpointRecord {
    std::optional<VertexId> out_vertex;
    std::optional<VertexId> in_vertex;
    EndpointType out_type = EndpointType::None;
    EndpointType in_type = EndpointType::None;
    bool crossing = false;
};

// Types are None when d' is a leaf, as a leaf carries no simple decomposition.
auto classify_endpoint(const ChainDecomposition& t, std::size_t d, std::size_t d_prime) -> EndpointRecord;

// Out- and in-type of x, and crossing of a pair, with respect to the simple decomposition at node d.
auto out_type(const ChainDecomposition& t, std::size_t d, VertexId x) -> EndpointType;
auto in_type(const ChainDecomposition& t, std::size_t d, VertexId y) -> EndpointType;
auto is_crossing(const ChainDecomposition& t, std::size_t d, VertexId x, VertexId y) -> bool;

struct NotRinsed {
    std::size_t d;
    std::size_t d_prime;
};
struct RinsedNotClean {
    std::size_t d;
    std::size_t d_prime;
};
struct CleanNotSpotless {
    std::size_t d1;
    std::size_t d2;
    std::size_t d3;
};
struct Spotless {};
using Cleanliness = std::variant<NotRinsed, RinsedNotClean, CleanNotSpotless, Spotless>;

auto acts_upon(const ChainDecomposition& t, std::size_t d, std::size_t d_prime) -> bool;
auto satisfies_spotless_property(const ChainDecomposition& t, std::size_t d1, std::size_t d2, std::size_t d3) -> bool;
auto cleanliness(const ChainDecomposition& t) -> Cleanliness;

// The natural chain decomposition of TC_k; its root digraph equals gen_tree_chain(k).
auto tree_chain_decomposition(std::size_t k) -> ChainDecomposition;

// A member of M_k with the chain decomposition it was built from. Leaves are Hamiltonian
// cycles on 1 to 4 vertices with random chords; each link is a random mixed chain of
// length at most 2 built from order-0 ladders, whose endpoints are relabelled onto random child vertices.
// Deterministic per seed; throws BudgetExceeded once the vertex count passes size_budget.
struct MFixture {
    Digraph graph;
    ChainDecomposition decomposition;
};

auto gen_M(std::size_t k, std::uint64_t seed, std::size_t size_budget = 4096) -> MFixture;

// Returns a member of the family contained in the digraph, if any.
using MemberCheck = std::function<std::optional<Digraph>(const Digraph&)>;

auto cycle_member_check() -> MemberCheck;
// Subdigraphs isomorphic to the pattern.
auto subgraph_member_check(Digraph pattern) -> MemberCheck;
auto find_subgraph(const Digraph& pattern, const Digraph& host) -> std::optional<Digraph>;

struct Packing {
    std::vector<Digraph> members;
};
struct Cover {
    VertexSet vertices;
};
using ErdosPosaResult = std::variant<Packing, Cover>;

auto erdos_posa(const Digraph& g, const DirectedTreeDecomposition& d, const MemberCheck& member, std::size_t k)
    -> ErdosPosaResult;

struct ErdosPosaCheck {
    bool valid = false;
    std::optional<std::string> witness;
};

// Checks a result without trusting the procedure: disjoint accepted members, or a small hitting set.
auto verify_erdos_posa(const Digraph& g, std::size_t width, const MemberCheck& member, std::size_t k,
                       const ErdosPosaResult& result) -> ErdosPosaCheck;

} // namespace dgt
