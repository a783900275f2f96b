#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dgt/errors.hpp"

namespace dgt {

struct VertexId {
    std::uint32_t value = 0;

    friend auto operator<=>(VertexId, VertexId) = default;
};

struct Edge {
    VertexId tail;
    VertexId head;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

using VertexSet = std::set<VertexId>;

// Loop-free digraph without parallel edges. Vertex identifiers are stable
// across every operation; each vertex also carries a printable label.
class Digraph {
public:
    Digraph() = default;

    // Adds a vertex with the next unused identifier.
    auto add_vertex(std::string label = {}) -> VertexId;
    // Adds a vertex with a caller-chosen identifier; no-op if it exists.
    void add_vertex(VertexId v, std::string label = {});
    // Returns false when the edge was already present.
    auto add_edge(VertexId tail, VertexId head) -> bool;
    auto add_edge(Edge e) -> bool { return add_edge(e.tail, e.head); }
    void remove_edge(Edge e);
    void remove_vertex(VertexId v);
    void set_label(VertexId v, std::string label);

    [[nodiscard]] auto has_vertex(VertexId v) const -> bool { return nodes_.contains(v); }
    [[nodiscard]] auto has_edge(VertexId tail, VertexId head) const -> bool;
    [[nodiscard]] auto has_edge(Edge e) const -> bool { return has_edge(e.tail, e.head); }

    [[nodiscard]] auto out(VertexId v) const -> const VertexSet&;
    [[nodiscard]] auto in(VertexId v) const -> const VertexSet&;
    [[nodiscard]] auto out_degree(VertexId v) const -> std::size_t { return out(v).size(); }
    [[nodiscard]] auto in_degree(VertexId v) const -> std::size_t { return in(v).size(); }

    [[nodiscard]] auto vertex_count() const -> std::size_t { return nodes_.size(); }
    [[nodiscard]] auto edge_count() const -> std::size_t { return edge_count_; }
    [[nodiscard]] auto vertices() const -> std::vector<VertexId>;
    [[nodiscard]] auto vertex_set() const -> VertexSet;
    [[nodiscard]] auto edges() const -> std::vector<Edge>;
    [[nodiscard]] auto next_id() const -> VertexId;

    [[nodiscard]] auto label(VertexId v) const -> const std::string&;
    [[nodiscard]] auto find(std::string_view label) const -> std::optional<VertexId>;
    [[nodiscard]] auto name(VertexId v) const -> std::string { return label(v); }

    [[nodiscard]] auto induced(const VertexSet& keep) const -> Digraph;
    [[nodiscard]] auto without(const VertexSet& drop) const -> Digraph;

    friend auto operator==(const Digraph& a, const Digraph& b) -> bool;

private:
    struct Node {
        std::string label;
        VertexSet out;
        VertexSet in;
    };

    std::map<VertexId, Node> nodes_;
    std::size_t edge_count_ = 0;
};

// Union of digraphs sharing an identifier space.
auto graph_union(const std::vector<const Digraph*>& parts) -> Digraph;
auto is_subgraph(const Digraph& small, const Digraph& big) -> bool;

struct Path {
    std::vector<VertexId> vertices;

    Path() = default;
    Path(std::initializer_list<VertexId> vs) : vertices(vs) {}
    explicit Path(std::vector<VertexId> vs) : vertices(std::move(vs)) {}

    [[nodiscard]] auto tail() const -> VertexId { return vertices.front(); }
    [[nodiscard]] auto head() const -> VertexId { return vertices.back(); }
    [[nodiscard]] auto length() const -> std::size_t { return vertices.empty() ? 0 : vertices.size() - 1; }
    [[nodiscard]] auto size() const -> std::size_t { return vertices.size(); }
    [[nodiscard]] auto empty() const -> bool { return vertices.empty(); }
    [[nodiscard]] auto contains(VertexId v) const -> bool;
    [[nodiscard]] auto index_of(VertexId v) const -> std::optional<std::size_t>;
    [[nodiscard]] auto edges() const -> std::vector<Edge>;
    [[nodiscard]] auto vertex_set() const -> VertexSet;
    [[nodiscard]] auto internal() const -> VertexSet;
    // Subpath between two vertices of the path, inclusive, in path order.
    [[nodiscard]] auto between(VertexId from, VertexId to) const -> Path;
    [[nodiscard]] auto slice(std::size_t from, std::size_t to) const -> Path;
    [[nodiscard]] auto as_digraph(const Digraph& host) const -> Digraph;

    friend auto operator==(const Path&, const Path&) -> bool = default;
};

// Distinct vertices and consecutive pairs are edges of the host.
auto is_path_in(const Digraph& host, const Path& p) -> bool;
auto is_simple(const Path& p) -> bool;
auto concat(const Path& a, const Path& b) -> Path;

struct TwoTerminalDigraph {
    Digraph graph;
    VertexId s;
    VertexId t;
};

// Strongly connected components in topological order (no edge points from a
// later block to an earlier one). Blocks are sorted internally.
auto scc(const Digraph& g) -> std::vector<std::vector<VertexId>>;
auto is_strongly_connected(const Digraph& g) -> bool;
auto is_acyclic(const Digraph& g) -> bool;
auto reachable_from(const Digraph& g, VertexId v) -> VertexSet;

auto circumference(const Digraph& g) -> std::size_t;

auto is_butterfly_contractible(const Digraph& g, Edge e) -> bool;
// The merged vertex keeps the identifier and label of the tail.
auto butterfly_contract(const Digraph& g, Edge e) -> Digraph;

enum class Direction { Out, In };

auto arborescence(const Digraph& g, VertexId root, Direction dir) -> Digraph;

auto is_laced(const Path& p, const Path& q) -> bool;
auto untangle(const Path& p, const Path& q, bool keep_intersection) -> Path;

} // namespace dgt

template <>
struct std::hash<dgt::VertexId> {
    auto operator()(dgt::VertexId v) const noexcept -> std::size_t { return std::hash<std::uint32_t>{}(v.value); }
};
