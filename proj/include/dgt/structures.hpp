#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "dgt/digraph.hpp"

namespace dgt {

// Left endpoints (p, q) and right endpoints (p2, q2) stand for (p, q) and (p', q').
struct Endpoints {
    VertexId p;
    VertexId q;
    VertexId p2;
    VertexId q2;

    friend auto operator==(const Endpoints&, const Endpoints&) -> bool = default;
};

// P runs p -> p', Q runs q' -> q; rung i consists of X[i] (P to Q) and Y[i] (Q to P)
// with endpoints in segs_p[i] and segs_q[k-1-i].
struct RelaxedLadder {
    Endpoints ends;
    Path P;
    Path Q;
    std::vector<Path> segs_p;
    std::vector<Path> segs_q;
    std::vector<Path> X;
    std::vector<Path> Y;

    [[nodiscard]] auto order() const -> std::size_t { return X.size(); }
    friend auto operator==(const RelaxedLadder&, const RelaxedLadder&) -> bool = default;
};

// Index i of P, Q stands for P_{i+1}, Q_{i+1}; R[i] for R_{i+1}; junctions
// pj[i], qj[i] for p_i, q_i with i in 0..k+1.
struct RelaxedChain {
    Endpoints ends;
    std::vector<Path> P;
    std::vector<Path> Q;
    std::vector<Path> R;
    std::vector<VertexId> pj;
    std::vector<VertexId> qj;

    [[nodiscard]] auto length() const -> std::size_t { return R.size(); }
    friend auto operator==(const RelaxedChain&, const RelaxedChain&) -> bool = default;
};

struct MixedChain {
    Endpoints ends;
    std::vector<RelaxedLadder> H;
    std::vector<Path> R;
    std::vector<VertexId> pj;
    std::vector<VertexId> qj;

    [[nodiscard]] auto length() const -> std::size_t { return R.size(); }
    [[nodiscard]] auto weight() const -> std::size_t;
    friend auto operator==(const MixedChain&, const MixedChain&) -> bool = default;
};

// Left endpoints (p, q), right endpoints (y, x) stored as ends.p2 = y, ends.q2 = x.
// A runs p -> x and B runs y -> q. C and D are present for the four-path form.
struct MixedExtension {
    Endpoints ends;
    Path A;
    Path B;
    std::optional<Path> C;
    std::optional<Path> D;

    [[nodiscard]] auto x() const -> VertexId { return ends.q2; }
    [[nodiscard]] auto y() const -> VertexId { return ends.p2; }
    friend auto operator==(const MixedExtension&, const MixedExtension&) -> bool = default;
};

struct StructureDescriptor {
    std::shared_ptr<const Digraph> host;
    std::variant<RelaxedLadder, RelaxedChain, MixedChain, MixedExtension> payload;
};

struct StructureCheck {
    bool valid = false;
    std::size_t measure = 0; // order, length, weight, or extension gain
    std::optional<std::string> witness;
};

auto validate_structure(const StructureDescriptor& desc) -> StructureCheck;
auto validate_ladder(const Digraph& host, const RelaxedLadder& h) -> StructureCheck;
auto validate_chain(const Digraph& host, const RelaxedChain& h) -> StructureCheck;
auto validate_mixed_chain(const Digraph& host, const MixedChain& h) -> StructureCheck;
auto validate_extension(const Digraph& host, const MixedExtension& w) -> StructureCheck;

// Subdigraph formed by the listed paths.
auto structure_graph(const Digraph& host, const RelaxedLadder& h) -> Digraph;
auto structure_graph(const Digraph& host, const RelaxedChain& h) -> Digraph;
auto structure_graph(const Digraph& host, const MixedChain& h) -> Digraph;
auto structure_graph(const Digraph& host, const MixedExtension& w) -> Digraph;

// The boundary relaxed chain: every ladder reduced to its two boundary paths.
auto boundary(const Digraph& host, const MixedChain& h) -> RelaxedChain;
// A one-piece mixed chain of length equal to the relaxed chain, all ladders of order 0.
auto as_mixed_chain(const RelaxedChain& c) -> MixedChain;

// Relaxed chain formed by laced paths P (v1 -> w2) and Q (v2 -> w1).
auto relaxed_chain_from_laced(const Digraph& host, const Path& P, const Path& Q) -> RelaxedChain;

// The two spanning paths of a relaxed chain, from p and from p' respectively.
auto spanning_paths(const RelaxedChain& c) -> std::pair<Path, Path>;

// The ladder read from right to left, with the roles of P and Q exchanged.
auto flip_ladder(const RelaxedLadder& h) -> RelaxedLadder;

auto extend_mixed_chain(const Digraph& host, const MixedExtension& w, const MixedChain& h) -> MixedChain;

struct ContractedMixedChain {
    Digraph host;
    MixedChain chain;
};

auto contract_arbor_edge(const Digraph& host, const MixedChain& h, Edge e) -> ContractedMixedChain;

// Boundary paths extended by parts of the rungs.
struct LadderExtensions {
    VertexSet inext_p;
    VertexSet outext_p;
    VertexSet inext_q;
    VertexSet outext_q;
};

auto ladder_extensions(const RelaxedLadder& h) -> LadderExtensions;

// Renames vertices through m; vertices missing from m keep their identifier.
auto relabel(const MixedChain& h, const std::map<VertexId, VertexId>& m) -> MixedChain;

// Random fixtures: one ladder per entry of orders, so orders.size() == length + 1.
struct MixedChainShape {
    std::size_t length = 0;
    std::vector<std::size_t> orders;
    bool closed_left = false;
    bool closed_right = false;
};

struct MixedChainFixture {
    Digraph host;
    MixedChain chain;
};

auto random_mixed_chain(const MixedChainShape& shape, std::mt19937_64& rng) -> MixedChainFixture;

} // namespace dgt
