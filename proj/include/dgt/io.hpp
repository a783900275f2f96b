#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dgt/cycle_rank.hpp"
#include "dgt/decompositions.hpp"
#include "dgt/digraph.hpp"
#include "dgt/minors.hpp"
#include "dgt/structures.hpp"

namespace dgt {

using Json = nlohmann::json;

// Edge-list text: one `tail head` pair per line, `v name` declares a vertex, `#` starts a
// comment. Vertices get ids 0, 1, ... in order of first appearance and keep their names
// as labels. Duplicate edges are collapsed and reported through `warnings`.
auto parse_digraph(std::string_view text, std::vector<std::string>* warnings = nullptr) -> Digraph;
// Declares every vertex in id order, then lists the edges; labels must be distinct tokens.
auto serialize_digraph(const Digraph& g) -> std::string;
auto to_dot(const Digraph& g, std::string_view name = "G") -> std::string;

// Counts plus an FNV-1a hash of the sorted label-level vertex and edge lists, so the
// fingerprint ignores identifier order.
struct Fingerprint {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::string hash;

    friend auto operator==(const Fingerprint&, const Fingerprint&) -> bool = default;
};

auto fnv1a(std::string_view bytes) -> std::uint64_t;
auto fingerprint(const Digraph& g) -> Fingerprint;

inline constexpr int kSchemaVersion = 1;

enum class CertificateKind { CrDecomposition, BfModel, Dtd, ChainDecomposition, StructureDescriptor };

auto to_string(CertificateKind k) -> std::string;
auto certificate_kind(std::string_view name) -> CertificateKind;

struct Certificate {
    CertificateKind kind = CertificateKind::CrDecomposition;
    Fingerprint graph;
    Json payload;
};

// Payload encoders and decoders. Vertices are referred to by label; decoders throw
// ParseError (line 0) on unknown labels or malformed payloads.
auto graph_to_json(const Digraph& g) -> Json;
auto graph_from_json(const Json& j) -> Digraph;

auto encode_cr(const Digraph& g, const CycleRankDecomposition& t) -> Json;
auto decode_cr(const Digraph& g, const Json& payload) -> CycleRankDecomposition;

auto encode_model(const Digraph& pattern, const Digraph& host, const ButterflyMinorModel& m) -> Json;
auto decode_model_pattern(const Json& payload) -> Digraph;
auto decode_model(const Digraph& pattern, const Digraph& host, const Json& payload) -> ButterflyMinorModel;

auto encode_dtd(const Digraph& g, const DirectedTreeDecomposition& d) -> Json;
auto decode_dtd(const Digraph& g, const Json& payload) -> DirectedTreeDecomposition;

auto encode_mixed_chain(const Digraph& g, const MixedChain& h) -> Json;
auto decode_mixed_chain(const Digraph& g, const Json& j) -> MixedChain;

using Structure = std::variant<RelaxedLadder, RelaxedChain, MixedChain, MixedExtension>;

auto encode_structure(const Digraph& g, const Structure& s) -> Json;
auto decode_structure(const Digraph& g, const Json& payload) -> Structure;

// Leaves carry their digraph; internal nodes carry only their mixed chain, whose paths
// contribute the remaining edges.
auto encode_chain_decomposition(const ChainDecomposition& t) -> Json;
auto decode_chain_decomposition(const Json& payload) -> ChainDecomposition;

auto make_certificate(CertificateKind kind, const Digraph& g, Json payload) -> Certificate;
auto serialize_certificate(const Certificate& c) -> std::string;
auto parse_certificate(std::string_view text) -> Certificate;

struct CertificateCheck {
    bool valid = false;
    std::string detail;
};

// Checks the fingerprint against g and then the payload with the matching validator.
auto verify_certificate(const Digraph& g, const Certificate& c) -> CertificateCheck;

} // namespace dgt
