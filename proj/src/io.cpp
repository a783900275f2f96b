#include "dgt/io.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "dgt/errors.hpp"

namespace dgt {

auto parse_digraph(std::string_view text, std::vector<std::string>* warnings) -> Digraph {
    Digraph g;
    std::map<std::string, VertexId, std::less<>> ids;
    auto vertex = [&](const std::string& name) {
        if (auto it = ids.find(name); it != ids.end()) {
            return it->second;
        }
        VertexId v = g.add_vertex(name);
        ids.emplace(name, v);
        return v;
    };
    std::istringstream in{std::string(text)};
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream words(line);
        std::vector<std::string> tokens;
        for (std::string w; words >> w;) {
            tokens.push_back(std::move(w));
        }
        if (tokens.empty()) {
            continue;
        }
        if (tokens.size() != 2) {
            throw ParseError(number, "expected `tail head` or `v name`, found " + std::to_string(tokens.size()) +
                                         " tokens");
        }
        if (tokens[0] == "v") {
            vertex(tokens[1]);
            continue;
        }
        if (tokens[0] == tokens[1]) {
            throw LoopError("line " + std::to_string(number) + ": loop on " + tokens[0]);
        }
        const VertexId a = vertex(tokens[0]);
        const VertexId b = vertex(tokens[1]);
        if (!g.add_edge(a, b) && warnings) {
            warnings->push_back("line " + std::to_string(number) + ": duplicate edge " + tokens[0] + " " + tokens[1] +
                                " collapsed");
        }
    }
    return g;
}

namespace {

void require_token(const Digraph& g, VertexId v) {
    const std::string& s = g.label(v);
    const bool bad = s.empty() || s == "v" || s.front() == '#' ||
                     std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
    if (bad) {
        throw PreconditionViolated("label '" + s + "' cannot be written as an edge-list token");
    }
}

void require_distinct_labels(const Digraph& g) {
    std::set<std::string> seen;
    for (VertexId v : g.vertices()) {
        if (!seen.insert(g.label(v)).second) {
            throw PreconditionViolated("label '" + g.label(v) + "' is used twice");
        }
    }
}

auto quoted(const std::string& s) -> std::string {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

auto serialize_digraph(const Digraph& g) -> std::string {
    require_distinct_labels(g);
    std::string out;
    for (VertexId v : g.vertices()) {
        require_token(g, v);
        out += "v " + g.label(v) + "\n";
    }
    for (const Edge& e : g.edges()) {
        out += g.label(e.tail) + " " + g.label(e.head) + "\n";
    }
    return out;
}

auto to_dot(const Digraph& g, std::string_view name) -> std::string {
    std::string out = "digraph " + quoted(std::string(name)) + " {\n";
    for (VertexId v : g.vertices()) {
        out += "  " + quoted(g.label(v)) + ";\n";
    }
    for (const Edge& e : g.edges()) {
        out += "  " + quoted(g.label(e.tail)) + " -> " + quoted(g.label(e.head)) + ";\n";
    }
    return out + "}\n";
}

auto fnv1a(std::string_view bytes) -> std::uint64_t {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

auto fingerprint(const Digraph& g) -> Fingerprint {
    std::vector<std::string> vs;
    for (VertexId v : g.vertices()) {
        vs.push_back(g.label(v));
    }
    std::vector<std::string> es;
    for (const Edge& e : g.edges()) {
        es.push_back(g.label(e.tail) + " " + g.label(e.head));
    }
    std::sort(vs.begin(), vs.end());
    std::sort(es.begin(), es.end());
    std::string text;
    for (const auto& v : vs) {
        text += v + "\n";
    }
    text += "--\n";
    for (const auto& e : es) {
        text += e + "\n";
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
    return {g.vertex_count(), g.edge_count(), hex};
}

auto to_string(CertificateKind k) -> std::string {
    switch (k) {
    case CertificateKind::CrDecomposition:
        return "cr-decomposition";
    case CertificateKind::BfModel:
        return "bf-model";
    case CertificateKind::Dtd:
        return "dtd";
    case CertificateKind::ChainDecomposition:
        return "chain-decomposition";
    case CertificateKind::StructureDescriptor:
        return "structure-descriptor";
    }
    return "unknown";
}

auto certificate_kind(std::string_view name) -> CertificateKind {
    for (auto k : {CertificateKind::CrDecomposition, CertificateKind::BfModel, CertificateKind::Dtd,
                   CertificateKind::ChainDecomposition, CertificateKind::StructureDescriptor}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw ParseError(0, "unknown certificate kind '" + std::string(name) + "'");
}

namespace {

class Labels {
public:
    explicit Labels(const Digraph& g) : g_(g) {
        for (VertexId v : g.vertices()) {
            ids_.emplace(g.label(v), v);
        }
    }

    [[nodiscard]] auto name(VertexId v) const -> Json { return g_.label(v); }
    [[nodiscard]] auto id(const Json& j) const -> VertexId {
        const auto s = j.get<std::string>();
        auto it = ids_.find(s);
        if (it == ids_.end()) {
            throw ParseError(0, "unknown vertex label '" + s + "'");
        }
        return it->second;
    }
    [[nodiscard]] auto set(const VertexSet& vs) const -> Json {
        Json out = Json::array();
        for (VertexId v : vs) {
            out.push_back(name(v));
        }
        return out;
    }
    [[nodiscard]] auto set(const Json& j) const -> VertexSet {
        VertexSet out;
        for (const auto& x : j) {
            out.insert(id(x));
        }
        return out;
    }
    [[nodiscard]] auto edge(const Edge& e) const -> Json { return Json::array({name(e.tail), name(e.head)}); }
    [[nodiscard]] auto edge(const Json& j) const -> Edge {
        if (!j.is_array() || j.size() != 2) {
            throw ParseError(0, "an edge is a pair of labels");
        }
        return {id(j[0]), id(j[1])};
    }
    [[nodiscard]] auto path(const Path& p) const -> Json {
        Json out = Json::array();
        for (VertexId v : p.vertices) {
            out.push_back(name(v));
        }
        return out;
    }
    [[nodiscard]] auto path(const Json& j) const -> Path {
        Path p;
        for (const auto& x : j) {
            p.vertices.push_back(id(x));
        }
        return p;
    }
    [[nodiscard]] auto paths(const std::vector<Path>& ps) const -> Json {
        Json out = Json::array();
        for (const Path& p : ps) {
            out.push_back(path(p));
        }
        return out;
    }
    [[nodiscard]] auto paths(const Json& j) const -> std::vector<Path> {
        std::vector<Path> out;
        for (const auto& x : j) {
            out.push_back(path(x));
        }
        return out;
    }
    [[nodiscard]] auto list(const std::vector<VertexId>& vs) const -> Json {
        Json out = Json::array();
        for (VertexId v : vs) {
            out.push_back(name(v));
        }
        return out;
    }
    [[nodiscard]] auto list(const Json& j) const -> std::vector<VertexId> {
        std::vector<VertexId> out;
        for (const auto& x : j) {
            out.push_back(id(x));
        }
        return out;
    }
    [[nodiscard]] auto ends(const Endpoints& e) const -> Json {
        return Json::array({name(e.p), name(e.q), name(e.p2), name(e.q2)});
    }
    [[nodiscard]] auto ends(const Json& j) const -> Endpoints {
        if (!j.is_array() || j.size() != 4) {
            throw ParseError(0, "endpoints are four labels");
        }
        return {id(j[0]), id(j[1]), id(j[2]), id(j[3])};
    }

private:
    const Digraph& g_;
    std::map<std::string, VertexId> ids_;
};

// Runs a decoder, turning JSON access errors into ParseError.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw ParseError(0, std::string("malformed payload: ") + e.what());
    }
}

auto ladder_json(const Labels& l, const RelaxedLadder& h) -> Json {
    return {{"ends", l.ends(h.ends)},     {"P", l.path(h.P)},         {"Q", l.path(h.Q)},
            {"segs_p", l.paths(h.segs_p)}, {"segs_q", l.paths(h.segs_q)}, {"X", l.paths(h.X)},
            {"Y", l.paths(h.Y)}};
}

auto ladder_from(const Labels& l, const Json& j) -> RelaxedLadder {
    RelaxedLadder h;
    h.ends = l.ends(j.at("ends"));
    h.P = l.path(j.at("P"));
    h.Q = l.path(j.at("Q"));
    h.segs_p = l.paths(j.at("segs_p"));
    h.segs_q = l.paths(j.at("segs_q"));
    h.X = l.paths(j.at("X"));
    h.Y = l.paths(j.at("Y"));
    return h;
}

auto mixed_json(const Labels& l, const MixedChain& h) -> Json {
    Json ladders = Json::array();
    for (const auto& x : h.H) {
        ladders.push_back(ladder_json(l, x));
    }
    return {{"ends", l.ends(h.ends)}, {"H", ladders},       {"R", l.paths(h.R)},
            {"pj", l.list(h.pj)},     {"qj", l.list(h.qj)}};
}

auto mixed_from(const Labels& l, const Json& j) -> MixedChain {
    MixedChain h;
    h.ends = l.ends(j.at("ends"));
    for (const auto& x : j.at("H")) {
        h.H.push_back(ladder_from(l, x));
    }
    h.R = l.paths(j.at("R"));
    h.pj = l.list(j.at("pj"));
    h.qj = l.list(j.at("qj"));
    return h;
}

// Digraph formed by every path of a mixed chain, labelled from `names`.
auto paths_graph(const Digraph& names, const MixedChain& h) -> Digraph {
    Digraph out;
    auto lay = [&](const Path& p) {
        for (VertexId v : p.vertices) {
            out.add_vertex(v, names.label(v));
        }
        for (const Edge& e : p.edges()) {
            out.add_edge(e);
        }
    };
    for (const auto& l : h.H) {
        lay(l.P);
        lay(l.Q);
        for (const auto* group : {&l.segs_p, &l.segs_q, &l.X, &l.Y}) {
            for (const Path& p : *group) {
                lay(p);
            }
        }
    }
    for (const Path& p : h.R) {
        lay(p);
    }
    return out;
}

auto optional_size(const Json& payload, const char* key) -> std::optional<std::size_t> {
    if (!payload.contains(key)) {
        return std::nullopt;
    }
    return payload.at(key).get<std::size_t>();
}

} // namespace

auto graph_to_json(const Digraph& g) -> Json {
    require_distinct_labels(g);
    Labels l(g);
    Json edges = Json::array();
    for (const Edge& e : g.edges()) {
        edges.push_back(l.edge(e));
    }
    return {{"vertices", l.list(g.vertices())}, {"edges", edges}};
}

auto graph_from_json(const Json& j) -> Digraph {
    return guarded([&] {
        Digraph g;
        for (const auto& name : j.at("vertices")) {
            const auto s = name.get<std::string>();
            if (g.find(s)) {
                throw ParseError(0, "label '" + s + "' is used twice");
            }
            g.add_vertex(s);
        }
        Labels l(g);
        for (const auto& e : j.at("edges")) {
            const Edge x = l.edge(e);
            if (x.tail == x.head) {
                throw LoopError("loop on " + g.label(x.tail));
            }
            g.add_edge(x);
        }
        return g;
    });
}

auto encode_cr(const Digraph& g, const CycleRankDecomposition& t) -> Json {
    Labels l(g);
    Json parent = Json::array();
    for (const auto& [c, p] : t.parent) {
        parent.push_back(Json::array({l.name(c), l.name(p)}));
    }
    return {{"roots", l.list(t.roots)}, {"parent", parent}, {"height", t.height()}};
}

auto decode_cr(const Digraph& g, const Json& payload) -> CycleRankDecomposition {
    return guarded([&] {
        Labels l(g);
        CycleRankDecomposition t;
        t.roots = l.list(payload.at("roots"));
        for (const auto& pair : payload.at("parent")) {
            const Edge e = l.edge(pair);
            if (!t.parent.emplace(e.tail, e.head).second) {
                throw ParseError(0, "vertex " + g.label(e.tail) + " has two parents");
            }
        }
        return t;
    });
}

auto encode_model(const Digraph& pattern, const Digraph& host, const ButterflyMinorModel& m) -> Json {
    Labels lp(pattern);
    Labels lh(host);
    Json branches = Json::array();
    for (const auto& [v, b] : m.vertex_map) {
        Json edges = Json::array();
        for (const Edge& e : b.edges) {
            edges.push_back(lh.edge(e));
        }
        branches.push_back({{"vertex", lp.name(v)},
                            {"root", lh.name(b.root)},
                            {"in_part", lh.set(b.in_part)},
                            {"out_part", lh.set(b.out_part)},
                            {"edges", edges}});
    }
    Json images = Json::array();
    for (const auto& [pe, he] : m.edge_map) {
        images.push_back({{"pattern", lp.edge(pe)}, {"host", lh.edge(he)}});
    }
    return {{"pattern", graph_to_json(pattern)}, {"branches", branches}, {"edge_images", images}};
}

auto decode_model_pattern(const Json& payload) -> Digraph {
    return guarded([&] { return graph_from_json(payload.at("pattern")); });
}

auto decode_model(const Digraph& pattern, const Digraph& host, const Json& payload) -> ButterflyMinorModel {
    return guarded([&] {
        Labels lp(pattern);
        Labels lh(host);
        ButterflyMinorModel m;
        for (const auto& b : payload.at("branches")) {
            Branch x;
            x.root = lh.id(b.at("root"));
            x.in_part = lh.set(b.at("in_part"));
            x.out_part = lh.set(b.at("out_part"));
            for (const auto& e : b.at("edges")) {
                x.edges.insert(lh.edge(e));
            }
            if (!m.vertex_map.emplace(lp.id(b.at("vertex")), std::move(x)).second) {
                throw ParseError(0, "pattern vertex listed twice");
            }
        }
        for (const auto& img : payload.at("edge_images")) {
            if (!m.edge_map.emplace(lp.edge(img.at("pattern")), lh.edge(img.at("host"))).second) {
                throw ParseError(0, "pattern edge listed twice");
            }
        }
        return m;
    });
}

auto encode_dtd(const Digraph& g, const DirectedTreeDecomposition& d) -> Json {
    Labels l(g);
    Json nodes = Json::array();
    for (const auto& n : d.nodes) {
        nodes.push_back({{"parent", n.parent ? Json(*n.parent) : Json(nullptr)},
                         {"bag", l.set(n.bag)},
                         {"guard", l.set(n.guard)}});
    }
    Json out = {{"nodes", nodes}};
    if (const auto c = validate_dtd(g, d); c.valid) {
        out["width"] = c.width;
    }
    return out;
}

auto decode_dtd(const Digraph& g, const Json& payload) -> DirectedTreeDecomposition {
    return guarded([&] {
        Labels l(g);
        DirectedTreeDecomposition d;
        for (const auto& n : payload.at("nodes")) {
            DtdNode x;
            if (!n.at("parent").is_null()) {
                x.parent = n.at("parent").get<std::size_t>();
            }
            x.bag = l.set(n.at("bag"));
            x.guard = l.set(n.at("guard"));
            d.nodes.push_back(std::move(x));
        }
        return d;
    });
}

auto encode_mixed_chain(const Digraph& g, const MixedChain& h) -> Json { return mixed_json(Labels(g), h); }

auto decode_mixed_chain(const Digraph& g, const Json& j) -> MixedChain {
    return guarded([&] { return mixed_from(Labels(g), j); });
}

auto encode_structure(const Digraph& g, const Structure& s) -> Json {
    Labels l(g);
    return std::visit(
        [&](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, RelaxedLadder>) {
                return {{"type", "relaxed-ladder"}, {"value", ladder_json(l, x)}};
            } else if constexpr (std::is_same_v<T, RelaxedChain>) {
                return {{"type", "relaxed-chain"},
                        {"value",
                         {{"ends", l.ends(x.ends)},
                          {"P", l.paths(x.P)},
                          {"Q", l.paths(x.Q)},
                          {"R", l.paths(x.R)},
                          {"pj", l.list(x.pj)},
                          {"qj", l.list(x.qj)}}}};
            } else if constexpr (std::is_same_v<T, MixedChain>) {
                return {{"type", "mixed-chain"}, {"value", mixed_json(l, x)}};
            } else {
                Json v = {{"ends", l.ends(x.ends)}, {"A", l.path(x.A)}, {"B", l.path(x.B)}};
                if (x.C) {
                    v["C"] = l.path(*x.C);
                }
                if (x.D) {
                    v["D"] = l.path(*x.D);
                }
                return {{"type", "mixed-extension"}, {"value", v}};
            }
        },
        s);
}

auto decode_structure(const Digraph& g, const Json& payload) -> Structure {
    return guarded([&]() -> Structure {
        Labels l(g);
        const auto type = payload.at("type").get<std::string>();
        const Json& v = payload.at("value");
        if (type == "relaxed-ladder") {
            return ladder_from(l, v);
        }
        if (type == "relaxed-chain") {
            RelaxedChain h;
            h.ends = l.ends(v.at("ends"));
            h.P = l.paths(v.at("P"));
            h.Q = l.paths(v.at("Q"));
            h.R = l.paths(v.at("R"));
            h.pj = l.list(v.at("pj"));
            h.qj = l.list(v.at("qj"));
            return h;
        }
        if (type == "mixed-chain") {
            return mixed_from(l, v);
        }
        if (type == "mixed-extension") {
            MixedExtension w;
            w.ends = l.ends(v.at("ends"));
            w.A = l.path(v.at("A"));
            w.B = l.path(v.at("B"));
            if (v.contains("C")) {
                w.C = l.path(v.at("C"));
            }
            if (v.contains("D")) {
                w.D = l.path(v.at("D"));
            }
            return w;
        }
        throw ParseError(0, "unknown structure type '" + type + "'");
    });
}

auto encode_chain_decomposition(const ChainDecomposition& t) -> Json {
    const Digraph& all = t.nodes.at(t.root).graph;
    Labels l(all);
    Json nodes = Json::array();
    for (const auto& n : t.nodes) {
        if (n.children.empty()) {
            nodes.push_back({{"leaf", graph_to_json(n.graph)}});
        } else {
            nodes.push_back({{"children", n.children},
                             {"chain", n.chain ? mixed_json(l, *n.chain) : Json(nullptr)}});
        }
    }
    return {{"vertices", l.list(all.vertices())},
            {"root", t.root},
            {"nodes", nodes},
            {"weight_vector", t.weight_vector},
            {"full_height", t.full_height}};
}

auto decode_chain_decomposition(const Json& payload) -> ChainDecomposition {
    return guarded([&] {
        Digraph all;
        for (const auto& name : payload.at("vertices")) {
            all.add_vertex(name.get<std::string>());
        }
        Labels l(all);
        const Json& nodes = payload.at("nodes");
        ChainDecomposition t;
        t.nodes.resize(nodes.size());
        std::vector<int> state(nodes.size(), 0);
        std::function<void(std::size_t)> build = [&](std::size_t i) {
            if (state[i] == 2) {
                return;
            }
            if (state[i] == 1) {
                throw ParseError(0, "node " + std::to_string(i) + " lies below itself");
            }
            state[i] = 1;
            const Json& n = nodes[i];
            ChainNode& node = t.nodes[i];
            if (n.contains("leaf")) {
                for (const auto& name : n.at("leaf").at("vertices")) {
                    const VertexId v = l.id(name);
                    node.graph.add_vertex(v, all.label(v));
                }
                for (const auto& e : n.at("leaf").at("edges")) {
                    node.graph.add_edge(l.edge(e));
                }
            } else {
                node.children = n.at("children").get<std::vector<std::size_t>>();
                std::vector<const Digraph*> parts;
                for (std::size_t c : node.children) {
                    if (c >= nodes.size()) {
                        throw ParseError(0, "child index out of range");
                    }
                    build(c);
                    t.nodes[c].parent = i;
                    parts.push_back(&t.nodes[c].graph);
                }
                Digraph chain_graph;
                if (!n.at("chain").is_null()) {
                    node.chain = mixed_from(l, n.at("chain"));
                    chain_graph = paths_graph(all, *node.chain);
                }
                parts.push_back(&chain_graph);
                node.graph = graph_union(parts);
            }
            state[i] = 2;
        };
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            build(i);
        }
        t.root = payload.at("root").get<std::size_t>();
        t.weight_vector = payload.at("weight_vector").get<std::vector<std::size_t>>();
        t.full_height = payload.at("full_height").get<std::size_t>();
        return t;
    });
}

auto make_certificate(CertificateKind kind, const Digraph& g, Json payload) -> Certificate {
    return {kind, fingerprint(g), std::move(payload)};
}

auto serialize_certificate(const Certificate& c) -> std::string {
    const Json j = {{"schema_version", kSchemaVersion},
                    {"kind", to_string(c.kind)},
                    {"graph", {{"vertices", c.graph.vertices}, {"edges", c.graph.edges}, {"hash", c.graph.hash}}},
                    {"payload", c.payload}};
    return j.dump(2) + "\n";
}

auto parse_certificate(std::string_view text) -> Certificate {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
        throw ParseError(1 + static_cast<std::size_t>(std::count(upto.begin(), upto.end(), '\n')),
                         "certificate is not valid JSON");
    }
    return guarded([&] {
        if (j.at("schema_version").get<int>() != kSchemaVersion) {
            throw ParseError(0, "unsupported schema version " + j.at("schema_version").dump());
        }
        Certificate c;
        c.kind = certificate_kind(j.at("kind").get<std::string>());
        const Json& g = j.at("graph");
        c.graph = {g.at("vertices").get<std::size_t>(), g.at("edges").get<std::size_t>(),
                   g.at("hash").get<std::string>()};
        c.payload = j.at("payload");
        return c;
    });
}

namespace {

auto describe(const Fingerprint& f) -> std::string {
    return std::to_string(f.vertices) + " vertices, " + std::to_string(f.edges) + " edges, hash " + f.hash;
}

auto join(const std::vector<std::size_t>& xs) -> std::string {
    std::string out;
    for (std::size_t x : xs) {
        out += (out.empty() ? "" : " ") + std::to_string(x);
    }
    return out;
}

} // namespace

auto verify_certificate(const Digraph& g, const Certificate& c) -> CertificateCheck {
    const Fingerprint actual = fingerprint(g);
    if (actual != c.graph) {
        return {false, "graph fingerprint mismatch: certificate has " + describe(c.graph) + ", graph has " +
                           describe(actual)};
    }
    try {
        switch (c.kind) {
        case CertificateKind::CrDecomposition: {
            const auto t = decode_cr(g, c.payload);
            const auto check = validate_cr_decomposition(g, t);
            if (!check.valid) {
                return {false, *check.witness};
            }
            if (auto claimed = optional_size(c.payload, "height"); claimed && *claimed != check.height) {
                return {false, "claimed height " + std::to_string(*claimed) + " but the decomposition has height " +
                                   std::to_string(check.height)};
            }
            return {true, "cycle rank decomposition of height " + std::to_string(check.height) + ", so cycle rank at most " +
                              std::to_string(check.height == 0 ? 0 : check.height - 1)};
        }
        case CertificateKind::BfModel: {
            const Digraph pattern = decode_model_pattern(c.payload);
            const auto check = validate_model(pattern, g, decode_model(pattern, g, c.payload));
            if (!check.valid) {
                return {false, *check.witness};
            }
            return {true, "butterfly minor model of a pattern with " + std::to_string(pattern.vertex_count()) +
                              " vertices"};
        }
        case CertificateKind::Dtd: {
            const auto check = validate_dtd(g, decode_dtd(g, c.payload));
            if (!check.valid) {
                return {false, *check.witness};
            }
            if (auto claimed = optional_size(c.payload, "width"); claimed && *claimed != check.width) {
                return {false, "claimed width " + std::to_string(*claimed) + " but the decomposition has width " +
                                   std::to_string(check.width)};
            }
            return {true, "directed tree decomposition of width " + std::to_string(check.width)};
        }
        case CertificateKind::ChainDecomposition: {
            const auto t = decode_chain_decomposition(c.payload);
            const auto check = validate_chain_decomposition(t);
            if (!check.valid) {
                return {false, *check.witness};
            }
            if (fingerprint(t.nodes[t.root].graph) != actual) {
                return {false, "the root digraph of the decomposition differs from the graph"};
            }
            return {true, "chain decomposition with weight vector (" + join(check.weight_vector) +
                              ") and full height " + std::to_string(check.full_height)};
        }
        case CertificateKind::StructureDescriptor: {
            const auto s = decode_structure(g, c.payload);
            const auto check = std::visit(
                [&](const auto& x) -> StructureCheck {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, RelaxedLadder>) {
                        return validate_ladder(g, x);
                    } else if constexpr (std::is_same_v<T, RelaxedChain>) {
                        return validate_chain(g, x);
                    } else if constexpr (std::is_same_v<T, MixedChain>) {
                        return validate_mixed_chain(g, x);
                    } else {
                        return validate_extension(g, x);
                    }
                },
                s);
            if (!check.valid) {
                return {false, *check.witness};
            }
            return {true, c.payload.at("type").get<std::string>() + " with measure " + std::to_string(check.measure)};
        }
        }
    } catch (const ParseError& e) {
        return {false, e.what()};
    } catch (const LoopError& e) {
        return {false, e.what()};
    } catch (const PreconditionViolated& e) {
        return {false, e.what()};
    } catch (const std::out_of_range& e) {
        return {false, std::string("certificate refers to something missing: ") + e.what()};
    }
    return {false, "unknown certificate kind"};
}

} // namespace dgt
