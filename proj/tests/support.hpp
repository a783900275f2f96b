#pragma once

// Shared fixtures and independent oracles for the test binaries. Oracles here
// deliberately avoid the library's algorithms beyond the Digraph container.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "dgt/digraph.hpp"

namespace dgt::testing {

inline auto make_graph(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) -> Digraph {
    Digraph g;
    for (std::uint32_t i = 0; i < n; ++i) {
        g.add_vertex(VertexId{i});
    }
    for (auto [a, b] : edges) {
        g.add_edge(VertexId{a}, VertexId{b});
    }
    return g;
}

inline auto random_digraph(std::size_t n, double p, std::mt19937_64& rng) -> Digraph {
    Digraph g;
    for (std::uint32_t i = 0; i < n; ++i) {
        g.add_vertex(VertexId{i});
    }
    std::bernoulli_distribution coin(p);
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = 0; b < n; ++b) {
            if (a != b && coin(rng)) {
                g.add_edge(VertexId{a}, VertexId{b});
            }
        }
    }
    return g;
}

// Labelled digraph on n vertices whose edge set is encoded by the bits of code.
inline auto digraph_from_code(std::size_t n, std::uint64_t code) -> Digraph {
    Digraph g;
    for (std::uint32_t i = 0; i < n; ++i) {
        g.add_vertex(VertexId{i});
    }
    int bitpos = 0;
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = 0; b < n; ++b) {
            if (a == b) {
                continue;
            }
            if ((code >> bitpos) & 1U) {
                g.add_edge(VertexId{a}, VertexId{b});
            }
            ++bitpos;
        }
    }
    return g;
}

inline auto oracle_reaches(const Digraph& g, VertexId from, VertexId to) -> bool {
    std::vector<VertexId> stack{from};
    VertexSet seen{from};
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        if (x == to) {
            return true;
        }
        for (VertexId y : g.out(x)) {
            if (seen.insert(y).second) {
                stack.push_back(y);
            }
        }
    }
    return false;
}

// Strong components by pairwise reachability.
inline auto oracle_components(const Digraph& g) -> std::vector<VertexSet> {
    std::vector<VertexSet> comps;
    VertexSet done;
    for (VertexId v : g.vertices()) {
        if (done.contains(v)) {
            continue;
        }
        VertexSet c;
        for (VertexId w : g.vertices()) {
            if (oracle_reaches(g, v, w) && oracle_reaches(g, w, v)) {
                c.insert(w);
            }
        }
        done.insert(c.begin(), c.end());
        comps.push_back(c);
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

inline auto oracle_strongly_connected(const Digraph& g) -> bool {
    return g.vertex_count() > 0 && oracle_components(g).size() == 1;
}

// Memo-free recursion straight from the definition of cycle rank.
inline auto naive_cycle_rank(const Digraph& g) -> std::size_t {
    auto comps = oracle_components(g);
    if (comps.size() > 1) {
        std::size_t best = 0;
        for (const auto& c : comps) {
            best = std::max(best, naive_cycle_rank(g.induced(c)));
        }
        return best;
    }
    if (g.edge_count() == 0) {
        return 0;
    }
    std::size_t best = g.vertex_count();
    for (VertexId v : g.vertices()) {
        best = std::min(best, 1 + naive_cycle_rank(g.without({v})));
    }
    return best;
}

// Every simple directed cycle, each reported once starting at its least vertex.
inline auto all_cycles(const Digraph& g) -> std::vector<std::vector<VertexId>> {
    std::vector<std::vector<VertexId>> out;
    std::vector<VertexId> path;
    std::function<void(VertexId, VertexId)> walk = [&](VertexId start, VertexId at) {
        for (VertexId w : g.out(at)) {
            if (w == start) {
                out.push_back(path);
            } else if (w > start && std::find(path.begin(), path.end(), w) == path.end()) {
                path.push_back(w);
                walk(start, w);
                path.pop_back();
            }
        }
    };
    for (VertexId s : g.vertices()) {
        path = {s};
        walk(s, s);
    }
    return out;
}

// Every simple path from a to b.
inline auto all_paths(const Digraph& g, VertexId a, VertexId b) -> std::vector<Path> {
    std::vector<Path> out;
    Path cur{a};
    std::function<void(VertexId)> walk = [&](VertexId at) {
        if (at == b) {
            out.push_back(cur);
            return;
        }
        for (VertexId w : g.out(at)) {
            if (!cur.contains(w)) {
                cur.vertices.push_back(w);
                walk(w);
                cur.vertices.pop_back();
            }
        }
    };
    walk(a);
    return out;
}

// A random simple path in g starting anywhere, of length at most max_len.
inline auto random_path(const Digraph& g, std::size_t max_len, std::mt19937_64& rng) -> Path {
    auto vs = g.vertices();
    Path p{vs[std::uniform_int_distribution<std::size_t>(0, vs.size() - 1)(rng)]};
    while (p.length() < max_len) {
        std::vector<VertexId> next;
        for (VertexId w : g.out(p.head())) {
            if (!p.contains(w)) {
                next.push_back(w);
            }
        }
        if (next.empty()) {
            break;
        }
        p.vertices.push_back(next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)]);
    }
    return p;
}

inline auto edges_of(const Digraph& g) -> std::vector<Edge> { return g.edges(); }

inline auto contractible_edges(const Digraph& g) -> std::vector<Edge> {
    std::vector<Edge> out;
    for (Edge e : g.edges()) {
        if (g.out_degree(e.tail) == 1 || g.in_degree(e.head) == 1) {
            out.push_back(e);
        }
    }
    return out;
}

} // namespace dgt::testing
