#include "dgt/coloring.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

namespace dgt {

namespace {

// Dense view with positions; unplaced vertices sit after every placed one.
struct Dense {
    std::vector<VertexId> ids;
    std::unordered_map<VertexId, std::size_t> index;
    std::vector<std::vector<std::size_t>> out;

    explicit Dense(const Digraph& g) : ids(g.vertices()) {
        for (std::size_t i = 0; i < ids.size(); ++i) {
            index[ids[i]] = i;
        }
        out.resize(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            for (VertexId w : g.out(ids[i])) {
                out[i].push_back(index.at(w));
            }
        }
    }
};

// Bounded BFS from v; a vertex is entered only when allowed, and expanded only when expandable.
template <typename Allowed, typename Expandable>
auto bfs(const Dense& d, std::size_t v, std::size_t k, Allowed allowed, Expandable expandable) -> std::vector<char> {
    std::vector<char> seen(d.ids.size(), 0);
    std::vector<std::size_t> dist(d.ids.size(), 0);
    std::deque<std::size_t> queue{v};
    seen[v] = 1;
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        if (dist[u] >= k || (u != v && !expandable(u))) {
            continue;
        }
        for (std::size_t w : d.out[u]) {
            if (!seen[w] && allowed(w)) {
                seen[w] = 1;
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

auto reach_dense(const Dense& d, const std::vector<std::size_t>& pos, std::size_t v, std::size_t k, ReachMode mode)
    -> std::vector<std::size_t> {
    std::vector<std::size_t> found;
    const std::size_t n = d.ids.size();
    if (mode == ReachMode::Weak) {
        for (std::size_t w = 0; w < n; ++w) {
            if (pos[w] > pos[v]) {
                continue;
            }
            if (w == v) {
                found.push_back(w);
                continue;
            }
            auto seen = bfs(
                d, v, k, [&](std::size_t u) { return pos[u] >= pos[w]; }, [](std::size_t) { return true; });
            if (seen[w]) {
                found.push_back(w);
            }
        }
    } else {
        auto seen = bfs(
            d, v, k, [](std::size_t) { return true; }, [&](std::size_t u) { return pos[u] > pos[v]; });
        for (std::size_t w = 0; w < n; ++w) {
            if (seen[w] && pos[w] <= pos[v]) {
                found.push_back(w);
            }
        }
    }
    return found;
}

auto effective(const Digraph& g, std::size_t k) -> std::size_t { return k == kInfinite ? g.vertex_count() : k; }

auto positions(const Dense& d, const LinearOrdering& order) -> std::vector<std::size_t> {
    std::vector<std::size_t> pos(d.ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        pos[d.index.at(order[i])] = i;
    }
    return pos;
}

} // namespace

auto is_ordering_of(const Digraph& g, const LinearOrdering& order) -> bool {
    return order.size() == g.vertex_count() && VertexSet(order.begin(), order.end()) == g.vertex_set();
}

auto reach_set(const Digraph& g, const LinearOrdering& order, VertexId v, std::size_t k, ReachMode mode) -> VertexSet {
    if (!is_ordering_of(g, order) || !g.has_vertex(v)) {
        throw PreconditionViolated("ordering must list every vertex exactly once");
    }
    Dense d(g);
    VertexSet out;
    for (std::size_t w : reach_dense(d, positions(d, order), d.index.at(v), effective(g, k), mode)) {
        out.insert(d.ids[w]);
    }
    return out;
}

auto coloring_number_of_ordering(const Digraph& g, const LinearOrdering& order, std::size_t k, ReachMode mode)
    -> std::size_t {
    if (!is_ordering_of(g, order)) {
        throw PreconditionViolated("ordering must list every vertex exactly once");
    }
    Dense d(g);
    auto pos = positions(d, order);
    std::size_t best = 0;
    for (std::size_t v = 0; v < d.ids.size(); ++v) {
        best = std::max(best, reach_dense(d, pos, v, effective(g, k), mode).size());
    }
    return best;
}

auto coloring_number_exact(const Digraph& g, std::size_t k, ReachMode mode, std::size_t cap) -> ColoringResult {
    const std::size_t n = g.vertex_count();
    if (n > cap) {
        throw TooLarge("ordering brute force capped at " + std::to_string(cap) + " vertices");
    }
    ColoringResult result{n + 1, g.vertices()};
    if (n == 0) {
        result.value = 0;
        return result;
    }
    Dense d(g);
    const std::size_t radius = effective(g, k);
    // The reach set of a vertex depends only on the prefix ending at it, so
    // orderings are built prefix by prefix and cut once they cannot improve.
    std::vector<std::size_t> pos(n, n);
    std::vector<std::size_t> prefix;
    std::function<void(std::size_t)> extend = [&](std::size_t worst) {
        if (prefix.size() == n) {
            result.value = worst;
            result.witness.clear();
            for (std::size_t x : prefix) {
                result.witness.push_back(d.ids[x]);
            }
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (pos[v] != n) {
                continue;
            }
            pos[v] = prefix.size();
            prefix.push_back(v);
            std::size_t here = std::max(worst, reach_dense(d, pos, v, radius, mode).size());
            if (here < result.value) {
                extend(here);
            }
            prefix.pop_back();
            pos[v] = n;
        }
    };
    extend(0);
    return result;
}

auto wcol_inf(const Digraph& g) -> std::size_t {
    return g.vertex_count() == 0 ? 0 : cycle_rank(g).rank + 1;
}

auto ordering_from_decomposition(const Digraph& g, const CycleRankDecomposition& t) -> LinearOrdering {
    if (!validate_cr_decomposition(g, t).valid) {
        throw PreconditionViolated("decomposition does not validate");
    }
    auto kids = t.children();
    LinearOrdering out;

    // Orders sibling subtrees so that every edge between them runs forward,
    // picking the smallest available root first.
    std::function<void(const std::vector<VertexId>&)> place = [&](const std::vector<VertexId>& roots) {
        std::map<VertexId, VertexSet> blocks;
        std::unordered_map<VertexId, VertexId> owner;
        for (VertexId r : roots) {
            blocks[r] = t.subtree(r);
            for (VertexId x : blocks[r]) {
                owner[x] = r;
            }
        }
        std::map<VertexId, VertexSet> succ;
        std::map<VertexId, std::size_t> indeg;
        for (VertexId r : roots) {
            indeg[r];
        }
        for (const auto& [r, block] : blocks) {
            for (VertexId x : block) {
                for (VertexId y : g.out(x)) {
                    auto it = owner.find(y);
                    if (it != owner.end() && it->second != r && succ[r].insert(it->second).second) {
                        ++indeg[it->second];
                    }
                }
            }
        }
        std::set<VertexId> ready;
        for (const auto& [r, deg] : indeg) {
            if (deg == 0) {
                ready.insert(r);
            }
        }
        while (!ready.empty()) {
            VertexId r = *ready.begin();
            ready.erase(ready.begin());
            out.push_back(r);
            if (auto it = kids.find(r); it != kids.end()) {
                place(it->second);
            }
            for (VertexId s : succ[r]) {
                if (--indeg[s] == 0) {
                    ready.insert(s);
                }
            }
        }
    };
    place(t.roots);
    return out;
}

auto decomposition_from_ordering(const Digraph& g, const LinearOrdering& order) -> CycleRankDecomposition {
    if (!is_ordering_of(g, order)) {
        throw PreconditionViolated("ordering must list every vertex exactly once");
    }
    std::unordered_map<VertexId, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) {
        pos[order[i]] = i;
    }
    CycleRankDecomposition t;
    std::function<void(const VertexSet&, std::optional<VertexId>)> peel = [&](const VertexSet& part,
                                                                            std::optional<VertexId> above) {
        for (const auto& comp : scc(g.induced(part))) {
            VertexId least = *std::min_element(comp.begin(), comp.end(),
                                               [&](VertexId a, VertexId b) { return pos[a] < pos[b]; });
            if (above) {
                t.parent[least] = *above;
            } else {
                t.roots.push_back(least);
            }
            VertexSet rest(comp.begin(), comp.end());
            rest.erase(least);
            if (!rest.empty()) {
                peel(rest, least);
            }
        }
    };
    peel(g.vertex_set(), std::nullopt);
    return t;
}

} // namespace dgt
