#include "dgt/cycle_rank.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "bitgraph.hpp"

namespace dgt {

using detail::BitGraph;
using detail::Mask;
using detail::bit;
using detail::lowest;

auto CycleRankDecomposition::children() const -> std::map<VertexId, std::vector<VertexId>> {
    std::map<VertexId, std::vector<VertexId>> out;
    for (const auto& [c, p] : parent) {
        out[p].push_back(c);
    }
    return out;
}

auto CycleRankDecomposition::nodes() const -> VertexSet {
    VertexSet s(roots.begin(), roots.end());
    for (const auto& [c, p] : parent) {
        s.insert(c);
    }
    return s;
}

auto CycleRankDecomposition::height() const -> std::size_t {
    std::size_t best = 0;
    for (VertexId v : nodes()) {
        std::size_t depth = 1;
        for (auto it = parent.find(v); it != parent.end(); it = parent.find(it->second)) {
            ++depth;
        }
        best = std::max(best, depth);
    }
    return best;
}

auto CycleRankDecomposition::is_ancestor(VertexId a, VertexId d) const -> bool {
    for (auto it = parent.find(d); it != parent.end(); it = parent.find(it->second)) {
        if (it->second == a) {
            return true;
        }
    }
    return false;
}

auto CycleRankDecomposition::subtree(VertexId t) const -> VertexSet {
    VertexSet s{t};
    for (const auto& [c, p] : parent) {
        if (is_ancestor(t, c)) {
            s.insert(c);
        }
    }
    return s;
}

namespace {

class Solver {
public:
    explicit Solver(const BitGraph& g) : g_(g) {}

    // Exact cycle rank of G[mask] when it is below bound; otherwise a value >= bound flagged inexact.
    auto solve(Mask mask, std::size_t bound) -> std::pair<std::size_t, bool> {
        if (auto it = memo_.find(mask); it != memo_.end()) {
            if (it->second.exact || it->second.value >= bound) {
                return {it->second.value, it->second.exact};
            }
        }
        auto comps = g_.sccs(mask);
        if (comps.size() > 1) {
            std::size_t best = 0;
            for (Mask c : comps) {
                auto [value, exact] = solve(c, bound);
                if (!exact) {
                    return remember(mask, value, false);
                }
                best = std::max(best, value);
            }
            return remember(mask, best, true);
        }
        if (std::popcount(mask) == 1) {
            return remember(mask, 0, true);
        }
        if (bound <= 1) {
            return remember(mask, 1, false);
        }
        std::size_t best = bound;
        int choice = -1;
        for (Mask m = mask; m != 0; m &= m - 1) {
            int v = lowest(m);
            auto [value, exact] = solve(mask & ~bit(v), best - 1);
            if (exact && value + 1 < best) {
                best = value + 1;
                choice = v;
                if (best == 1) {
                    break;
                }
            }
        }
        if (choice < 0) {
            return remember(mask, bound, false);
        }
        choice_[mask] = choice;
        return remember(mask, best, true);
    }

    void build(Mask mask, std::optional<VertexId> above, CycleRankDecomposition& out) {
        for (Mask c : g_.sccs(mask)) {
            int r = std::popcount(c) == 1 ? lowest(c) : choice_.at(c);
            VertexId root = g_.ids[r];
            if (above) {
                out.parent[root] = *above;
            } else {
                out.roots.push_back(root);
            }
            if (std::popcount(c) > 1) {
                build(c & ~bit(r), root, out);
            }
        }
    }

private:
    struct Entry {
        std::size_t value;
        bool exact;
    };

    auto remember(Mask mask, std::size_t value, bool exact) -> std::pair<std::size_t, bool> {
        auto& slot = memo_[mask];
        if (exact) {
            slot = {value, true};
        } else if (!slot.exact) {
            slot.value = std::max(slot.value, value);
        }
        return {slot.value, slot.exact};
    }

    const BitGraph& g_;
    std::unordered_map<Mask, Entry> memo_;
    std::unordered_map<Mask, int> choice_;
};

auto component_sets(const Digraph& g) -> std::vector<VertexSet> {
    std::vector<VertexSet> out;
    for (const auto& c : scc(g)) {
        out.emplace_back(c.begin(), c.end());
    }
    return out;
}

// Optimal decomposition of the strongly connected g, attached under `above`.
void solve_into(const Digraph& g, std::optional<VertexId> above, CycleRankDecomposition& out) {
    BitGraph bg(g);
    Solver solver(bg);
    solver.solve(bg.full(), static_cast<std::size_t>(bg.size()) + 1);
    solver.build(bg.full(), above, out);
}

} // namespace

auto cycle_rank(const Digraph& g) -> CycleRankResult {
    CycleRankResult result;
    for (const auto& comp : scc(g)) {
        CycleRankDecomposition part;
        Digraph sub = g.induced(VertexSet(comp.begin(), comp.end()));
        solve_into(sub, std::nullopt, part);
        result.certificate.roots.insert(result.certificate.roots.end(), part.roots.begin(), part.roots.end());
        result.certificate.parent.insert(part.parent.begin(), part.parent.end());
        result.rank = std::max(result.rank, part.height() - 1);
    }
    return result;
}

auto validate_cr_decomposition(const Digraph& g, const CycleRankDecomposition& t) -> DecompositionCheck {
    DecompositionCheck check;
    auto fail = [&](std::string why) {
        check.valid = false;
        check.witness = std::move(why);
        return check;
    };
    VertexSet seen;
    for (VertexId r : t.roots) {
        if (t.parent.contains(r)) {
            return fail("root " + g.name(r) + " also has a parent");
        }
        if (!seen.insert(r).second) {
            return fail("root listed twice");
        }
    }
    for (const auto& [c, p] : t.parent) {
        seen.insert(c);
    }
    if (seen != g.vertex_set()) {
        return fail("forest does not cover exactly V(G)");
    }
    for (const auto& [c, p] : t.parent) {
        if (!seen.contains(p)) {
            return fail("parent of " + g.name(c) + " is not a vertex");
        }
    }
    for (VertexId v : seen) {
        std::size_t steps = 0;
        for (auto it = t.parent.find(v); it != t.parent.end(); it = t.parent.find(it->second)) {
            if (++steps > seen.size()) {
                return fail("parent relation has a cycle through " + g.name(v));
            }
        }
    }

    auto kids = t.children();
    std::function<VertexSet(VertexId)> below = [&](VertexId x) {
        VertexSet s{x};
        for (VertexId c : kids[x]) {
            s.merge(below(c));
        }
        return s;
    };
    auto same_partition = [](std::vector<VertexSet> a, std::vector<VertexSet> b) {
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    };

    std::vector<VertexSet> trees;
    for (VertexId r : t.roots) {
        trees.push_back(below(r));
    }
    if (!same_partition(trees, component_sets(g))) {
        return fail("trees do not match the strongly connected components of G");
    }
    for (VertexId x : seen) {
        VertexSet here = below(x);
        here.erase(x);
        std::vector<VertexSet> parts;
        for (VertexId c : kids[x]) {
            parts.push_back(below(c));
        }
        auto comps = component_sets(g.induced(here));
        if (!same_partition(parts, comps)) {
            for (VertexId c : kids[x]) {
                if (std::find(comps.begin(), comps.end(), below(c)) == comps.end()) {
                    return fail("subtree of " + g.name(c) + " is not a strongly connected component of G[T_" +
                                g.name(x) + "] - " + g.name(x));
                }
            }
            return fail("children of " + g.name(x) + " miss a strongly connected component of G[T_" + g.name(x) +
                        "] - " + g.name(x));
        }
    }
    check.valid = true;
    check.height = t.height();
    return check;
}

namespace {

void drop_subtree(CycleRankDecomposition& t, VertexId x) {
    VertexSet doomed = t.subtree(x);
    for (VertexId d : doomed) {
        t.parent.erase(d);
    }
    std::erase_if(t.roots, [&](VertexId r) { return doomed.contains(r); });
}

void rename(CycleRankDecomposition& t, VertexId from, VertexId to) {
    for (auto& r : t.roots) {
        if (r == from) {
            r = to;
        }
    }
    for (auto& [c, p] : t.parent) {
        if (p == from) {
            p = to;
        }
    }
    if (auto it = t.parent.find(from); it != t.parent.end()) {
        VertexId p = it->second;
        t.parent.erase(it);
        t.parent[to] = p;
    }
}

auto child_towards(const CycleRankDecomposition& t, VertexId ancestor, VertexId d) -> VertexId {
    VertexId cur = d;
    while (t.parent.at(cur) != ancestor) {
        cur = t.parent.at(cur);
    }
    return cur;
}

// Replaces the subtree below `keep` that contains `gone` by optimal decompositions
// of the strongly connected components of G[T_a] - gone.
void rebuild_under(const Digraph& g, CycleRankDecomposition& t, VertexId keep, VertexId gone) {
    VertexId a = child_towards(t, keep, gone);
    VertexSet rest = t.subtree(a);
    drop_subtree(t, a);
    t.parent.erase(a);
    rest.erase(gone);
    for (const auto& comp : scc(g.induced(rest))) {
        solve_into(g.induced(VertexSet(comp.begin(), comp.end())), keep, t);
    }
}

} // namespace

auto contract_cr_decomposition(const Digraph& g, const CycleRankDecomposition& t, Edge e) -> CycleRankDecomposition {
    auto check = validate_cr_decomposition(g, t);
    if (!check.valid) {
        throw PreconditionViolated("decomposition is invalid: " + *check.witness);
    }
    if (!is_butterfly_contractible(g, e)) {
        throw PreconditionViolated("edge is not butterfly contractible");
    }
    const VertexId u = e.tail;
    const VertexId v = e.head;
    CycleRankDecomposition out = t;
    if (t.is_ancestor(v, u)) {
        rebuild_under(g, out, v, u);
        rename(out, v, u);
    } else if (t.is_ancestor(u, v)) {
        rebuild_under(g, out, u, v);
    } else if (g.in_degree(v) == 1) {
        // v's only in-edge leaves its component, so the component is {v}.
        drop_subtree(out, v);
    } else {
        drop_subtree(out, u);
        rename(out, v, u);
    }
    Digraph h = butterfly_contract(g, e);
    auto after = validate_cr_decomposition(h, out);
    if (!after.valid || after.height > check.height) {
        throw PreconditionViolated("contracted decomposition failed validation: " + after.witness.value_or("height grew"));
    }
    return out;
}

} // namespace dgt
