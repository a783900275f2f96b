#include "dgt/decompositions.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>

#include "dgt/families.hpp"

namespace dgt {

namespace {

auto show(VertexId v) -> std::string { return std::to_string(v.value); }

auto vid(std::size_t i) -> VertexId { return VertexId{static_cast<std::uint32_t>(i)}; }

auto meets(const VertexSet& a, const VertexSet& b) -> bool {
    return std::any_of(a.begin(), a.end(), [&](VertexId v) { return b.contains(v); });
}

// An edge of G - X inside one strong component that crosses the boundary of Y.
auto crossing_edge(const Digraph& g, const VertexSet& x, const VertexSet& y) -> std::optional<Edge> {
    const Digraph h = g.without(x);
    std::map<VertexId, std::size_t> comp;
    const auto blocks = scc(h);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (VertexId v : blocks[i]) {
            comp[v] = i;
        }
    }
    for (const Edge& e : h.edges()) {
        if (comp[e.tail] == comp[e.head] && y.contains(e.tail) != y.contains(e.head)) {
            return e;
        }
    }
    return std::nullopt;
}

} // namespace

auto strongly_guards(const Digraph& g, const VertexSet& x, const VertexSet& y) -> bool {
    return !crossing_edge(g, x, y).has_value();
}

auto DirectedTreeDecomposition::root() const -> std::size_t {
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        if (!nodes[t].parent) {
            return t;
        }
    }
    throw PreconditionViolated("directed tree decomposition has no root");
}

auto DirectedTreeDecomposition::children(std::size_t t) const -> std::vector<std::size_t> {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < nodes.size(); ++c) {
        if (nodes[c].parent == t) {
            out.push_back(c);
        }
    }
    return out;
}

auto DirectedTreeDecomposition::below(std::size_t t) const -> VertexSet {
    VertexSet out;
    std::vector<std::size_t> stack{t};
    while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        out.insert(nodes[x].bag.begin(), nodes[x].bag.end());
        for (std::size_t c : children(x)) {
            stack.push_back(c);
        }
    }
    return out;
}

auto DirectedTreeDecomposition::gamma(std::size_t t) const -> VertexSet {
    VertexSet out = nodes[t].bag;
    if (nodes[t].parent) {
        out.insert(nodes[t].guard.begin(), nodes[t].guard.end());
    }
    for (std::size_t c : children(t)) {
        out.insert(nodes[c].guard.begin(), nodes[c].guard.end());
    }
    return out;
}

auto DirectedTreeDecomposition::post_order() const -> std::vector<std::size_t> {
    std::vector<std::size_t> out;
    std::function<void(std::size_t)> visit = [&](std::size_t t) {
        for (std::size_t c : children(t)) {
            visit(c);
        }
        out.push_back(t);
    };
    visit(root());
    return out;
}

auto validate_dtd(const Digraph& g, const DirectedTreeDecomposition& d) -> DtdCheck {
    auto fail = [](std::string why) { return DtdCheck{false, 0, std::move(why)}; };
    const std::size_t n = d.nodes.size();
    if (n == 0) {
        return g.vertex_count() == 0 ? DtdCheck{true, 0, std::nullopt} : fail("decomposition has no nodes");
    }
    std::size_t roots = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const auto& parent = d.nodes[t].parent;
        if (!parent) {
            ++roots;
        } else if (*parent >= n || *parent == t) {
            return fail("node " + std::to_string(t) + " has an invalid parent");
        }
    }
    if (roots != 1) {
        return fail("decomposition must have exactly one root, found " + std::to_string(roots));
    }
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t at = t;
        std::size_t steps = 0;
        while (d.nodes[at].parent) {
            at = *d.nodes[at].parent;
            if (++steps > n) {
                return fail("parent pointers of node " + std::to_string(t) + " form a cycle");
            }
        }
    }
    VertexSet covered;
    for (std::size_t t = 0; t < n; ++t) {
        const auto& node = d.nodes[t];
        if (node.bag.empty()) {
            return fail("bag of node " + std::to_string(t) + " is empty");
        }
        for (VertexId v : node.bag) {
            if (!g.has_vertex(v)) {
                return fail("bag of node " + std::to_string(t) + " holds non-vertex " + show(v));
            }
            if (!covered.insert(v).second) {
                return fail("vertex " + show(v) + " lies in two bags");
            }
        }
        for (VertexId v : node.guard) {
            if (!g.has_vertex(v)) {
                return fail("guard of node " + std::to_string(t) + " holds non-vertex " + show(v));
            }
        }
    }
    if (covered.size() != g.vertex_count()) {
        return fail("bags do not cover every vertex");
    }
    std::size_t width = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (const auto& parent = d.nodes[t].parent) {
            if (auto e = crossing_edge(g, d.nodes[t].guard, d.below(t))) {
                return fail("guard of arc (" + std::to_string(*parent) + "," + std::to_string(t) +
                            ") does not strongly guard the bags below it: edge (" + show(e->tail) + "," +
                            show(e->head) + ") lies on a crossing cycle");
            }
        }
        width = std::max(width, d.gamma(t).size() - 1);
    }
    return {true, width, std::nullopt};
}

auto dtd_from_cr_decomposition(const Digraph& g, const CycleRankDecomposition& t) -> DirectedTreeDecomposition {
    if (auto check = validate_cr_decomposition(g, t); !check.valid) {
        throw PreconditionViolated("invalid cycle rank decomposition: " + *check.witness);
    }
    const auto vs = g.vertices();
    std::map<VertexId, std::size_t> index;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        index[vs[i]] = i;
    }
    // A single artificial root would add a node; instead the first tree root hosts the others.
    DirectedTreeDecomposition d;
    d.nodes.resize(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        d.nodes[i].bag = {vs[i]};
        if (auto it = t.parent.find(vs[i]); it != t.parent.end()) {
            d.nodes[i].parent = index.at(it->second);
            for (VertexId a = it->second;;) {
                d.nodes[i].guard.insert(a);
                auto up = t.parent.find(a);
                if (up == t.parent.end()) {
                    break;
                }
                a = up->second;
            }
        }
    }
    // Further tree roots hang below the first one with an empty guard: separate components
    // of the forest share no cycle.
    for (std::size_t r = 1; r < t.roots.size(); ++r) {
        d.nodes[index.at(t.roots[r])].parent = index.at(t.roots[0]);
    }
    return d;
}

auto search_dtd(const Digraph& g, std::size_t tries, std::mt19937_64& rng) -> DirectedTreeDecomposition {
    const auto vs = g.vertices();
    const std::size_t n = vs.size();
    if (n > 10) {
        throw TooLarge("decomposition search supports at most 10 vertices");
    }
    DirectedTreeDecomposition best;
    best.nodes.push_back({std::nullopt, g.vertex_set(), {}});
    if (n == 0) {
        best.nodes.clear();
        return best;
    }
    std::size_t best_width = n - 1;
    // Subsets of V in order of size, for the smallest guard search.
    std::vector<std::uint32_t> by_size((std::size_t{1} << n));
    std::iota(by_size.begin(), by_size.end(), 0U);
    std::stable_sort(by_size.begin(), by_size.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    for (std::size_t attempt = 0; attempt < tries; ++attempt) {
        const std::size_t m = 1 + rng() % n;
        std::vector<VertexId> order = vs;
        std::shuffle(order.begin(), order.end(), rng);
        DirectedTreeDecomposition d;
        d.nodes.resize(m);
        for (std::size_t i = 0; i < n; ++i) {
            d.nodes[i < m ? i : rng() % m].bag.insert(order[i]);
        }
        for (std::size_t t = 1; t < m; ++t) {
            d.nodes[t].parent = rng() % t;
        }
        for (std::size_t t = 1; t < m; ++t) {
            const VertexSet y = d.below(t);
            for (std::uint32_t mask : by_size) {
                VertexSet x;
                for (std::size_t i = 0; i < n; ++i) {
                    if ((mask >> i) & 1U) {
                        x.insert(vs[i]);
                    }
                }
                if (strongly_guards(g, x, y)) {
                    d.nodes[t].guard = std::move(x);
                    break;
                }
            }
        }
        std::size_t width = 0;
        for (std::size_t t = 0; t < m; ++t) {
            width = std::max(width, d.gamma(t).size() - 1);
        }
        if (width < best_width) {
            best_width = width;
            best = std::move(d);
        }
    }
    return best;
}

auto ChainDecomposition::add_leaf(Digraph g) -> std::size_t {
    nodes.push_back({std::move(g), std::nullopt, {}, std::nullopt});
    return nodes.size() - 1;
}

auto ChainDecomposition::add_link(std::size_t left, std::size_t right, MixedChain h, const Digraph& chain_graph)
    -> std::size_t {
    Digraph g = graph_union({&nodes.at(left).graph, &nodes.at(right).graph, &chain_graph});
    nodes.push_back({std::move(g), std::nullopt, {left, right}, std::move(h)});
    const std::size_t d = nodes.size() - 1;
    nodes[left].parent = d;
    nodes[right].parent = d;
    return d;
}

auto ChainDecomposition::bfs_order() const -> std::vector<std::size_t> {
    std::vector<std::size_t> out{root};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t c : nodes[out[i]].children) {
            out.push_back(c);
        }
    }
    return out;
}

namespace {

auto recompute_weights(const ChainDecomposition& t) -> std::vector<std::size_t> {
    std::vector<std::size_t> out;
    for (std::size_t d : t.bfs_order()) {
        out.push_back(t.nodes[d].chain ? t.nodes[d].chain->weight() : 0);
    }
    return out;
}

auto recompute_full_height(const ChainDecomposition& t) -> std::size_t {
    // One more than the smallest leaf depth.
    std::vector<std::pair<std::size_t, std::size_t>> queue{{t.root, 0}};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto [d, depth] = queue[i];
        if (t.nodes[d].children.size() < 2) {
            return depth + 1;
        }
        for (std::size_t c : t.nodes[d].children) {
            queue.emplace_back(c, depth + 1);
        }
    }
    return 0;
}

} // namespace

void ChainDecomposition::finalize(std::size_t root_node) {
    root = root_node;
    weight_vector = recompute_weights(*this);
    full_height = recompute_full_height(*this);
}

auto ChainDecomposition::is_proper_descendant(std::size_t d, std::size_t of) const -> bool {
    for (auto at = nodes.at(d).parent; at; at = nodes.at(*at).parent) {
        if (*at == of) {
            return true;
        }
    }
    return false;
}

auto validate_chain_decomposition(const ChainDecomposition& t) -> ChainDecompositionCheck {
    auto fail = [](std::string why) { return ChainDecompositionCheck{false, {}, 0, std::move(why)}; };
    const std::size_t n = t.nodes.size();
    if (t.root >= n) {
        return fail("root is not a node");
    }
    if (t.nodes[t.root].parent) {
        return fail("root has a parent");
    }
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{t.root};
    seen[t.root] = true;
    while (!stack.empty()) {
        std::size_t d = stack.back();
        stack.pop_back();
        for (std::size_t c : t.nodes[d].children) {
            if (c >= n || seen[c] || t.nodes[c].parent != d) {
                return fail("children of node " + std::to_string(d) + " do not form a tree");
            }
            seen[c] = true;
            stack.push_back(c);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        return fail("some node is not below the root");
    }
    for (std::size_t d = 0; d < n; ++d) {
        const ChainNode& node = t.nodes[d];
        const std::string at = "node " + std::to_string(d);
        if (node.children.empty()) {
            if (node.chain) {
                return fail(at + " is a leaf with a mixed chain");
            }
            if (node.graph.vertex_count() == 0 || !is_strongly_connected(node.graph)) {
                return fail(at + " is a leaf whose digraph is not strongly connected");
            }
            continue;
        }
        if (node.children.size() != 2) {
            return fail(at + " has " + std::to_string(node.children.size()) + " children");
        }
        if (!node.chain) {
            return fail(at + " is internal without a mixed chain");
        }
        const MixedChain& h = *node.chain;
        const Digraph& g1 = t.nodes[node.children[0]].graph;
        const Digraph& g2 = t.nodes[node.children[1]].graph;
        if (auto check = validate_mixed_chain(node.graph, h); !check.valid) {
            return fail(at + ": mixed chain is invalid: " + *check.witness);
        }
        if (!g1.has_vertex(h.ends.p) || !g1.has_vertex(h.ends.q)) {
            return fail(at + ": left endpoints of the mixed chain miss the left child");
        }
        if (!g2.has_vertex(h.ends.p2) || !g2.has_vertex(h.ends.q2)) {
            return fail(at + ": right endpoints of the mixed chain miss the right child");
        }
        if (meets(g1.vertex_set(), g2.vertex_set())) {
            return fail(at + ": children share a vertex");
        }
        const Digraph hg = structure_graph(node.graph, h);
        const VertexSet hv = hg.vertex_set();
        VertexSet left_meet;
        VertexSet right_meet;
        for (VertexId v : hv) {
            if (g1.has_vertex(v)) {
                left_meet.insert(v);
            }
            if (g2.has_vertex(v)) {
                right_meet.insert(v);
            }
        }
        if (left_meet != VertexSet{h.ends.p, h.ends.q} || right_meet != VertexSet{h.ends.p2, h.ends.q2}) {
            return fail(at + ": mixed chain meets a child outside its endpoints");
        }
        for (const Edge& e : hg.edges()) {
            if (g1.has_edge(e) || g2.has_edge(e)) {
                return fail(at + ": mixed chain shares an edge with a child");
            }
        }
        const Digraph joined = graph_union({&g1, &g2, &hg});
        if (joined.vertex_set() != node.graph.vertex_set() || joined.edges() != node.graph.edges()) {
            return fail(at + ": digraph is not the mixed link of its children");
        }
    }
    const auto weights = recompute_weights(t);
    const std::size_t height = recompute_full_height(t);
    if (weights != t.weight_vector) {
        return fail("cached weight vector differs from recomputation");
    }
    if (height != t.full_height) {
        return fail("cached full height differs from recomputation");
    }
    return {true, weights, height, std::nullopt};
}

auto to_string(EndpointType t) -> std::string {
    switch (t) {
    case EndpointType::Left:
        return "left";
    case EndpointType::Right:
        return "right";
    case EndpointType::Central:
        return "central";
    case EndpointType::None:
        break;
    }
    return "none";
}

namespace {

struct Link {
    const Digraph* g1;
    const Digraph* g2;
    const MixedChain* h;
    Digraph hg;
};

auto link_at(const ChainDecomposition& t, std::size_t d) -> Link {
    const ChainNode& node = t.nodes.at(d);
    if (!node.chain || node.children.size() != 2) {
        throw PreconditionViolated("node " + std::to_string(d) + " is not internal");
    }
    return {&t.nodes[node.children[0]].graph, &t.nodes[node.children[1]].graph, &*node.chain,
            structure_graph(node.graph, *node.chain)};
}

// Maximal arborescence of H at root whose non-root vertices have in-degree 1 (out-degree 1
// for In) in H, stopped at the other child so that left and right stay exclusive.
// Maps each member to its neighbour towards the root.
auto side_tree(const Digraph& hg, VertexId root, Direction dir, const Digraph& other)
    -> std::map<VertexId, VertexId> {
    std::map<VertexId, VertexId> up{{root, root}};
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
        const VertexId x = queue.front();
        queue.pop_front();
        for (VertexId y : dir == Direction::Out ? hg.out(x) : hg.in(x)) {
            const std::size_t deg = dir == Direction::Out ? hg.in_degree(y) : hg.out_degree(y);
            if (deg == 1 && !up.contains(y) && !other.has_vertex(y)) {
                up[y] = x;
                queue.push_back(y);
            }
        }
    }
    return up;
}

auto classify(const Link& l, VertexId x, Direction dir) -> EndpointType {
    const auto& e = l.h->ends;
    const VertexId left_root = dir == Direction::Out ? e.p : e.q;
    const VertexId right_root = dir == Direction::Out ? e.p2 : e.q2;
    if (l.g1->has_vertex(x) || side_tree(l.hg, left_root, dir, *l.g2).contains(x)) {
        return EndpointType::Left;
    }
    if (l.g2->has_vertex(x) || side_tree(l.hg, right_root, dir, *l.g1).contains(x)) {
        return EndpointType::Right;
    }
    return EndpointType::Central;
}

// Vertices of the unique path between the side digraph and x through the side tree.
auto arbor_path(const Digraph& side, const Digraph& other, const Digraph& hg, VertexId root, VertexId x,
                Direction dir) -> VertexSet {
    if (side.has_vertex(x)) {
        return {x};
    }
    const auto up = side_tree(hg, root, dir, other);
    VertexSet out{x};
    for (VertexId at = x; at != root;) {
        at = up.at(at);
        out.insert(at);
    }
    return out;
}

auto crossing(const Link& l, VertexId x, VertexId y) -> bool {
    const auto& e = l.h->ends;
    const EndpointType ox = classify(l, x, Direction::Out);
    const EndpointType iy = classify(l, y, Direction::In);
    if (ox == EndpointType::Left && iy == EndpointType::Right) {
        return meets(arbor_path(*l.g1, *l.g2, l.hg, e.p, x, Direction::Out),
                     arbor_path(*l.g2, *l.g1, l.hg, e.q2, y, Direction::In));
    }
    if (ox == EndpointType::Right && iy == EndpointType::Left) {
        return meets(arbor_path(*l.g2, *l.g1, l.hg, e.p2, x, Direction::Out),
                     arbor_path(*l.g1, *l.g2, l.hg, e.q, y, Direction::In));
    }
    return false;
}

void require_member(const ChainDecomposition& t, std::size_t d, VertexId x) {
    if (!t.nodes.at(d).graph.has_vertex(x)) {
        throw PreconditionViolated("vertex " + show(x) + " is not in the digraph of node " + std::to_string(d));
    }
}

} // namespace

auto out_type(const ChainDecomposition& t, std::size_t d, VertexId x) -> EndpointType {
    require_member(t, d, x);
    return classify(link_at(t, d), x, Direction::Out);
}

auto in_type(const ChainDecomposition& t, std::size_t d, VertexId y) -> EndpointType {
    require_member(t, d, y);
    return classify(link_at(t, d), y, Direction::In);
}

auto is_crossing(const ChainDecomposition& t, std::size_t d, VertexId x, VertexId y) -> bool {
    require_member(t, d, x);
    require_member(t, d, y);
    return crossing(link_at(t, d), x, y);
}

auto classify_endpoint(const ChainDecomposition& t, std::size_t d, std::size_t d_prime) -> EndpointRecord {
    if (d_prime >= t.nodes.size() || !t.is_proper_descendant(d_prime, d)) {
        throw PreconditionViolated("node " + std::to_string(d_prime) + " is not a proper descendant of node " +
                                   std::to_string(d));
    }
    const Link l = link_at(t, d);
    const Digraph& inner = t.nodes[d_prime].graph;
    EndpointRecord rec;
    const auto& e = l.h->ends;
    for (VertexId x : {e.p, e.q, e.p2, e.q2}) {
        if (!inner.has_vertex(x)) {
            continue;
        }
        if (!rec.out_vertex && l.hg.out_degree(x) == 1) {
            rec.out_vertex = x;
        }
        if (!rec.in_vertex && l.hg.in_degree(x) == 1) {
            rec.in_vertex = x;
        }
    }
    if (t.is_leaf(d_prime)) {
        return rec;
    }
    const Link below = link_at(t, d_prime);
    if (rec.out_vertex) {
        rec.out_type = classify(below, *rec.out_vertex, Direction::Out);
    }
    if (rec.in_vertex) {
        rec.in_type = classify(below, *rec.in_vertex, Direction::In);
    }
    if (rec.out_vertex && rec.in_vertex) {
        rec.crossing = crossing(below, *rec.out_vertex, *rec.in_vertex);
    }
    return rec;
}

auto acts_upon(const ChainDecomposition& t, std::size_t d, std::size_t d_prime) -> bool {
    if (t.is_leaf(d_prime)) {
        return false;
    }
    const EndpointRecord r = classify_endpoint(t, d, d_prime);
    return r.out_vertex && r.in_vertex &&
           (r.out_type == EndpointType::Central || r.in_type == EndpointType::Central || r.crossing);
}

auto satisfies_spotless_property(const ChainDecomposition& t, std::size_t d1, std::size_t d2, std::size_t d3) -> bool {
    const EndpointRecord r13 = classify_endpoint(t, d1, d3);
    const EndpointRecord r23 = classify_endpoint(t, d2, d3);
    const bool parent = t.nodes[d3].parent == d2;
    if (r13.in_vertex) {
        if (!r23.in_vertex || r13.in_type != r23.in_type) {
            return false;
        }
        if (parent && r23.out_vertex && is_crossing(t, d3, *r23.out_vertex, *r13.in_vertex)) {
            return false;
        }
    }
    if (r13.out_vertex) {
        if (!r23.out_vertex || r13.out_type != r23.out_type) {
            return false;
        }
        if (parent && r23.in_vertex && is_crossing(t, d3, *r13.out_vertex, *r23.in_vertex)) {
            return false;
        }
    }
    return true;
}

auto cleanliness(const ChainDecomposition& t) -> Cleanliness {
    std::vector<std::size_t> internal;
    for (std::size_t d : t.bfs_order()) {
        if (!t.is_leaf(d)) {
            internal.push_back(d);
        }
    }
    for (std::size_t d : internal) {
        for (std::size_t dp : internal) {
            if (t.is_proper_descendant(dp, d) && acts_upon(t, d, dp)) {
                return NotRinsed{d, dp};
            }
        }
    }
    for (std::size_t d : internal) {
        for (std::size_t dp : t.nodes[d].children) {
            if (t.is_leaf(dp)) {
                continue;
            }
            const EndpointRecord r = classify_endpoint(t, d, dp);
            if (!r.out_vertex || !r.in_vertex || r.out_type == r.in_type) {
                return RinsedNotClean{d, dp};
            }
        }
    }
    for (std::size_t d1 : internal) {
        for (std::size_t d2 : internal) {
            if (!t.is_proper_descendant(d2, d1)) {
                continue;
            }
            for (std::size_t d3 : internal) {
                if (t.is_proper_descendant(d3, d2) && !satisfies_spotless_property(t, d1, d2, d3)) {
                    return CleanNotSpotless{d1, d2, d3};
                }
            }
        }
    }
    return Spotless{};
}

auto tree_chain_decomposition(std::size_t k) -> ChainDecomposition {
    if (k > 12) {
        throw TooLarge("tree chain decomposition above order 12");
    }
    ChainDecomposition t;
    const Digraph full = gen_tree_chain(k).graph;
    auto add = [&](Digraph& g, VertexId v) { g.add_vertex(v, full.label(v)); };
    // Copy of TC_level on ids [base, base + 2^level), built like gen_tree_chain.
    std::function<std::size_t(std::size_t, std::size_t)> build = [&](std::size_t base, std::size_t level) {
        if (level == 0) {
            Digraph leaf;
            add(leaf, vid(base));
            return t.add_leaf(std::move(leaf));
        }
        const std::size_t half = std::size_t{1} << (level - 1);
        const std::size_t left = build(base, level - 1);
        const std::size_t right = build(base + half, level - 1);
        const VertexId s1 = vid(base);
        const VertexId t1 = vid(base + half - 1);
        const VertexId s2 = vid(base + half);
        const VertexId t2 = vid(base + 2 * half - 1);
        RelaxedLadder l;
        l.ends = {s1, t1, t2, s2};
        l.P = Path{s1, t2};
        l.Q = Path{s2, t1};
        MixedChain h;
        h.ends = {s1, t1, s2, t2};
        h.H = {l};
        h.pj = {s1, t2};
        h.qj = {t1, s2};
        Digraph hg;
        for (VertexId v : {s1, t1, s2, t2}) {
            add(hg, v);
        }
        hg.add_edge(s1, t2);
        hg.add_edge(s2, t1);
        return t.add_link(left, right, std::move(h), hg);
    };
    t.finalize(build(0, k));
    return t;
}

auto cycle_member_check() -> MemberCheck {
    return [](const Digraph& g) -> std::optional<Digraph> {
        for (const auto& comp : scc(g)) {
            if (comp.size() < 2) {
                continue;
            }
            // Shortest cycle through the first vertex of the component.
            const VertexId s = comp.front();
            std::map<VertexId, VertexId> from;
            std::deque<VertexId> queue{s};
            std::optional<VertexId> last;
            while (!queue.empty() && !last) {
                VertexId x = queue.front();
                queue.pop_front();
                for (VertexId y : g.out(x)) {
                    if (y == s) {
                        last = x;
                        break;
                    }
                    if (!from.contains(y)) {
                        from[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            Digraph c;
            c.add_vertex(s);
            VertexId at = *last;
            c.add_vertex(at);
            c.add_edge(at, s);
            while (at != s) {
                VertexId prev = from.at(at);
                c.add_vertex(prev);
                c.add_edge(prev, at);
                at = prev;
            }
            return c;
        }
        return std::nullopt;
    };
}

auto find_subgraph(const Digraph& pattern, const Digraph& host) -> std::optional<Digraph> {
    const auto pv = pattern.vertices();
    if (pv.size() > host.vertex_count()) {
        return std::nullopt;
    }
    const auto hv = host.vertices();
    std::map<VertexId, VertexId> image;
    VertexSet used;
    std::function<bool(std::size_t)> extend = [&](std::size_t i) {
        if (i == pv.size()) {
            return true;
        }
        const VertexId x = pv[i];
        for (VertexId y : hv) {
            if (used.contains(y) || host.out_degree(y) < pattern.out_degree(x) ||
                host.in_degree(y) < pattern.in_degree(x)) {
                continue;
            }
            bool ok = true;
            for (const auto& [a, b] : image) {
                if ((pattern.has_edge(x, a) && !host.has_edge(y, b)) || (pattern.has_edge(a, x) && !host.has_edge(b, y))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) {
                continue;
            }
            image[x] = y;
            used.insert(y);
            if (extend(i + 1)) {
                return true;
            }
            image.erase(x);
            used.erase(y);
        }
        return false;
    };
    if (!extend(0)) {
        return std::nullopt;
    }
    Digraph out;
    for (VertexId x : pv) {
        out.add_vertex(image[x]);
    }
    for (const Edge& e : pattern.edges()) {
        out.add_edge(image[e.tail], image[e.head]);
    }
    return out;
}

auto subgraph_member_check(Digraph pattern) -> MemberCheck {
    return [pattern = std::move(pattern)](const Digraph& g) { return find_subgraph(pattern, g); };
}

auto erdos_posa(const Digraph& g, const DirectedTreeDecomposition& d, const MemberCheck& member, std::size_t k)
    -> ErdosPosaResult {
    if (k < 1) {
        throw PreconditionViolated("k must be at least 1");
    }
    if (auto check = validate_dtd(g, d); !check.valid) {
        throw PreconditionViolated("invalid directed tree decomposition: " + *check.witness);
    }
    const auto order = d.post_order();
    std::vector<VertexSet> below(d.nodes.size());
    std::vector<VertexSet> gamma(d.nodes.size());
    for (std::size_t t = 0; t < d.nodes.size(); ++t) {
        below[t] = d.below(t);
        gamma[t] = d.gamma(t);
    }
    auto restrict = [](const VertexSet& a, const VertexSet& keep) {
        VertexSet out;
        for (VertexId v : a) {
            if (keep.contains(v)) {
                out.insert(v);
            }
        }
        return out;
    };

    std::vector<Digraph> packed;
    VertexSet cover;
    VertexSet alive = g.vertex_set();
    for (std::size_t left = k;; --left) {
        auto found = member(g.induced(alive));
        if (!found) {
            return Cover{cover};
        }
        if (left == 1) {
            packed.push_back(std::move(*found));
            return Packing{std::move(packed)};
        }
        // First node in post-order whose subtree holds a member but loses it without the bag;
        // otherwise the first node whose subtree holds one, where every such member meets Γ(t).
        std::optional<std::size_t> chosen;
        std::optional<std::size_t> lowest;
        for (std::size_t t : order) {
            const VertexSet sub = restrict(below[t], alive);
            if (!member(g.induced(sub))) {
                continue;
            }
            if (!lowest) {
                lowest = t;
            }
            VertexSet rest;
            for (VertexId v : sub) {
                if (!d.nodes[t].bag.contains(v)) {
                    rest.insert(v);
                }
            }
            if (!member(g.induced(rest))) {
                chosen = t;
                break;
            }
        }
        const std::size_t t = chosen.value_or(*lowest);
        packed.push_back(*member(g.induced(restrict(below[t], alive))));
        const VertexSet hit = restrict(gamma[t], alive);
        cover.insert(hit.begin(), hit.end());
        for (VertexId v : below[t]) {
            alive.erase(v);
        }
        for (VertexId v : gamma[t]) {
            alive.erase(v);
        }
    }
}

auto verify_erdos_posa(const Digraph& g, std::size_t width, const MemberCheck& member, std::size_t k,
                       const ErdosPosaResult& result) -> ErdosPosaCheck {
    auto fail = [](std::string why) { return ErdosPosaCheck{false, std::move(why)}; };
    if (const auto* p = std::get_if<Packing>(&result)) {
        if (p->members.size() != k) {
            return fail("packing has " + std::to_string(p->members.size()) + " members instead of " +
                        std::to_string(k));
        }
        VertexSet used;
        for (std::size_t i = 0; i < p->members.size(); ++i) {
            const Digraph& m = p->members[i];
            if (!is_subgraph(m, g)) {
                return fail("member " + std::to_string(i) + " is not a subdigraph");
            }
            if (!member(m)) {
                return fail("member " + std::to_string(i) + " is rejected by the member check");
            }
            for (VertexId v : m.vertices()) {
                if (!used.insert(v).second) {
                    return fail("members share vertex " + show(v));
                }
            }
        }
        return {true, std::nullopt};
    }
    const auto& c = std::get<Cover>(result);
    const std::size_t bound = (k - 1) * (width + 1);
    if (c.vertices.size() > bound) {
        return fail("cover of size " + std::to_string(c.vertices.size()) + " exceeds (k-1)(w+1) = " +
                    std::to_string(bound));
    }
    for (VertexId v : c.vertices) {
        if (!g.has_vertex(v)) {
            return fail("cover holds non-vertex " + show(v));
        }
    }
    if (member(g.without(c.vertices))) {
        return fail("a member survives the cover");
    }
    return {true, std::nullopt};
}

} // namespace dgt

namespace dgt {

auto gen_M(std::size_t k, std::uint64_t seed, std::size_t size_budget) -> MFixture {
    if (k < 1) {
        throw PreconditionViolated("M_k is defined for k >= 1");
    }
    std::mt19937_64 rng(seed);
    std::uint32_t next = 0;
    std::size_t used = 0;
    ChainDecomposition t;
    auto charge = [&](std::size_t n) {
        used += n;
        if (used > size_budget) {
            throw BudgetExceeded("M_" + std::to_string(k) + " fixture exceeds " + std::to_string(size_budget) +
                                 " vertices");
        }
    };
    auto pick = [&](const Digraph& g) {
        const auto vs = g.vertices();
        return vs[rng() % vs.size()];
    };
    std::function<std::size_t(std::size_t)> build = [&](std::size_t level) -> std::size_t {
        if (level == 1) {
            const std::size_t n = 1 + rng() % 4;
            charge(n);
            Digraph g;
            std::vector<VertexId> vs;
            for (std::size_t i = 0; i < n; ++i) {
                vs.push_back(VertexId{next++});
                g.add_vertex(vs.back());
            }
            for (std::size_t i = 0; n > 1 && i < n; ++i) {
                g.add_edge(vs[i], vs[(i + 1) % n]);
            }
            for (VertexId a : vs) {
                for (VertexId b : vs) {
                    if (a != b && rng() % 4 == 0) {
                        g.add_edge(a, b);
                    }
                }
            }
            return t.add_leaf(std::move(g));
        }
        const std::size_t left = build(level - 1);
        const std::size_t right = build(level - 1);
        const Digraph& g1 = t.nodes[left].graph;
        const Digraph& g2 = t.nodes[right].graph;
        const VertexId v11 = pick(g1);
        const VertexId v12 = rng() % 4 == 0 ? v11 : pick(g1);
        const VertexId v21 = pick(g2);
        const VertexId v22 = rng() % 4 == 0 ? v21 : pick(g2);
        MixedChainShape shape;
        shape.length = rng() % 3;
        shape.orders.assign(shape.length + 1, 0);
        shape.closed_left = v11 == v12;
        shape.closed_right = v21 == v22;
        const MixedChainFixture f = random_mixed_chain(shape, rng);
        const Digraph hg = structure_graph(f.host, f.chain);
        std::map<VertexId, VertexId> m{{f.chain.ends.p, v11},
                                       {f.chain.ends.q, v12},
                                       {f.chain.ends.p2, v21},
                                       {f.chain.ends.q2, v22}};
        for (VertexId v : hg.vertices()) {
            if (!m.contains(v)) {
                m[v] = VertexId{next++};
                charge(1);
            }
        }
        Digraph chain_graph;
        for (VertexId v : hg.vertices()) {
            chain_graph.add_vertex(m.at(v));
        }
        for (const Edge& e : hg.edges()) {
            chain_graph.add_edge(m.at(e.tail), m.at(e.head));
        }
        return t.add_link(left, right, relabel(f.chain, m), chain_graph);
    };
    t.finalize(build(k));
    Digraph g = t.nodes[t.root].graph;
    return {std::move(g), std::move(t)};
}

} // namespace dgt
