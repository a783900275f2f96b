#include "dgt/digraph.hpp"

#include <algorithm>
#include <deque>

namespace dgt {

namespace {

const VertexSet kEmpty;

} // namespace

auto Digraph::add_vertex(std::string label) -> VertexId {
    VertexId v = next_id();
    add_vertex(v, std::move(label));
    return v;
}

void Digraph::add_vertex(VertexId v, std::string label) {
    if (nodes_.contains(v)) {
        return;
    }
    if (label.empty()) {
        label = std::to_string(v.value);
    }
    nodes_.emplace(v, Node{std::move(label), {}, {}});
}

auto Digraph::add_edge(VertexId tail, VertexId head) -> bool {
    if (tail == head) {
        throw LoopError("self-loop on vertex " + std::to_string(tail.value));
    }
    auto t = nodes_.find(tail);
    auto h = nodes_.find(head);
    if (t == nodes_.end() || h == nodes_.end()) {
        throw PreconditionViolated("edge endpoint is not a vertex");
    }
    if (!t->second.out.insert(head).second) {
        return false;
    }
    h->second.in.insert(tail);
    ++edge_count_;
    return true;
}

void Digraph::remove_edge(Edge e) {
    auto t = nodes_.find(e.tail);
    if (t == nodes_.end() || t->second.out.erase(e.head) == 0) {
        return;
    }
    nodes_.at(e.head).in.erase(e.tail);
    --edge_count_;
}

void Digraph::remove_vertex(VertexId v) {
    auto it = nodes_.find(v);
    if (it == nodes_.end()) {
        return;
    }
    for (VertexId w : it->second.out) {
        nodes_.at(w).in.erase(v);
        --edge_count_;
    }
    for (VertexId w : it->second.in) {
        nodes_.at(w).out.erase(v);
        --edge_count_;
    }
    nodes_.erase(it);
}

void Digraph::set_label(VertexId v, std::string label) { nodes_.at(v).label = std::move(label); }

auto Digraph::has_edge(VertexId tail, VertexId head) const -> bool {
    auto t = nodes_.find(tail);
    return t != nodes_.end() && t->second.out.contains(head);
}

auto Digraph::out(VertexId v) const -> const VertexSet& {
    auto it = nodes_.find(v);
    return it == nodes_.end() ? kEmpty : it->second.out;
}

auto Digraph::in(VertexId v) const -> const VertexSet& {
    auto it = nodes_.find(v);
    return it == nodes_.end() ? kEmpty : it->second.in;
}

auto Digraph::vertices() const -> std::vector<VertexId> {
    std::vector<VertexId> vs;
    vs.reserve(nodes_.size());
    for (const auto& [v, node] : nodes_) {
        vs.push_back(v);
    }
    return vs;
}

auto Digraph::vertex_set() const -> VertexSet {
    VertexSet vs;
    for (const auto& [v, node] : nodes_) {
        vs.insert(vs.end(), v);
    }
    return vs;
}

auto Digraph::edges() const -> std::vector<Edge> {
    std::vector<Edge> es;
    es.reserve(edge_count_);
    for (const auto& [v, node] : nodes_) {
        for (VertexId w : node.out) {
            es.push_back({v, w});
        }
    }
    return es;
}

auto Digraph::next_id() const -> VertexId {
    return nodes_.empty() ? VertexId{0} : VertexId{nodes_.rbegin()->first.value + 1};
}

auto Digraph::label(VertexId v) const -> const std::string& { return nodes_.at(v).label; }

auto Digraph::find(std::string_view label) const -> std::optional<VertexId> {
    for (const auto& [v, node] : nodes_) {
        if (node.label == label) {
            return v;
        }
    }
    return std::nullopt;
}

auto Digraph::induced(const VertexSet& keep) const -> Digraph {
    Digraph g;
    for (VertexId v : keep) {
        auto it = nodes_.find(v);
        if (it != nodes_.end()) {
            g.add_vertex(v, it->second.label);
        }
    }
    for (VertexId v : keep) {
        for (VertexId w : out(v)) {
            if (keep.contains(w)) {
                g.add_edge(v, w);
            }
        }
    }
    return g;
}

auto Digraph::without(const VertexSet& drop) const -> Digraph {
    VertexSet keep;
    for (const auto& [v, node] : nodes_) {
        if (!drop.contains(v)) {
            keep.insert(keep.end(), v);
        }
    }
    return induced(keep);
}

auto operator==(const Digraph& a, const Digraph& b) -> bool {
    if (a.nodes_.size() != b.nodes_.size() || a.edge_count_ != b.edge_count_) {
        return false;
    }
    for (const auto& [v, node] : a.nodes_) {
        auto it = b.nodes_.find(v);
        if (it == b.nodes_.end() || it->second.out != node.out) {
            return false;
        }
    }
    return true;
}

auto graph_union(const std::vector<const Digraph*>& parts) -> Digraph {
    Digraph g;
    for (const Digraph* part : parts) {
        for (VertexId v : part->vertices()) {
            g.add_vertex(v, part->label(v));
        }
    }
    for (const Digraph* part : parts) {
        for (Edge e : part->edges()) {
            g.add_edge(e);
        }
    }
    return g;
}

auto is_subgraph(const Digraph& small, const Digraph& big) -> bool {
    for (VertexId v : small.vertices()) {
        if (!big.has_vertex(v)) {
            return false;
        }
    }
    for (Edge e : small.edges()) {
        if (!big.has_edge(e)) {
            return false;
        }
    }
    return true;
}

auto Path::contains(VertexId v) const -> bool { return std::find(vertices.begin(), vertices.end(), v) != vertices.end(); }

auto Path::index_of(VertexId v) const -> std::optional<std::size_t> {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - vertices.begin());
}

auto Path::edges() const -> std::vector<Edge> {
    std::vector<Edge> es;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        es.push_back({vertices[i], vertices[i + 1]});
    }
    return es;
}

auto Path::vertex_set() const -> VertexSet { return {vertices.begin(), vertices.end()}; }

auto Path::internal() const -> VertexSet {
    if (vertices.size() <= 2) {
        return {};
    }
    return {vertices.begin() + 1, vertices.end() - 1};
}

auto Path::between(VertexId from, VertexId to) const -> Path {
    auto a = index_of(from);
    auto b = index_of(to);
    if (!a || !b || *a > *b) {
        throw PreconditionViolated("subpath endpoints out of order");
    }
    return slice(*a, *b);
}

auto Path::slice(std::size_t from, std::size_t to) const -> Path {
    return Path(std::vector<VertexId>(vertices.begin() + static_cast<std::ptrdiff_t>(from),
                                      vertices.begin() + static_cast<std::ptrdiff_t>(to) + 1));
}

auto Path::as_digraph(const Digraph& host) const -> Digraph {
    Digraph g;
    for (VertexId v : vertices) {
        g.add_vertex(v, host.has_vertex(v) ? host.label(v) : std::string{});
    }
    for (Edge e : edges()) {
        g.add_edge(e);
    }
    return g;
}

auto is_simple(const Path& p) -> bool { return !p.empty() && p.vertex_set().size() == p.size(); }

auto is_path_in(const Digraph& host, const Path& p) -> bool {
    if (!is_simple(p)) {
        return false;
    }
    for (VertexId v : p.vertices) {
        if (!host.has_vertex(v)) {
            return false;
        }
    }
    for (Edge e : p.edges()) {
        if (!host.has_edge(e)) {
            return false;
        }
    }
    return true;
}

auto concat(const Path& a, const Path& b) -> Path {
    if (a.empty()) {
        return b;
    }
    if (b.empty()) {
        return a;
    }
    if (a.head() != b.tail()) {
        throw PreconditionViolated("paths do not meet");
    }
    Path r = a;
    r.vertices.insert(r.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
    return r;
}

auto scc(const Digraph& g) -> std::vector<std::vector<VertexId>> {
    // Iterative Tarjan; components come out sinks first.
    std::vector<VertexId> vs = g.vertices();
    std::unordered_map<VertexId, std::size_t> index;
    std::unordered_map<VertexId, std::size_t> low;
    std::unordered_map<VertexId, bool> on_stack;
    std::vector<VertexId> stack;
    std::vector<std::vector<VertexId>> out;
    std::size_t counter = 0;

    struct Frame {
        VertexId v;
        VertexSet::const_iterator next;
    };

    for (VertexId root : vs) {
        if (index.contains(root)) {
            continue;
        }
        std::vector<Frame> call;
        auto open = [&](VertexId v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = true;
            call.push_back({v, g.out(v).begin()});
        };
        open(root);
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next != g.out(f.v).end()) {
                VertexId w = *f.next;
                ++f.next;
                if (!index.contains(w)) {
                    open(w);
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            VertexId v = f.v;
            call.pop_back();
            if (!call.empty()) {
                low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
            if (low[v] == index[v]) {
                std::vector<VertexId> comp;
                VertexId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

auto is_strongly_connected(const Digraph& g) -> bool { return g.vertex_count() > 0 && scc(g).size() == 1; }

auto is_acyclic(const Digraph& g) -> bool {
    for (const auto& comp : scc(g)) {
        if (comp.size() > 1) {
            return false;
        }
    }
    return true;
}

auto reachable_from(const Digraph& g, VertexId v) -> VertexSet {
    VertexSet seen{v};
    std::deque<VertexId> queue{v};
    while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop_front();
        for (VertexId w : g.out(u)) {
            if (seen.insert(w).second) {
                queue.push_back(w);
            }
        }
    }
    return seen;
}

namespace {

// Longest cycle whose smallest vertex (in dense order) is the start vertex.
struct CycleSearch {
    std::vector<std::vector<std::size_t>> adj;
    std::vector<char> on_path;
    std::size_t start = 0;
    std::size_t best = 0;

    void dfs(std::size_t v, std::size_t depth) {
        for (std::size_t w : adj[v]) {
            if (w == start) {
                best = std::max(best, depth);
            } else if (w > start && !on_path[w]) {
                on_path[w] = 1;
                dfs(w, depth + 1);
                on_path[w] = 0;
            }
        }
    }
};

} // namespace

auto circumference(const Digraph& g) -> std::size_t {
    std::size_t best = 0;
    for (const auto& comp : scc(g)) {
        if (comp.size() < 2 || comp.size() <= best) {
            continue;
        }
        std::unordered_map<VertexId, std::size_t> dense;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            dense[comp[i]] = i;
        }
        CycleSearch search;
        search.adj.resize(comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (VertexId w : g.out(comp[i])) {
                auto it = dense.find(w);
                if (it != dense.end()) {
                    search.adj[i].push_back(it->second);
                }
            }
        }
        search.on_path.assign(comp.size(), 0);
        search.best = best;
        for (std::size_t s = 0; s < comp.size(); ++s) {
            if (comp.size() - s <= search.best) {
                break;
            }
            search.start = s;
            search.on_path[s] = 1;
            search.dfs(s, 1);
            search.on_path[s] = 0;
        }
        best = search.best;
    }
    return best;
}

auto is_butterfly_contractible(const Digraph& g, Edge e) -> bool {
    return g.has_edge(e) && (g.out_degree(e.tail) == 1 || g.in_degree(e.head) == 1);
}

auto butterfly_contract(const Digraph& g, Edge e) -> Digraph {
    if (!g.has_edge(e)) {
        throw PreconditionViolated("edge to contract is not in the digraph");
    }
    if (!is_butterfly_contractible(g, e)) {
        throw NotContractible(g.out_degree(e.tail), g.in_degree(e.head));
    }
    const VertexId u = e.tail;
    const VertexId v = e.head;
    Digraph h = g;
    h.remove_vertex(v);
    for (VertexId x : g.in(v)) {
        if (x != u) {
            h.add_edge(x, u);
        }
    }
    for (VertexId y : g.out(v)) {
        if (y != u) {
            h.add_edge(u, y);
        }
    }
    return h;
}

auto arborescence(const Digraph& g, VertexId root, Direction dir) -> Digraph {
    if (!g.has_vertex(root)) {
        throw PreconditionViolated("arborescence root is not a vertex");
    }
    Digraph tree;
    tree.add_vertex(root, g.label(root));
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop_front();
        const VertexSet& next = dir == Direction::Out ? g.out(u) : g.in(u);
        for (VertexId w : next) {
            if (w == root || tree.has_vertex(w)) {
                continue;
            }
            std::size_t deg = dir == Direction::Out ? g.in_degree(w) : g.out_degree(w);
            if (deg != 1) {
                continue;
            }
            tree.add_vertex(w, g.label(w));
            if (dir == Direction::Out) {
                tree.add_edge(u, w);
            } else {
                tree.add_edge(w, u);
            }
            queue.push_back(w);
        }
    }
    return tree;
}

namespace {

// Maximal runs of P whose consecutive vertices are also consecutive in Q.
// Each run is returned as [first, last] index pairs into P.
auto shared_runs(const Path& p, const Path& q) -> std::vector<std::pair<std::size_t, std::size_t>> {
    std::unordered_map<VertexId, std::size_t> pos_q;
    for (std::size_t i = 0; i < q.size(); ++i) {
        pos_q[q.vertices[i]] = i;
    }
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto it = pos_q.find(p.vertices[i]);
        if (it == pos_q.end()) {
            continue;
        }
        bool extends = false;
        if (!runs.empty() && runs.back().second + 1 == i) {
            auto prev = pos_q.find(p.vertices[i - 1]);
            extends = prev->second + 1 == it->second;
        }
        if (extends) {
            runs.back().second = i;
        } else {
            runs.emplace_back(i, i);
        }
    }
    return runs;
}

} // namespace

auto is_laced(const Path& p, const Path& q) -> bool {
    auto runs = shared_runs(p, q);
    std::optional<std::size_t> previous;
    for (auto [first, last] : runs) {
        std::size_t at = *q.index_of(p.vertices[first]);
        if (previous && at >= *previous) {
            return false;
        }
        previous = at;
    }
    return true;
}

auto untangle(const Path& p, const Path& q, bool keep_intersection) -> Path {
    if (!is_simple(p) || !is_simple(q)) {
        throw PreconditionViolated("untangle expects simple paths");
    }
    const VertexId a = p.tail();
    const VertexId d = q.head();
    if (keep_intersection) {
        bool shared = false;
        for (VertexId v : p.vertices) {
            shared = shared || (q.contains(v) && v != a && v != d);
        }
        bool a_internal = q.internal().contains(a);
        bool d_internal = p.internal().contains(d);
        if (!shared || a_internal || d_internal) {
            throw PreconditionViolated("intersecting untangle needs a shared vertex outside {a,d}, "
                                       "a not internal to Q and d not internal to P");
        }
    }

    std::unordered_map<VertexId, std::size_t> pos_p;
    for (std::size_t i = 0; i < p.size(); ++i) {
        pos_p[p.vertices[i]] = i;
    }
    auto on_p_upto = [&](VertexId v, std::size_t lo, long hi) {
        auto it = pos_p.find(v);
        return it != pos_p.end() && it->second >= lo && static_cast<long>(it->second) <= hi;
    };

    // Walk Q; at each first hit of the still-allowed prefix of P, jump along P
    // to the last place Q touches it, then forbid that part of P.
    Path out;
    long limit = static_cast<long>(p.size()) - 1;
    std::size_t copy_from = 0;
    const std::size_t m = q.size();
    while (true) {
        std::optional<std::size_t> hit;
        for (std::size_t i = copy_from; i < m; ++i) {
            if (on_p_upto(q.vertices[i], 0, limit)) {
                hit = i;
                break;
            }
        }
        if (!hit) {
            out.vertices.insert(out.vertices.end(), q.vertices.begin() + static_cast<std::ptrdiff_t>(copy_from),
                                q.vertices.end());
            break;
        }
        out.vertices.insert(out.vertices.end(), q.vertices.begin() + static_cast<std::ptrdiff_t>(copy_from),
                            q.vertices.begin() + static_cast<std::ptrdiff_t>(*hit));
        const std::size_t j = pos_p[q.vertices[*hit]];
        std::size_t last = *hit;
        for (std::size_t i = *hit + 1; i < m; ++i) {
            if (on_p_upto(q.vertices[i], j, limit)) {
                last = i;
            }
        }
        const std::size_t jp = pos_p[q.vertices[last]];
        for (std::size_t x = j; x <= jp; ++x) {
            out.vertices.push_back(p.vertices[x]);
        }
        limit = static_cast<long>(j) - 1;
        copy_from = last + 1;
    }
    return out;
}

} // namespace dgt
