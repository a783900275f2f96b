#include "dgt/minors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_map>

#include "dgt/cycle_rank.hpp"

namespace dgt {

namespace {

auto show(VertexId v) -> std::string { return std::to_string(v.value); }
auto show(Edge e) -> std::string { return "(" + show(e.tail) + "," + show(e.head) + ")"; }

// Vertices of `part` reachable from root using only branch edges inside part.
auto tree_reach(const Branch& b, const VertexSet& part, Direction dir) -> VertexSet {
    VertexSet seen{b.root};
    std::vector<VertexId> stack{b.root};
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        for (const Edge& e : b.edges) {
            VertexId from = dir == Direction::Out ? e.tail : e.head;
            VertexId to = dir == Direction::Out ? e.head : e.tail;
            if (from == x && part.contains(to) && seen.insert(to).second) {
                stack.push_back(to);
            }
        }
    }
    return seen;
}

// Empty string when the branch is a valid tree; otherwise the reason.
auto branch_problem(const Digraph& host, const Branch& b) -> std::string {
    if (!host.has_vertex(b.root)) {
        return "root " + show(b.root) + " is not a host vertex";
    }
    if (b.in_part.contains(b.root) || b.out_part.contains(b.root)) {
        return "root " + show(b.root) + " also lies in its in- or out-part";
    }
    for (VertexId v : b.in_part) {
        if (b.out_part.contains(v)) {
            return "vertex " + show(v) + " lies in both the in- and out-part";
        }
    }
    const VertexSet all = b.vertices();
    for (VertexId v : all) {
        if (!host.has_vertex(v)) {
            return "vertex " + show(v) + " is not a host vertex";
        }
    }
    VertexSet outs = b.out_part;
    outs.insert(b.root);
    VertexSet ins = b.in_part;
    ins.insert(b.root);
    std::map<VertexId, int> in_out_tree;
    std::map<VertexId, int> out_in_tree;
    for (const Edge& e : b.edges) {
        if (!host.has_edge(e)) {
            return "tree edge " + show(e) + " is not a host edge";
        }
        if (outs.contains(e.tail) && outs.contains(e.head)) {
            if (e.head == b.root) {
                return "tree edge " + show(e) + " enters the root";
            }
            ++in_out_tree[e.head];
        } else if (ins.contains(e.tail) && ins.contains(e.head)) {
            if (e.tail == b.root) {
                return "tree edge " + show(e) + " leaves the root into the in-part";
            }
            ++out_in_tree[e.tail];
        } else {
            return "tree edge " + show(e) + " joins the in-part and the out-part";
        }
    }
    if (b.edges.size() + 1 != all.size()) {
        return "branch at root " + show(b.root) + " has the wrong number of tree edges";
    }
    for (auto [v, c] : in_out_tree) {
        if (c != 1) {
            return "vertex " + show(v) + " has two parents in the out-arborescence";
        }
    }
    for (auto [v, c] : out_in_tree) {
        if (c != 1) {
            return "vertex " + show(v) + " has two parents in the in-arborescence";
        }
    }
    if (tree_reach(b, outs, Direction::Out) != outs) {
        return "out-part of root " + show(b.root) + " is not reachable from the root";
    }
    if (tree_reach(b, ins, Direction::In) != ins) {
        return "in-part of root " + show(b.root) + " does not reach the root";
    }
    return {};
}

} // namespace

auto Branch::vertices() const -> VertexSet {
    VertexSet all = in_part;
    all.insert(out_part.begin(), out_part.end());
    all.insert(root);
    return all;
}

auto ButterflyMinorModel::image_vertices() const -> VertexSet {
    VertexSet all;
    for (const auto& [v, b] : vertex_map) {
        all.merge(b.vertices());
    }
    return all;
}

auto ButterflyMinorModel::image() const -> Digraph {
    Digraph g;
    for (VertexId v : image_vertices()) {
        g.add_vertex(v);
    }
    for (const auto& [v, b] : vertex_map) {
        for (const Edge& e : b.edges) {
            g.add_edge(e);
        }
    }
    for (const auto& [pe, he] : edge_map) {
        g.add_edge(he);
    }
    return g;
}

auto validate_model(const Digraph& pattern, const Digraph& host, const ButterflyMinorModel& model) -> ModelCheck {
    auto fail = [](std::string why) { return ModelCheck{false, std::move(why)}; };
    for (VertexId v : pattern.vertices()) {
        if (!model.vertex_map.contains(v)) {
            return fail("pattern vertex " + show(v) + " has no branch set");
        }
    }
    std::map<VertexId, VertexId> owner;
    for (const auto& [v, b] : model.vertex_map) {
        if (!pattern.has_vertex(v)) {
            return fail("branch set given for non-pattern vertex " + show(v));
        }
        if (auto why = branch_problem(host, b); !why.empty()) {
            return fail("branch of " + show(v) + ": " + why);
        }
        for (VertexId x : b.vertices()) {
            if (auto [it, fresh] = owner.emplace(x, v); !fresh) {
                return fail("host vertex " + show(x) + " lies in the branch sets of " + show(it->second) + " and " +
                            show(v));
            }
        }
    }
    for (const Edge& pe : pattern.edges()) {
        auto it = model.edge_map.find(pe);
        if (it == model.edge_map.end()) {
            return fail("pattern edge " + show(pe) + " has no image");
        }
        const Edge he = it->second;
        if (!host.has_edge(he)) {
            return fail("image " + show(he) + " of " + show(pe) + " is not a host edge");
        }
        if (!model.vertex_map.at(pe.tail).can_send(he.tail)) {
            return fail("image " + show(he) + " of " + show(pe) + " leaves the branch of " + show(pe.tail) +
                        " outside its root and out-part");
        }
        if (!model.vertex_map.at(pe.head).can_receive(he.head)) {
            return fail("image " + show(he) + " of " + show(pe) + " enters the branch of " + show(pe.head) +
                        " outside its root and in-part");
        }
    }
    for (const auto& [pe, he] : model.edge_map) {
        if (!pattern.has_edge(pe)) {
            return fail("image given for non-pattern edge " + show(pe));
        }
    }
    return {true, std::nullopt};
}

auto singleton_model(const Digraph& pattern, const Digraph& host, const std::map<VertexId, VertexId>& place)
    -> ButterflyMinorModel {
    ButterflyMinorModel m;
    for (VertexId v : pattern.vertices()) {
        m.vertex_map[v] = Branch{place.at(v), {}, {}, {}};
    }
    for (const Edge& e : pattern.edges()) {
        Edge he{place.at(e.tail), place.at(e.head)};
        if (!host.has_edge(he)) {
            throw PreconditionViolated("placement misses host edge " + show(he));
        }
        m.edge_map[e] = he;
    }
    return m;
}

auto restrict_model(const ButterflyMinorModel& model, const Digraph& pattern, const VertexSet& keep)
    -> ButterflyMinorModel {
    ButterflyMinorModel out;
    for (VertexId v : keep) {
        out.vertex_map[v] = model.vertex_map.at(v);
    }
    for (const Edge& e : pattern.edges()) {
        if (keep.contains(e.tail) && keep.contains(e.head)) {
            out.edge_map[e] = model.edge_map.at(e);
        }
    }
    return out;
}

MinorTracker::MinorTracker(Digraph host) : original_(std::move(host)), current_(original_) {
    for (VertexId v : original_.vertices()) {
        merged_into_[v] = v;
    }
}

void MinorTracker::delete_edge(Edge e) {
    current_.remove_edge(e);
    script_.push_back("delete edge " + show(e));
}

void MinorTracker::delete_vertex(VertexId v) {
    current_.remove_vertex(v);
    script_.push_back("delete vertex " + show(v));
}

void MinorTracker::keep_edges(const std::vector<Edge>& edges) {
    const std::set<Edge> keep(edges.begin(), edges.end());
    for (const Edge& e : current_.edges()) {
        if (!keep.contains(e)) {
            delete_edge(e);
        }
    }
    for (VertexId v : current_.vertices()) {
        if (current_.in_degree(v) == 0 && current_.out_degree(v) == 0) {
            delete_vertex(v);
        }
    }
}

void MinorTracker::contract(Edge e) {
    if (!current_.has_edge(e)) {
        throw PreconditionViolated("edge " + show(e) + " is not present");
    }
    if (!is_butterfly_contractible(current_, e)) {
        throw NotContractible(current_.out_degree(e.tail), current_.in_degree(e.head));
    }
    Digraph next = butterfly_contract(current_, e);
    steps_.push_back({std::move(current_), e});
    current_ = std::move(next);
    for (auto& [orig, now] : merged_into_) {
        if (now == e.head) {
            now = e.tail;
        }
    }
    script_.push_back("contract edge " + show(e));
}

auto MinorTracker::find(VertexId original_vertex) const -> std::optional<VertexId> {
    auto it = merged_into_.find(original_vertex);
    if (it == merged_into_.end() || !current_.has_vertex(it->second)) {
        return std::nullopt;
    }
    return it->second;
}

namespace {

// Carries a model in G / e back to G, where the merged vertex kept the tail's id.
auto lift_contraction(const Digraph& g, Edge e, ButterflyMinorModel m) -> ButterflyMinorModel {
    const VertexId u = e.tail;
    const VertexId v = e.head;
    Branch* owner = nullptr;
    for (auto& [pv, b] : m.vertex_map) {
        if (b.vertices().contains(u)) {
            owner = &b;
        }
    }
    if (owner == nullptr) {
        return m;
    }
    Branch& b = *owner;
    enum class Role { Root, In, Out };
    const Role role = b.root == u ? Role::Root : (b.in_part.contains(u) ? Role::In : Role::Out);
    bool extra = false;

    // Rewrites one edge incident to the merged vertex into an edge of g.
    std::function<Edge(Edge)> rewrite;
    if (g.in_degree(v) == 1) {
        // Every edge into the merged vertex already entered u.
        rewrite = [&](Edge x) {
            if (x.tail == u && !g.has_edge(x)) {
                extra = true;
                return Edge{v, x.head};
            }
            return x;
        };
    } else {
        // u has out-degree one, so every edge out of the merged vertex left v.
        rewrite = [&](Edge x) {
            if (x.tail == u) {
                return Edge{v, x.head};
            }
            if (x.head == u && g.has_edge(x.tail, v)) {
                return Edge{x.tail, v};
            }
            if (x.head == u) {
                extra = true;
            }
            return x;
        };
    }

    std::set<Edge> tree;
    for (const Edge& x : b.edges) {
        tree.insert(rewrite(x));
    }
    for (auto& [pe, he] : m.edge_map) {
        he = rewrite(he);
    }
    if (g.in_degree(v) == 1) {
        if (extra) {
            (role == Role::In ? b.in_part : b.out_part).insert(v);
            tree.insert(e);
        }
    } else {
        if (role == Role::Root) {
            b.root = v;
        } else {
            auto& part = role == Role::In ? b.in_part : b.out_part;
            part.erase(u);
            part.insert(v);
        }
        if (extra) {
            (role == Role::Out ? b.out_part : b.in_part).insert(u);
            tree.insert(e);
        }
    }
    b.edges = std::move(tree);
    return m;
}

} // namespace

auto MinorTracker::lift(const ButterflyMinorModel& in_current) const -> ButterflyMinorModel {
    ButterflyMinorModel m = in_current;
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
        m = lift_contraction(it->before, it->edge, std::move(m));
    }
    return m;
}

auto minimize_model(const Digraph& pattern, const Digraph& host, const ButterflyMinorModel& model)
    -> ButterflyMinorModel {
    if (auto check = validate_model(pattern, host, model); !check.valid) {
        throw PreconditionViolated("cannot minimize an invalid model: " + *check.witness);
    }
    ButterflyMinorModel m = model;
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<VertexId> tails;
        std::set<VertexId> heads;
        for (const auto& [pe, he] : m.edge_map) {
            tails.insert(he.tail);
            heads.insert(he.head);
        }
        for (auto& [pv, b] : m.vertex_map) {
            for (VertexId x : b.vertices()) {
                if (x == b.root) {
                    continue;
                }
                // An out-part leaf has no tree edge leaving it; an in-part leaf none entering it.
                const bool out_leaf = b.out_part.contains(x) &&
                                      std::none_of(b.edges.begin(), b.edges.end(), [&](const Edge& t) { return t.tail == x; });
                const bool in_leaf = b.in_part.contains(x) &&
                                     std::none_of(b.edges.begin(), b.edges.end(), [&](const Edge& t) { return t.head == x; });
                if ((out_leaf && !tails.contains(x)) || (in_leaf && !heads.contains(x))) {
                    b.out_part.erase(x);
                    b.in_part.erase(x);
                    std::erase_if(b.edges, [&](const Edge& t) { return t.tail == x || t.head == x; });
                    changed = true;
                }
            }
        }
    }
    return m;
}

namespace {

using Mask = std::uint64_t;

auto bit(std::size_t i) -> Mask { return Mask{1} << i; }

struct Option {
    std::size_t root;
    Mask send;    // root plus out-part
    Mask receive; // root plus in-part
};

class Search {
public:
    Search(const Digraph& pattern, const Digraph& host, std::uint64_t budget) : budget_(budget) {
        hv_ = host.vertices();
        std::map<VertexId, std::size_t> hidx;
        for (std::size_t i = 0; i < hv_.size(); ++i) {
            hidx[hv_[i]] = i;
        }
        out_.assign(hv_.size(), 0);
        in_.assign(hv_.size(), 0);
        for (const Edge& e : host.edges()) {
            out_[hidx[e.tail]] |= bit(hidx[e.head]);
            in_[hidx[e.head]] |= bit(hidx[e.tail]);
        }
        pv_ = pattern.vertices();
        std::map<VertexId, std::size_t> pidx;
        for (std::size_t i = 0; i < pv_.size(); ++i) {
            pidx[pv_[i]] = i;
        }
        for (const Edge& e : pattern.edges()) {
            pe_.emplace_back(pidx[e.tail], pidx[e.head]);
        }
        // Pattern vertices in breadth-first order so that edges are checked early.
        std::vector<bool> placed(pv_.size(), false);
        for (std::size_t s = 0; s < pv_.size(); ++s) {
            if (placed[s]) {
                continue;
            }
            std::size_t head = p_order_.size();
            p_order_.push_back(s);
            placed[s] = true;
            while (head < p_order_.size()) {
                std::size_t x = p_order_[head++];
                for (auto [a, b] : pe_) {
                    std::size_t y = a == x ? b : (b == x ? a : x);
                    if (!placed[y]) {
                        placed[y] = true;
                        p_order_.push_back(y);
                    }
                }
            }
        }
    }

    // Searches inside the host vertices given by mask.
    auto run(Mask region) -> std::optional<ButterflyMinorModel> {
        order_.clear();
        // Host vertices in breadth-first order within the region.
        Mask seen = 0;
        for (std::size_t s = 0; s < hv_.size(); ++s) {
            if ((region & bit(s)) == 0 || (seen & bit(s)) != 0) {
                continue;
            }
            std::size_t head = order_.size();
            order_.push_back(s);
            seen |= bit(s);
            while (head < order_.size()) {
                std::size_t x = order_[head++];
                Mask nb = (out_[x] | in_[x]) & region & ~seen;
                while (nb != 0) {
                    std::size_t y = std::countr_zero(nb);
                    nb &= nb - 1;
                    seen |= bit(y);
                    order_.push_back(y);
                }
            }
        }
        classes_.assign(pv_.size(), 0);
        if (assign(0, pv_.size())) {
            return result_;
        }
        return std::nullopt;
    }

    [[nodiscard]] auto exhausted() const -> bool { return exhausted_; }
    [[nodiscard]] auto expanded() const -> std::uint64_t { return expanded_; }

private:
    auto tick(std::uint64_t n = 1) -> bool {
        expanded_ += n;
        if (expanded_ > budget_) {
            exhausted_ = true;
        }
        return !exhausted_;
    }

    auto assign(std::size_t at, std::size_t empty) -> bool {
        if (!tick()) {
            return false;
        }
        const std::size_t left = order_.size() - at;
        if (left < empty) {
            return false;
        }
        if (left == 0) {
            return check_classes();
        }
        const std::size_t v = order_[at];
        for (std::size_t c = 0; c < pv_.size(); ++c) {
            const bool was_empty = classes_[c] == 0;
            classes_[c] |= bit(v);
            const bool ok = assign(at + 1, empty - (was_empty ? 1 : 0));
            classes_[c] &= ~bit(v);
            if (ok || exhausted_) {
                return ok;
            }
        }
        if (left > empty) {
            return assign(at + 1, empty);
        }
        return false;
    }

    [[nodiscard]] auto weakly_connected(Mask c) const -> bool {
        Mask seen = c & (~c + 1);
        Mask frontier = seen;
        while (frontier != 0) {
            std::size_t x = std::countr_zero(frontier);
            frontier &= frontier - 1;
            Mask nb = (out_[x] | in_[x]) & c & ~seen;
            seen |= nb;
            frontier |= nb;
        }
        return seen == c;
    }

    [[nodiscard]] auto closure(std::size_t root, Mask within, const std::vector<Mask>& adj) const -> Mask {
        Mask seen = bit(root);
        Mask frontier = seen;
        while (frontier != 0) {
            std::size_t x = std::countr_zero(frontier);
            frontier &= frontier - 1;
            Mask nb = adj[x] & within & ~seen;
            seen |= nb;
            frontier |= nb;
        }
        return seen;
    }

    // Options of a class that are maximal with respect to the vertices that can
    // actually carry an edge to or from another class.
    auto options(Mask c) -> const std::vector<Option>* {
        if (auto it = cache_.find(c); it != cache_.end()) {
            return &it->second;
        }
        if (cache_.size() > 200000) {
            cache_.clear();
        }
        Mask outside_out = 0;
        Mask outside_in = 0;
        for (std::size_t x = 0; x < hv_.size(); ++x) {
            if ((c & bit(x)) == 0) {
                outside_out |= out_[x];
                outside_in |= in_[x];
            }
        }
        struct Candidate {
            Option opt;
            Mask send_eff;
            Mask receive_eff;
        };
        std::vector<Candidate> all;
        Mask rest_all = c;
        while (rest_all != 0) {
            std::size_t r = std::countr_zero(rest_all);
            rest_all &= rest_all - 1;
            const Mask others = c & ~bit(r);
            const Mask can_out = closure(r, c, out_) & others;
            const Mask can_in = closure(r, c, in_) & others;
            if ((can_out | can_in) != others) {
                continue;
            }
            // Vertices only one side can hold are forced; the rest are split every way.
            const Mask free = can_out & can_in;
            const Mask forced_out = can_out & ~free;
            if (!tick(std::uint64_t{1} << std::popcount(free))) {
                return nullptr;
            }
            Mask sub = free;
            while (true) {
                const Mask o = forced_out | sub;
                const Mask i = others & ~o;
                const Mask send = o | bit(r);
                const Mask receive = i | bit(r);
                if (closure(r, send, out_) == send && closure(r, receive, in_) == receive) {
                    all.push_back({{r, send, receive}, send & outside_in, receive & outside_out});
                }
                if (sub == 0) {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        std::vector<Option> kept;
        std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
            return std::popcount(a.send_eff) + std::popcount(a.receive_eff) >
                   std::popcount(b.send_eff) + std::popcount(b.receive_eff);
        });
        std::vector<std::pair<Mask, Mask>> frontier;
        for (const Candidate& cand : all) {
            bool dominated = std::any_of(frontier.begin(), frontier.end(), [&](const auto& f) {
                return (cand.send_eff & ~f.first) == 0 && (cand.receive_eff & ~f.second) == 0;
            });
            if (!dominated) {
                frontier.emplace_back(cand.send_eff, cand.receive_eff);
                kept.push_back(cand.opt);
            }
        }
        return &cache_.emplace(c, std::move(kept)).first->second;
    }

    auto check_classes() -> bool {
        for (Mask c : classes_) {
            if (!weakly_connected(c)) {
                return false;
            }
        }
        opts_.assign(pv_.size(), nullptr);
        for (std::size_t x = 0; x < pv_.size(); ++x) {
            opts_[x] = options(classes_[x]);
            if (opts_[x] == nullptr || opts_[x]->empty()) {
                return false;
            }
        }
        choice_.assign(pv_.size(), 0);
        chosen_.assign(pv_.size(), false);
        if (!pick(0)) {
            return false;
        }
        build_result();
        return true;
    }

    [[nodiscard]] auto reach_out(Mask send) const -> Mask {
        Mask r = 0;
        while (send != 0) {
            r |= out_[std::countr_zero(send)];
            send &= send - 1;
        }
        return r;
    }

    auto pick(std::size_t at) -> bool {
        if (at == p_order_.size()) {
            return true;
        }
        if (!tick()) {
            return false;
        }
        const std::size_t x = p_order_[at];
        for (std::size_t k = 0; k < opts_[x]->size(); ++k) {
            choice_[x] = k;
            chosen_[x] = true;
            bool ok = true;
            for (auto [a, b] : pe_) {
                if ((a != x && b != x) || !chosen_[a] || !chosen_[b]) {
                    continue;
                }
                const Option& oa = (*opts_[a])[choice_[a]];
                const Option& ob = (*opts_[b])[choice_[b]];
                if ((reach_out(oa.send) & ob.receive) == 0) {
                    ok = false;
                    break;
                }
            }
            if (ok && pick(at + 1)) {
                return true;
            }
            chosen_[x] = false;
            if (exhausted_) {
                return false;
            }
        }
        return false;
    }

    [[nodiscard]] auto tree_edges(std::size_t root, Mask part, const std::vector<Mask>& adj, bool forward) const
        -> std::set<Edge> {
        std::set<Edge> edges;
        Mask seen = bit(root);
        std::vector<std::size_t> queue{root};
        for (std::size_t h = 0; h < queue.size(); ++h) {
            std::size_t x = queue[h];
            Mask nb = adj[x] & part & ~seen;
            while (nb != 0) {
                std::size_t y = std::countr_zero(nb);
                nb &= nb - 1;
                seen |= bit(y);
                queue.push_back(y);
                edges.insert(forward ? Edge{hv_[x], hv_[y]} : Edge{hv_[y], hv_[x]});
            }
        }
        return edges;
    }

    void build_result() {
        result_ = {};
        auto members = [&](Mask m) {
            VertexSet s;
            while (m != 0) {
                s.insert(hv_[std::countr_zero(m)]);
                m &= m - 1;
            }
            return s;
        };
        for (std::size_t x = 0; x < pv_.size(); ++x) {
            const Option& o = (*opts_[x])[choice_[x]];
            Branch b;
            b.root = hv_[o.root];
            b.out_part = members(o.send & ~bit(o.root));
            b.in_part = members(o.receive & ~bit(o.root));
            b.edges = tree_edges(o.root, o.send, out_, true);
            b.edges.merge(tree_edges(o.root, o.receive, in_, false));
            result_.vertex_map[pv_[x]] = std::move(b);
        }
        for (auto [a, b] : pe_) {
            const Option& oa = (*opts_[a])[choice_[a]];
            const Option& ob = (*opts_[b])[choice_[b]];
            Mask tails = oa.send;
            while (tails != 0) {
                std::size_t t = std::countr_zero(tails);
                tails &= tails - 1;
                if (Mask hit = out_[t] & ob.receive; hit != 0) {
                    result_.edge_map[Edge{pv_[a], pv_[b]}] = Edge{hv_[t], hv_[std::countr_zero(hit)]};
                    break;
                }
            }
        }
    }

    std::uint64_t budget_;
    std::uint64_t expanded_ = 0;
    bool exhausted_ = false;
    std::vector<VertexId> hv_;
    std::vector<Mask> out_;
    std::vector<Mask> in_;
    std::vector<VertexId> pv_;
    std::vector<std::pair<std::size_t, std::size_t>> pe_;
    std::vector<std::size_t> p_order_;
    std::vector<std::size_t> order_;
    std::vector<Mask> classes_;
    std::vector<const std::vector<Option>*> opts_;
    std::vector<std::size_t> choice_;
    std::vector<bool> chosen_;
    std::unordered_map<Mask, std::vector<Option>> cache_;
    ButterflyMinorModel result_;
};

auto weak_components(const Digraph& g) -> std::vector<VertexSet> {
    std::vector<VertexSet> comps;
    VertexSet seen;
    for (VertexId s : g.vertices()) {
        if (seen.contains(s)) {
            continue;
        }
        VertexSet comp{s};
        std::vector<VertexId> stack{s};
        seen.insert(s);
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            for (const VertexSet* nb : {&g.out(x), &g.in(x)}) {
                for (VertexId y : *nb) {
                    if (seen.insert(y).second) {
                        comp.insert(y);
                        stack.push_back(y);
                    }
                }
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Small enough for the exponential invariants used as quick refutations.
constexpr std::size_t kInvariantLimit = 24;

} // namespace

auto find_model(const Digraph& pattern, const Digraph& host, std::uint64_t budget) -> SearchOutcome {
    if (host.vertex_count() > 64) {
        throw TooLarge("model search supports hosts of at most 64 vertices");
    }
    if (pattern.vertex_count() > host.vertex_count()) {
        return NotContained{"pattern has more vertices than the host"};
    }
    if (pattern.edge_count() > host.edge_count()) {
        return NotContained{"pattern has more edges than the host"};
    }
    if (pattern.vertex_count() == 0) {
        return Found{};
    }
    if (host.vertex_count() <= kInvariantLimit) {
        if (circumference(pattern) > circumference(host)) {
            return NotContained{"pattern has a longer cycle than the host"};
        }
        try {
            if (cycle_rank(pattern).rank > cycle_rank(host).rank) {
                return NotContained{"pattern has larger cycle rank than the host"};
            }
        } catch (const TooLarge&) {
        }
    }

    // A connected pattern lives in one component of the host; a strongly connected
    // one in a single strong component, since minimal models have strongly connected images.
    std::vector<VertexSet> regions;
    if (pattern.vertex_count() >= 2 && is_strongly_connected(pattern)) {
        for (const auto& comp : scc(host)) {
            regions.emplace_back(comp.begin(), comp.end());
        }
    } else if (weak_components(pattern).size() == 1) {
        regions = weak_components(host);
    } else {
        regions.push_back(host.vertex_set());
    }

    Search search(pattern, host, budget);
    const auto hv = host.vertices();
    for (const VertexSet& region : regions) {
        if (region.size() < pattern.vertex_count()) {
            continue;
        }
        Mask mask = 0;
        for (std::size_t i = 0; i < hv.size(); ++i) {
            if (region.contains(hv[i])) {
                mask |= bit(i);
            }
        }
        if (auto model = search.run(mask)) {
            return Found{minimize_model(pattern, host, *model)};
        }
        if (search.exhausted()) {
            return Indeterminate{search.expanded()};
        }
    }
    return NotContained{"exhaustive search found no model"};
}

} // namespace dgt
