#include <algorithm>
#include <functional>

#include "dgt/minors.hpp"

namespace dgt {

namespace {

auto vid(std::size_t i) -> VertexId { return VertexId{static_cast<std::uint32_t>(i)}; }

auto checked(const Digraph& pattern, const Digraph& host, ButterflyMinorModel m, const std::string& what)
    -> ButterflyMinorModel {
    if (auto check = validate_model(pattern, host, m); !check.valid) {
        throw PreconditionViolated(what + " produced an invalid model: " + *check.witness);
    }
    return m;
}

// Adds the path's vertices except those excluded to part, and its edges to the branch.
void absorb(Branch& b, VertexSet& part, const std::vector<VertexId>& path, const VertexSet& skip_vertices) {
    for (VertexId v : path) {
        if (!skip_vertices.contains(v)) {
            part.insert(v);
        }
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        b.edges.insert({path[i], path[i + 1]});
    }
}

auto grid_chain(std::size_t k) -> Extraction {
    const Digraph grid = gen_cylindrical_grid(k);
    auto v = [&](std::size_t i, std::size_t j) { return grid_vertex(k, i, j); };
    MinorTracker tracker(grid);
    const Digraph pattern = gen_cycle_chain(k + 1).graph;
    if (k == 1) {
        return {grid, pattern, singleton_model(pattern, grid, {{vid(0), v(1, 1)}, {vid(1), v(1, 2)}}), {}};
    }

    // Every row cycle, opened once in each row below the first, and the spokes
    // that join consecutive rows alternately in columns 2-3 and 4-5.
    std::vector<Edge> keep;
    std::set<Edge> protect{{v(1, 1), v(1, 2)}, {v(1, 2 * k), v(1, 1)}};
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = 1; j <= 2 * k; ++j) {
            Edge e{v(i, j), v(i, j % (2 * k) + 1)};
            const bool cut = (i % 2 == 0 && j == 2) || (i % 2 == 1 && i != 1 && j == 4);
            if (!cut) {
                keep.push_back(e);
            }
        }
    }
    for (std::size_t i = 1; i < k; ++i) {
        const std::vector<Edge> spokes = i % 2 == 1
                                             ? std::vector<Edge>{{v(i + 1, 2), v(i, 2)}, {v(i, 3), v(i + 1, 3)}}
                                             : std::vector<Edge>{{v(i + 1, 4), v(i, 4)}, {v(i, 5), v(i + 1, 5)}};
        for (const Edge& e : spokes) {
            keep.push_back(e);
            protect.insert(e);
        }
    }
    tracker.keep_edges(keep);

    bool progress = true;
    while (progress) {
        progress = false;
        for (const Edge& e : tracker.current().edges()) {
            if (protect.contains(e) || !is_butterfly_contractible(tracker.current(), e)) {
                continue;
            }
            tracker.contract(e);
            std::set<Edge> renamed;
            for (Edge p : protect) {
                renamed.insert({p.tail == e.head ? e.tail : p.tail, p.head == e.head ? e.tail : p.head});
            }
            protect = std::move(renamed);
            progress = true;
            break;
        }
    }

    // What is left is a path of 2-cycles; walk it from the smallest end.
    const Digraph& left = tracker.current();
    if (left.vertex_count() != k + 1) {
        throw PreconditionViolated("grid reduction left " + std::to_string(left.vertex_count()) + " vertices");
    }
    VertexId at{};
    bool found_end = false;
    for (VertexId x : left.vertices()) {
        if (left.out_degree(x) == 1) {
            at = x;
            found_end = true;
            break;
        }
    }
    if (!found_end) {
        throw PreconditionViolated("grid reduction left no chain end");
    }
    std::map<VertexId, VertexId> place;
    VertexId prev = at;
    for (std::size_t i = 0; i <= k; ++i) {
        place[vid(i)] = at;
        VertexId next = at;
        for (VertexId y : left.out(at)) {
            if (y != prev || i == 0) {
                next = y;
            }
        }
        prev = at;
        at = next;
    }
    ButterflyMinorModel m = tracker.lift(singleton_model(pattern, left, place));
    return {grid, pattern, checked(pattern, grid, std::move(m), "grid chain extraction"), tracker.script()};
}

auto grid_ladder(std::size_t k) -> Extraction {
    const std::size_t order = 2 * k;
    const std::size_t cols = 4 * k;
    const Digraph grid = gen_cylindrical_grid(order);
    const Digraph pattern = gen_ladder(k);
    auto v = [&](std::size_t i, std::size_t j) { return grid_vertex(order, i, j); };
    ButterflyMinorModel m;
    for (std::size_t t = 1; t <= k; ++t) {
        const std::size_t a = 2 * t - 1;
        const std::size_t b = 2 * t;
        // p_t: v^a_1 and row b up to column 4k-1.
        Branch bp{v(a, 1), {}, {}, {}};
        std::vector<VertexId> out_path{v(a, 1)};
        for (std::size_t j = 1; j < cols; ++j) {
            out_path.push_back(v(b, j));
        }
        absorb(bp, bp.out_part, out_path, {v(a, 1)});
        m.vertex_map[ladder_p(k, t)] = std::move(bp);
        // q_{k+1-t}: v^a_{4k} fed by v^b_{4k}.
        Branch bq{v(a, cols), {v(b, cols)}, {}, {{v(b, cols), v(a, cols)}}};
        m.vertex_map[ladder_q(k, k + 1 - t)] = std::move(bq);

        m.edge_map[{ladder_p(k, t), ladder_q(k, k + 1 - t)}] = {v(b, cols - 1), v(b, cols)};
        m.edge_map[{ladder_q(k, k + 1 - t), ladder_p(k, t)}] = {v(a, cols), v(a, 1)};
        if (t < k) {
            m.edge_map[{ladder_p(k, t), ladder_p(k, t + 1)}] = {v(b, 1), v(b + 1, 1)};
        }
        if (t >= 2) {
            m.edge_map[{ladder_q(k, k + 1 - t), ladder_q(k, k + 2 - t)}] = {v(a, cols), v(a - 1, cols)};
        }
    }
    return {grid, pattern, checked(pattern, grid, std::move(m), "grid ladder extraction"),
            {"explicit model: rows 2t-1 and 2t carry p_t and q_(k+1-t)"}};
}

// Vertices of the path strictly between a and b.
auto strictly_between(const Path& p, VertexId a, VertexId b) -> std::vector<VertexId> {
    auto i = *p.index_of(a);
    auto j = *p.index_of(b);
    return {p.vertices.begin() + static_cast<std::ptrdiff_t>(i) + 1, p.vertices.begin() + static_cast<std::ptrdiff_t>(j)};
}

} // namespace

auto extract_from_grid(std::size_t k, GridTarget target) -> Extraction {
    if (k < 1) {
        throw PreconditionViolated("extraction needs k >= 1");
    }
    return target == GridTarget::Chain ? grid_chain(k) : grid_ladder(k);
}

auto ladder_from_relaxed_ladder(const Digraph& host, const RelaxedLadder& h, std::size_t k) -> ButterflyMinorModel {
    if (k < 1) {
        throw PreconditionViolated("ladder order must be at least 1");
    }
    if (h.order() < 4 * k) {
        throw PreconditionViolated("relaxed ladder of order " + std::to_string(h.order()) + " is below 4k = " +
                                   std::to_string(4 * k));
    }
    if (auto check = validate_ladder(host, h); !check.valid) {
        throw PreconditionViolated("invalid relaxed ladder: " + *check.witness);
    }
    const Digraph pattern = gen_ladder(k);
    ButterflyMinorModel m;
    // Rung pair j (1-based) is X[j-1], Y[j-1]; block t uses Y_{4t-3} and X_{4t-1}.
    for (std::size_t t = 1; t <= k; ++t) {
        const Path& y = h.Y[4 * t - 4];
        const Path& x = h.X[4 * t - 2];
        const VertexId yh = y.head();
        const VertexId yt = y.tail();
        const VertexId xt = x.tail();
        const VertexId xh = x.head();

        Branch bp{yh, {}, {}, {}};
        absorb(bp, bp.out_part, h.P.between(yh, xt).vertices, {yh});
        absorb(bp, bp.in_part, {y.vertices.begin() + 1, y.vertices.end()}, {yh});
        if (t >= 2) {
            const VertexId prev_xt = h.X[4 * t - 6].tail();
            std::vector<VertexId> feed = strictly_between(h.P, prev_xt, yh);
            feed.push_back(yh);
            absorb(bp, bp.in_part, feed, {yh});
            m.edge_map[{ladder_p(k, t - 1), ladder_p(k, t)}] = {prev_xt, h.P.vertices[*h.P.index_of(prev_xt) + 1]};
        }
        m.vertex_map[ladder_p(k, t)] = std::move(bp);

        Branch bq{yt, {}, {}, {}};
        absorb(bq, bq.in_part, h.Q.between(xh, yt).vertices, {yt});
        absorb(bq, bq.in_part, {x.vertices.begin() + 1, x.vertices.end()}, {xh});
        if (t >= 2) {
            const VertexId next_xh = h.X[4 * t - 6].head();
            std::vector<VertexId> drain{yt};
            for (VertexId w : strictly_between(h.Q, yt, next_xh)) {
                drain.push_back(w);
            }
            absorb(bq, bq.out_part, drain, {yt});
            m.edge_map[{ladder_q(k, k + 1 - t), ladder_q(k, k + 2 - t)}] = {drain.back(), next_xh};
        }
        m.vertex_map[ladder_q(k, k + 1 - t)] = std::move(bq);

        m.edge_map[{ladder_p(k, t), ladder_q(k, k + 1 - t)}] = {x.vertices[0], x.vertices[1]};
        m.edge_map[{ladder_q(k, k + 1 - t), ladder_p(k, t)}] = {y.vertices[0], y.vertices[1]};
    }
    return checked(pattern, host, std::move(m), "ladder extraction");
}

auto cycle_chain_from_relaxed_chain(const Digraph& host, const RelaxedChain& h) -> ButterflyMinorModel {
    const std::size_t k = h.length();
    if (k < 1) {
        throw PreconditionViolated("relaxed chain of length 0 holds no cycle chain");
    }
    if (auto check = validate_chain(host, h); !check.valid) {
        throw PreconditionViolated("invalid relaxed chain: " + *check.witness);
    }
    const Digraph pattern = gen_cycle_chain(k).graph;
    ButterflyMinorModel m;
    std::map<VertexId, VertexId> owner;
    for (std::size_t j = 0; j < k; ++j) {
        const Path& r = h.R[j];
        Branch b{r.tail(), {}, {}, {}};
        absorb(b, b.out_part, r.vertices, {r.tail()});
        for (VertexId x : r.vertices) {
            owner[x] = vid(j);
        }
        m.vertex_map[vid(j)] = std::move(b);
    }
    // Pieces between consecutive R paths run from one branch into the root of the next.
    for (std::size_t i = 2; i <= k; ++i) {
        for (const Path* piece : {&h.P[i - 1], &h.Q[i - 1]}) {
            if (piece->length() == 0) {
                throw PreconditionViolated("relaxed chain has a piece of length 0");
            }
            const VertexId from = owner.at(piece->tail());
            const VertexId to = owner.at(piece->head());
            Branch& target = m.vertex_map.at(to);
            absorb(target, target.in_part, {piece->vertices.begin() + 1, piece->vertices.end()}, {piece->head()});
            m.edge_map[{from, to}] = {piece->vertices[0], piece->vertices[1]};
        }
    }
    return checked(pattern, host, std::move(m), "cycle chain extraction");
}

auto chain_or_ladder_from_mixed_chain(const Digraph& host, const MixedChain& h, std::size_t k) -> ChainOrLadder {
    if (k < 1) {
        throw PreconditionViolated("k must be at least 1");
    }
    if (auto check = validate_mixed_chain(host, h); !check.valid) {
        throw PreconditionViolated("invalid mixed chain: " + *check.witness);
    }
    const std::size_t need = 4 * k * k + k - 1;
    if (h.weight() < need) {
        throw PreconditionViolated("mixed chain weight " + std::to_string(h.weight()) + " is below " +
                                   std::to_string(need));
    }
    if (h.length() >= k) {
        const RelaxedChain c = boundary(host, h);
        ButterflyMinorModel full = cycle_chain_from_relaxed_chain(host, c);
        const Digraph big = gen_cycle_chain(c.length()).graph;
        VertexSet keep;
        for (std::size_t i = 0; i < k; ++i) {
            keep.insert(vid(i));
        }
        const Digraph pattern = gen_cycle_chain(k).graph;
        return {GridTarget::Chain, pattern, checked(pattern, host, restrict_model(full, big, keep), "chain restriction")};
    }
    for (const RelaxedLadder& l : h.H) {
        if (l.order() >= 4 * k) {
            return {GridTarget::Ladder, gen_ladder(k), ladder_from_relaxed_ladder(host, l, k)};
        }
    }
    throw PreconditionViolated("no ladder of order 4k although the weight bound holds");
}

namespace {

class TreeChainExtractor {
public:
    explicit TreeChainExtractor(const RelaxedTreeChain& rc) : rc_(rc) {}

    // Model of TC_j in the sub-chain of heap node n, whose subtree has depth 2j-1.
    auto model(std::size_t n, std::size_t j) const -> ButterflyMinorModel {
        const TreeChainNode& here = rc_.node(n);
        const TreeChainNode& left = rc_.node(2 * n);
        const TreeChainNode& right = rc_.node(2 * n + 1);
        ButterflyMinorModel m;
        if (j == 1) {
            const VertexId x = left.s;
            const VertexId y = right.t;
            m.vertex_map[vid(0)] = Branch{x, {}, {}, {}};
            if (here.a == 1) {
                m.vertex_map[vid(1)] = Branch{y, {}, {}, {}};
                m.edge_map[{vid(0), vid(1)}] = {x, y};
                m.edge_map[{vid(1), vid(0)}] = {y, x};
            } else {
                // t is the chain walked from y back to v, rooted at v.
                std::vector<VertexId> walk{y};
                walk.insert(walk.end(), here.chain.rbegin(), here.chain.rend());
                Branch bt{here.chain.front(), {}, {}, {}};
                absorb(bt, bt.in_part, walk, {here.chain.front()});
                m.vertex_map[vid(1)] = std::move(bt);
                m.edge_map[{vid(0), vid(1)}] = {x, here.chain.front()};
                m.edge_map[{vid(1), vid(0)}] = {here.chain.front(), x};
            }
            return m;
        }
        const ButterflyMinorModel m1 = model(4 * n, j - 1);
        const ButterflyMinorModel m2 = model(4 * n + 1, j - 1);
        const std::uint32_t half = 1U << (j - 1);
        auto shift = [&](VertexId v) { return VertexId{v.value + half}; };
        m = m1;
        for (const auto& [pv, b] : m2.vertex_map) {
            m.vertex_map[shift(pv)] = b;
        }
        for (const auto& [pe, he] : m2.edge_map) {
            m.edge_map[{shift(pe.tail), shift(pe.head)}] = he;
        }
        const VertexId t_new{2 * half - 1};
        const VertexId s_second{half};
        const VertexId t_first{half - 1};

        // P runs from the right child's t back to the left child's t.
        std::vector<VertexId> p = tpath(2 * n + 1);
        append(p, link(n));
        Branch& bt = m.vertex_map.at(t_new);
        absorb(bt, bt.in_part, p, {p.back()});

        // Q runs from the second grandchild's s to the first grandchild's t.
        std::vector<VertexId> q = link(2 * n);
        Branch& bs = m.vertex_map.at(s_second);
        std::vector<VertexId> q_body(q.begin(), q.end() - 1);
        absorb(bs, bs.out_part, q_body, {q.front()});

        m.edge_map[{vid(0), t_new}] = here.a == 1 ? Edge{left.s, right.t} : Edge{left.s, here.chain.front()};
        m.edge_map[{s_second, t_first}] = {q[q.size() - 2], q.back()};
        return m;
    }

private:
    // Path through the link of node n, from the right child's s to the left child's t.
    [[nodiscard]] auto link(std::size_t n) const -> std::vector<VertexId> {
        const TreeChainNode& here = rc_.node(n);
        std::vector<VertexId> out{rc_.node(2 * n + 1).s};
        out.insert(out.end(), here.chain.rbegin(), here.chain.rend());
        out.push_back(rc_.node(2 * n).t);
        return out;
    }

    // Path from t to s inside the sub-chain of node n.
    [[nodiscard]] auto tpath(std::size_t n) const -> std::vector<VertexId> {
        if (2 * n > rc_.trace.size()) {
            return {rc_.node(n).s};
        }
        std::vector<VertexId> out = tpath(2 * n + 1);
        append(out, link(n));
        append(out, tpath(2 * n));
        return out;
    }

    static void append(std::vector<VertexId>& a, const std::vector<VertexId>& b) {
        a.insert(a.end(), b.begin() + 1, b.end());
    }

    const RelaxedTreeChain& rc_;
};

} // namespace

auto tc_from_relaxed_tree_chain(const TreeChainRecipe& recipe, std::size_t k) -> ButterflyMinorModel {
    if (k < 1 || recipe.depth != 2 * k - 1) {
        throw PreconditionViolated("a tree chain of order k needs a recipe of depth 2k-1");
    }
    const RelaxedTreeChain rc = gen_relaxed_tree_chain(recipe);
    ButterflyMinorModel m = TreeChainExtractor(rc).model(1, k);
    return checked(gen_tree_chain(k).graph, rc.chain.graph, std::move(m), "tree chain extraction");
}

} // namespace dgt
