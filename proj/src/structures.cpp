#include "dgt/structures.hpp"

#include <algorithm>

namespace dgt {

namespace {

struct Failure {
    std::string what;
};

auto ok(std::size_t measure) -> StructureCheck { return {true, measure, std::nullopt}; }
auto bad(std::string why) -> StructureCheck { return {false, 0, std::move(why)}; }

auto idx(std::size_t i) -> std::string { return std::to_string(i); }

void require(bool cond, const std::string& why) {
    if (!cond) {
        throw Failure{why};
    }
}

void require_path(const Digraph& host, const Path& path, VertexId from, VertexId to, const std::string& name) {
    require(!path.empty(), name + " is empty");
    require(is_path_in(host, path), name + " is not a path of the host");
    require(path.tail() == from && path.head() == to, name + " has the wrong endpoints");
}

auto internally_disjoint(const Path& a, const Path& b) -> bool {
    for (VertexId v : a.internal()) {
        if (b.contains(v)) {
            return false;
        }
    }
    for (VertexId v : b.internal()) {
        if (a.contains(v)) {
            return false;
        }
    }
    return true;
}

auto meet(const VertexSet& a, const VertexSet& b) -> VertexSet {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

// Index range of s inside p when s is a contiguous piece of p.
auto locate(const Path& p, const Path& s) -> std::optional<std::pair<std::size_t, std::size_t>> {
    if (s.empty()) {
        return std::nullopt;
    }
    auto start = p.index_of(s.tail());
    if (!start || *start + s.size() > p.size()) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (p.vertices[*start + i] != s.vertices[i]) {
            return std::nullopt;
        }
    }
    return std::make_pair(*start, *start + s.length());
}

void require_disjoint_endpoint_pairs(const std::vector<VertexId>& pj, const std::vector<VertexId>& qj) {
    for (std::size_t i = 0; i < pj.size(); ++i) {
        for (std::size_t j = i + 1; j < pj.size(); ++j) {
            VertexSet a{pj[i], qj[i]};
            VertexSet b{pj[j], qj[j]};
            require(meet(a, b).empty(), "junctions " + idx(i) + " and " + idx(j) + " overlap");
        }
    }
}

void require_ends_apart(const Endpoints& e) {
    require(meet({e.p, e.q}, {e.p2, e.q2}).empty(), "left and right endpoints overlap");
}

void check_ladder(const Digraph& host, const RelaxedLadder& h) {
    const auto& e = h.ends;
    require_ends_apart(e);
    require_path(host, h.P, e.p, e.p2, "P");
    require_path(host, h.Q, e.q2, e.q, "Q");
    require(h.P.length() >= 1 && h.Q.length() >= 1, "boundary paths need length at least 1");
    require(internally_disjoint(h.P, h.Q), "P and Q are not internally disjoint");
    const std::size_t k = h.X.size();
    require(h.Y.size() == k && h.segs_p.size() == k && h.segs_q.size() == k, "rung lists differ in size");

    auto check_segments = [&](const Path& whole, const std::vector<Path>& segs, const std::string& name) {
        std::size_t last_end = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            auto at = locate(whole, segs[i]);
            require(at.has_value(), name + "_" + idx(i + 1) + " is not a subpath of " + name);
            require(segs[i].length() >= 1, name + "_" + idx(i + 1) + " has length 0");
            require(i == 0 || at->first >= last_end, name + "_" + idx(i + 1) + " overlaps or is out of order");
            last_end = at->second;
        }
    };
    check_segments(h.P, h.segs_p, "P");
    check_segments(h.Q, h.segs_q, "Q");

    const VertexSet pv = h.P.vertex_set();
    const VertexSet qv = h.Q.vertex_set();
    std::vector<VertexSet> interiors;
    for (std::size_t i = 0; i < k; ++i) {
        const Path& x = h.X[i];
        const Path& y = h.Y[i];
        const std::string xi = "X_" + idx(i + 1);
        const std::string yi = "Y_" + idx(i + 1);
        require(!x.empty() && is_path_in(host, x), xi + " is not a path of the host");
        require(!y.empty() && is_path_in(host, y), yi + " is not a path of the host");
        require(meet(x.vertex_set(), pv) == VertexSet{x.tail()}, xi + " is not a (P,Q)-path");
        require(meet(x.vertex_set(), qv) == VertexSet{x.head()}, xi + " is not a (P,Q)-path");
        require(meet(y.vertex_set(), qv) == VertexSet{y.tail()}, yi + " is not a (Q,P)-path");
        require(meet(y.vertex_set(), pv) == VertexSet{y.head()}, yi + " is not a (Q,P)-path");
        VertexSet allowed = h.segs_p[i].vertex_set();
        allowed.merge(h.segs_q[k - 1 - i].vertex_set());
        for (VertexId v : {x.tail(), x.head(), y.tail(), y.head()}) {
            require(allowed.contains(v), "rung " + idx(i + 1) + " has an endpoint outside P_" + idx(i + 1) +
                                             " and Q_" + idx(k - i));
        }
        require(is_laced(x, y), xi + " and " + yi + " are not laced");
        VertexSet inner;
        for (VertexId v : x.vertices) {
            if (!pv.contains(v) && !qv.contains(v)) {
                inner.insert(v);
            }
        }
        for (VertexId v : y.vertices) {
            if (!pv.contains(v) && !qv.contains(v)) {
                inner.insert(v);
            }
        }
        for (std::size_t j = 0; j < interiors.size(); ++j) {
            require(meet(inner, interiors[j]).empty(),
                    "rungs " + idx(j + 1) + " and " + idx(i + 1) + " share a vertex outside P and Q");
        }
        interiors.push_back(std::move(inner));
    }
    if (k >= 1) {
        require(!h.X.front().contains(e.p), "p ∉ V(X_1) violated");
        require(!h.Y.front().contains(e.q), "q ∉ V(Y_1) violated");
        require(!h.X.back().contains(e.p2), "p' ∉ V(X_" + idx(k) + ") violated");
        require(!h.Y.back().contains(e.q2), "q' ∉ V(Y_" + idx(k) + ") violated");
    }
}

// Orientation of the i-th piece (1-based) and of R_i for the chain definitions.
auto piece_p_from(std::size_t i, const std::vector<VertexId>& pj) -> std::pair<VertexId, VertexId> {
    return i % 2 == 1 ? std::make_pair(pj[i - 1], pj[i]) : std::make_pair(pj[i], pj[i - 1]);
}
auto piece_q_from(std::size_t i, const std::vector<VertexId>& qj) -> std::pair<VertexId, VertexId> {
    return i % 2 == 1 ? std::make_pair(qj[i], qj[i - 1]) : std::make_pair(qj[i - 1], qj[i]);
}
auto rung_from(std::size_t i, const std::vector<VertexId>& pj, const std::vector<VertexId>& qj)
    -> std::pair<VertexId, VertexId> {
    return i % 2 == 1 ? std::make_pair(pj[i], qj[i]) : std::make_pair(qj[i], pj[i]);
}

void require_outer_ends(const Endpoints& e, const std::vector<VertexId>& pj, const std::vector<VertexId>& qj,
                        std::size_t k) {
    require(e.p == pj[0] && e.q == qj[0], "left endpoints differ from (p_0, q_0)");
    if (k % 2 == 1) {
        require(e.p2 == pj[k + 1] && e.q2 == qj[k + 1], "right endpoints differ from (p_k+1, q_k+1)");
    } else {
        require(e.p2 == qj[k + 1] && e.q2 == pj[k + 1], "right endpoints differ from (q_k+1, p_k+1)");
    }
}

void check_chain(const Digraph& host, const RelaxedChain& h) {
    require_ends_apart(h.ends);
    const std::size_t k = h.R.size();
    require(h.P.size() == k + 1 && h.Q.size() == k + 1, "piece lists must have length k+1");
    require(h.pj.size() == k + 2 && h.qj.size() == k + 2, "junction lists must have length k+2");
    require_disjoint_endpoint_pairs(h.pj, h.qj);
    std::vector<std::pair<const Path*, std::string>> all;
    for (std::size_t i = 1; i <= k + 1; ++i) {
        auto [pa, pb] = piece_p_from(i, h.pj);
        auto [qa, qb] = piece_q_from(i, h.qj);
        require_path(host, h.P[i - 1], pa, pb, "P_" + idx(i));
        require_path(host, h.Q[i - 1], qa, qb, "Q_" + idx(i));
        all.emplace_back(&h.P[i - 1], "P_" + idx(i));
        all.emplace_back(&h.Q[i - 1], "Q_" + idx(i));
    }
    for (std::size_t i = 1; i <= k; ++i) {
        auto [ra, rb] = rung_from(i, h.pj, h.qj);
        require_path(host, h.R[i - 1], ra, rb, "R_" + idx(i));
        all.emplace_back(&h.R[i - 1], "R_" + idx(i));
    }
    for (std::size_t a = 0; a < all.size(); ++a) {
        for (std::size_t b = a + 1; b < all.size(); ++b) {
            require(internally_disjoint(*all[a].first, *all[b].first),
                    all[a].second + " and " + all[b].second + " are not internally disjoint");
        }
    }
    require_outer_ends(h.ends, h.pj, h.qj, k);
}

auto ladder_vertices(const RelaxedLadder& h) -> VertexSet {
    VertexSet s = h.P.vertex_set();
    s.merge(h.Q.vertex_set());
    for (const Path& x : h.X) {
        s.merge(x.vertex_set());
    }
    for (const Path& y : h.Y) {
        s.merge(y.vertex_set());
    }
    return s;
}

void check_mixed(const Digraph& host, const MixedChain& h) {
    require_ends_apart(h.ends);
    const std::size_t k = h.R.size();
    require(h.H.size() == k + 1, "ladder list must have length k+1");
    require(h.pj.size() == k + 2 && h.qj.size() == k + 2, "junction lists must have length k+2");
    require_disjoint_endpoint_pairs(h.pj, h.qj);
    std::vector<VertexSet> hv;
    for (std::size_t i = 1; i <= k + 1; ++i) {
        const RelaxedLadder& l = h.H[i - 1];
        Endpoints want = i % 2 == 1 ? Endpoints{h.pj[i - 1], h.qj[i - 1], h.pj[i], h.qj[i]}
                                    : Endpoints{h.pj[i], h.qj[i], h.pj[i - 1], h.qj[i - 1]};
        require(l.ends == want, "H_" + idx(i) + " has the wrong endpoints");
        try {
            check_ladder(host, l);
        } catch (const Failure& f) {
            throw Failure{"H_" + idx(i) + ": " + f.what};
        }
        hv.push_back(ladder_vertices(l));
    }
    for (std::size_t i = 1; i <= k; ++i) {
        auto [ra, rb] = rung_from(i, h.pj, h.qj);
        require_path(host, h.R[i - 1], ra, rb, "R_" + idx(i));
    }
    for (std::size_t i = 1; i <= k + 1; ++i) {
        for (std::size_t j = i + 1; j <= k + 1; ++j) {
            VertexSet common = meet(hv[i - 1], hv[j - 1]);
            if (j - i >= 2) {
                require(common.empty(), "H_" + idx(i) + " and H_" + idx(j) + " intersect");
            } else {
                require(common == VertexSet{h.pj[i], h.qj[i]},
                        "H_" + idx(i) + " and H_" + idx(j) + " must meet exactly in {p_i, q_i}");
            }
        }
        for (std::size_t j = 1; j <= k; ++j) {
            VertexSet common = meet(hv[i - 1], h.R[j - 1].vertex_set());
            VertexSet want;
            if (i == j) {
                want = {h.pj[i], h.qj[i]};
            } else if (i == j + 1) {
                want = {h.pj[i - 1], h.qj[i - 1]};
            }
            require(common == want, "H_" + idx(i) + " and R_" + idx(j) + " meet wrongly");
        }
    }
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            require(internally_disjoint(h.R[a], h.R[b]), "R_" + idx(a + 1) + " and R_" + idx(b + 1) +
                                                             " are not internally disjoint");
        }
    }
    require_outer_ends(h.ends, h.pj, h.qj, k);
}

// Weakly connected components of (A ∩ B) - drop, as index ranges along A.
auto shared_components(const Path& a, const Path& b, const VertexSet& drop)
    -> std::vector<std::pair<std::size_t, std::size_t>> {
    std::vector<std::pair<std::size_t, std::size_t>> comps;
    for (std::size_t i = 0; i < a.size(); ++i) {
        VertexId v = a.vertices[i];
        auto at = b.index_of(v);
        if (!at || drop.contains(v)) {
            continue;
        }
        bool extends = false;
        if (!comps.empty() && comps.back().second + 1 == i) {
            auto prev = b.index_of(a.vertices[i - 1]);
            extends = prev && *prev + 1 == *at;
        }
        if (extends) {
            comps.back().second = i;
        } else {
            comps.emplace_back(i, i);
        }
    }
    return comps;
}

void check_extension(const Digraph& host, const MixedExtension& w, std::size_t& gain) {
    const auto& e = w.ends;
    require(meet({e.p, e.q}, {w.x(), w.y()}).empty(), "left and right endpoints overlap");
    require_path(host, w.A, e.p, w.x(), "A");
    require_path(host, w.B, w.y(), e.q, "B");
    if (!w.C && !w.D) {
        require(is_laced(w.A, w.B), "A and B are not laced");
        VertexSet common = meet(w.A.vertex_set(), w.B.vertex_set());
        common.erase(e.p);
        common.erase(e.q);
        require(!common.empty(), "A and B do not intersect away from p and q");
        gain = shared_components(w.A, w.B, {e.p, e.q, w.x(), w.y()}).size();
        return;
    }
    require(w.C && w.D, "four-path extension needs both C and D");
    VertexSet a_rest = w.A.vertex_set();
    a_rest.erase(e.p);
    VertexSet b_rest = w.B.vertex_set();
    b_rest.erase(e.q);
    require(meet(a_rest, b_rest).empty(), "A - p and B - q intersect");
    const Path& c = *w.C;
    const Path& d = *w.D;
    require(!c.empty() && is_path_in(host, c), "C is not a path of the host");
    require(!d.empty() && is_path_in(host, d), "D is not a path of the host");
    const VertexSet av = w.A.vertex_set();
    const VertexSet bv = w.B.vertex_set();
    require(meet(c.vertex_set(), av) == VertexSet{c.tail()}, "C is not an (A,B)-path");
    require(meet(c.vertex_set(), bv) == VertexSet{c.head()}, "C is not an (A,B)-path");
    require(meet(d.vertex_set(), bv) == VertexSet{d.tail()}, "D is not a (B,A)-path");
    require(meet(d.vertex_set(), av) == VertexSet{d.head()}, "D is not a (B,A)-path");
    for (VertexId v : {e.p, e.q}) {
        require(!c.contains(v) && !d.contains(v), "C and D must avoid p and q");
    }
    require(is_laced(c, d), "C and D are not laced");
    gain = 1;
}

template <typename F>
auto run_check(F&& f) -> StructureCheck {
    try {
        return ok(f());
    } catch (const Failure& failure) {
        return bad(failure.what);
    }
}

void add_path(Digraph& g, const Digraph& host, const Path& p) {
    for (VertexId v : p.vertices) {
        g.add_vertex(v, host.has_vertex(v) ? host.label(v) : std::string{});
    }
    for (Edge e : p.edges()) {
        g.add_edge(e);
    }
}

auto map_path(const Path& p, VertexId from, VertexId to) -> Path {
    Path out;
    for (VertexId v : p.vertices) {
        VertexId x = v == from ? to : v;
        if (out.empty() || out.head() != x) {
            out.vertices.push_back(x);
        }
    }
    return out;
}

auto map_vertex(VertexId v, VertexId from, VertexId to) -> VertexId { return v == from ? to : v; }

auto map_ladder(const RelaxedLadder& h, VertexId from, VertexId to) -> RelaxedLadder {
    RelaxedLadder out;
    out.ends = {map_vertex(h.ends.p, from, to), map_vertex(h.ends.q, from, to), map_vertex(h.ends.p2, from, to),
                map_vertex(h.ends.q2, from, to)};
    out.P = map_path(h.P, from, to);
    out.Q = map_path(h.Q, from, to);
    for (const auto& s : h.segs_p) {
        out.segs_p.push_back(map_path(s, from, to));
    }
    for (const auto& s : h.segs_q) {
        out.segs_q.push_back(map_path(s, from, to));
    }
    for (const auto& s : h.X) {
        out.X.push_back(map_path(s, from, to));
    }
    for (const auto& s : h.Y) {
        out.Y.push_back(map_path(s, from, to));
    }
    return out;
}

auto order_zero_ladder(Endpoints ends, Path P, Path Q) -> RelaxedLadder {
    RelaxedLadder l;
    l.ends = ends;
    l.P = std::move(P);
    l.Q = std::move(Q);
    return l;
}

// Ends of piece i (1-based) of a chain with the given junctions.
auto piece_ends(std::size_t i, const std::vector<VertexId>& pj, const std::vector<VertexId>& qj) -> Endpoints {
    return i % 2 == 1 ? Endpoints{pj[i - 1], qj[i - 1], pj[i], qj[i]} : Endpoints{pj[i], qj[i], pj[i - 1], qj[i - 1]};
}

auto checked(const Digraph& host, MixedChain m, const std::string& what) -> MixedChain {
    auto check = validate_mixed_chain(host, m);
    if (!check.valid) {
        throw PreconditionViolated(what + ": " + *check.witness);
    }
    return m;
}

} // namespace

auto MixedChain::weight() const -> std::size_t {
    std::size_t w = length();
    for (const auto& l : H) {
        w += l.order();
    }
    return w;
}

auto validate_ladder(const Digraph& host, const RelaxedLadder& h) -> StructureCheck {
    return run_check([&] {
        check_ladder(host, h);
        return h.order();
    });
}

auto validate_chain(const Digraph& host, const RelaxedChain& h) -> StructureCheck {
    return run_check([&] {
        check_chain(host, h);
        return h.length();
    });
}

auto validate_mixed_chain(const Digraph& host, const MixedChain& h) -> StructureCheck {
    return run_check([&] {
        check_mixed(host, h);
        return h.weight();
    });
}

auto validate_extension(const Digraph& host, const MixedExtension& w) -> StructureCheck {
    return run_check([&] {
        std::size_t gain = 0;
        check_extension(host, w, gain);
        return gain;
    });
}

auto validate_structure(const StructureDescriptor& desc) -> StructureCheck {
    if (!desc.host) {
        return bad("descriptor has no host");
    }
    return std::visit(
        [&](const auto& payload) -> StructureCheck {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, RelaxedLadder>) {
                return validate_ladder(*desc.host, payload);
            } else if constexpr (std::is_same_v<T, RelaxedChain>) {
                return validate_chain(*desc.host, payload);
            } else if constexpr (std::is_same_v<T, MixedChain>) {
                return validate_mixed_chain(*desc.host, payload);
            } else {
                return validate_extension(*desc.host, payload);
            }
        },
        desc.payload);
}

auto structure_graph(const Digraph& host, const RelaxedLadder& h) -> Digraph {
    Digraph g;
    add_path(g, host, h.P);
    add_path(g, host, h.Q);
    for (const auto& x : h.X) {
        add_path(g, host, x);
    }
    for (const auto& y : h.Y) {
        add_path(g, host, y);
    }
    return g;
}

auto structure_graph(const Digraph& host, const RelaxedChain& h) -> Digraph {
    Digraph g;
    for (const auto& group : {&h.P, &h.Q, &h.R}) {
        for (const auto& p : *group) {
            add_path(g, host, p);
        }
    }
    return g;
}

auto structure_graph(const Digraph& host, const MixedChain& h) -> Digraph {
    std::vector<Digraph> parts;
    for (const auto& l : h.H) {
        parts.push_back(structure_graph(host, l));
    }
    Digraph rs;
    for (const auto& r : h.R) {
        add_path(rs, host, r);
    }
    parts.push_back(std::move(rs));
    std::vector<const Digraph*> ptrs;
    for (const auto& p : parts) {
        ptrs.push_back(&p);
    }
    return graph_union(ptrs);
}

auto structure_graph(const Digraph& host, const MixedExtension& w) -> Digraph {
    Digraph g;
    add_path(g, host, w.A);
    add_path(g, host, w.B);
    if (w.C) {
        add_path(g, host, *w.C);
    }
    if (w.D) {
        add_path(g, host, *w.D);
    }
    return g;
}

auto boundary(const Digraph& host, const MixedChain& h) -> RelaxedChain {
    auto check = validate_mixed_chain(host, h);
    if (!check.valid) {
        throw PreconditionViolated("mixed chain is invalid: " + *check.witness);
    }
    RelaxedChain c;
    c.ends = h.ends;
    c.R = h.R;
    c.pj = h.pj;
    c.qj = h.qj;
    for (const auto& l : h.H) {
        c.P.push_back(l.P);
        c.Q.push_back(l.Q);
    }
    return c;
}

auto as_mixed_chain(const RelaxedChain& c) -> MixedChain {
    MixedChain m;
    m.ends = c.ends;
    m.R = c.R;
    m.pj = c.pj;
    m.qj = c.qj;
    for (std::size_t i = 1; i <= c.P.size(); ++i) {
        m.H.push_back(order_zero_ladder(piece_ends(i, c.pj, c.qj), c.P[i - 1], c.Q[i - 1]));
    }
    return m;
}

auto relaxed_chain_from_laced(const Digraph& host, const Path& P, const Path& Q) -> RelaxedChain {
    if (P.empty() || Q.empty() || !is_path_in(host, P) || !is_path_in(host, Q)) {
        throw PreconditionViolated("expected two paths of the host");
    }
    const VertexId v1 = P.tail();
    const VertexId w2 = P.head();
    const VertexId v2 = Q.tail();
    const VertexId w1 = Q.head();
    if (!meet({v1, w1}, {v2, w2}).empty()) {
        throw PreconditionViolated("endpoint pairs {v1,w1} and {v2,w2} intersect");
    }
    if (!is_laced(P, Q)) {
        throw PreconditionViolated("paths are not laced");
    }
    auto comps = shared_components(P, Q, {v1, v2, w1, w2});
    const std::size_t k = comps.size();
    RelaxedChain c;
    c.ends = {v1, w1, v2, w2};
    if (k == 0) {
        c.P = {P};
        c.Q = {Q};
        c.pj = {v1, w2};
        c.qj = {w1, v2};
    } else {
        c.pj.assign(k + 2, v1);
        c.qj.assign(k + 2, w1);
        auto first = [&](std::size_t j) { return P.vertices[comps[j - 1].first]; };
        auto last = [&](std::size_t j) { return P.vertices[comps[j - 1].second]; };
        for (std::size_t j = 1; j <= k; ++j) {
            if (j % 2 == 1) {
                c.pj[j] = first(j);
                c.qj[j] = last(j);
            } else {
                c.qj[j] = first(j);
                c.pj[j] = last(j);
            }
            c.R.push_back(P.slice(comps[j - 1].first, comps[j - 1].second));
        }
        c.P.push_back(P.between(v1, first(1)));
        c.Q.push_back(Q.between(last(1), w1));
        for (std::size_t i = 2; i <= k; ++i) {
            Path along_p = P.between(last(i - 1), first(i));
            Path along_q = Q.between(last(i), first(i - 1));
            if (i % 2 == 1) {
                c.P.push_back(along_p);
                c.Q.push_back(along_q);
            } else {
                c.P.push_back(along_q);
                c.Q.push_back(along_p);
            }
        }
        if (k % 2 == 0) {
            c.P.push_back(P.between(last(k), w2));
            c.pj[k + 1] = w2;
            c.Q.push_back(Q.between(v2, first(k)));
            c.qj[k + 1] = v2;
        } else {
            c.P.push_back(Q.between(v2, first(k)));
            c.pj[k + 1] = v2;
            c.Q.push_back(P.between(last(k), w2));
            c.qj[k + 1] = w2;
        }
    }
    auto check = validate_chain(host, c);
    if (!check.valid) {
        throw PreconditionViolated("laced paths do not form a relaxed chain: " + *check.witness);
    }
    return c;
}

auto spanning_paths(const RelaxedChain& c) -> std::pair<Path, Path> {
    const std::size_t k = c.length();
    Path first;
    for (std::size_t i = 1; i <= k + 1; ++i) {
        first = concat(first, i % 2 == 1 ? c.P[i - 1] : c.Q[i - 1]);
        if (i <= k) {
            first = concat(first, c.R[i - 1]);
        }
    }
    Path second;
    for (std::size_t i = k + 1; i >= 1; --i) {
        second = concat(second, i % 2 == 1 ? c.Q[i - 1] : c.P[i - 1]);
        if (i >= 2) {
            second = concat(second, c.R[i - 2]);
        }
    }
    return {first, second};
}

auto flip_ladder(const RelaxedLadder& h) -> RelaxedLadder {
    RelaxedLadder f;
    f.ends = {h.ends.q2, h.ends.p2, h.ends.q, h.ends.p};
    f.P = h.Q;
    f.Q = h.P;
    f.segs_p = h.segs_q;
    f.segs_q = h.segs_p;
    const std::size_t k = h.order();
    for (std::size_t i = 0; i < k; ++i) {
        f.X.push_back(h.Y[k - 1 - i]);
        f.Y.push_back(h.X[k - 1 - i]);
    }
    return f;
}

auto extend_mixed_chain(const Digraph& host, const MixedExtension& w, const MixedChain& h) -> MixedChain {
    if (auto c = validate_mixed_chain(host, h); !c.valid) {
        throw PreconditionViolated("mixed chain is invalid: " + *c.witness);
    }
    if (auto c = validate_extension(host, w); !c.valid) {
        throw PreconditionViolated("mixed extension is invalid: " + *c.witness);
    }
    const VertexId p1 = h.ends.p;
    const VertexId q1 = h.ends.q;
    if (w.x() != p1 || w.y() != q1) {
        throw PreconditionViolated("extension must end in (q', p') of the mixed chain");
    }
    if (meet(structure_graph(host, w).vertex_set(), structure_graph(host, h).vertex_set()) != VertexSet{p1, q1}) {
        throw PreconditionViolated("extension and mixed chain must share exactly {p', q'}");
    }
    if (!meet({w.ends.p, w.ends.q}, {p1, q1, h.ends.p2, h.ends.q2}).empty()) {
        throw PreconditionViolated("new left endpoints collide with the chain endpoints");
    }

    if (w.C) {
        MixedChain out = h;
        RelaxedLadder& l = out.H.front();
        l.P = concat(w.A, l.P);
        l.Q = concat(l.Q, w.B);
        l.segs_p.insert(l.segs_p.begin(), w.A);
        l.segs_q.push_back(w.B);
        l.X.insert(l.X.begin(), *w.C);
        l.Y.insert(l.Y.begin(), *w.D);
        l.ends.p = w.ends.p;
        l.ends.q = w.ends.q;
        out.ends.p = w.ends.p;
        out.ends.q = w.ends.q;
        out.pj.front() = w.ends.p;
        out.qj.front() = w.ends.q;
        return checked(host, std::move(out), "four-path extension failed");
    }

    const RelaxedChain lead = relaxed_chain_from_laced(host, w.A, w.B);
    const std::size_t m = lead.length();
    const std::size_t x = h.length();
    MixedChain out;
    out.ends = {w.ends.p, w.ends.q, h.ends.p2, h.ends.q2};
    const bool closed = p1 == q1;
    const std::size_t shift = closed ? m + 1 : m;
    const bool flip = shift % 2 == 1;
    const std::size_t total = shift + x;
    out.pj.resize(total + 2);
    out.qj.resize(total + 2);
    for (std::size_t i = 0; i <= (closed ? m + 1 : m); ++i) {
        out.pj[i] = lead.pj[i];
        out.qj[i] = lead.qj[i];
    }
    for (std::size_t j = 1; j <= x + 1; ++j) {
        out.pj[shift + j] = flip ? h.qj[j] : h.pj[j];
        out.qj[shift + j] = flip ? h.pj[j] : h.qj[j];
    }
    for (std::size_t i = 1; i <= m; ++i) {
        out.H.push_back(order_zero_ladder(piece_ends(i, out.pj, out.qj), lead.P[i - 1], lead.Q[i - 1]));
    }
    out.R = lead.R;
    std::vector<RelaxedLadder> tail;
    for (const auto& l : h.H) {
        tail.push_back(flip ? flip_ladder(l) : l);
    }
    if (closed) {
        out.H.push_back(order_zero_ladder(piece_ends(m + 1, out.pj, out.qj), lead.P[m], lead.Q[m]));
        out.R.push_back(Path{p1});
    } else {
        // The last piece of the lead chain and the first ladder meet in p' and q'.
        RelaxedLadder& first = tail.front();
        if (m % 2 == 0) {
            first.P = concat(lead.P[m], first.P);
            first.Q = concat(first.Q, lead.Q[m]);
            first.ends.p = out.pj[m];
            first.ends.q = out.qj[m];
        } else {
            first.P = concat(first.P, lead.P[m]);
            first.Q = concat(lead.Q[m], first.Q);
            first.ends.p2 = out.pj[m];
            first.ends.q2 = out.qj[m];
        }
    }
    for (auto& l : tail) {
        out.H.push_back(std::move(l));
    }
    for (const auto& r : h.R) {
        out.R.push_back(r);
    }
    return checked(host, std::move(out), "two-path extension failed");
}

auto contract_arbor_edge(const Digraph& host, const MixedChain& h, Edge e) -> ContractedMixedChain {
    if (auto c = validate_mixed_chain(host, h); !c.valid) {
        throw PreconditionViolated("mixed chain is invalid: " + *c.witness);
    }
    Digraph g = structure_graph(host, h);
    bool allowed = false;
    if (h.ends.p != h.ends.q) {
        allowed = allowed || arborescence(g, h.ends.p, Direction::Out).has_edge(e) ||
                  arborescence(g, h.ends.q, Direction::In).has_edge(e);
    }
    if (h.ends.p2 != h.ends.q2) {
        allowed = allowed || arborescence(g, h.ends.p2, Direction::Out).has_edge(e) ||
                  arborescence(g, h.ends.q2, Direction::In).has_edge(e);
    }
    if (!allowed) {
        throw PreconditionViolated("edge is not in an arborescence at an open end of the mixed chain");
    }
    const VertexId u = e.tail;
    const VertexId v = e.head;
    ContractedMixedChain out;
    out.host = butterfly_contract(g, e);
    MixedChain& m = out.chain;
    m.ends = {map_vertex(h.ends.p, v, u), map_vertex(h.ends.q, v, u), map_vertex(h.ends.p2, v, u),
              map_vertex(h.ends.q2, v, u)};
    for (const auto& l : h.H) {
        m.H.push_back(map_ladder(l, v, u));
    }
    for (const auto& r : h.R) {
        m.R.push_back(map_path(r, v, u));
    }
    for (VertexId x : h.pj) {
        m.pj.push_back(map_vertex(x, v, u));
    }
    for (VertexId x : h.qj) {
        m.qj.push_back(map_vertex(x, v, u));
    }
    auto check = validate_mixed_chain(out.host, m);
    if (!check.valid || check.measure != h.weight()) {
        throw PreconditionViolated("contracted structure is not a mixed chain of equal weight: " +
                                   check.witness.value_or("weight changed"));
    }
    return out;
}

auto ladder_extensions(const RelaxedLadder& h) -> LadderExtensions {
    LadderExtensions out;
    out.inext_p = out.outext_p = h.P.vertex_set();
    out.inext_q = out.outext_q = h.Q.vertex_set();
    for (std::size_t j = 0; j < h.order(); ++j) {
        const Path& x = h.X[j];
        const Path& y = h.Y[j];
        VertexSet ends{x.tail(), x.head(), y.tail(), y.head()};
        std::optional<std::size_t> first_x;
        std::optional<std::size_t> last_x;
        std::optional<std::size_t> first_y;
        std::optional<std::size_t> last_y;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (y.contains(x.vertices[i]) && !ends.contains(x.vertices[i])) {
                first_x = first_x.value_or(i);
                last_x = i;
            }
        }
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (x.contains(y.vertices[i]) && !ends.contains(y.vertices[i])) {
                first_y = first_y.value_or(i);
                last_y = i;
            }
        }
        auto add = [](VertexSet& s, const Path& p, std::size_t from, std::size_t to) {
            for (std::size_t i = from; i < to; ++i) {
                s.insert(p.vertices[i]);
            }
        };
        if (!first_x) {
            add(out.outext_p, x, 0, x.size() - 1);
            add(out.inext_p, y, 1, y.size());
            add(out.inext_q, x, 1, x.size());
            add(out.outext_q, y, 0, y.size() - 1);
        } else {
            add(out.outext_p, x, 0, *first_x);
            add(out.inext_p, y, *last_y + 1, y.size());
            add(out.inext_q, x, *last_x + 1, x.size());
            add(out.outext_q, y, 0, *first_y);
        }
    }
    return out;
}

namespace {

struct FixtureBuilder {
    Digraph& g;
    std::mt19937_64& rng;

    auto coin(unsigned n = 2) -> bool { return rng() % n == 0; }
    auto fresh() -> VertexId { return g.add_vertex(); }
    auto fresh_run(std::size_t lo, std::size_t hi) -> std::vector<VertexId> {
        std::vector<VertexId> out;
        std::size_t n = lo + rng() % (hi - lo + 1);
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(fresh());
        }
        return out;
    }
    auto pick(const Path& p) -> VertexId { return p.vertices[rng() % p.size()]; }

    void lay(const Path& p) {
        for (Edge e : p.edges()) {
            g.add_edge(e);
        }
    }

    // A boundary path from a to b with k fresh segments on it.
    auto boundary_path(VertexId a, VertexId b, std::size_t k, std::vector<Path>& segs) -> Path {
        Path p{a};
        for (std::size_t i = 0; i < k; ++i) {
            for (VertexId v : fresh_run(0, 1)) {
                p.vertices.push_back(v);
            }
            Path seg(fresh_run(2, 3));
            p.vertices.insert(p.vertices.end(), seg.vertices.begin(), seg.vertices.end());
            segs.push_back(std::move(seg));
        }
        for (VertexId v : fresh_run(0, 1)) {
            p.vertices.push_back(v);
        }
        p.vertices.push_back(b);
        lay(p);
        return p;
    }

    // Laced rung pair sharing 0, 1 or 2 fresh runs.
    auto rung(VertexId xt, VertexId xh, VertexId yt, VertexId yh) -> std::pair<Path, Path> {
        std::vector<std::vector<VertexId>> shared;
        for (std::size_t n = rng() % 3; n > 0; --n) {
            shared.push_back(fresh_run(1, 2));
        }
        Path x{xt};
        for (const auto& run : shared) {
            for (VertexId v : fresh_run(0, 1)) {
                x.vertices.push_back(v);
            }
            x.vertices.insert(x.vertices.end(), run.begin(), run.end());
        }
        x.vertices.push_back(xh);
        Path y{yt};
        for (auto it = shared.rbegin(); it != shared.rend(); ++it) {
            for (VertexId v : fresh_run(0, 1)) {
                y.vertices.push_back(v);
            }
            y.vertices.insert(y.vertices.end(), it->begin(), it->end());
        }
        for (VertexId v : fresh_run(0, 1)) {
            y.vertices.push_back(v);
        }
        y.vertices.push_back(yh);
        lay(x);
        lay(y);
        return {x, y};
    }

    auto ladder(Endpoints ends, std::size_t order) -> RelaxedLadder {
        RelaxedLadder l;
        l.ends = ends;
        l.P = boundary_path(ends.p, ends.p2, order, l.segs_p);
        l.Q = boundary_path(ends.q2, ends.q, order, l.segs_q);
        for (std::size_t i = 0; i < order; ++i) {
            const Path& sp = l.segs_p[i];
            const Path& sq = l.segs_q[order - 1 - i];
            auto [x, y] = rung(pick(sp), pick(sq), pick(sq), pick(sp));
            l.X.push_back(std::move(x));
            l.Y.push_back(std::move(y));
        }
        return l;
    }
};

} // namespace

auto random_mixed_chain(const MixedChainShape& shape, std::mt19937_64& rng) -> MixedChainFixture {
    if (shape.orders.size() != shape.length + 1) {
        throw PreconditionViolated("a mixed chain of length k has k+1 ladders");
    }
    MixedChainFixture out;
    FixtureBuilder b{out.host, rng};
    MixedChain& m = out.chain;
    const std::size_t k = shape.length;
    for (std::size_t i = 0; i <= k + 1; ++i) {
        VertexId p = b.fresh();
        bool closed = i == 0 ? shape.closed_left : i == k + 1 ? shape.closed_right : b.coin(4);
        m.pj.push_back(p);
        m.qj.push_back(closed ? p : b.fresh());
    }
    for (std::size_t i = 1; i <= k + 1; ++i) {
        m.H.push_back(b.ladder(piece_ends(i, m.pj, m.qj), shape.orders[i - 1]));
    }
    for (std::size_t i = 1; i <= k; ++i) {
        auto [from, to] = rung_from(i, m.pj, m.qj);
        Path r{from};
        if (from != to) {
            for (VertexId v : b.fresh_run(0, 2)) {
                r.vertices.push_back(v);
            }
            r.vertices.push_back(to);
        }
        b.lay(r);
        m.R.push_back(std::move(r));
    }
    m.ends = {m.pj[0], m.qj[0], k % 2 == 1 ? m.pj[k + 1] : m.qj[k + 1], k % 2 == 1 ? m.qj[k + 1] : m.pj[k + 1]};
    return out;
}

auto relabel(const MixedChain& h, const std::map<VertexId, VertexId>& m) -> MixedChain {
    auto v = [&](VertexId x) {
        auto it = m.find(x);
        return it == m.end() ? x : it->second;
    };
    auto path = [&](const Path& p) {
        Path out;
        for (VertexId x : p.vertices) {
            out.vertices.push_back(v(x));
        }
        return out;
    };
    auto paths = [&](const std::vector<Path>& ps) {
        std::vector<Path> out;
        for (const Path& p : ps) {
            out.push_back(path(p));
        }
        return out;
    };
    auto ends = [&](const Endpoints& e) { return Endpoints{v(e.p), v(e.q), v(e.p2), v(e.q2)}; };
    MixedChain out;
    out.ends = ends(h.ends);
    for (const RelaxedLadder& l : h.H) {
        out.H.push_back({ends(l.ends), path(l.P), path(l.Q), paths(l.segs_p), paths(l.segs_q), paths(l.X), paths(l.Y)});
    }
    out.R = paths(h.R);
    for (VertexId x : h.pj) {
        out.pj.push_back(v(x));
    }
    for (VertexId x : h.qj) {
        out.qj.push_back(v(x));
    }
    return out;
}

} // namespace dgt
