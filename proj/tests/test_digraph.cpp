#include <random>

#include "doctest.h"
#include "dgt/digraph.hpp"
#include "support.hpp"

using namespace dgt;
using dgt::testing::make_graph;

namespace {

auto V(std::uint32_t i) -> VertexId { return VertexId{i}; }

auto triangle() -> Digraph { return make_graph(3, {{0, 1}, {1, 2}, {2, 0}}); }

} // namespace

TEST_CASE("digraph rejects loops and collapses duplicates") {
    Digraph g = make_graph(2, {});
    CHECK_THROWS_AS(g.add_edge(V(0), V(0)), LoopError);
    CHECK(g.add_edge(V(0), V(1)));
    CHECK_FALSE(g.add_edge(V(0), V(1)));
    CHECK(g.edge_count() == 1);
    g.remove_vertex(V(1));
    CHECK(g.edge_count() == 0);
    CHECK(g.out_degree(V(0)) == 0);
}

TEST_CASE("scc of a triangle is one block") {
    auto comps = scc(triangle());
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 3);
}

TEST_CASE("scc of a path is topologically ordered singletons") {
    auto comps = scc(make_graph(3, {{0, 1}, {1, 2}}));
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == std::vector{V(0)});
    CHECK(comps[1] == std::vector{V(1)});
    CHECK(comps[2] == std::vector{V(2)});
    // Reversed path still yields source first.
    auto rev = scc(make_graph(3, {{2, 1}, {1, 0}}));
    CHECK(rev[0] == std::vector{V(2)});
    CHECK(rev[2] == std::vector{V(0)});
}

TEST_CASE("scc agrees with the reachability oracle and is maximal and ordered") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 1 + trial % 8;
        Digraph g = dgt::testing::random_digraph(n, 0.25, rng);
        auto comps = scc(g);
        std::vector<VertexSet> sets;
        std::map<VertexId, std::size_t> block;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            sets.emplace_back(comps[i].begin(), comps[i].end());
            for (VertexId v : comps[i]) {
                block[v] = i;
            }
        }
        std::sort(sets.begin(), sets.end());
        CHECK(sets == dgt::testing::oracle_components(g));
        for (Edge e : g.edges()) {
            CHECK(block[e.tail] <= block[e.head]);
        }
        for (const auto& s : sets) {
            CHECK(dgt::testing::oracle_strongly_connected(g.induced(s)));
            for (VertexId v : g.vertices()) {
                if (!s.contains(v)) {
                    VertexSet bigger = s;
                    bigger.insert(v);
                    CHECK_FALSE(dgt::testing::oracle_strongly_connected(g.induced(bigger)));
                }
            }
        }
    }
}

TEST_CASE("circumference") {
    CHECK(circumference(make_graph(4, {{0, 1}, {1, 2}, {0, 3}})) == 0);
    CHECK(circumference(triangle()) == 3);
    CHECK(circumference(make_graph(5, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 4}, {4, 3}})) == 2);
}

TEST_CASE("circumference matches cycle enumeration") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        Digraph g = dgt::testing::random_digraph(1 + trial % 8, 0.3, rng);
        std::size_t best = 0;
        for (const auto& c : dgt::testing::all_cycles(g)) {
            best = std::max(best, c.size());
        }
        CHECK(circumference(g) == best);
    }
}

TEST_CASE("circumference is monotone under butterfly contraction") {
    std::mt19937_64 rng(5);
    int checked = 0;
    while (checked < 200) {
        Digraph g = dgt::testing::random_digraph(2 + rng() % 7, 0.3, rng);
        auto es = dgt::testing::contractible_edges(g);
        if (es.empty()) {
            continue;
        }
        Edge e = es[rng() % es.size()];
        CHECK(circumference(butterfly_contract(g, e)) <= circumference(g));
        ++checked;
    }
}

TEST_CASE("butterfly contraction") {
    SUBCASE("triangle becomes a 2-cycle") {
        Digraph h = butterfly_contract(triangle(), {V(0), V(1)});
        CHECK(h == make_graph(3, {{0, 2}, {2, 0}}).without({V(1)}));
    }
    SUBCASE("2-cycle collapses and the loop is dropped") {
        Digraph h = butterfly_contract(make_graph(2, {{0, 1}, {1, 0}}), {V(0), V(1)});
        CHECK(h.vertex_count() == 1);
        CHECK(h.has_vertex(V(0)));
        CHECK(h.edge_count() == 0);
    }
    SUBCASE("reversed triangle edge is not contractible") {
        // v1->v2->v3 with (v1,v3) instead of (v3,v1).
        Digraph g = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
        g.add_vertex(V(3));
        g.add_edge(V(3), V(2));
        try {
            (void)butterfly_contract(g, {V(0), V(2)});
            FAIL("expected NotContractible");
        } catch (const NotContractible& err) {
            CHECK(err.out_degree_tail == 2);
            CHECK(err.in_degree_head == 3);
        }
    }
    SUBCASE("contraction keeps tail label") {
        Digraph g;
        VertexId a = g.add_vertex("a");
        VertexId b = g.add_vertex("b");
        VertexId c = g.add_vertex("c");
        g.add_edge(a, b);
        g.add_edge(b, c);
        g.add_edge(c, b);
        Digraph h = butterfly_contract(g, {a, b});
        CHECK(h.label(a) == "a");
        CHECK(h.has_edge(a, c));
        CHECK(h.has_edge(c, a));
    }
}

namespace {

auto is_out_arborescence_member_set(const Digraph& g, VertexId root, const VertexSet& s) -> bool {
    // Root in s, every other member has in-degree 1 in G with its in-neighbour in s,
    // and everything is reachable from root inside s.
    if (!s.contains(root)) {
        return false;
    }
    for (VertexId v : s) {
        if (v == root) {
            continue;
        }
        if (g.in_degree(v) != 1 || !s.contains(*g.in(v).begin())) {
            return false;
        }
    }
    Digraph sub = g.induced(s);
    for (VertexId v : s) {
        if (!dgt::testing::oracle_reaches(sub, root, v)) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("arborescence examples") {
    Digraph path = make_graph(3, {{0, 1}, {1, 2}});
    CHECK(arborescence(path, V(0), Direction::Out).vertex_count() == 3);
    Digraph two = make_graph(2, {{0, 1}, {1, 0}});
    Digraph a = arborescence(two, V(0), Direction::Out);
    CHECK(a.vertex_count() == 2);
    CHECK(a.has_edge(V(0), V(1)));
    Digraph joined = make_graph(3, {{0, 2}, {1, 2}});
    CHECK(arborescence(joined, V(0), Direction::Out).vertex_count() == 1);
    CHECK(arborescence(path, V(2), Direction::In).vertex_count() == 3);
}

TEST_CASE("arborescence is maximal by subset enumeration") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t n = 1 + trial % 7;
        Digraph g = dgt::testing::random_digraph(n, 0.3, rng);
        VertexId root{static_cast<std::uint32_t>(rng() % n)};
        Digraph a = arborescence(g, root, Direction::Out);
        CHECK(is_out_arborescence_member_set(g, root, a.vertex_set()));
        CHECK(a.edge_count() + 1 == a.vertex_count());
        std::size_t largest = 0;
        auto vs = g.vertices();
        for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
            VertexSet s;
            for (std::size_t i = 0; i < n; ++i) {
                if ((bits >> i) & 1U) {
                    s.insert(vs[i]);
                }
            }
            if (is_out_arborescence_member_set(g, root, s)) {
                largest = std::max(largest, s.size());
            }
        }
        CHECK(a.vertex_count() == largest);
    }
}

TEST_CASE("is_laced examples") {
    CHECK(is_laced(Path{V(0), V(1)}, Path{V(2), V(3)}));
    CHECK(is_laced(Path{V(1), V(2), V(3), V(4)}, Path{V(3), V(2)}));
    CHECK_FALSE(is_laced(Path{V(1), V(2), V(3), V(4), V(5)}, Path{V(2), V(6), V(4)}));
    // A shared segment counts as one component.
    CHECK(is_laced(Path{V(1), V(2), V(3), V(4)}, Path{V(5), V(2), V(3), V(6)}));
}

namespace {

void check_untangle(const Digraph& host, const Path& p, const Path& q, bool keep) {
    Path r = untangle(p, q, keep);
    REQUIRE(is_path_in(host, r));
    CHECK(r.tail() == q.tail());
    CHECK(r.head() == q.head());
    CHECK(is_laced(p, r));
    for (Edge e : r.edges()) {
        bool in_p = p.contains(e.tail) && p.index_of(e.head) == *p.index_of(e.tail) + 1;
        bool in_q = q.contains(e.tail) && q.index_of(e.head) == *q.index_of(e.tail) + 1;
        CHECK((in_p || in_q));
    }
    if (keep) {
        bool shared = false;
        for (VertexId v : r.vertices) {
            shared = shared || (p.contains(v) && v != p.tail() && v != q.head());
        }
        CHECK(shared);
    }
}

} // namespace

TEST_CASE("untangle examples") {
    Digraph host = make_graph(7, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}, {6, 4}});
    Path p{V(1), V(2), V(3), V(4), V(5)};
    Path q{V(2), V(6), V(4)};
    Path r = untangle(p, q, false);
    CHECK(r == Path{V(2), V(3), V(4)});
    check_untangle(host, p, q, false);

    Path disjoint{V(6)};
    CHECK(untangle(p, disjoint, false) == disjoint);

    // a -> x -> b and c -> x -> d.
    Digraph h2 = make_graph(5, {{0, 1}, {1, 2}, {3, 1}, {1, 4}});
    check_untangle(h2, Path{V(0), V(1), V(2)}, Path{V(3), V(1), V(4)}, true);
}

TEST_CASE("untangle keep-intersection rejects bad hypotheses") {
    Path p{V(0), V(1)};
    Path q{V(2), V(3)};
    CHECK_THROWS_AS(untangle(p, q, true), PreconditionViolated);
    // a internal to Q.
    CHECK_THROWS_AS(untangle(Path{V(0), V(1), V(2)}, Path{V(3), V(0), V(1), V(4)}, true), PreconditionViolated);
}

TEST_CASE("untangle output is among the enumerated paths of P union Q") {
    Digraph host = make_graph(7, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}, {6, 4}});
    Path p{V(1), V(2), V(3), V(4), V(5)};
    Path q{V(2), V(6), V(4)};
    Path r = untangle(p, q, false);
    bool found = false;
    for (const Path& cand : dgt::testing::all_paths(host, V(2), V(4))) {
        found = found || cand == r;
    }
    CHECK(found);
}

TEST_CASE("untangle property on random path pairs") {
    std::mt19937_64 rng(23);
    int done = 0;
    int keep_done = 0;
    while (done < 500) {
        std::size_t n = 3 + rng() % 8;
        Digraph g = dgt::testing::random_digraph(n, 0.35, rng);
        Path p = dgt::testing::random_path(g, n, rng);
        Path q = dgt::testing::random_path(g, n, rng);
        check_untangle(g, p, q, false);
        bool shared = false;
        for (VertexId v : q.vertices) {
            shared = shared || (p.contains(v) && v != p.tail() && v != q.head());
        }
        if (shared && !q.internal().contains(p.tail()) && !p.internal().contains(q.head())) {
            check_untangle(g, p, q, true);
            ++keep_done;
        }
        ++done;
    }
    CHECK(keep_done > 50);
}
