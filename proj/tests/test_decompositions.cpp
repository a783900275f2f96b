#include <random>

#include "doctest.h"
#include "dgt/decompositions.hpp"
#include "dgt/families.hpp"
#include "support.hpp"

using namespace dgt;
using dgt::testing::make_graph;

namespace {

auto V(std::uint32_t i) -> VertexId { return VertexId{i}; }

auto oracle_guards(const Digraph& g, const VertexSet& x, const VertexSet& y) -> bool {
    for (const auto& c : dgt::testing::all_cycles(g.without(x))) {
        bool in = false;
        bool out = false;
        for (VertexId v : c) {
            (y.contains(v) ? in : out) = true;
        }
        if (in && out) {
            return false;
        }
    }
    return true;
}

auto random_subset(const Digraph& g, std::mt19937_64& rng) -> VertexSet {
    VertexSet out;
    for (VertexId v : g.vertices()) {
        if (rng() % 3 == 0) {
            out.insert(v);
        }
    }
    return out;
}

auto leaf(std::initializer_list<std::uint32_t> cycle) -> Digraph {
    Digraph g;
    std::vector<VertexId> vs;
    for (auto i : cycle) {
        vs.push_back(V(i));
        g.add_vertex(V(i));
    }
    for (std::size_t i = 0; vs.size() > 1 && i < vs.size(); ++i) {
        g.add_edge(vs[i], vs[(i + 1) % vs.size()]);
    }
    return g;
}

auto path(std::initializer_list<std::uint32_t> ids) -> Path {
    Path p;
    for (auto i : ids) {
        p.vertices.push_back(V(i));
    }
    return p;
}

// Length-0 mixed chain with one order-0 ladder; left ends (p, q), right ends closed at r.
auto single_ladder(VertexId p, VertexId q, VertexId r, Path P, Path Q) -> std::pair<MixedChain, Digraph> {
    RelaxedLadder l;
    l.ends = {p, q, r, r};
    l.P = std::move(P);
    l.Q = std::move(Q);
    Digraph hg;
    for (const Path* x : {&l.P, &l.Q}) {
        for (VertexId v : x->vertices) {
            hg.add_vertex(v);
        }
        for (const Edge& e : x->edges()) {
            hg.add_edge(e);
        }
    }
    MixedChain h;
    h.ends = {p, q, r, r};
    h.H = {l};
    h.pj = {p, r};
    h.qj = {q, r};
    return {h, hg};
}

// Node over leaves {0} and {1}: P = 0 2 3 1 and Q = 1 4 0. Vertices 2, 3 lie on the P side.
auto crossing_fixture(ChainDecomposition& t) -> std::size_t {
    const std::size_t a = t.add_leaf(leaf({0}));
    const std::size_t b = t.add_leaf(leaf({1}));
    auto [h, hg] = single_ladder(V(0), V(0), V(1), path({0, 2, 3, 1}), path({1, 4, 0}));
    return t.add_link(a, b, h, hg);
}

// Root linking the crossing fixture to leaf {9} with left ends (p, q).
auto rooted_fixture(VertexId p, VertexId q) -> ChainDecomposition {
    ChainDecomposition t;
    const std::size_t inner = crossing_fixture(t);
    const std::size_t right = t.add_leaf(leaf({9}));
    auto [h, hg] = single_ladder(p, q, V(9), Path{p, V(9)}, Path{V(9), q});
    t.finalize(t.add_link(inner, right, h, hg));
    return t;
}

// Fixpoint form of the side arborescence: vertices outside `other` whose unique in-neighbour
// (out-neighbour for In) in H already belongs.
auto oracle_side(const Digraph& hg, VertexId root, Direction dir, const Digraph& other) -> VertexSet {
    VertexSet s{root};
    for (bool grew = true; grew;) {
        grew = false;
        for (VertexId y : hg.vertices()) {
            const VertexSet& near = dir == Direction::Out ? hg.in(y) : hg.out(y);
            if (!s.contains(y) && !other.has_vertex(y) && near.size() == 1 && s.contains(*near.begin())) {
                s.insert(y);
                grew = true;
            }
        }
    }
    return s;
}

// Types agree with the fixpoint sides, which never overlap. Returns the number of out-central vertices.
auto check_types(const ChainDecomposition& t) -> std::size_t {
    std::size_t central = 0;
    for (std::size_t d = 0; d < t.nodes.size(); ++d) {
        if (t.is_leaf(d)) {
            continue;
        }
        const auto& node = t.nodes[d];
        const Digraph hg = structure_graph(node.graph, *node.chain);
        const Digraph& g1 = t.nodes[node.children[0]].graph;
        const Digraph& g2 = t.nodes[node.children[1]].graph;
        const auto& e = node.chain->ends;
        const VertexSet lo = oracle_side(hg, e.p, Direction::Out, g2);
        const VertexSet ro = oracle_side(hg, e.p2, Direction::Out, g1);
        const VertexSet li = oracle_side(hg, e.q, Direction::In, g2);
        const VertexSet ri = oracle_side(hg, e.q2, Direction::In, g1);
        for (VertexId x : node.graph.vertices()) {
            const bool left_out = g1.has_vertex(x) || lo.contains(x);
            const bool right_out = g2.has_vertex(x) || ro.contains(x);
            const bool left_in = g1.has_vertex(x) || li.contains(x);
            const bool right_in = g2.has_vertex(x) || ri.contains(x);
            CHECK_FALSE((left_out && right_out));
            CHECK_FALSE((left_in && right_in));
            const auto ot = out_type(t, d, x);
            central += ot == EndpointType::Central ? 1 : 0;
            CHECK((ot == EndpointType::Left) == left_out);
            CHECK((ot == EndpointType::Right) == right_out);
            const auto it = in_type(t, d, x);
            CHECK((it == EndpointType::Left) == left_in);
            CHECK((it == EndpointType::Right) == right_in);
        }
    }
    return central;
}

} // namespace

TEST_CASE("strongly_guards agrees with cycle enumeration") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const Digraph g = dgt::testing::random_digraph(2 + rng() % 6, 0.35, rng);
        const VertexSet x = random_subset(g, rng);
        const VertexSet y = random_subset(g, rng);
        CHECK(strongly_guards(g, x, y) == oracle_guards(g, x, y));
    }
}

TEST_CASE("validate_dtd examples") {
    const Digraph two = make_graph(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {1, 2}});
    SUBCASE("single bag") {
        DirectedTreeDecomposition d;
        d.nodes.push_back({std::nullopt, two.vertex_set(), {}});
        const auto c = validate_dtd(two, d);
        CHECK(c.valid);
        CHECK(c.width == 3);
    }
    SUBCASE("two 2-cycles joined by one edge need no guard") {
        DirectedTreeDecomposition d;
        d.nodes.push_back({std::nullopt, {V(0), V(1)}, {}});
        d.nodes.push_back({0, {V(2), V(3)}, {}});
        const auto c = validate_dtd(two, d);
        CHECK(c.valid);
        CHECK(c.width == 1);
    }
    SUBCASE("a back edge needs a guard") {
        Digraph g = two;
        g.add_edge(V(3), V(0));
        DirectedTreeDecomposition d;
        d.nodes.push_back({std::nullopt, {V(0), V(1)}, {}});
        d.nodes.push_back({0, {V(2), V(3)}, {}});
        const auto bad = validate_dtd(g, d);
        CHECK_FALSE(bad.valid);
        CHECK(bad.witness->find("does not strongly guard") != std::string::npos);
        d.nodes[1].guard = {V(0)};
        const auto good = validate_dtd(g, d);
        CHECK(good.valid);
        CHECK(good.width == 2);
    }
    SUBCASE("structural defects") {
        DirectedTreeDecomposition d;
        d.nodes.push_back({std::nullopt, {V(0), V(1)}, {}});
        d.nodes.push_back({0, {V(1), V(2), V(3)}, {}});
        CHECK(validate_dtd(two, d).witness->find("two bags") != std::string::npos);
        d.nodes[1].bag = {V(2)};
        CHECK(validate_dtd(two, d).witness->find("cover") != std::string::npos);
        d.nodes[1].bag = {V(2), V(3)};
        d.nodes[0].parent = 1;
        CHECK_FALSE(validate_dtd(two, d).valid);
        d.nodes[0].parent = std::nullopt;
        d.nodes[1].bag.clear();
        CHECK(validate_dtd(two, d).witness->find("empty") != std::string::npos);
    }
}

TEST_CASE("DTDs from cycle rank decompositions are valid with width height - 1") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 150; ++trial) {
        const Digraph g = dgt::testing::random_digraph(1 + rng() % 9, 0.3, rng);
        const auto cr = cycle_rank(g);
        const auto d = dtd_from_cr_decomposition(g, cr.certificate);
        const auto c = validate_dtd(g, d);
        REQUIRE_MESSAGE(c.valid, *c.witness);
        CHECK(c.width + 1 == cr.certificate.height());
    }
}

TEST_CASE("search_dtd returns valid decompositions") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const Digraph g = dgt::testing::random_digraph(1 + rng() % 7, 0.35, rng);
        const auto d = search_dtd(g, 30, rng);
        const auto c = validate_dtd(g, d);
        REQUIRE_MESSAGE(c.valid, *c.witness);
        CHECK(c.width + 1 <= g.vertex_count());
    }
    // Acyclic digraphs split into singleton bags without guards.
    const Digraph dag = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(validate_dtd(dag, search_dtd(dag, 200, rng)).width == 0);
    CHECK_THROWS_AS(search_dtd(dgt::testing::random_digraph(11, 0.2, rng), 1, rng), TooLarge);
}

TEST_CASE("chain decomposition validation") {
    SUBCASE("single leaf") {
        ChainDecomposition t;
        t.finalize(t.add_leaf(leaf({0, 1})));
        const auto c = validate_chain_decomposition(t);
        CHECK(c.valid);
        CHECK(c.weight_vector == std::vector<std::size_t>{0});
        CHECK(c.full_height == 1);
    }
    SUBCASE("gen_M fixtures have full height k") {
        for (std::size_t k = 1; k <= 4; ++k) {
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                const auto m = gen_M(k, seed);
                const auto c = validate_chain_decomposition(m.decomposition);
                REQUIRE_MESSAGE(c.valid, *c.witness);
                CHECK(c.full_height == k);
                CHECK(c.weight_vector.size() == (std::size_t{1} << k) - 1);
                CHECK(is_strongly_connected(m.graph));
            }
        }
    }
    SUBCASE("gen_M is deterministic and budgeted") {
        const auto a = gen_M(3, 7);
        const auto b = gen_M(3, 7);
        CHECK(a.graph.edges() == b.graph.edges());
        CHECK_THROWS_AS(gen_M(6, 1, 20), BudgetExceeded);
    }
    SUBCASE("endpoints outside the left child") {
        ChainDecomposition t;
        const std::size_t a = t.add_leaf(leaf({0}));
        const std::size_t b = t.add_leaf(leaf({1}));
        auto [h, hg] = single_ladder(V(0), V(0), V(1), path({0, 1}), path({1, 0}));
        h.ends.p = V(5);
        t.finalize(t.add_link(a, b, h, hg));
        CHECK_FALSE(validate_chain_decomposition(t).valid);
    }
    SUBCASE("stale cache") {
        auto t = tree_chain_decomposition(2);
        t.full_height = 7;
        CHECK(validate_chain_decomposition(t).witness->find("full height") != std::string::npos);
    }
    SUBCASE("leaf that is not strongly connected") {
        ChainDecomposition t;
        t.finalize(t.add_leaf(make_graph(2, {{0, 1}})));
        CHECK_FALSE(validate_chain_decomposition(t).valid);
    }
}

TEST_CASE("endpoint types and crossing") {
    ChainDecomposition t;
    const std::size_t d = crossing_fixture(t);
    t.finalize(d);
    REQUIRE(validate_chain_decomposition(t).valid);
    CHECK(out_type(t, d, V(0)) == EndpointType::Left);
    CHECK(out_type(t, d, V(2)) == EndpointType::Left);
    CHECK(out_type(t, d, V(4)) == EndpointType::Right);
    CHECK(in_type(t, d, V(2)) == EndpointType::Right);
    CHECK(in_type(t, d, V(4)) == EndpointType::Left);
    CHECK(in_type(t, d, V(1)) == EndpointType::Right);
    CHECK(is_crossing(t, d, V(3), V(2)));
    CHECK(is_crossing(t, d, V(2), V(2)));
    CHECK_FALSE(is_crossing(t, d, V(2), V(3)));
    CHECK(is_crossing(t, d, V(4), V(4)));
    CHECK_FALSE(is_crossing(t, d, V(2), V(4)));
    CHECK_THROWS_AS(out_type(t, d, V(42)), PreconditionViolated);
    CHECK_THROWS_AS(classify_endpoint(t, 0, d), PreconditionViolated);
}

TEST_CASE("cleanliness levels on hand-built fixtures") {
    SUBCASE("a crossing pair of endpoints is not rinsed") {
        const auto t = rooted_fixture(V(3), V(2));
        REQUIRE_MESSAGE(validate_chain_decomposition(t).valid, *validate_chain_decomposition(t).witness);
        const auto r = classify_endpoint(t, t.root, 2);
        CHECK(r.out_vertex == V(3));
        CHECK(r.in_vertex == V(2));
        CHECK(r.crossing);
        CHECK(acts_upon(t, t.root, 2));
        const auto c = cleanliness(t);
        REQUIRE(std::holds_alternative<NotRinsed>(c));
        CHECK(std::get<NotRinsed>(c).d == t.root);
        CHECK(std::get<NotRinsed>(c).d_prime == 2);
    }
    SUBCASE("equal types are rinsed but not clean") {
        const auto t = rooted_fixture(V(2), V(4));
        REQUIRE(validate_chain_decomposition(t).valid);
        const auto r = classify_endpoint(t, t.root, 2);
        CHECK(r.out_type == EndpointType::Left);
        CHECK(r.in_type == EndpointType::Left);
        CHECK_FALSE(acts_upon(t, t.root, 2));
        CHECK(std::holds_alternative<RinsedNotClean>(cleanliness(t)));
    }
    SUBCASE("differing types without crossing are spotless") {
        const auto t = rooted_fixture(V(2), V(3));
        REQUIRE(validate_chain_decomposition(t).valid);
        const auto r = classify_endpoint(t, t.root, 2);
        CHECK(r.out_type == EndpointType::Left);
        CHECK(r.in_type == EndpointType::Right);
        CHECK_FALSE(r.crossing);
        CHECK(std::holds_alternative<Spotless>(cleanliness(t)));
    }
}

TEST_CASE("the natural tree chain decomposition is spotless") {
    for (std::size_t k = 1; k <= 5; ++k) {
        const auto t = tree_chain_decomposition(k);
        const auto c = validate_chain_decomposition(t);
        REQUIRE_MESSAGE(c.valid, *c.witness);
        CHECK(c.full_height == k + 1);
        const auto tc = gen_tree_chain(k);
        CHECK(t.nodes[t.root].graph.vertex_set() == tc.graph.vertex_set());
        CHECK(t.nodes[t.root].graph.edges() == tc.graph.edges());
        CHECK(std::holds_alternative<Spotless>(cleanliness(t)));
    }
}

TEST_CASE("types are exclusive and cleanliness levels are consistent on random M_k") {
    std::size_t counts[4] = {0, 0, 0, 0};
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto m = gen_M(2 + seed % 3, seed);
        const auto& t = m.decomposition;
        check_types(t);
        const auto c = cleanliness(t);
        ++counts[c.index()];
        std::vector<std::size_t> internal;
        for (std::size_t d = 0; d < t.nodes.size(); ++d) {
            if (!t.is_leaf(d)) {
                internal.push_back(d);
            }
        }
        bool rinsed = true;
        for (std::size_t d : internal) {
            for (std::size_t dp : internal) {
                if (t.is_proper_descendant(dp, d) && acts_upon(t, d, dp)) {
                    rinsed = false;
                }
            }
        }
        CHECK(rinsed == !std::holds_alternative<NotRinsed>(c));
        if (const auto* n = std::get_if<NotRinsed>(&c)) {
            CHECK(acts_upon(t, n->d, n->d_prime));
        }
        if (const auto* s = std::get_if<CleanNotSpotless>(&c)) {
            CHECK_FALSE(satisfies_spotless_property(t, s->d1, s->d2, s->d3));
        }
        if (std::holds_alternative<Spotless>(c)) {
            for (std::size_t d1 : internal) {
                for (std::size_t d2 : internal) {
                    for (std::size_t d3 : internal) {
                        if (t.is_proper_descendant(d2, d1) && t.is_proper_descendant(d3, d2)) {
                            CHECK(satisfies_spotless_property(t, d1, d2, d3));
                        }
                    }
                }
            }
        }
    }
    MESSAGE("cleanliness counts: " << counts[0] << " " << counts[1] << " " << counts[2] << " " << counts[3]);
}

TEST_CASE("rung vertices beyond a landing point are central") {
    std::size_t central = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(seed);
        const auto f = random_mixed_chain({0, {2}, true, true}, rng);
        ChainDecomposition t;
        Digraph a;
        a.add_vertex(f.chain.ends.p);
        Digraph b;
        b.add_vertex(f.chain.ends.p2);
        const std::size_t l = t.add_leaf(a);
        const std::size_t r = t.add_leaf(b);
        t.finalize(t.add_link(l, r, f.chain, structure_graph(f.host, f.chain)));
        REQUIRE(validate_chain_decomposition(t).valid);
        central += check_types(t);
    }
    CHECK(central > 0);
}

TEST_CASE("a central out-vertex two levels down is not rinsed") {
    std::size_t built = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(seed);
        const auto f = random_mixed_chain({0, {2}, true, true}, rng);
        ChainDecomposition t;
        Digraph a;
        a.add_vertex(f.chain.ends.p);
        Digraph b;
        b.add_vertex(f.chain.ends.p2);
        const std::size_t l = t.add_leaf(a);
        const std::size_t r = t.add_leaf(b);
        const std::size_t inner = t.add_link(l, r, f.chain, structure_graph(f.host, f.chain));
        t.finalize(inner);
        std::optional<VertexId> x;
        for (VertexId v : t.nodes[inner].graph.vertices()) {
            if (!x && out_type(t, inner, v) == EndpointType::Central) {
                x = v;
            }
        }
        if (!x) {
            continue;
        }
        const VertexId y = f.chain.ends.p;
        const std::size_t leaf_a = t.add_leaf(leaf({1000}));
        auto [hm, gm] = single_ladder(y, y, V(1000), Path{y, V(1000)}, Path{V(1000), y});
        const std::size_t mid = t.add_link(inner, leaf_a, hm, gm);
        const std::size_t leaf_b = t.add_leaf(leaf({1001}));
        auto [hr, gr] = single_ladder(*x, *x, V(1001), Path{*x, V(1001)}, Path{V(1001), *x});
        t.finalize(t.add_link(mid, leaf_b, hr, gr));
        const auto v = validate_chain_decomposition(t);
        REQUIRE_MESSAGE(v.valid, *v.witness);
        CHECK_FALSE(acts_upon(t, t.root, mid));
        CHECK_FALSE(acts_upon(t, mid, inner));
        CHECK(classify_endpoint(t, t.root, inner).out_type == EndpointType::Central);
        const auto c = cleanliness(t);
        REQUIRE(std::holds_alternative<NotRinsed>(c));
        CHECK(std::get<NotRinsed>(c).d == t.root);
        CHECK(std::get<NotRinsed>(c).d_prime == inner);
        ++built;
    }
    CHECK(built > 0);
}

TEST_CASE("find_subgraph") {
    const Digraph c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const Digraph host = make_graph(6, {{5, 4}, {4, 3}, {3, 2}, {2, 5}, {0, 1}});
    const auto m = find_subgraph(c4, host);
    REQUIRE(m.has_value());
    CHECK(is_subgraph(*m, host));
    CHECK(m->vertex_set() == VertexSet{V(2), V(3), V(4), V(5)});
    CHECK_FALSE(find_subgraph(c4, make_graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}})).has_value());
}

TEST_CASE("Erdos-Posa examples") {
    const auto cycles = cycle_member_check();
    SUBCASE("disjoint triangles give a packing") {
        const Digraph g =
            make_graph(9, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {6, 7}, {7, 8}, {8, 6}, {2, 3}, {5, 6}});
        const auto d = dtd_from_cr_decomposition(g, cycle_rank(g).certificate);
        const auto r = erdos_posa(g, d, cycles, 3);
        REQUIRE(std::holds_alternative<Packing>(r));
        CHECK(verify_erdos_posa(g, validate_dtd(g, d).width, cycles, 3, r).valid);
    }
    SUBCASE("acyclic digraphs give the empty cover") {
        const Digraph g = make_graph(4, {{0, 1}, {1, 2}, {0, 3}});
        DirectedTreeDecomposition d;
        d.nodes.push_back({std::nullopt, g.vertex_set(), {}});
        const auto r = erdos_posa(g, d, cycles, 2);
        REQUIRE(std::holds_alternative<Cover>(r));
        CHECK(std::get<Cover>(r).vertices.empty());
    }
    SUBCASE("one triangle in one bag") {
        const Digraph g = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
        DirectedTreeDecomposition d;
        d.nodes.push_back({std::nullopt, g.vertex_set(), {}});
        const auto r = erdos_posa(g, d, cycles, 2);
        REQUIRE(std::holds_alternative<Cover>(r));
        CHECK(std::get<Cover>(r).vertices.size() <= 3);
        CHECK(verify_erdos_posa(g, 2, cycles, 2, r).valid);
    }
    SUBCASE("the verifier rejects bad results") {
        const Digraph g = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
        CHECK_FALSE(verify_erdos_posa(g, 2, cycles, 2, Cover{}).valid);
        CHECK_FALSE(verify_erdos_posa(g, 0, cycles, 1, Cover{{V(0)}}).valid);
        CHECK(verify_erdos_posa(g, 0, cycles, 2, Cover{{V(0)}}).valid);
        CHECK_FALSE(verify_erdos_posa(g, 2, cycles, 2, Packing{{g, g}}).valid);
        CHECK(verify_erdos_posa(g, 2, cycles, 1, Packing{{g}}).valid);
    }
    SUBCASE("invalid decompositions are refused") {
        const Digraph g = make_graph(2, {{0, 1}, {1, 0}});
        DirectedTreeDecomposition d;
        d.nodes.push_back({std::nullopt, {V(0)}, {}});
        CHECK_THROWS_AS(erdos_posa(g, d, cycles, 1), PreconditionViolated);
    }
}

TEST_CASE("Erdos-Posa results verify on random digraphs") {
    std::mt19937_64 rng(14);
    const auto cycles = cycle_member_check();
    const auto squares = subgraph_member_check(make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
    for (int trial = 0; trial < 100; ++trial) {
        const Digraph g = dgt::testing::random_digraph(3 + rng() % 8, 0.3, rng);
        DirectedTreeDecomposition d = trial % 2 == 0 || g.vertex_count() > 7
                                          ? dtd_from_cr_decomposition(g, cycle_rank(g).certificate)
                                          : search_dtd(g, 20, rng);
        const std::size_t width = validate_dtd(g, d).width;
        const auto& member = trial % 3 == 0 ? squares : cycles;
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto r = erdos_posa(g, d, member, k);
            const auto c = verify_erdos_posa(g, width, member, k, r);
            CHECK_MESSAGE(c.valid, *c.witness);
        }
    }
}
