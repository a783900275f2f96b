#include <random>

#include "doctest.h"
#include "dgt/cycle_rank.hpp"
#include "dgt/families.hpp"
#include "support.hpp"

using namespace dgt;
using dgt::testing::make_graph;

namespace {

auto V(std::uint32_t i) -> VertexId { return VertexId{i}; }

void check_certificate(const Digraph& g, const CycleRankResult& r) {
    auto check = validate_cr_decomposition(g, r.certificate);
    REQUIRE_MESSAGE(check.valid, check.witness.value_or(""));
    CHECK(check.height == r.rank + 1);
}

} // namespace

TEST_CASE("cycle rank of small graphs") {
    Digraph single = make_graph(1, {});
    CHECK(cycle_rank(single).rank == 0);
    Digraph tri = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
    auto r = cycle_rank(tri);
    CHECK(r.rank == 1);
    check_certificate(tri, r);
    // Smallest optimal deletion vertex is chosen.
    CHECK(r.certificate.roots == std::vector{V(0)});
    CHECK(cycle_rank(gen_ladder(1)).rank == 1);
    CHECK(cycle_rank(make_graph(0, {})).rank == 0);
}

TEST_CASE("cycle rank of cycle chains") {
    auto r = cycle_rank(gen_cycle_chain(8).graph);
    CHECK(r.rank == 3);
    check_certificate(gen_cycle_chain(8).graph, r);
    auto r4 = cycle_rank(gen_cycle_chain(4).graph);
    CHECK(validate_cr_decomposition(gen_cycle_chain(4).graph, r4.certificate).height == 3);
}

TEST_CASE("cycle rank of ladders and tree chains against the naive recursion") {
    // Values fixed by the memo-free oracle.
    for (std::size_t k = 1; k <= 4; ++k) {
        Digraph l = gen_ladder(k);
        CHECK(cycle_rank(l).rank == dgt::testing::naive_cycle_rank(l));
    }
    CHECK(cycle_rank(gen_ladder(4)).rank >= 3);
    Digraph tc2 = gen_tree_chain(2).graph;
    CHECK(cycle_rank(tc2).rank == dgt::testing::naive_cycle_rank(tc2));
    CHECK(cycle_rank(tc2).rank >= 2);
}

TEST_CASE("validator examples") {
    Digraph single = make_graph(1, {});
    auto ok = validate_cr_decomposition(single, {{V(0)}, {}});
    CHECK(ok.valid);
    CHECK(ok.height == 1);

    Digraph two = make_graph(2, {{0, 1}, {1, 0}});
    auto bad = validate_cr_decomposition(two, {{V(0), V(1)}, {}});
    CHECK_FALSE(bad.valid);
    CHECK(bad.witness.has_value());

    auto chain = validate_cr_decomposition(two, {{V(0)}, {{V(1), V(0)}}});
    CHECK(chain.valid);
    CHECK(chain.height == 2);

    // Missing vertex and cyclic parents.
    CHECK_FALSE(validate_cr_decomposition(two, {{V(0)}, {}}).valid);
    CHECK_FALSE(validate_cr_decomposition(two, {{}, {{V(0), V(1)}, {V(1), V(0)}}}).valid);
}

TEST_CASE("solver agrees with the naive recursion on all 4-vertex digraphs") {
    for (std::uint64_t code = 0; code < 4096; ++code) {
        Digraph g = dgt::testing::digraph_from_code(4, code);
        auto r = cycle_rank(g);
        CHECK(r.rank == dgt::testing::naive_cycle_rank(g));
        check_certificate(g, r);
    }
}

TEST_CASE("solver agrees with the naive recursion on random digraphs") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        Digraph g = dgt::testing::random_digraph(1 + trial % 7, 0.35, rng);
        auto r = cycle_rank(g);
        CHECK(r.rank == dgt::testing::naive_cycle_rank(g));
        check_certificate(g, r);
    }
}

TEST_CASE("cycle rank is the maximum over components") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Digraph g = dgt::testing::random_digraph(1 + trial % 8, 0.2, rng);
        std::size_t best = 0;
        for (const auto& c : dgt::testing::oracle_components(g)) {
            best = std::max(best, cycle_rank(g.induced(c)).rank);
        }
        CHECK(cycle_rank(g).rank == best);
    }
}

TEST_CASE("cycle rank is monotone under vertex deletion") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        Digraph g = dgt::testing::random_digraph(1 + trial % 7, 0.35, rng);
        std::size_t r = cycle_rank(g).rank;
        for (VertexId v : g.vertices()) {
            CHECK(cycle_rank(g.without({v})).rank <= r);
        }
    }
}

TEST_CASE("contract_cr_decomposition examples") {
    Digraph two = make_graph(2, {{0, 1}, {1, 0}});
    CycleRankDecomposition t{{V(0)}, {{V(1), V(0)}}};
    auto c = contract_cr_decomposition(two, t, {V(0), V(1)});
    CHECK(c.roots == std::vector{V(0)});
    CHECK(c.parent.empty());

    Digraph tri = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
    auto opt = cycle_rank(tri).certificate;
    for (Edge e : tri.edges()) {
        auto d = contract_cr_decomposition(tri, opt, e);
        auto check = validate_cr_decomposition(butterfly_contract(tri, e), d);
        CHECK(check.valid);
        CHECK(check.height <= opt.height());
    }

    CHECK_THROWS_AS(contract_cr_decomposition(two, {{V(0), V(1)}, {}}, {V(0), V(1)}), PreconditionViolated);
}

TEST_CASE("contract_cr_decomposition on random instances") {
    std::mt19937_64 rng(13);
    int done = 0;
    while (done < 200) {
        Digraph g = dgt::testing::random_digraph(2 + rng() % 6, 0.35, rng);
        auto es = dgt::testing::contractible_edges(g);
        if (es.empty()) {
            continue;
        }
        Edge e = es[rng() % es.size()];
        auto t = cycle_rank(g).certificate;
        auto d = contract_cr_decomposition(g, t, e);
        auto check = validate_cr_decomposition(butterfly_contract(g, e), d);
        CHECK(check.valid);
        CHECK(check.height <= t.height());
        ++done;
    }
}

TEST_CASE("contract_cr_decomposition with non-optimal certificates") {
    // CC_3 rooted at an endpoint instead of the middle vertex.
    Digraph cc = gen_cycle_chain(3).graph;
    CycleRankDecomposition tall{{V(0)}, {{V(1), V(0)}, {V(2), V(1)}}};
    REQUIRE(validate_cr_decomposition(cc, tall).valid);
    for (Edge e : cc.edges()) {
        auto d = contract_cr_decomposition(cc, tall, e);
        auto check = validate_cr_decomposition(butterfly_contract(cc, e), d);
        CHECK(check.valid);
        CHECK(check.height <= 3);
    }
}
