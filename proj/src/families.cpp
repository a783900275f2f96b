#include "dgt/families.hpp"

#include <functional>
#include <string>

namespace dgt {

namespace {

void both_ways(Digraph& g, VertexId a, VertexId b) {
    g.add_edge(a, b);
    g.add_edge(b, a);
}

auto id(std::size_t i) -> VertexId { return VertexId{static_cast<std::uint32_t>(i)}; }

} // namespace

auto ladder_p(std::size_t /*k*/, std::size_t i) -> VertexId { return id(i - 1); }
auto ladder_q(std::size_t k, std::size_t i) -> VertexId { return id(k + i - 1); }

auto gen_ladder(std::size_t k) -> Digraph {
    if (k < 1) {
        throw PreconditionViolated("ladder order must be at least 1");
    }
    Digraph g;
    for (std::size_t i = 1; i <= k; ++i) {
        g.add_vertex(ladder_p(k, i), "p" + std::to_string(i));
    }
    for (std::size_t i = 1; i <= k; ++i) {
        g.add_vertex(ladder_q(k, i), "q" + std::to_string(i));
    }
    for (std::size_t i = 1; i < k; ++i) {
        g.add_edge(ladder_p(k, i), ladder_p(k, i + 1));
        g.add_edge(ladder_q(k, i), ladder_q(k, i + 1));
    }
    for (std::size_t i = 1; i <= k; ++i) {
        both_ways(g, ladder_p(k, i), ladder_q(k, k + 1 - i));
    }
    return g;
}

auto gen_cycle_chain(std::size_t k) -> TwoTerminalDigraph {
    if (k < 1) {
        throw PreconditionViolated("cycle chain order must be at least 1");
    }
    Digraph g;
    for (std::size_t i = 1; i <= k; ++i) {
        g.add_vertex(id(i - 1), "v" + std::to_string(i));
    }
    for (std::size_t i = 1; i < k; ++i) {
        both_ways(g, id(i - 1), id(i));
    }
    return {std::move(g), id(0), id(k - 1)};
}

auto gen_tree_chain(std::size_t k) -> TwoTerminalDigraph {
    if (k > 20) {
        throw TooLarge("tree chain order above 20");
    }
    Digraph g;
    const std::size_t n = std::size_t{1} << k;
    for (std::size_t x = 0; x < n; ++x) {
        std::string label = "v";
        for (std::size_t d = k; d-- > 0;) {
            label += ((x >> d) & 1U) != 0 ? '2' : '1';
        }
        g.add_vertex(id(x), label);
    }
    // Copy of TC_level occupying ids [base, base + 2^level).
    std::function<void(std::size_t, std::size_t)> glue = [&](std::size_t base, std::size_t level) {
        if (level == 0) {
            return;
        }
        const std::size_t half = std::size_t{1} << (level - 1);
        glue(base, level - 1);
        glue(base + half, level - 1);
        // s of a copy is its all-ones address (offset 0), t is all-twos (offset half-1).
        g.add_edge(id(base), id(base + half + half - 1));
        g.add_edge(id(base + half), id(base + half - 1));
    };
    glue(0, k);
    return {std::move(g), id(0), id(n - 1)};
}

auto grid_vertex(std::size_t k, std::size_t i, std::size_t j) -> VertexId { return id((i - 1) * 2 * k + (j - 1)); }

auto gen_cylindrical_grid(std::size_t k) -> Digraph {
    if (k < 1) {
        throw PreconditionViolated("grid order must be at least 1");
    }
    Digraph g;
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = 1; j <= 2 * k; ++j) {
            g.add_vertex(grid_vertex(k, i, j), "v" + std::to_string(i) + "_" + std::to_string(j));
        }
    }
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = 1; j <= 2 * k; ++j) {
            g.add_edge(grid_vertex(k, i, j), grid_vertex(k, i, j % (2 * k) + 1));
        }
    }
    for (std::size_t j = 1; j <= 2 * k; ++j) {
        for (std::size_t i = 1; i < k; ++i) {
            if (j % 2 == 1) {
                g.add_edge(grid_vertex(k, i, j), grid_vertex(k, i + 1, j));
            } else {
                g.add_edge(grid_vertex(k, i + 1, j), grid_vertex(k, i, j));
            }
        }
    }
    return g;
}

auto TreeChainRecipe::valid() const -> bool {
    if (a.size() != internal_nodes()) {
        return false;
    }
    for (std::size_t x : a) {
        if (x < 1) {
            return false;
        }
    }
    return true;
}

auto random_recipe(std::size_t depth, std::size_t max_a, std::mt19937_64& rng) -> TreeChainRecipe {
    TreeChainRecipe r{depth, {}};
    std::uniform_int_distribution<std::size_t> pick(1, std::max<std::size_t>(max_a, 1));
    for (std::size_t i = 0; i < r.internal_nodes(); ++i) {
        r.a.push_back(pick(rng));
    }
    return r;
}

auto gen_relaxed_tree_chain(const TreeChainRecipe& recipe) -> RelaxedTreeChain {
    if (!recipe.valid()) {
        throw PreconditionViolated("tree chain recipe needs one value a >= 1 per internal node");
    }
    RelaxedTreeChain out;
    out.depth = recipe.depth;
    out.trace.resize((std::size_t{2} << recipe.depth) - 1);
    Digraph& g = out.chain.graph;

    std::function<void(std::size_t, std::size_t)> build = [&](std::size_t node, std::size_t level) {
        TreeChainNode& here = out.trace[node - 1];
        if (level == 0) {
            VertexId v = g.add_vertex("u" + std::to_string(node));
            here.s = here.t = v;
            return;
        }
        build(2 * node, level - 1);
        build(2 * node + 1, level - 1);
        const TreeChainNode& left = out.trace[2 * node - 1];
        const TreeChainNode& right = out.trace[2 * node];
        here.a = recipe.value(node);
        if (here.a == 1) {
            g.add_edge(left.s, right.t);
            g.add_edge(right.s, left.t);
        } else {
            for (std::size_t i = 1; i < here.a; ++i) {
                here.chain.push_back(g.add_vertex("c" + std::to_string(node) + "_" + std::to_string(i)));
            }
            for (std::size_t i = 0; i + 1 < here.chain.size(); ++i) {
                both_ways(g, here.chain[i], here.chain[i + 1]);
            }
            VertexId v = here.chain.front();
            VertexId w = here.chain.back();
            g.add_edge(left.s, v);
            g.add_edge(v, left.t);
            g.add_edge(right.s, w);
            g.add_edge(w, right.t);
        }
        here.s = left.s;
        here.t = right.t;
    };
    build(1, recipe.depth);
    out.chain.s = out.trace[0].s;
    out.chain.t = out.trace[0].t;
    return out;
}

} // namespace dgt
