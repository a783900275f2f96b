#pragma once

#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dgt/digraph.hpp"

namespace dgt::detail {

using Mask = std::uint64_t;

inline auto bit(int i) -> Mask { return Mask{1} << i; }

inline auto lowest(Mask m) -> int { return std::countr_zero(m); }

// Dense adjacency-bitmask view of at most 64 vertices, indexed in ascending id order.
struct BitGraph {
    std::vector<VertexId> ids;
    std::unordered_map<VertexId, int> index;
    std::vector<Mask> out;
    std::vector<Mask> in;

    BitGraph(const Digraph& g, const std::vector<VertexId>& subset) : ids(subset) {
        if (ids.size() > 64) {
            throw TooLarge("exact search supports at most 64 vertices per strongly connected component");
        }
        for (int i = 0; i < static_cast<int>(ids.size()); ++i) {
            index[ids[i]] = i;
        }
        out.assign(ids.size(), 0);
        in.assign(ids.size(), 0);
        for (int i = 0; i < static_cast<int>(ids.size()); ++i) {
            for (VertexId w : g.out(ids[i])) {
                auto it = index.find(w);
                if (it != index.end()) {
                    out[i] |= bit(it->second);
                    in[it->second] |= bit(i);
                }
            }
        }
    }

    explicit BitGraph(const Digraph& g) : BitGraph(g, g.vertices()) {}

    [[nodiscard]] auto size() const -> int { return static_cast<int>(ids.size()); }
    [[nodiscard]] auto full() const -> Mask { return ids.size() == 64 ? ~Mask{0} : bit(size()) - 1; }

    [[nodiscard]] auto reach(int v, Mask mask, bool forward) const -> Mask {
        const auto& adj = forward ? out : in;
        Mask seen = bit(v);
        Mask frontier = seen;
        while (frontier != 0) {
            Mask next = 0;
            for (Mask f = frontier; f != 0; f &= f - 1) {
                next |= adj[lowest(f)];
            }
            next &= mask & ~seen;
            seen |= next;
            frontier = next;
        }
        return seen;
    }

    [[nodiscard]] auto sccs(Mask mask) const -> std::vector<Mask> {
        std::vector<Mask> comps;
        Mask rest = mask;
        while (rest != 0) {
            int v = lowest(rest);
            Mask comp = reach(v, rest, true) & reach(v, rest, false);
            comps.push_back(comp);
            rest &= ~comp;
        }
        return comps;
    }

    [[nodiscard]] auto to_set(Mask m) const -> VertexSet {
        VertexSet s;
        for (; m != 0; m &= m - 1) {
            s.insert(ids[lowest(m)]);
        }
        return s;
    }

    [[nodiscard]] auto to_mask(const VertexSet& s) const -> Mask {
        Mask m = 0;
        for (VertexId v : s) {
            m |= bit(index.at(v));
        }
        return m;
    }
};

} // namespace dgt::detail
