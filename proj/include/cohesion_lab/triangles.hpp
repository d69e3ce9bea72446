#ifndef COHESION_LAB_TRIANGLES_HPP
#define COHESION_LAB_TRIANGLES_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace cohesion_lab {

/// Triangles of a graph bucketed by how many of their vertices lie in a set S.
/// `inside` is i(S), `outbound` is o(S).
struct TriangleCensus {
    BigInt inside = 0;
    BigInt outbound = 0;
    BigInt touching_one = 0;
    BigInt outside = 0;

    BigInt total() const { return inside + outbound + touching_one + outside; }

    friend bool operator==(const TriangleCensus&, const TriangleCensus&) = default;
};

/// Change in every census bucket caused by adding or removing one vertex.
struct CensusDelta {
    BigInt d_inside = 0;
    BigInt d_outbound = 0;
    BigInt d_touching_one = 0;
    BigInt d_outside = 0;

    CensusDelta operator-() const { return {-d_inside, -d_outbound, -d_touching_one, -d_outside}; }

    friend bool operator==(const CensusDelta&, const CensusDelta&) = default;
};

inline TriangleCensus operator+(TriangleCensus c, const CensusDelta& d) {
    c.inside += d.d_inside;
    c.outbound += d.d_outbound;
    c.touching_one += d.d_touching_one;
    c.outside += d.d_outside;
    return c;
}

namespace detail {

template <class F>
void for_each_common(std::span<const vertex_id> a, std::span<const vertex_id> b, F&& f) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            f(*i);
            ++i;
            ++j;
        }
    }
}

// Triangles through v, split by how many of the two other corners are in the set.
struct TriangleSplit {
    std::uint64_t none = 0;
    std::uint64_t one = 0;
    std::uint64_t two = 0;
};

template <class Member>
TriangleSplit split_triangles_at(const Graph& g, vertex_id v, Member&& in_set) {
    TriangleSplit split;
    const auto nv = g.neighbors(v);
    for (vertex_id w : nv) {
        const bool w_in = in_set(w);
        for_each_common(nv, g.neighbors(w), [&](vertex_id x) {
            if (x <= w) {
                return;
            }
            switch (static_cast<int>(w_in) + static_cast<int>(in_set(x))) {
            case 0: ++split.none; break;
            case 1: ++split.one; break;
            default: ++split.two; break;
            }
        });
    }
    return split;
}

// Adding v to S moves each triangle through v up one bucket.
inline CensusDelta delta_from_split(const TriangleSplit& s) {
    return {BigInt(s.two), BigInt(s.one) - BigInt(s.two), BigInt(s.none) - BigInt(s.one),
            -BigInt(s.none)};
}

} // namespace detail

/// Degree-ordered triangle index. Each vertex keeps only neighbours of higher
/// (degree, id) rank, so every triangle is listed exactly once from its
/// lowest-ranked corner in O(m^{3/2}) time.
class TriangleIndex {
public:
    explicit TriangleIndex(const Graph& g) : offsets_(g.vertex_count() + 1, 0) {
        const auto n = g.vertex_count();
        auto higher = [&](vertex_id a, vertex_id b) {
            return g.degree(a) != g.degree(b) ? g.degree(a) < g.degree(b) : a < b;
        };
        for (vertex_id u = 0; u < n; ++u) {
            for (vertex_id v : g.neighbors(u)) {
                if (higher(u, v)) {
                    ++offsets_[u + 1];
                }
            }
        }
        std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
        forward_.reserve(offsets_[n]);
        for (vertex_id u = 0; u < n; ++u) {
            for (vertex_id v : g.neighbors(u)) {
                if (higher(u, v)) {
                    forward_.push_back(v);
                }
            }
        }
    }

    // f(a, b, c) once per triangle.
    template <class F>
    void for_each_triangle(F&& f) const {
        const auto n = static_cast<vertex_id>(offsets_.size() - 1);
        for (vertex_id u = 0; u < n; ++u) {
            const auto fu = forward(u);
            for (vertex_id v : fu) {
                detail::for_each_common(fu, forward(v), [&](vertex_id w) { f(u, v, w); });
            }
        }
    }

    std::uint64_t triangle_count() const {
        std::uint64_t count = 0;
        for_each_triangle([&](vertex_id, vertex_id, vertex_id) { ++count; });
        return count;
    }

    TriangleCensus census(const VertexSet& s) const {
        std::array<std::uint64_t, 4> bucket{};
        for_each_triangle([&](vertex_id a, vertex_id b, vertex_id c) {
            ++bucket[static_cast<std::size_t>(s.contains(a)) + s.contains(b) + s.contains(c)];
        });
        return {BigInt(bucket[3]), BigInt(bucket[2]), BigInt(bucket[1]), BigInt(bucket[0])};
    }

private:
    std::span<const vertex_id> forward(vertex_id u) const {
        return {forward_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }

    std::vector<std::size_t> offsets_;
    std::vector<vertex_id> forward_;
};

inline TriangleCensus census(const Graph& g, const VertexSet& s) {
    require_valid(g, s);
    return TriangleIndex(g).census(s);
}

inline std::uint64_t triangle_count(const Graph& g) {
    return TriangleIndex(g).triangle_count();
}

/// Δ(uv): number of triangles containing the edge uv.
inline std::uint64_t edge_triangle_count(const Graph& g, vertex_id u, vertex_id v) {
    if (!g.has_edge(u, v)) {
        throw domain_error("(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
    }
    std::uint64_t count = 0;
    detail::for_each_common(g.neighbors(u), g.neighbors(v), [&](vertex_id) { ++count; });
    return count;
}

/// census(g, s) + add_vertex_delta(g, s, v) == census(g, s ∪ {v}).
inline CensusDelta add_vertex_delta(const Graph& g, const VertexSet& s, vertex_id v) {
    require_valid(g, s);
    if (v >= g.vertex_count()) {
        throw validation_error("vertex " + std::to_string(v) + " out of range");
    }
    if (s.contains(v)) {
        throw domain_error("vertex " + std::to_string(v) + " is already in the set");
    }
    return detail::delta_from_split(
        detail::split_triangles_at(g, v, [&](vertex_id x) { return s.contains(x); }));
}

/// census(g, s) + remove_vertex_delta(g, s, v) == census(g, s \ {v}).
inline CensusDelta remove_vertex_delta(const Graph& g, const VertexSet& s, vertex_id v) {
    require_valid(g, s);
    if (!s.contains(v)) {
        throw domain_error("vertex " + std::to_string(v) + " is not in the set");
    }
    return -detail::delta_from_split(
        detail::split_triangles_at(g, v, [&](vertex_id x) { return s.contains(x); }));
}

namespace detail {

// Bitmask form of split_triangles_at for graphs of at most 64 vertices.
// `adj[x]` is the neighbourhood mask of x; `set` is the current S.
inline TriangleSplit split_triangles_at(std::span<const std::uint64_t> adj, vertex_id v,
                                        std::uint64_t set) {
    const std::uint64_t nv = adj[v];
    std::uint64_t in_twice = 0;  // ordered pairs (w, x), both in S
    std::uint64_t mixed = 0;     // w in S, x not
    std::uint64_t out_twice = 0; // ordered pairs, neither in S
    for (std::uint64_t rest = nv; rest; rest &= rest - 1) {
        const auto w = static_cast<vertex_id>(std::countr_zero(rest));
        const std::uint64_t common = adj[w] & nv;
        if (set >> w & 1u) {
            in_twice += static_cast<std::uint64_t>(std::popcount(common & set));
            mixed += static_cast<std::uint64_t>(std::popcount(common & ~set));
        } else {
            out_twice += static_cast<std::uint64_t>(std::popcount(common & ~set));
        }
    }
    return {out_twice / 2, mixed, in_twice / 2};
}

} // namespace detail

} // namespace cohesion_lab

#endif // COHESION_LAB_TRIANGLES_HPP
