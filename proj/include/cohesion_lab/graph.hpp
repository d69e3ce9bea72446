#ifndef COHESION_LAB_GRAPH_HPP
#define COHESION_LAB_GRAPH_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace cohesion_lab {

using vertex_id = std::uint32_t;
using edge = std::pair<vertex_id, vertex_id>;

/// Subset of the vertices of one graph, stored as a bitset over the graph's
/// dense id range. Iteration is in ascending id order.
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    VertexSet(std::size_t universe, std::span<const vertex_id> members)
        : VertexSet(universe) {
        for (vertex_id v : members) {
            insert(v);
        }
    }

    VertexSet(std::size_t universe, std::initializer_list<vertex_id> members)
        : VertexSet(universe, std::span<const vertex_id>(members.begin(), members.size())) {}

    static VertexSet full(std::size_t universe) {
        VertexSet s(universe);
        for (std::size_t v = 0; v < universe; ++v) {
            s.insert(static_cast<vertex_id>(v));
        }
        return s;
    }

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool contains(vertex_id v) const noexcept {
        return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1u) != 0;
    }

    // Returns true when v was not already present.
    bool insert(vertex_id v) {
        check(v);
        auto& w = words_[v >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (v & 63);
        if (w & bit) {
            return false;
        }
        w |= bit;
        ++size_;
        return true;
    }

    bool erase(vertex_id v) {
        check(v);
        auto& w = words_[v >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (v & 63);
        if (!(w & bit)) {
            return false;
        }
        w &= ~bit;
        --size_;
        return true;
    }

    std::vector<vertex_id> members() const {
        std::vector<vertex_id> out;
        out.reserve(size_);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                out.push_back(static_cast<vertex_id>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return out;
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    void check(vertex_id v) const {
        if (v >= universe_) {
            throw validation_error("vertex " + std::to_string(v) + " outside set universe of size " +
                                   std::to_string(universe_));
        }
    }

    std::size_t universe_ = 0;
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Immutable simple undirected graph with dense ids 0..n-1, sorted adjacency
/// (CSR layout) and optional external labels.
class Graph {
public:
    Graph() : offsets_(1, 0) {}

    // Validates: endpoints in range, no self-loops, no duplicate edges (in either
    // orientation). `labels` is empty or has exactly n distinct entries.
    static Graph from_edges(std::size_t n, std::span<const edge> edges,
                            std::vector<std::string> labels = {}) {
        if (n > std::numeric_limits<vertex_id>::max()) {
            throw validation_error("vertex count exceeds id range");
        }
        if (!labels.empty() && labels.size() != n) {
            throw validation_error("label count " + std::to_string(labels.size()) +
                                   " does not match vertex count " + std::to_string(n));
        }
        Graph g;
        g.offsets_.assign(n + 1, 0);
        for (auto [u, v] : edges) {
            if (u >= n || v >= n) {
                throw validation_error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                       ") references a vertex outside 0.." +
                                       std::to_string(n == 0 ? 0 : n - 1));
            }
            if (u == v) {
                throw validation_error("self-loop on vertex " + std::to_string(u));
            }
            ++g.offsets_[u + 1];
            ++g.offsets_[v + 1];
        }
        for (std::size_t i = 0; i < n; ++i) {
            g.offsets_[i + 1] += g.offsets_[i];
        }
        g.adjacency_.resize(g.offsets_[n]);
        std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
        for (auto [u, v] : edges) {
            g.adjacency_[fill[u]++] = v;
            g.adjacency_[fill[v]++] = u;
        }
        for (std::size_t v = 0; v < n; ++v) {
            auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
            auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
            std::sort(first, last);
            if (auto dup = std::adjacent_find(first, last); dup != last) {
                throw validation_error("duplicate edge (" + std::to_string(v) + "," +
                                       std::to_string(*dup) + ")");
            }
        }
        g.edge_count_ = edges.size();
        g.labels_ = std::move(labels);
        for (std::size_t v = 0; v < g.labels_.size(); ++v) {
            if (!g.index_.emplace(g.labels_[v], static_cast<vertex_id>(v)).second) {
                throw validation_error("duplicate vertex label '" + g.labels_[v] + "'");
            }
        }
        return g;
    }

    static Graph from_edges(std::size_t n, std::initializer_list<edge> edges) {
        return from_edges(n, std::span<const edge>(edges.begin(), edges.size()));
    }

    std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const vertex_id> neighbors(vertex_id v) const {
        return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    std::size_t degree(vertex_id v) const { return offsets_[v + 1] - offsets_[v]; }

    bool has_edge(vertex_id u, vertex_id v) const {
        if (u >= vertex_count() || v >= vertex_count()) {
            return false;
        }
        auto nb = degree(u) <= degree(v) ? neighbors(u) : neighbors(v);
        return std::binary_search(nb.begin(), nb.end(), degree(u) <= degree(v) ? v : u);
    }

    // All edges as (u, v) with u < v, sorted lexicographically.
    std::vector<edge> edges() const {
        std::vector<edge> out;
        out.reserve(edge_count_);
        for (vertex_id u = 0; u < vertex_count(); ++u) {
            for (vertex_id v : neighbors(u)) {
                if (u < v) {
                    out.emplace_back(u, v);
                }
            }
        }
        return out;
    }

    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    std::string label(vertex_id v) const {
        return labels_.empty() ? std::to_string(v) : labels_[v];
    }

    // Resolves an external token. Unlabeled graphs accept decimal ids.
    std::optional<vertex_id> find(std::string_view token) const {
        if (!labels_.empty()) {
            auto it = index_.find(std::string(token));
            if (it == index_.end()) {
                return std::nullopt;
            }
            return it->second;
        }
        if (token.empty() || token.size() > 10 ||
            !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            return std::nullopt;
        }
        const std::uint64_t id = std::stoull(std::string(token));
        if (id >= vertex_count()) {
            return std::nullopt;
        }
        return static_cast<vertex_id>(id);
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_ && a.labels_ == b.labels_;
    }

private:
    std::vector<std::size_t> offsets_;
    std::vector<vertex_id> adjacency_;
    std::size_t edge_count_ = 0;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, vertex_id> index_;
};

inline void require_valid(const Graph& g, const VertexSet& s) {
    if (s.universe() != g.vertex_count()) {
        throw validation_error("vertex set universe " + std::to_string(s.universe()) +
                               " does not match graph of " + std::to_string(g.vertex_count()) +
                               " vertices");
    }
}

namespace detail {

inline bool is_decimal(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Decimal tokens first, in numeric order; all other tokens after, in byte order.
inline bool natural_less(const std::string& a, const std::string& b) {
    const bool da = is_decimal(a);
    const bool db = is_decimal(b);
    if (da != db) {
        return da;
    }
    if (da) {
        auto strip = [](std::string_view s) {
            const auto nz = s.find_first_not_of('0');
            return nz == std::string_view::npos ? std::string_view("0") : s.substr(nz);
        };
        const auto sa = strip(a);
        const auto sb = strip(b);
        if (sa.size() != sb.size()) {
            return sa.size() < sb.size();
        }
        if (sa != sb) {
            return sa < sb;
        }
    }
    return a < b;
}

} // namespace detail

/// Reads the whitespace-separated edge-list format: one edge per line, `#` comment
/// lines and blank lines ignored. Tokens are renumbered densely (decimal tokens in
/// numeric order first, then the rest in byte order) and kept as labels.
inline Graph parse_edge_list(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> raw;
    std::vector<std::size_t> line_of;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a >> b)) {
            throw parse_error(line_no, "expected two vertex tokens, got '" + line + "'");
        }
        if (fields >> extra) {
            throw parse_error(line_no, "unexpected third token '" + extra + "'");
        }
        if (a == b) {
            throw validation_error("line " + std::to_string(line_no) + ": self-loop on '" + a + "'");
        }
        raw.emplace_back(std::move(a), std::move(b));
        line_of.push_back(line_no);
    }

    std::vector<std::string> tokens;
    tokens.reserve(raw.size() * 2);
    for (const auto& [a, b] : raw) {
        tokens.push_back(a);
        tokens.push_back(b);
    }
    std::sort(tokens.begin(), tokens.end(), detail::natural_less);
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());

    std::unordered_map<std::string, vertex_id> id;
    id.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        id.emplace(tokens[i], static_cast<vertex_id>(i));
    }

    std::vector<edge> edges;
    edges.reserve(raw.size());
    std::vector<std::pair<edge, std::size_t>> seen;
    seen.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        vertex_id u = id.at(raw[i].first);
        vertex_id v = id.at(raw[i].second);
        edges.emplace_back(u, v);
        seen.push_back({{std::min(u, v), std::max(u, v)}, line_of[i]});
    }
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 1; i < seen.size(); ++i) {
        if (seen[i].first == seen[i - 1].first) {
            throw validation_error("line " + std::to_string(seen[i].second) + ": duplicate edge '" +
                                   tokens[seen[i].first.first] + " " + tokens[seen[i].first.second] +
                                   "' (first seen on line " + std::to_string(seen[i - 1].second) +
                                   ")");
        }
    }
    const std::size_t n = tokens.size();
    return Graph::from_edges(n, edges, std::move(tokens));
}

inline Graph parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in);
}

// Isolated vertices have no representation in this format and are dropped.
inline std::string to_edge_list(const Graph& g) {
    std::string out;
    for (auto [u, v] : g.edges()) {
        out += g.label(u);
        out += ' ';
        out += g.label(v);
        out += '\n';
    }
    return out;
}

/// Subgraph induced by `s`; vertex i of the result is the i-th smallest member of `s`.
inline Graph induced_subgraph(const Graph& g, const VertexSet& s) {
    require_valid(g, s);
    const auto members = s.members();
    std::vector<vertex_id> local(g.vertex_count(), 0);
    for (std::size_t i = 0; i < members.size(); ++i) {
        local[members[i]] = static_cast<vertex_id>(i);
    }
    std::vector<edge> edges;
    for (vertex_id u : members) {
        for (vertex_id v : g.neighbors(u)) {
            if (u < v && s.contains(v)) {
                edges.emplace_back(local[u], local[v]);
            }
        }
    }
    std::vector<std::string> labels;
    if (g.has_labels()) {
        for (vertex_id u : members) {
            labels.push_back(g.label(u));
        }
    }
    return Graph::from_edges(members.size(), edges, std::move(labels));
}

/// True iff G[s] has a single connected component. Empty and singleton sets count as connected.
inline bool is_connected(const Graph& g, const VertexSet& s) {
    require_valid(g, s);
    if (s.size() <= 1) {
        return true;
    }
    const auto members = s.members();
    VertexSet seen(g.vertex_count());
    std::vector<vertex_id> stack{members.front()};
    seen.insert(members.front());
    while (!stack.empty()) {
        const vertex_id u = stack.back();
        stack.pop_back();
        for (vertex_id v : g.neighbors(u)) {
            if (s.contains(v) && seen.insert(v)) {
                stack.push_back(v);
            }
        }
    }
    return seen.size() == s.size();
}

inline bool is_connected(const Graph& g) {
    return is_connected(g, VertexSet::full(g.vertex_count()));
}

// Components of the whole graph, each sorted, ordered by smallest member.
inline std::vector<std::vector<vertex_id>> connected_components(const Graph& g) {
    std::vector<std::vector<vertex_id>> components;
    std::vector<bool> seen(g.vertex_count(), false);
    for (vertex_id start = 0; start < g.vertex_count(); ++start) {
        if (seen[start]) {
            continue;
        }
        auto& component = components.emplace_back();
        std::vector<vertex_id> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            const vertex_id u = stack.back();
            stack.pop_back();
            component.push_back(u);
            for (vertex_id v : g.neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
            }
        }
        std::sort(component.begin(), component.end());
    }
    return components;
}

} // namespace cohesion_lab

#endif // COHESION_LAB_GRAPH_HPP
