#ifndef COHESION_LAB_REDUCTION_HPP
#define COHESION_LAB_REDUCTION_HPP

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "bigint.hpp"
#include "cohesion.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "triangles.hpp"

namespace cohesion_lab {

// Raised by reduce() on a disconnected input; callers reduce each component separately.
class disconnected_input : public domain_error {
public:
    explicit disconnected_input(std::vector<std::vector<vertex_id>> components)
        : domain_error("input graph has " + std::to_string(components.size()) +
                       " connected components; reduce each component separately"),
          components_(std::move(components)) {}

    const std::vector<std::vector<vertex_id>>& components() const noexcept { return components_; }

private:
    std::vector<std::vector<vertex_id>> components_;
};

/// Clique instance (G, k) transformed into a Connected-Cohesive instance (G', λ).
///
/// Layout of the transformed graph: vertices 0..n-1 are the original vertices
/// (the embedding is the identity), followed by one block of `gadget_size`
/// vertices per entry of `non_edges`, in order. Each block is a clique joined to
/// both endpoints of its non-edge, and every non-edge is itself added, so the
/// original vertices induce K_n.
struct ReductionInstance {
    Graph original;
    std::size_t k = 0;
    CohesionValue lambda;
    BigInt gadget_size = 0;
    std::vector<edge> non_edges;
    BigInt transformed_vertices = 0;
    BigInt transformed_edges = 0;
    std::optional<Graph> transformed; // absent for virtual (stats-only) instances
    std::vector<vertex_id> embedding;

    std::size_t original_n() const { return original.vertex_count(); }
    bool materialized() const { return transformed.has_value(); }

    // First vertex of gadget block j. Materialized instances only.
    vertex_id gadget_begin(std::size_t j) const {
        return static_cast<vertex_id>(original_n() + j * gadget_size.convert_to<std::size_t>());
    }
};

struct ReduceOptions {
    std::optional<BigInt> gadget_size;          // default 2·C(n,3)^4
    std::size_t materialization_cap = 10'000;   // max transformed vertex count to build
    bool label_vertices = true;                 // carry labels into the transformed graph
};

inline BigInt default_gadget_size(std::size_t n) {
    const BigInt c = binomial(BigInt(n), 3);
    return 2 * c * c * c * c;
}

inline BigInt expected_vertex_count(std::size_t n, std::size_t non_edges, const BigInt& gadget) {
    return BigInt(n) + BigInt(non_edges) * gadget;
}

inline BigInt expected_edge_count(std::size_t n, std::size_t non_edges, const BigInt& gadget) {
    return binomial(BigInt(n), 2) + BigInt(non_edges) * (binomial(gadget, 2) + 2 * gadget);
}

inline std::string gadget_label(std::size_t block, std::size_t index) {
    return "~g" + std::to_string(block) + "." + std::to_string(index);
}

inline ReductionInstance reduce(const Graph& g, std::size_t k, const ReduceOptions& opts = {}) {
    const std::size_t n = g.vertex_count();
    if (n < 4) {
        throw domain_error("reduction needs at least 4 vertices, got " + std::to_string(n));
    }
    if (k < 3 || k > n) {
        throw domain_error("clique size k must satisfy 3 <= k <= n=" + std::to_string(n) +
                           ", got " + std::to_string(k));
    }
    if (!is_connected(g)) {
        throw disconnected_input(connected_components(g));
    }
    const BigInt gadget = opts.gadget_size.value_or(default_gadget_size(n));
    if (gadget < 1) {
        throw domain_error("gadget size must be positive");
    }

    ReductionInstance inst;
    inst.original = g;
    inst.k = k;
    inst.lambda = lambda_threshold(BigInt(k), BigInt(n));
    inst.gadget_size = gadget;
    for (vertex_id u = 0; u < n; ++u) {
        for (vertex_id v = u + 1; v < n; ++v) {
            if (!g.has_edge(u, v)) {
                inst.non_edges.emplace_back(u, v);
            }
        }
    }
    inst.transformed_vertices = expected_vertex_count(n, inst.non_edges.size(), gadget);
    inst.transformed_edges = expected_edge_count(n, inst.non_edges.size(), gadget);
    inst.embedding.resize(n);
    for (vertex_id v = 0; v < n; ++v) {
        inst.embedding[v] = v;
    }
    if (inst.transformed_vertices > opts.materialization_cap) {
        return inst;
    }

    const auto block = gadget.convert_to<std::size_t>();
    const auto total = inst.transformed_vertices.convert_to<std::size_t>();
    std::vector<edge> edges;
    edges.reserve(inst.transformed_edges.convert_to<std::size_t>());
    for (vertex_id u = 0; u < n; ++u) {
        for (vertex_id v = u + 1; v < n; ++v) {
            edges.emplace_back(u, v);
        }
    }
    std::vector<std::string> labels;
    if (opts.label_vertices) {
        labels.reserve(total);
        for (vertex_id v = 0; v < n; ++v) {
            labels.push_back(g.label(v));
        }
    }
    const std::unordered_set<std::string> original_labels(labels.begin(), labels.end());
    for (std::size_t j = 0; j < inst.non_edges.size(); ++j) {
        const auto [a, b] = inst.non_edges[j];
        const vertex_id base = static_cast<vertex_id>(n + j * block);
        for (std::size_t x = 0; x < block; ++x) {
            const auto w = static_cast<vertex_id>(base + x);
            for (std::size_t y = x + 1; y < block; ++y) {
                edges.emplace_back(w, static_cast<vertex_id>(base + y));
            }
            edges.emplace_back(a, w);
            edges.emplace_back(b, w);
            if (opts.label_vertices) {
                labels.push_back(gadget_label(j, x));
                if (original_labels.contains(labels.back())) {
                    throw domain_error("original label '" + labels.back() +
                                       "' collides with a gadget label");
                }
            }
        }
    }
    inst.transformed = Graph::from_edges(total, edges, std::move(labels));
    return inst;
}

struct InstanceCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct InstanceReport {
    bool passed = true;
    std::vector<InstanceCheck> checks;
};

/// Structural audit of a materialized instance by direct inspection of its graph.
inline InstanceReport verify_instance(const ReductionInstance& inst) {
    if (!inst.materialized()) {
        throw unsupported_operation("verify_instance needs a materialized instance");
    }
    const Graph& t = *inst.transformed;
    const std::size_t n = inst.original_n();
    InstanceReport report;
    auto record = [&](std::string name, bool ok, std::string detail) {
        report.passed = report.passed && ok;
        report.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    std::vector<edge> missing;
    for (vertex_id u = 0; u < n; ++u) {
        for (vertex_id v = u + 1; v < n; ++v) {
            if (!inst.original.has_edge(u, v)) {
                missing.emplace_back(u, v);
            }
        }
    }
    record("non_edges", missing == inst.non_edges,
           std::to_string(inst.non_edges.size()) + " recorded, " + std::to_string(missing.size()) +
               " in original");

    const BigInt want_v = expected_vertex_count(n, inst.non_edges.size(), inst.gadget_size);
    const BigInt want_e = expected_edge_count(n, inst.non_edges.size(), inst.gadget_size);
    record("vertex_count", want_v == t.vertex_count() && want_v == inst.transformed_vertices,
           "expected " + want_v.str() + ", got " + std::to_string(t.vertex_count()));
    record("edge_count", want_e == t.edge_count() && want_e == inst.transformed_edges,
           "expected " + want_e.str() + ", got " + std::to_string(t.edge_count()));

    bool core_ok = inst.embedding.size() == n;
    std::string core_detail = "original vertices induce K_" + std::to_string(n);
    for (std::size_t a = 0; core_ok && a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!t.has_edge(inst.embedding[a], inst.embedding[b])) {
                core_ok = false;
                core_detail = "missing core edge " + std::to_string(inst.embedding[a]) + "-" +
                              std::to_string(inst.embedding[b]);
                break;
            }
        }
    }
    record("core_clique", core_ok, core_detail);

    bool gadget_ok = want_v == t.vertex_count();
    std::string gadget_detail = "every gadget vertex sees its block and both endpoints";
    const auto block = inst.gadget_size.convert_to<std::size_t>();
    for (std::size_t j = 0; gadget_ok && j < inst.non_edges.size(); ++j) {
        const auto [a, b] = inst.non_edges[j];
        const vertex_id base = inst.gadget_begin(j);
        for (std::size_t x = 0; gadget_ok && x < block; ++x) {
            const auto w = static_cast<vertex_id>(base + x);
            std::size_t peers = 0;
            bool stray = false;
            for (vertex_id y : t.neighbors(w)) {
                if (y >= base && y < base + block) {
                    ++peers;
                } else if (y != a && y != b) {
                    stray = true;
                }
            }
            const bool spokes = t.has_edge(w, a) && t.has_edge(w, b);
            if (peers != block - 1 || stray || !spokes) {
                gadget_ok = false;
                gadget_detail = "gadget vertex " + std::to_string(w) + " has " +
                                std::to_string(peers) + " block peers" +
                                (stray ? ", stray neighbours" : "") +
                                (spokes ? "" : ", missing spoke");
            }
        }
    }
    record("gadget_adjacency", gadget_ok, gadget_detail);
    return report;
}

struct ForwardWitness {
    std::vector<vertex_id> image; // ids in the transformed graph
    BigInt inside = 0;
    BigInt outbound = 0;
    CohesionValue cohesion;
    bool cross_checked = false; // census on the materialized graph agreed
};

/// Maps a clique of the original graph into G'. Its cohesion there is computed in
/// closed form (i = C(c,3), o = C(c,2)(n-c)) and, when the instance is
/// materialized, recomputed by census; a disagreement throws.
inline ForwardWitness forward_witness(const ReductionInstance& inst, const VertexSet& clique,
                                      const TriangleIndex* index = nullptr) {
    require_valid(inst.original, clique);
    const auto members = clique.members();
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            if (!inst.original.has_edge(members[a], members[b])) {
                throw witness_invalid(inst.original.label(members[a]) + " and " +
                                      inst.original.label(members[b]) +
                                      " are not adjacent in the original graph");
            }
        }
    }
    ForwardWitness w;
    for (vertex_id v : members) {
        w.image.push_back(inst.embedding[v]);
    }
    const BigInt c = members.size();
    w.inside = binomial(c, 3);
    w.outbound = binomial(c, 2) * (BigInt(inst.original_n()) - c);
    w.cohesion = cohesion(c, w.inside, w.outbound);
    if (inst.materialized()) {
        const VertexSet image(inst.transformed->vertex_count(), w.image);
        const TriangleCensus measured =
            index ? index->census(image) : census(*inst.transformed, image);
        if (measured.inside != w.inside || measured.outbound != w.outbound) {
            throw error("forward witness census mismatch: closed form i=" + w.inside.str() +
                        " o=" + w.outbound.str() + ", census i=" + measured.inside.str() +
                        " o=" + measured.outbound.str());
        }
        w.cross_checked = true;
    }
    return w;
}

enum class BackwardVerdict {
    below_threshold,        // cohesion < λ
    clique,                 // a k-clique of the original graph was recovered
    contains_gadget_vertex, // cohesion >= λ but the set uses gadget vertices
    not_a_clique,           // cohesion >= λ, only original vertices, but not a clique of G
    too_small,              // an original clique with fewer than k vertices reached λ
};

inline const char* to_string(BackwardVerdict v) {
    switch (v) {
    case BackwardVerdict::below_threshold: return "below_threshold";
    case BackwardVerdict::clique: return "clique";
    case BackwardVerdict::contains_gadget_vertex: return "contains_gadget_vertex";
    case BackwardVerdict::not_a_clique: return "not_a_clique";
    case BackwardVerdict::too_small: return "too_small";
    }
    return "unknown";
}

struct BackwardWitness {
    std::optional<VertexSet> clique; // over the original graph's vertices
    BackwardVerdict verdict = BackwardVerdict::below_threshold;
    CohesionValue cohesion;
};

/// From a connected set of G' with cohesion >= λ, recovers a k-clique of G (the k
/// smallest members). Sets that reach λ without being an original clique come back
/// without a clique and with the verdict saying why.
inline BackwardWitness backward_witness(const ReductionInstance& inst, const VertexSet& s,
                                        const TriangleIndex* index = nullptr) {
    if (!inst.materialized()) {
        throw unsupported_operation("backward_witness needs a materialized instance");
    }
    const Graph& t = *inst.transformed;
    require_valid(t, s);
    if (!is_connected(t, s)) {
        throw domain_error("set is not connected in the transformed graph");
    }
    BackwardWitness w;
    w.cohesion = cohesion(BigInt(s.size()), index ? index->census(s) : census(t, s));
    if (w.cohesion < inst.lambda) {
        return w;
    }
    const std::size_t n = inst.original_n();
    std::vector<vertex_id> inverse(t.vertex_count(), static_cast<vertex_id>(-1));
    for (vertex_id v = 0; v < n; ++v) {
        inverse[inst.embedding[v]] = v;
    }
    std::vector<vertex_id> originals;
    for (vertex_id x : s.members()) {
        if (inverse[x] == static_cast<vertex_id>(-1)) {
            w.verdict = BackwardVerdict::contains_gadget_vertex;
            return w;
        }
        originals.push_back(inverse[x]);
    }
    std::sort(originals.begin(), originals.end());
    for (std::size_t a = 0; a < originals.size(); ++a) {
        for (std::size_t b = a + 1; b < originals.size(); ++b) {
            if (!inst.original.has_edge(originals[a], originals[b])) {
                w.verdict = BackwardVerdict::not_a_clique;
                return w;
            }
        }
    }
    if (originals.size() < inst.k) {
        w.verdict = BackwardVerdict::too_small;
        return w;
    }
    originals.resize(inst.k);
    w.clique = VertexSet(n, originals);
    w.verdict = BackwardVerdict::clique;
    return w;
}

} // namespace cohesion_lab

#endif // COHESION_LAB_REDUCTION_HPP
