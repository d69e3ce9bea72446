#ifndef COHESION_LAB_VERIFY_HPP
#define COHESION_LAB_VERIFY_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "bigint.hpp"
#include "cohesion.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "reduction.hpp"
#include "solvers.hpp"
#include "triangles.hpp"

namespace cohesion_lab {

struct Counterexample {
    std::string kind;
    std::size_t n = 0;
    std::string edges; // edge-list format, dense ids
    std::string detail;
};

/// Outcome of one property over many instances. `failures` keeps the first
/// few counterexamples; `failure_count` counts all of them.
struct PropertyReport {
    static constexpr std::size_t kept_failures = 20;

    std::string property;
    std::uint64_t instances_checked = 0;
    std::uint64_t failure_count = 0;
    std::vector<Counterexample> failures;
    std::map<std::string, std::uint64_t> counters;
    std::map<std::string, std::string> facts;

    bool passed() const { return failure_count == 0; }

    void fail(Counterexample c) {
        ++failure_count;
        if (failures.size() < kept_failures) {
            failures.push_back(std::move(c));
        }
    }

    void merge(const PropertyReport& other) {
        instances_checked += other.instances_checked;
        for (const auto& f : other.failures) {
            if (failures.size() < kept_failures) {
                failures.push_back(f);
            }
        }
        failure_count += other.failure_count;
        for (const auto& [k, v] : other.counters) {
            counters[k] += v;
        }
    }
};

inline Counterexample make_counterexample(std::string kind, const Graph& g, std::string detail) {
    std::string edges;
    for (auto [u, v] : g.edges()) {
        edges += std::to_string(u) + " " + std::to_string(v) + "\n";
    }
    return {std::move(kind), g.vertex_count(), std::move(edges), std::move(detail)};
}

inline std::string mask_string(std::uint64_t mask) {
    std::string s = "{";
    for (bool first = true; mask; mask &= mask - 1, first = false) {
        s += (first ? "" : ",") + std::to_string(std::countr_zero(mask));
    }
    return s + "}";
}

// ---------------------------------------------------------------------------
// Graph sources

// Graph on n vertices whose edges are the set bits of `mask` over the pairs
// (0,1), (0,2), ..., (n-2,n-1).
inline Graph graph_from_pair_mask(std::size_t n, std::uint64_t mask) {
    std::vector<edge> edges;
    std::size_t bit = 0;
    for (vertex_id u = 0; u < n; ++u) {
        for (vertex_id v = u + 1; v < n; ++v, ++bit) {
            if (mask >> bit & 1u) {
                edges.emplace_back(u, v);
            }
        }
    }
    return Graph::from_edges(n, edges);
}

inline std::uint64_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

// Erdős–Rényi G(n, p) with p drawn from {0.3, 0.5, 0.7}.
inline Graph random_graph(std::size_t n, std::mt19937_64& rng) {
    static constexpr unsigned percent[] = {30, 50, 70};
    const unsigned p = percent[rng() % 3];
    std::vector<edge> edges;
    for (vertex_id u = 0; u < n; ++u) {
        for (vertex_id v = u + 1; v < n; ++v) {
            if (rng() % 100 < p) {
                edges.emplace_back(u, v);
            }
        }
    }
    return Graph::from_edges(n, edges);
}

inline Graph random_connected_graph(std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        Graph g = random_graph(n, rng);
        if (is_connected(g)) {
            return g;
        }
    }
}

inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(trial),
                      static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

// ---------------------------------------------------------------------------
// Oracles

/// Classifies every vertex triple directly, O(n³). Independent of TriangleIndex.
inline TriangleCensus naive_census(const Graph& g, const VertexSet& s) {
    const std::size_t n = g.vertex_count();
    if (n > 500) {
        throw refusal_error("naive census is limited to 500 vertices, got " + std::to_string(n));
    }
    require_valid(g, s);
    std::vector<char> adj(n * n, 0);
    for (auto [u, v] : g.edges()) {
        adj[u * n + v] = adj[v * n + u] = 1;
    }
    std::uint64_t bucket[4] = {0, 0, 0, 0};
    for (vertex_id a = 0; a < n; ++a) {
        for (vertex_id b = a + 1; b < n; ++b) {
            if (!adj[a * n + b]) {
                continue;
            }
            for (vertex_id c = b + 1; c < n; ++c) {
                if (adj[a * n + c] && adj[b * n + c]) {
                    ++bucket[static_cast<int>(s.contains(a)) + s.contains(b) + s.contains(c)];
                }
            }
        }
    }
    return {BigInt(bucket[3]), BigInt(bucket[2]), BigInt(bucket[1]), BigInt(bucket[0])};
}

namespace detail {

inline std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
    std::vector<std::uint64_t> adj(g.vertex_count(), 0);
    for (auto [u, v] : g.edges()) {
        adj[u] |= std::uint64_t{1} << v;
        adj[v] |= std::uint64_t{1} << u;
    }
    return adj;
}

inline bool mask_connected(std::span<const std::uint64_t> adj, std::uint64_t s) {
    if (std::popcount(s) <= 1) {
        return true;
    }
    std::uint64_t seen = s & -s;
    std::uint64_t frontier = seen;
    while (frontier) {
        std::uint64_t next = 0;
        for (std::uint64_t f = frontier; f; f &= f - 1) {
            next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
        }
        frontier = next & s & ~seen;
        seen |= frontier;
    }
    return seen == s;
}

// Triangles as vertex masks, found by a plain triple loop.
inline std::vector<std::uint64_t> triangle_masks(const Graph& g) {
    const auto adj = adjacency_masks(g);
    std::vector<std::uint64_t> out;
    const auto n = static_cast<vertex_id>(g.vertex_count());
    for (vertex_id a = 0; a < n; ++a) {
        for (vertex_id b = a + 1; b < n; ++b) {
            if (!(adj[a] >> b & 1u)) {
                continue;
            }
            for (vertex_id c = b + 1; c < n; ++c) {
                if ((adj[a] >> c & 1u) && (adj[b] >> c & 1u)) {
                    out.push_back((std::uint64_t{1} << a) | (std::uint64_t{1} << b) |
                                  (std::uint64_t{1} << c));
                }
            }
        }
    }
    return out;
}

// Census and exact cohesion rank of every subset of a small graph.
struct SubsetTable {
    std::vector<std::uint32_t> inside;
    std::vector<std::uint32_t> outbound;
    std::vector<CohesionValue> value;
    std::vector<std::uint32_t> rank; // equal values share a rank; higher is better

    explicit SubsetTable(const Graph& g) {
        const std::size_t n = g.vertex_count();
        const std::size_t count = std::size_t{1} << n;
        const auto tris = triangle_masks(g);
        inside.assign(count, 0);
        outbound.assign(count, 0);
        value.resize(count);
        for (std::uint64_t m = 0; m < count; ++m) {
            for (std::uint64_t t : tris) {
                const int c = std::popcount(t & m);
                inside[m] += c == 3;
                outbound[m] += c == 2;
            }
            value[m] = cohesion(BigInt(std::popcount(m)), inside[m], outbound[m]);
        }
        std::vector<std::uint32_t> order(count);
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return value[a] < value[b]; });
        rank.assign(count, 0);
        for (std::size_t i = 1; i < count; ++i) {
            rank[order[i]] = rank[order[i - 1]] + (value[order[i - 1]] < value[order[i]] ? 1 : 0);
        }
    }
};

} // namespace detail

// ---------------------------------------------------------------------------
// Property checks

/// For all disjoint S1, S2 with no edge between them and |S1|,|S2| >= 2:
/// C(S1) <= C(S1 ∪ S2) implies C(S2) > C(S1 ∪ S2).
/// Pairs where i(S1) = i(S2) = 0 make all three cohesions 0, so the strict
/// conclusion cannot hold; they are counted under "degenerate_zero" instead of
/// being reported as failures.
inline PropertyReport check_lemma1(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n > 10) {
        throw refusal_error("lemma check is limited to 10 vertices, got " + std::to_string(n));
    }
    PropertyReport report;
    report.property = "lemma1";
    const auto adj = detail::adjacency_masks(g);
    const detail::SubsetTable table(g);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t s1 = 1; s1 <= full; ++s1) {
        if (std::popcount(s1) < 2) {
            continue;
        }
        std::uint64_t reach = 0;
        for (std::uint64_t r = s1; r; r &= r - 1) {
            reach |= adj[static_cast<std::size_t>(std::countr_zero(r))];
        }
        const std::uint64_t avail = full & ~s1 & ~reach;
        for (std::uint64_t s2 = avail; s2; s2 = (s2 - 1) & avail) {
            if (std::popcount(s2) < 2) {
                continue;
            }
            ++report.instances_checked;
            const std::uint64_t u = s1 | s2;
            const bool premise = table.rank[s1] <= table.rank[u];
            const bool conclusion = table.rank[s2] > table.rank[u];
            if (!premise || conclusion) {
                ++report.counters[premise ? "implication_holds" : "premise_false"];
                continue;
            }
            if (table.inside[s1] + table.inside[s2] == 0) {
                ++report.counters["degenerate_zero"];
                continue;
            }
            report.fail(make_counterexample(
                "lemma1_violation", g,
                "S1=" + mask_string(s1) + " C=" + table.value[s1].str() + ", S2=" +
                    mask_string(s2) + " C=" + table.value[s2].str() +
                    ", union C=" + table.value[u].str()));
        }
    }
    return report;
}

/// Every subset attaining the all-subsets maximum cohesion is connected, and
/// solve_exact reaches that maximum. Triangle-free graphs have maximum 0, shared
/// by every subset; they are counted under "no_positive_cohesion" and only the
/// solver agreement is checked.
inline PropertyReport check_theorem1(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n > 8) {
        throw refusal_error("theorem check is limited to 8 vertices, got " + std::to_string(n));
    }
    PropertyReport report;
    report.property = "theorem1";
    report.instances_checked = 1;
    const auto adj = detail::adjacency_masks(g);
    const detail::SubsetTable table(g);
    const std::size_t count = std::size_t{1} << n;
    CohesionValue best;
    for (std::size_t m = 0; m < count; ++m) {
        best = std::max(best, table.value[m]);
    }
    if (best.is_zero()) {
        ++report.counters["no_positive_cohesion"];
    } else {
        for (std::size_t m = 0; m < count; ++m) {
            if (table.value[m] == best) {
                ++report.counters["maxima"];
                if (!detail::mask_connected(adj, m)) {
                    report.fail(make_counterexample("disconnected_maximum", g,
                                                    "S=" + mask_string(m) + " C=" + best.str()));
                }
            }
        }
    }
    const SolverResult exact = solve_exact(g);
    if (exact.best_value != best) {
        report.fail(make_counterexample("solver_mismatch", g,
                                        "all-subsets max " + best.str() + ", solve_exact " +
                                            exact.best_value.str()));
    }
    if (!is_connected(g, exact.best_set)) {
        report.fail(make_counterexample("solver_disconnected", g, "solver returned a disconnected set"));
    }
    return report;
}

struct Theorem3Options {
    std::size_t full_enumeration_limit = 20; // transformed vertices for exhaustive search
    std::size_t random_samples = 32;
    std::uint64_t rng_seed = 0;
};

namespace detail {

inline std::vector<std::vector<vertex_id>> k_cliques(const Graph& g, std::size_t k) {
    std::vector<std::vector<vertex_id>> out;
    const std::size_t n = g.vertex_count();
    std::vector<vertex_id> pick;
    std::function<void(vertex_id)> rec = [&](vertex_id from) {
        if (pick.size() == k) {
            out.push_back(pick);
            return;
        }
        for (vertex_id v = from; v < n; ++v) {
            if (std::all_of(pick.begin(), pick.end(), [&](vertex_id u) { return g.has_edge(u, v); })) {
                pick.push_back(v);
                rec(v + 1);
                pick.pop_back();
            }
        }
    };
    rec(0);
    return out;
}

} // namespace detail

/// Brute-force check of "G has a k-clique iff G' has a connected set with
/// cohesion >= λ" at one gadget size. The `status` fact is one of:
///   confirmed          the iff holds (exhaustively, or via a witness round trip)
///   gadget_too_small   no k-clique, yet a connected set reaches λ
///   unrefuted_sampled  no k-clique and sampling found no set reaching λ
///   logic_failure      a clique's image misses λ or fails to round-trip
inline PropertyReport check_theorem3(const Graph& g, std::size_t k, std::size_t gadget_size,
                                     const Theorem3Options& opts = {}) {
    if (g.vertex_count() > 6) {
        throw refusal_error("theorem 3 check is limited to 6 original vertices");
    }
    ReduceOptions ro;
    ro.gadget_size = BigInt(gadget_size);
    const ReductionInstance inst = reduce(g, k, ro);
    if (!inst.materialized()) {
        throw refusal_error("transformed graph has " + inst.transformed_vertices.str() +
                            " vertices, above the materialization cap");
    }
    const Graph& t = *inst.transformed;
    const std::size_t big_n = t.vertex_count();
    const TriangleIndex index(t);

    PropertyReport report;
    report.property = "theorem3";
    report.facts["instance"] = "n=" + std::to_string(g.vertex_count()) + " k=" + std::to_string(k) +
                               " gadget=" + std::to_string(gadget_size);
    report.facts["lambda"] = inst.lambda.str();

    const auto cliques = detail::k_cliques(g, k);
    report.counters["cliques"] = cliques.size();
    bool logic_ok = true;
    bool round_trip = false;
    for (const auto& c : cliques) {
        ++report.instances_checked;
        try {
            const auto fw = forward_witness(inst, VertexSet(g.vertex_count(), c), &index);
            if (fw.cohesion != inst.lambda || !fw.cross_checked) {
                logic_ok = false;
                report.fail(make_counterexample("logic_failure", g,
                                                "clique image cohesion " + fw.cohesion.str() +
                                                    " != lambda " + inst.lambda.str()));
                continue;
            }
            const auto bw = backward_witness(inst, VertexSet(big_n, fw.image), &index);
            if (bw.verdict == BackwardVerdict::clique) {
                round_trip = true;
            } else {
                logic_ok = false;
                report.fail(make_counterexample("logic_failure", g,
                                                std::string("clique image came back as ") +
                                                    to_string(bw.verdict)));
            }
        } catch (const error& e) {
            logic_ok = false;
            report.fail(make_counterexample("logic_failure", g, e.what()));
        }
    }

    // Search G' for connected sets reaching λ that are not original cliques.
    std::uint64_t cohesive = 0;
    std::uint64_t spurious = 0;
    std::string spurious_example;
    const bool exhaustive = big_n <= opts.full_enumeration_limit;
    auto note = [&](const VertexSet& s, BackwardVerdict verdict, const CohesionValue& value) {
        ++cohesive;
        if (verdict != BackwardVerdict::clique) {
            ++spurious;
            if (spurious_example.empty()) {
                const auto ids = s.members();
                std::string members;
                for (std::size_t i = 0; i < ids.size() && i < 8; ++i) {
                    members += (i ? "," : "") + t.label(ids[i]);
                }
                if (ids.size() > 8) {
                    members += ",... " + std::to_string(ids.size()) + " vertices";
                }
                spurious_example = "{" + members + "} C=" + value.str() + " (" + to_string(verdict) + ")";
            }
        }
    };
    if (exhaustive) {
        const auto adj = detail::adjacency_masks(t);
        const auto tris = detail::triangle_masks(t);
        const auto lam_num = inst.lambda.numerator().convert_to<std::uint64_t>();
        const auto lam_den = inst.lambda.denominator().convert_to<std::uint64_t>();
        const std::uint64_t core = (std::uint64_t{1} << g.vertex_count()) - 1;
        using u128 = unsigned __int128;
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << big_n); ++m) {
            const auto size = static_cast<unsigned>(std::popcount(m));
            if (size < 3) {
                continue;
            }
            std::uint64_t in = 0, out = 0;
            for (std::uint64_t tri : tris) {
                const int c = std::popcount(tri & m);
                in += c == 3;
                out += c == 2;
            }
            if (in == 0 ||
                u128(in) * in * lam_den < u128(lam_num) * detail::triples(size) * (in + out) ||
                !detail::mask_connected(adj, m)) {
                continue;
            }
            BackwardVerdict verdict = BackwardVerdict::clique;
            if (m & ~core) {
                verdict = BackwardVerdict::contains_gadget_vertex;
            } else {
                for (std::uint64_t a = m; a; a &= a - 1) {
                    const auto u = static_cast<vertex_id>(std::countr_zero(a));
                    for (std::uint64_t b = a & (a - 1); b; b &= b - 1) {
                        if (!g.has_edge(u, static_cast<vertex_id>(std::countr_zero(b)))) {
                            verdict = BackwardVerdict::not_a_clique;
                        }
                    }
                }
            }
            note(detail::to_vertex_set(big_n, m), verdict,
                 CohesionValue::from_fraction(BigInt(in) * in,
                                              BigInt(detail::triples(size)) * (in + out)));
        }
    } else {
        std::vector<VertexSet> candidates;
        const std::size_t n = g.vertex_count();
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
            if (std::popcount(m) >= 3) {
                candidates.push_back(detail::to_vertex_set(big_n, m));
            }
        }
        const auto block = static_cast<vertex_id>(gadget_size);
        for (std::size_t j = 0; j < inst.non_edges.size(); ++j) {
            const auto [a, b] = inst.non_edges[j];
            VertexSet w(big_n);
            for (vertex_id x = 0; x < block; ++x) {
                w.insert(inst.gadget_begin(j) + x);
            }
            candidates.push_back(w);
            w.insert(a);
            candidates.push_back(w);
            w.insert(b);
            candidates.push_back(w);
        }
        auto rng = trial_rng(opts.rng_seed, 3, gadget_size);
        for (std::size_t r = 0; r < opts.random_samples; ++r) {
            VertexSet s(big_n);
            s.insert(static_cast<vertex_id>(rng() % big_n));
            const std::size_t target = 3 + rng() % std::max<std::size_t>(1, std::min<std::size_t>(big_n, 2 * gadget_size + n) - 2);
            std::vector<vertex_id> frontier;
            while (s.size() < target) {
                frontier.clear();
                for (vertex_id v : s.members()) {
                    for (vertex_id x : t.neighbors(v)) {
                        if (!s.contains(x)) {
                            frontier.push_back(x);
                        }
                    }
                }
                if (frontier.empty()) {
                    break;
                }
                s.insert(frontier[rng() % frontier.size()]);
            }
            candidates.push_back(std::move(s));
        }
        for (const auto& s : candidates) {
            if (s.size() < 3 || !is_connected(t, s)) {
                continue;
            }
            const auto bw = backward_witness(inst, s, &index);
            if (bw.cohesion >= inst.lambda) {
                note(s, bw.verdict, bw.cohesion);
            }
        }
    }
    report.counters["cohesive_sets"] = cohesive;
    report.counters["spurious_cohesive_sets"] = spurious;
    report.facts["strategy"] = exhaustive ? "exhaustive" : "sampled";
    if (!spurious_example.empty()) {
        report.facts["spurious_example"] = spurious_example;
    }

    std::string status;
    if (!logic_ok) {
        status = "logic_failure";
    } else if (!cliques.empty()) {
        status = round_trip ? "confirmed" : "logic_failure";
    } else if (cohesive > 0) {
        status = "gadget_too_small";
        report.fail(make_counterexample("gadget_too_small", g,
                                        "no " + std::to_string(k) + "-clique, but " +
                                            spurious_example + " reaches lambda " +
                                            inst.lambda.str()));
    } else {
        status = exhaustive ? "confirmed" : "unrefuted_sampled";
    }
    report.facts["status"] = status;
    ++report.counters["status_" + status];
    return report;
}

struct GadgetSweep {
    std::vector<std::size_t> sizes;
    std::vector<PropertyReport> reports;
    std::optional<std::size_t> first_confirmed;
    bool logic_failure = false;
};

inline GadgetSweep sweep_gadget_sizes(const Graph& g, std::size_t k, std::vector<std::size_t> sizes,
                                      const Theorem3Options& opts = {}) {
    GadgetSweep sweep;
    sweep.sizes = std::move(sizes);
    for (std::size_t size : sweep.sizes) {
        auto report = check_theorem3(g, k, size, opts);
        const auto& status = report.facts["status"];
        if (status == "confirmed" && !sweep.first_confirmed) {
            sweep.first_confirmed = size;
        }
        sweep.logic_failure = sweep.logic_failure || status == "logic_failure";
        sweep.reports.push_back(std::move(report));
    }
    return sweep;
}

inline std::vector<std::size_t> default_gadget_sweep() {
    return {2, 3, 4, 5, 6, 8, 12, 16, 24, 32, 48, 64};
}

// ---------------------------------------------------------------------------
// Suites

struct SuiteOptions {
    std::uint64_t trials = 100;
    std::uint64_t rng_seed = 0;
    std::size_t workers = 1;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"census_oracle", "lemma1",
                                                   "theorem1",      "theorem3",
                                                   "theorem3_forward", "reduction_structure",
                                                   "lambda"};
    return names;
}

namespace detail {

// Runs body(i) for i in [0, count) on `workers` threads and merges the
// per-index reports in index order, so the result is independent of scheduling.
template <class F>
PropertyReport parallel_reports(std::uint64_t count, std::size_t workers, F&& body) {
    std::vector<PropertyReport> parts(count);
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t i; (i = next.fetch_add(1)) < count;) {
            parts[i] = body(i);
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < std::min<std::uint64_t>(workers, count); ++w) {
            pool.emplace_back(work);
        }
        work();
    }
    PropertyReport total;
    for (const auto& p : parts) {
        total.merge(p);
    }
    return total;
}

inline std::vector<Graph> all_graphs(std::size_t n) {
    std::vector<Graph> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << pair_count(n)); ++m) {
        out.push_back(graph_from_pair_mask(n, m));
    }
    return out;
}

inline PropertyReport census_oracle_suite(const SuiteOptions& o) {
    std::vector<Graph> graphs;
    for (std::size_t n = 0; n <= 5; ++n) {
        auto gs = all_graphs(n);
        graphs.insert(graphs.end(), gs.begin(), gs.end());
    }
    auto compare = [](PropertyReport& r, const Graph& g, const TriangleIndex& idx, const VertexSet& s) {
        ++r.instances_checked;
        const auto fast = idx.census(s);
        const auto slow = naive_census(g, s);
        if (!(fast == slow)) {
            r.fail(make_counterexample("census_mismatch", g,
                                       "S size " + std::to_string(s.size()) + ": inside " +
                                           fast.inside.str() + " vs " + slow.inside.str() +
                                           ", outbound " + fast.outbound.str() + " vs " +
                                           slow.outbound.str()));
        }
    };
    auto report = parallel_reports(graphs.size(), o.workers, [&](std::uint64_t i) {
        PropertyReport r;
        const Graph& g = graphs[i];
        const TriangleIndex idx(g);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.vertex_count()); ++m) {
            compare(r, g, idx, to_vertex_set(g.vertex_count(), m));
        }
        return r;
    });
    report.counters["exhaustive_pairs"] = report.instances_checked;
    report.merge(parallel_reports(o.trials, o.workers, [&](std::uint64_t t) {
        auto rng = trial_rng(o.rng_seed, 1, t);
        const std::size_t n = 1 + rng() % 12;
        const Graph g = random_graph(n, rng);
        VertexSet s(n);
        for (vertex_id v = 0; v < n; ++v) {
            if (rng() % 2) {
                s.insert(v);
            }
        }
        PropertyReport r;
        compare(r, g, TriangleIndex(g), s);
        return r;
    }));
    return report;
}

inline PropertyReport graph_property_suite(const SuiteOptions& o, std::size_t exhaustive_max_n,
                                           std::size_t random_min_n, std::size_t random_max_n,
                                           std::uint64_t stream,
                                           PropertyReport (*check)(const Graph&)) {
    std::vector<Graph> graphs;
    for (std::size_t n = 0; n <= exhaustive_max_n; ++n) {
        auto gs = all_graphs(n);
        graphs.insert(graphs.end(), gs.begin(), gs.end());
    }
    PropertyReport report = parallel_reports(graphs.size(), o.workers,
                                             [&](std::uint64_t i) { return check(graphs[i]); });
    report.counters["exhaustive_graphs"] = graphs.size();
    report.merge(parallel_reports(o.trials, o.workers, [&](std::uint64_t t) {
        auto rng = trial_rng(o.rng_seed, stream, t);
        const std::size_t n = random_min_n + rng() % (random_max_n - random_min_n + 1);
        return check(random_graph(n, rng));
    }));
    report.counters["random_graphs"] = o.trials;
    return report;
}

inline Graph k4_minus_edge() { return Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

inline Graph cycle_graph(std::size_t n) {
    std::vector<edge> edges;
    for (vertex_id v = 0; v < n; ++v) {
        edges.emplace_back(std::min<vertex_id>(v, (v + 1) % n), std::max<vertex_id>(v, (v + 1) % n));
    }
    return Graph::from_edges(n, edges);
}

// Keeps logic failures; "gadget too small" outcomes only feed the counters.
inline void merge_theorem3(PropertyReport& into, PropertyReport r) {
    std::vector<Counterexample> logic;
    for (auto& f : r.failures) {
        if (f.kind != "gadget_too_small") {
            logic.push_back(std::move(f));
        }
    }
    r.failure_count -= r.counters["status_gadget_too_small"];
    r.failures = std::move(logic);
    into.merge(r);
}

inline PropertyReport theorem3_suite(const SuiteOptions& o) {
    PropertyReport report;
    const std::pair<const char*, Graph> fixed[] = {{"k4_minus_edge", k4_minus_edge()},
                                                   {"c5", cycle_graph(5)}};
    for (const auto& [name, g] : fixed) {
        auto sweep = sweep_gadget_sizes(g, 3, default_gadget_sweep(), {20, 32, o.rng_seed});
        std::string statuses;
        for (std::size_t i = 0; i < sweep.sizes.size(); ++i) {
            statuses += (i ? "," : "") + std::to_string(sweep.sizes[i]) + ":" +
                        sweep.reports[i].facts["status"];
            merge_theorem3(report, std::move(sweep.reports[i]));
        }
        report.facts[std::string(name) + "_sweep"] = statuses;
        report.facts[std::string(name) + "_first_confirmed_gadget"] =
            sweep.first_confirmed ? std::to_string(*sweep.first_confirmed) : "none";
        if (!sweep.first_confirmed) {
            report.fail(make_counterexample("iff_never_confirmed", g,
                                            "no swept gadget size confirms the equivalence"));
        }
    }
    report.merge(parallel_reports(o.trials, o.workers, [&](std::uint64_t t) {
        auto rng = trial_rng(o.rng_seed, 4, t);
        const std::size_t n = 4 + rng() % 3;
        const Graph g = random_connected_graph(n, rng);
        const std::size_t k = 3 + rng() % (n - 2);
        PropertyReport r;
        merge_theorem3(r, check_theorem3(g, k, 2, {20, 32, o.rng_seed + t}));
        return r;
    }));
    return report;
}

inline PropertyReport forward_suite(const SuiteOptions& o) {
    return parallel_reports(o.trials, o.workers, [&](std::uint64_t t) {
        auto rng = trial_rng(o.rng_seed, 5, t);
        const std::size_t n = 4 + rng() % 4;
        const Graph g = random_connected_graph(n, rng);
        const std::size_t gadget = 2 + t % 3;
        PropertyReport r;
        for (std::size_t k = 3; k <= n; ++k) {
            const auto inst = reduce(g, k, {BigInt(gadget), 10'000, false});
            const TriangleIndex index(*inst.transformed);
            for (const auto& c : k_cliques(g, k)) {
                ++r.instances_checked;
                try {
                    const auto fw = forward_witness(inst, VertexSet(n, c), &index);
                    if (fw.cohesion != inst.lambda || !fw.cross_checked) {
                        r.fail(make_counterexample("forward_mismatch", g,
                                                   "k=" + std::to_string(k) + " cohesion " +
                                                       fw.cohesion.str() + " lambda " +
                                                       inst.lambda.str()));
                    }
                } catch (const error& e) {
                    r.fail(make_counterexample("forward_error", g, e.what()));
                }
            }
        }
        return r;
    });
}

inline PropertyReport reduction_structure_suite(const SuiteOptions& o) {
    std::vector<Graph> graphs;
    for (std::size_t n = 4; n <= 6; ++n) {
        for (auto& g : all_graphs(n)) {
            if (is_connected(g)) {
                graphs.push_back(std::move(g));
            }
        }
    }
    PropertyReport report = parallel_reports(graphs.size(), o.workers, [&](std::uint64_t i) {
        PropertyReport r;
        const Graph& g = graphs[i];
        for (std::size_t k = 3; k <= g.vertex_count(); ++k) {
            for (std::size_t gadget : {4, 8, 16}) {
                ++r.instances_checked;
                const auto inst = reduce(g, k, {BigInt(gadget), 10'000, false});
                const auto audit = verify_instance(inst);
                if (!audit.passed) {
                    std::string detail = "k=" + std::to_string(k) + " gadget=" + std::to_string(gadget);
                    for (const auto& c : audit.checks) {
                        if (!c.passed) {
                            detail += "; " + c.name + ": " + c.detail;
                        }
                    }
                    r.fail(make_counterexample("structure", g, detail));
                }
            }
        }
        return r;
    });
    report.counters["connected_graphs"] = graphs.size();

    const auto paper_sized = reduce(k4_minus_edge(), 3, {std::nullopt, 0, false});
    ++report.instances_checked;
    if (paper_sized.gadget_size != 512 || paper_sized.transformed_vertices != 516) {
        report.fail(make_counterexample("default_gadget", k4_minus_edge(),
                                        "gadget " + paper_sized.gadget_size.str() + ", vertices " +
                                            paper_sized.transformed_vertices.str()));
    }
    return report;
}

inline PropertyReport lambda_suite() {
    PropertyReport report;
    auto expect = [&](std::size_t k, std::size_t n, BigInt num, BigInt den) {
        ++report.instances_checked;
        const auto got = lambda_threshold(k, n);
        if (got != CohesionValue::from_fraction(num, den)) {
            report.fail({"lambda_value", 0, "",
                         "lambda(" + std::to_string(k) + "," + std::to_string(n) + ") = " + got.str()});
        }
    };
    expect(3, 4, 1, 4);
    expect(4, 6, 1, 4);
    expect(3, 5, 1, 7);
    for (std::size_t n = 4; n <= 50; ++n) {
        expect(n, n, 1, 1);
        for (std::size_t k = 3; k < n; ++k) {
            ++report.instances_checked;
            if (!(lambda_threshold(k, n) < lambda_threshold(k + 1, n))) {
                report.fail({"lambda_not_increasing", 0, "",
                             "n=" + std::to_string(n) + " k=" + std::to_string(k)});
            }
        }
    }
    return report;
}

} // namespace detail

inline PropertyReport run_property(const std::string& name, const SuiteOptions& o) {
    PropertyReport r;
    if (name == "census_oracle") {
        r = detail::census_oracle_suite(o);
    } else if (name == "lemma1") {
        r = detail::graph_property_suite(o, 6, 4, 10, 2, &check_lemma1);
    } else if (name == "theorem1") {
        r = detail::graph_property_suite(o, 5, 1, 8, 6, &check_theorem1);
    } else if (name == "theorem3") {
        r = detail::theorem3_suite(o);
    } else if (name == "theorem3_forward") {
        r = detail::forward_suite(o);
    } else if (name == "reduction_structure") {
        r = detail::reduction_structure_suite(o);
    } else if (name == "lambda") {
        r = detail::lambda_suite();
    } else {
        throw usage_error("unknown property suite '" + name + "'");
    }
    r.property = name;
    return r;
}

/// Runs the named suites in order. Deterministic for a given rng_seed regardless
/// of worker count. Unknown names are rejected before anything runs.
inline std::vector<PropertyReport> run_suite(const std::vector<std::string>& names,
                                             const SuiteOptions& o) {
    for (const auto& name : names) {
        if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
            throw usage_error("unknown property suite '" + name + "'");
        }
    }
    std::vector<PropertyReport> out;
    for (const auto& name : names) {
        out.push_back(run_property(name, o));
    }
    return out;
}

} // namespace cohesion_lab

#endif // COHESION_LAB_VERIFY_HPP
