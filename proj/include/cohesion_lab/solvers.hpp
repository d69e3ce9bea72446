#ifndef COHESION_LAB_SOLVERS_HPP
#define COHESION_LAB_SOLVERS_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bigint.hpp"
#include "cohesion.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "triangles.hpp"

namespace cohesion_lab {

inline constexpr std::size_t exact_solver_guard = 32;
inline constexpr std::size_t exact_solver_hard_limit = 64;

struct SearchConfig {
    std::optional<std::size_t> max_subset_size;
    std::optional<std::chrono::milliseconds> time_budget;
    std::optional<VertexSet> seed_set;
    std::size_t heuristic_restarts = 8;
    std::uint64_t rng_seed = 0;
    std::size_t workers = 1;
    bool force = false; // lift the exact-mode guard (up to the 64-vertex hard limit)
};

struct SolverResult {
    VertexSet best_set;
    CohesionValue best_value;
    std::uint64_t explored = 0;
    std::chrono::duration<double> elapsed{};
    bool exact = false;
    bool no_positive_cohesion = false;
};

// Time budget ran out; carries the best set found so far (exact == false).
class partial_result : public error {
public:
    explicit partial_result(SolverResult best)
        : error("time budget exhausted after " + std::to_string(best.explored) +
                " subsets; result is best-so-far"),
          result_(std::move(best)) {}

    const SolverResult& result() const noexcept { return result_; }

private:
    SolverResult result_;
};

namespace detail {

// Candidate set with its census, as seen by the exact solver.
struct MaskCandidate {
    std::uint64_t members = 0;
    std::uint64_t inside = 0;
    std::uint64_t outbound = 0;
    unsigned size = 0;
    bool valid = false;
};

inline std::uint64_t triples(unsigned s) {
    return s < 3 ? 0 : std::uint64_t{s} * (s - 1) * (s - 2) / 6;
}

// Exact comparison of i²/(C(s,3)(i+o)) for n <= 64, where every factor fits
// comfortably in 128 bits.
inline int compare_cohesion(const MaskCandidate& a, const MaskCandidate& b) {
    using u128 = unsigned __int128;
    const bool za = a.size < 3 || a.inside == 0;
    const bool zb = b.size < 3 || b.inside == 0;
    if (za || zb) {
        return za == zb ? 0 : (za ? -1 : 1);
    }
    const u128 lhs = u128(a.inside) * a.inside * triples(b.size) * (b.inside + b.outbound);
    const u128 rhs = u128(b.inside) * b.inside * triples(a.size) * (a.inside + a.outbound);
    return lhs < rhs ? -1 : (rhs < lhs ? 1 : 0);
}

// Solver order: higher cohesion, then fewer vertices, then lexicographically
// smaller sorted member list.
inline bool better(const MaskCandidate& a, const MaskCandidate& b) {
    if (!b.valid) {
        return a.valid;
    }
    if (!a.valid) {
        return false;
    }
    if (int c = compare_cohesion(a, b); c != 0) {
        return c > 0;
    }
    if (a.size != b.size) {
        return a.size < b.size;
    }
    const std::uint64_t diff = a.members ^ b.members;
    return diff != 0 && (a.members & (diff & -diff)) != 0;
}

class ConnectedEnumerator {
public:
    ConnectedEnumerator(std::span<const std::uint64_t> adj, std::uint64_t seed, unsigned max_size,
                        const std::atomic<bool>& stop)
        : adj_(adj), seed_(seed), max_size_(max_size), stop_(stop) {}

    // All connected sets containing `anchor` and avoiding `forbidden`.
    void run(vertex_id anchor, std::uint64_t forbidden) {
        const std::uint64_t s = std::uint64_t{1} << anchor;
        visit(s, adj_[anchor] & ~forbidden & ~s, forbidden | s, 1, 0, 0);
    }

    const MaskCandidate& best() const { return best_; }
    std::uint64_t explored() const { return explored_; }

private:
    // `blocked` = forbidden vertices plus members of `s`.
    void visit(std::uint64_t s, std::uint64_t ext, std::uint64_t blocked, unsigned size,
               std::uint64_t inside, std::uint64_t outbound) {
        if (stop_.load(std::memory_order_relaxed)) {
            return;
        }
        ++explored_;
        if (size >= 3 && (s & seed_) == seed_) {
            MaskCandidate c{s, inside, outbound, size, true};
            if (better(c, best_)) {
                best_ = c;
            }
        }
        if (size >= max_size_) {
            return;
        }
        std::uint64_t excluded = 0;
        while (ext) {
            const auto w = static_cast<vertex_id>(std::countr_zero(ext));
            const std::uint64_t bit = std::uint64_t{1} << w;
            ext &= ext - 1;
            const auto split = split_triangles_at(adj_, w, s);
            const std::uint64_t next_blocked = blocked | excluded | bit;
            visit(s | bit, (ext | adj_[w]) & ~next_blocked, next_blocked, size + 1,
                  inside + split.two, outbound + split.one - split.two);
            if (seed_ & bit) {
                break; // later branches would have to exclude a seed vertex
            }
            excluded |= bit;
        }
    }

    std::span<const std::uint64_t> adj_;
    std::uint64_t seed_;
    unsigned max_size_;
    const std::atomic<bool>& stop_;
    MaskCandidate best_;
    std::uint64_t explored_ = 0;
};

inline VertexSet to_vertex_set(std::size_t n, std::uint64_t mask) {
    VertexSet s(n);
    for (; mask; mask &= mask - 1) {
        s.insert(static_cast<vertex_id>(std::countr_zero(mask)));
    }
    return s;
}

inline void check_seed(const Graph& g, const SearchConfig& cfg) {
    if (cfg.seed_set) {
        require_valid(g, *cfg.seed_set);
    }
}

} // namespace detail

/// Exhaustive maximum-cohesion search over connected vertex sets of size >= 3
/// (a maximum-cohesion set is always connected, so nothing is lost). Each
/// connected set is generated once, anchored at its smallest vertex; the census
/// is carried incrementally down the search tree.
inline SolverResult solve_exact(const Graph& g, const SearchConfig& cfg = {}) {
    const auto started = std::chrono::steady_clock::now();
    const std::size_t n = g.vertex_count();
    if (n > exact_solver_hard_limit) {
        throw refusal_error("exact search supports at most " +
                            std::to_string(exact_solver_hard_limit) + " vertices, got " +
                            std::to_string(n));
    }
    if (n > exact_solver_guard && !cfg.force) {
        throw refusal_error("exact search over " + std::to_string(n) + " vertices exceeds the " +
                            std::to_string(exact_solver_guard) +
                            "-vertex guard; pass force to run anyway");
    }
    detail::check_seed(g, cfg);

    std::vector<std::uint64_t> adj(n, 0);
    for (vertex_id u = 0; u < n; ++u) {
        for (vertex_id v : g.neighbors(u)) {
            adj[u] |= std::uint64_t{1} << v;
        }
    }
    std::uint64_t seed = 0;
    std::vector<vertex_id> anchors;
    if (cfg.seed_set && !cfg.seed_set->empty()) {
        const auto members = cfg.seed_set->members();
        for (vertex_id v : members) {
            seed |= std::uint64_t{1} << v;
        }
        const auto components = connected_components(g);
        const bool together = std::any_of(components.begin(), components.end(), [&](const auto& c) {
            return std::includes(c.begin(), c.end(), members.begin(), members.end());
        });
        if (!together) {
            throw domain_error("seed set spans several connected components; no connected "
                               "superset exists");
        }
        anchors.push_back(members.front());
    } else {
        for (vertex_id a = 0; a < n; ++a) {
            anchors.push_back(a);
        }
    }
    const unsigned max_size =
        static_cast<unsigned>(std::min<std::size_t>(cfg.max_subset_size.value_or(n), n));

    std::atomic<bool> stop{false};
    std::atomic<std::size_t> next{0};
    const std::size_t workers = std::clamp<std::size_t>(cfg.workers, 1, anchors.size() ? anchors.size() : 1);
    std::vector<detail::MaskCandidate> bests(workers);
    std::vector<std::uint64_t> explored(workers, 0);
    const bool seeded = seed != 0;

    auto work = [&](std::size_t id) {
        detail::ConnectedEnumerator e(adj, seed, max_size, stop);
        for (std::size_t i; (i = next.fetch_add(1)) < anchors.size();) {
            const vertex_id a = anchors[i];
            const std::uint64_t below = a == 0 ? 0 : (std::uint64_t{1} << a) - 1;
            e.run(a, seeded ? 0 : below);
        }
        bests[id] = e.best();
        explored[id] = e.explored();
    };

    std::optional<std::jthread> watchdog;
    std::mutex done_mutex;
    std::condition_variable_any done_cv;
    bool done = false;
    if (cfg.time_budget) {
        watchdog.emplace([&, budget = *cfg.time_budget](std::stop_token) {
            std::unique_lock lock(done_mutex);
            if (!done_cv.wait_for(lock, budget, [&] { return done; })) {
                stop = true;
            }
        });
    }
    {
        std::vector<std::jthread> pool;
        for (std::size_t id = 1; id < workers; ++id) {
            pool.emplace_back(work, id);
        }
        work(0);
    }
    {
        std::lock_guard lock(done_mutex);
        done = true;
    }
    done_cv.notify_all();
    watchdog.reset();

    detail::MaskCandidate best;
    SolverResult result;
    for (std::size_t id = 0; id < workers; ++id) {
        if (detail::better(bests[id], best)) {
            best = bests[id];
        }
        result.explored += explored[id];
    }
    // With no triangle inside any candidate every set scores 0, and the empty set
    // is the smallest of them.
    if (best.valid && best.inside == 0) {
        best = {};
    }
    result.best_set = detail::to_vertex_set(n, best.valid ? best.members : 0);
    const TriangleCensus check = census(g, result.best_set);
    if (best.valid && (check.inside != best.inside || check.outbound != best.outbound)) {
        throw std::logic_error("incremental census diverged from recomputation");
    }
    result.best_value = cohesion(BigInt(result.best_set.size()), check);
    result.no_positive_cohesion = result.best_value.is_zero();
    result.exact = !stop;
    result.elapsed = std::chrono::steady_clock::now() - started;
    if (stop) {
        throw partial_result(std::move(result));
    }
    return result;
}

namespace detail {

struct LocalState {
    std::vector<char> in;
    std::size_t size = 0;
    BigInt inside = 0;
    BigInt outbound = 0;
    CohesionValue value;
};

inline bool state_better(const CohesionValue& va, std::size_t sa, const std::vector<vertex_id>& ma,
                         const CohesionValue& vb, std::size_t sb, const std::vector<vertex_id>& mb) {
    if (va != vb) {
        return va > vb;
    }
    if (sa != sb) {
        return sa < sb;
    }
    return ma < mb;
}

inline std::vector<vertex_id> members_of(const std::vector<char>& in) {
    std::vector<vertex_id> out;
    for (vertex_id v = 0; v < in.size(); ++v) {
        if (in[v]) {
            out.push_back(v);
        }
    }
    return out;
}

} // namespace detail

/// Multi-restart local search with single-vertex add/remove moves, always taking
/// the move with the best exact cohesion and stopping when none improves.
/// Restart 0 starts from a triangle on a highest-Δ edge (or from the seed set);
/// later restarts start from triangles on random edges. Seed vertices are never
/// removed. Deterministic for a given rng_seed.
inline SolverResult solve_heuristic(const Graph& g, const SearchConfig& cfg = {}) {
    const auto started = std::chrono::steady_clock::now();
    detail::check_seed(g, cfg);
    const std::size_t n = g.vertex_count();

    struct Start {
        vertex_id u, v, w;
    };
    std::vector<Start> triangle_edges; // (u, v, smallest common neighbour), lexicographic
    std::size_t best_edge = 0;
    std::uint64_t best_delta = 0;
    for (auto [u, v] : g.edges()) {
        std::uint64_t delta = 0;
        vertex_id first = 0;
        detail::for_each_common(g.neighbors(u), g.neighbors(v), [&](vertex_id w) {
            if (delta++ == 0) {
                first = w;
            }
        });
        if (delta > 0) {
            if (delta > best_delta) {
                best_delta = delta;
                best_edge = triangle_edges.size();
            }
            triangle_edges.push_back({u, v, first});
        }
    }

    std::vector<vertex_id> seed_members;
    if (cfg.seed_set) {
        seed_members = cfg.seed_set->members();
    }
    std::vector<char> is_seed(n, 0);
    for (vertex_id v : seed_members) {
        is_seed[v] = 1;
    }

    SolverResult result;
    result.exact = false;
    result.best_set = VertexSet(n);
    if (seed_members.empty() && triangle_edges.empty()) {
        result.no_positive_cohesion = true;
        result.elapsed = std::chrono::steady_clock::now() - started;
        return result;
    }

    auto climb = [&](std::vector<vertex_id> start, std::uint64_t& moves) {
        detail::LocalState st;
        st.in.assign(n, 0);
        for (vertex_id v : start) {
            if (!st.in[v]) {
                st.in[v] = 1;
                ++st.size;
            }
        }
        {
            const TriangleCensus c = census(g, VertexSet(n, detail::members_of(st.in)));
            st.inside = c.inside;
            st.outbound = c.outbound;
            st.value = cohesion(BigInt(st.size), c);
        }
        auto member = [&](vertex_id x) { return st.in[x] != 0; };
        for (;;) {
            std::vector<vertex_id> frontier;
            for (vertex_id v = 0; v < n; ++v) {
                if (st.in[v]) {
                    continue;
                }
                for (vertex_id x : g.neighbors(v)) {
                    if (st.in[x]) {
                        frontier.push_back(v);
                        break;
                    }
                }
            }
            std::optional<vertex_id> move;
            bool move_adds = false;
            CohesionValue move_value;
            std::size_t move_size = 0;
            BigInt move_inside, move_outbound;
            auto consider = [&](vertex_id v, bool adds) {
                ++moves;
                const auto split = detail::split_triangles_at(g, v, member);
                BigInt inside = st.inside;
                BigInt outbound = st.outbound;
                const BigInt two(split.two), one(split.one);
                if (adds) {
                    inside += two;
                    outbound += one - two;
                } else {
                    inside -= two;
                    outbound -= one - two;
                }
                const std::size_t size = adds ? st.size + 1 : st.size - 1;
                const CohesionValue value = cohesion(BigInt(size), inside, outbound);
                // Fewer vertices first, then smaller vertex id.
                const bool wins = !move || value > move_value ||
                                  (value == move_value &&
                                   (size < move_size || (size == move_size && v < *move)));
                if (wins) {
                    move = v;
                    move_adds = adds;
                    move_value = value;
                    move_size = size;
                    move_inside = inside;
                    move_outbound = outbound;
                }
            };
            for (vertex_id v : frontier) {
                consider(v, true);
            }
            for (vertex_id v = 0; v < n; ++v) {
                if (st.in[v] && !is_seed[v] && st.size > 1) {
                    consider(v, false);
                }
            }
            if (!move || !(move_value > st.value)) {
                return st;
            }
            st.in[*move] = move_adds ? 1 : 0;
            st.size = move_size;
            st.inside = move_inside;
            st.outbound = move_outbound;
            st.value = move_value;
        }
    };

    const std::size_t restarts = std::max<std::size_t>(cfg.heuristic_restarts, 1);
    std::vector<detail::LocalState> finals(restarts);
    std::vector<std::uint64_t> moves(restarts, 0);
    auto run_restart = [&](std::size_t r) {
        std::vector<vertex_id> start = seed_members;
        if (r > 0 || seed_members.empty()) {
            if (!triangle_edges.empty()) {
                Start t = triangle_edges[best_edge];
                if (r > 0) {
                    std::mt19937_64 rng(cfg.rng_seed + 0x9e3779b97f4a7c15ULL * r);
                    t = triangle_edges[rng() % triangle_edges.size()];
                }
                start.insert(start.end(), {t.u, t.v, t.w});
            }
        }
        finals[r] = climb(std::move(start), moves[r]);
    };
    {
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t r; (r = next.fetch_add(1)) < restarts;) {
                run_restart(r);
            }
        };
        std::vector<std::jthread> pool;
        for (std::size_t id = 1; id < std::min(cfg.workers, restarts); ++id) {
            pool.emplace_back(work);
        }
        work();
    }

    std::size_t winner = 0;
    for (std::size_t r = 1; r < restarts; ++r) {
        if (detail::state_better(finals[r].value, finals[r].size, detail::members_of(finals[r].in),
                                 finals[winner].value, finals[winner].size,
                                 detail::members_of(finals[winner].in))) {
            winner = r;
        }
    }
    for (auto m : moves) {
        result.explored += m;
    }
    result.best_set = VertexSet(n, detail::members_of(finals[winner].in));
    result.best_value = cohesion_of_set(g, result.best_set);
    if (result.best_value != finals[winner].value) {
        throw std::logic_error("incremental cohesion diverged from recomputation");
    }
    result.no_positive_cohesion = result.best_value.is_zero();
    if (result.no_positive_cohesion) {
        result.best_set = VertexSet(n);
    }
    result.elapsed = std::chrono::steady_clock::now() - started;
    return result;
}

} // namespace cohesion_lab

#endif // COHESION_LAB_SOLVERS_HPP
