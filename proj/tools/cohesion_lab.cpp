// cohesion-lab: command-line front end for the cohesion_lab library.
//
// Exit codes: 0 success, 1 property or solver failure, 2 usage error,
// 3 input error. JSON payloads go to stdout, everything else to stderr.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef COHESION_LAB_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <cohesion_lab/cohesion_lab.hpp>

namespace cl = cohesion_lab;
using cl::json;

namespace {

enum exit_code : int { ok = 0, failure = 1, usage = 2, input = 3 };

struct Common {
    std::string graph_path;
    bool human = false;
    std::size_t workers = 1;
    std::uint64_t rng_seed = 0;
    bool force = false;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::size_t env_workers() {
    if (const char* env = std::getenv("COHESION_LAB_WORKERS")) {
        try {
            const auto w = std::stoul(env);
            if (w > 0) {
                return w;
            }
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring COHESION_LAB_WORKERS='" << env << "'\n";
    }
    return 1;
}

cl::Graph load_graph(const std::string& path) {
    if (path.empty()) {
        throw CLI::RequiredError("--graph");
    }
    if (path == "-") {
        return cl::parse_edge_list(std::cin);
    }
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open graph file '" + path + "'");
    }
    return cl::parse_edge_list(in);
}

std::vector<std::string> split_tokens(const std::string& spec) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, ',')) {
        const auto a = token.find_first_not_of(" \t");
        const auto b = token.find_last_not_of(" \t");
        if (a != std::string::npos) {
            out.push_back(token.substr(a, b - a + 1));
        }
    }
    return out;
}

cl::VertexSet resolve_set(const cl::Graph& g, const std::string& spec) {
    cl::VertexSet s(g.vertex_count());
    for (const auto& token : split_tokens(spec)) {
        const auto v = g.find(token);
        if (!v) {
            throw InputError("unknown vertex token '" + token + "'");
        }
        if (!s.insert(*v)) {
            throw InputError("vertex token '" + token + "' listed twice");
        }
    }
    return s;
}

std::string join_labels(const cl::Graph& g, const cl::VertexSet& s) {
    std::string out;
    for (auto v : s.members()) {
        out += (out.empty() ? "" : ",") + g.label(v);
    }
    return out;
}

void emit(const json& payload) { std::cout << payload.dump(2) << '\n'; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

int cmd_cohesion(const Common& c, const std::string& set_spec) {
    const cl::Graph g = load_graph(c.graph_path);
    const cl::VertexSet s = resolve_set(g, set_spec);
    const auto tc = cl::census(g, s);
    const auto value = cl::cohesion(cl::BigInt(s.size()), tc);
    if (c.human) {
        std::cout << "set       {" << join_labels(g, s) << "}\n"
                  << "size      " << s.size() << '\n'
                  << "inside    " << tc.inside << '\n'
                  << "outbound  " << tc.outbound << '\n'
                  << "cohesion  " << value.str() << " (" << std::setprecision(6) << value.approx()
                  << ")\n"
                  << "connected " << (cl::is_connected(g, s) ? "yes" : "no") << '\n';
        return ok;
    }
    emit({{"size", s.size()},
          {"inside", tc.inside.str()},
          {"outbound", tc.outbound.str()},
          {"cohesion", cl::to_json(value)},
          {"connected", cl::is_connected(g, s)}});
    return ok;
}

struct SolveArgs {
    std::string mode = "exact";
    std::optional<std::size_t> max_size;
    std::optional<long long> time_budget_ms;
    std::string seed;
    std::size_t restarts = 8;
};

int cmd_solve(const Common& c, const SolveArgs& a) {
    const cl::Graph g = load_graph(c.graph_path);
    cl::SearchConfig cfg;
    cfg.max_subset_size = a.max_size;
    if (a.time_budget_ms) {
        cfg.time_budget = std::chrono::milliseconds(*a.time_budget_ms);
    }
    if (!a.seed.empty()) {
        cfg.seed_set = resolve_set(g, a.seed);
    }
    cfg.heuristic_restarts = a.restarts;
    cfg.rng_seed = c.rng_seed;
    cfg.workers = c.workers;
    cfg.force = c.force;

    cl::SolverResult result;
    bool partial = false;
    try {
        result = a.mode == "exact" ? cl::solve_exact(g, cfg) : cl::solve_heuristic(g, cfg);
    } catch (const cl::partial_result& p) {
        std::cerr << "warning: " << p.what() << '\n';
        result = p.result();
        partial = true;
    }
    std::cerr << "solve: " << a.mode << ", " << result.explored << " states, "
              << result.elapsed.count() << " s\n";
    if (c.human) {
        std::cout << "mode      " << a.mode << (partial ? " (time budget exhausted)" : "") << '\n'
                  << "best set  {" << join_labels(g, result.best_set) << "}\n"
                  << "cohesion  " << result.best_value.str() << " (" << std::setprecision(6)
                  << result.best_value.approx() << ")\n"
                  << "explored  " << result.explored << '\n';
        if (result.no_positive_cohesion) {
            std::cout << "note      no positive cohesion: the graph has no triangle\n";
        }
    } else {
        json payload = cl::to_json(result, g);
        payload["mode"] = a.mode;
        payload["partial"] = partial;
        emit(payload);
    }
    return partial ? failure : ok;
}

struct ReduceArgs {
    std::size_t k = 3;
    std::string gadget;
    std::size_t cap = 10'000;
    std::string out;
    std::string edges_out;
    std::optional<std::size_t> component;
};

cl::Graph pick_component(const cl::Graph& g, std::size_t index) {
    const auto parts = cl::connected_components(g);
    if (index >= parts.size()) {
        throw InputError("component " + std::to_string(index) + " does not exist; the graph has " +
                         std::to_string(parts.size()));
    }
    return cl::induced_subgraph(g, cl::VertexSet(g.vertex_count(), parts[index]));
}

cl::ReductionInstance build_instance(const Common& c, const ReduceArgs& a) {
    cl::Graph g = load_graph(c.graph_path);
    if (a.component) {
        g = pick_component(g, *a.component);
    }
    cl::ReduceOptions opts;
    if (!a.gadget.empty()) {
        if (!cl::detail::is_decimal(a.gadget)) {
            throw CLI::ValidationError("--gadget", "expected a positive decimal integer");
        }
        opts.gadget_size = cl::BigInt(a.gadget);
    }
    opts.materialization_cap = a.cap;
    try {
        return cl::reduce(g, a.k, opts);
    } catch (const cl::disconnected_input& e) {
        std::ostringstream msg;
        msg << e.what() << "; pick one with --component:";
        for (std::size_t i = 0; i < e.components().size(); ++i) {
            msg << "\n  [" << i << "] {";
            const auto& part = e.components()[i];
            for (std::size_t j = 0; j < part.size(); ++j) {
                msg << (j ? "," : "") << g.label(part[j]);
            }
            msg << '}';
        }
        throw InputError(msg.str());
    }
}

void print_stats(const cl::ReductionInstance& inst) {
    std::cout << "n                     " << inst.original_n() << '\n'
              << "k                     " << inst.k << '\n'
              << "lambda                " << inst.lambda.str() << '\n'
              << "gadget size           " << inst.gadget_size << '\n'
              << "non-edges             " << inst.non_edges.size() << '\n'
              << "transformed vertices  " << inst.transformed_vertices << '\n'
              << "transformed edges     " << inst.transformed_edges << '\n'
              << "materialized          " << (inst.materialized() ? "yes" : "no") << '\n';
}

int cmd_reduce(const Common& c, const ReduceArgs& a) {
    const auto inst = build_instance(c, a);
    const json stats = cl::to_json(inst);
    if (!a.out.empty()) {
        std::ofstream out(a.out);
        if (!out) {
            throw InputError("cannot write '" + a.out + "'");
        }
        out << stats.dump(2) << '\n';
    }
    if (!a.edges_out.empty()) {
        if (!inst.materialized()) {
            std::cerr << "warning: instance is virtual (" << inst.transformed_vertices
                      << " vertices above cap " << a.cap << "); no edge list written\n";
        } else {
            std::ofstream out(a.edges_out);
            if (!out) {
                throw InputError("cannot write '" + a.edges_out + "'");
            }
            out << "# transformed graph: n=" << inst.transformed->vertex_count()
                << " k=" << inst.k << " lambda=" << inst.lambda.str() << '\n'
                << cl::to_edge_list(*inst.transformed);
        }
    }
    if (c.human) {
        print_stats(inst);
    } else {
        emit(stats);
    }
    return ok;
}

int cmd_stats(const Common& c, std::optional<std::size_t> k) {
    const cl::Graph g = load_graph(c.graph_path);
    const auto parts = cl::connected_components(g);
    std::size_t max_degree = 0;
    for (cl::vertex_id v = 0; v < g.vertex_count(); ++v) {
        max_degree = std::max(max_degree, g.degree(v));
    }
    const auto triangles = cl::triangle_count(g);
    json payload = {{"n", g.vertex_count()},
                    {"m", g.edge_count()},
                    {"triangles", triangles},
                    {"components", parts.size()},
                    {"max_degree", max_degree},
                    {"whole_graph_cohesion",
                     cl::to_json(cl::cohesion_of_set(g, cl::VertexSet::full(g.vertex_count())))}};
    std::optional<cl::ReductionInstance> inst;
    if (k) {
        ReduceArgs ra;
        ra.k = *k;
        ra.cap = 0;
        inst = build_instance(c, ra);
        payload["reduction"] = cl::to_json(*inst);
    }
    if (c.human) {
        std::cout << "vertices    " << g.vertex_count() << '\n'
                  << "edges       " << g.edge_count() << '\n'
                  << "triangles   " << triangles << '\n'
                  << "components  " << parts.size() << '\n'
                  << "max degree  " << max_degree << '\n';
        if (inst) {
            print_stats(*inst);
        }
    } else {
        emit(payload);
    }
    return ok;
}

int cmd_verify(const Common& c, const std::string& suites, std::uint64_t trials) {
    std::vector<std::string> names = suites.empty() ? cl::suite_names() : split_tokens(suites);
    cl::SuiteOptions o;
    o.trials = trials;
    o.rng_seed = c.rng_seed;
    o.workers = c.workers;
    const auto t0 = std::chrono::steady_clock::now();
    const auto reports = cl::run_suite(names, o);
    bool all_passed = true;
    json payload = json::array();
    for (const auto& r : reports) {
        all_passed = all_passed && r.passed();
        payload.push_back(cl::to_json(r));
        std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.property << ": "
                  << r.instances_checked << " instances, " << r.failure_count << " failures\n";
    }
    std::cerr << "verify: " << seconds_since(t0) << " s\n";
    if (c.human) {
        for (const auto& r : reports) {
            std::cout << std::left << std::setw(22) << r.property
                      << (r.passed() ? "passed  " : "FAILED  ") << r.instances_checked
                      << " checked, " << r.failure_count << " failures\n";
            for (const auto& [key, value] : r.facts) {
                std::cout << "    " << key << ": " << value << '\n';
            }
        }
    } else {
        emit(payload);
    }
    return all_passed ? ok : failure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Triangle-based cohesion of vertex sets: evaluation, search, reduction, checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cohesion-lab 1.0.0");

    Common common;
    common.workers = env_workers();
    bool json_flag = false;
    auto add_common = [&](CLI::App* sub, bool needs_graph) {
        auto* g = sub->add_option("--graph", common.graph_path, "edge-list file ('-' for stdin)");
        if (needs_graph) {
            g->required();
        }
        auto* h = sub->add_flag("--human", common.human, "human-readable output");
        sub->add_flag("--json", json_flag, "JSON output (default)")->excludes(h);
        sub->add_option("--workers", common.workers,
                        "worker threads (default: $COHESION_LAB_WORKERS or 1)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--rng-seed", common.rng_seed, "random seed");
        sub->add_flag("--force", common.force, "lift the exact-search size guard");
    };

    std::string set_spec;
    auto* coh = app.add_subcommand("cohesion", "cohesion and triangle census of a vertex set");
    add_common(coh, true);
    coh->add_option("--set", set_spec, "comma-separated vertex tokens")->required();

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "search for a maximum-cohesion vertex set");
    add_common(solve, true);
    solve->add_option("--mode", sa.mode, "exact or heuristic")
        ->check(CLI::IsMember({"exact", "heuristic"}));
    solve->add_option("--max-size", sa.max_size, "largest subset size to consider (exact)")
        ->check(CLI::PositiveNumber);
    solve->add_option("--time-budget", sa.time_budget_ms, "time budget in milliseconds (exact)")
        ->check(CLI::NonNegativeNumber);
    solve->add_option("--seed", sa.seed, "comma-separated tokens the result must contain");
    solve->add_option("--restarts", sa.restarts, "local-search restarts (heuristic)");

    ReduceArgs ra;
    auto* red = app.add_subcommand("reduce", "build the clique-to-cohesion reduction instance");
    add_common(red, true);
    red->add_option("--k", ra.k, "clique size")->required();
    red->add_option("--gadget", ra.gadget, "gadget size override (default 2*C(n,3)^4)");
    red->add_option("--cap", ra.cap, "largest vertex count to materialize");
    red->add_option("--out", ra.out, "write the instance JSON here");
    red->add_option("--edges", ra.edges_out, "write the transformed graph's edge list here");
    red->add_option("--component", ra.component, "reduce only this connected component (index)");

    std::optional<std::size_t> stats_k;
    auto* stats = app.add_subcommand("stats", "graph summary and, with --k, reduction sizes");
    add_common(stats, true);
    stats->add_option("--k", stats_k, "also report virtual reduction sizes for this k");

    std::string suites;
    std::uint64_t trials = 100;
    auto* verify = app.add_subcommand("verify", "run property suites");
    add_common(verify, false);
    verify->add_option("--suite", suites, "comma-separated suite names (default: all)");
    verify->add_option("--trials", trials, "random trials per suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : usage;
    }

    try {
        if (*coh) {
            return cmd_cohesion(common, set_spec);
        }
        if (*solve) {
            return cmd_solve(common, sa);
        }
        if (*red) {
            return cmd_reduce(common, ra);
        }
        if (*stats) {
            return cmd_stats(common, stats_k);
        }
        if (*verify) {
            return cmd_verify(common, suites, trials);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const cl::usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const cl::refusal_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const cl::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input;
    }
    return usage;
}
