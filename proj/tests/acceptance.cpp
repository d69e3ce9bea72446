// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <cohesion_lab/cohesion_lab.hpp>

using namespace cohesion_lab;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
};

Graph load(const char* name) {
    std::ifstream in(std::string(COHESION_LAB_DATA_DIR) + "/" + name);
    return parse_edge_list(in);
}

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome suite_outcome(const PropertyReport& r, std::uint64_t min_instances) {
    Outcome o;
    o.passed = r.passed() && r.instances_checked >= min_instances;
    o.detail = std::to_string(r.instances_checked) + " instances, " +
               std::to_string(r.failure_count) + " failures";
    for (const auto& f : r.failures) {
        o.detail += "; " + f.kind + ": " + f.detail;
        break;
    }
    return o;
}

Outcome figure1() {
    const Graph g = load("figure1.edges");
    const VertexSet square(g.vertex_count(), {*g.find("a"), *g.find("b"), *g.find("c"), *g.find("d")});
    const auto c = census(g, square);
    const auto value = cohesion(BigInt(4), c);
    Outcome o;
    o.passed = c.inside == 2 && c.outbound == 1 && value == CohesionValue::from_fraction(1, 3) &&
               naive_census(g, square) == c;
    o.detail = "i=" + c.inside.str() + " o=" + c.outbound.str() + " C=" + value.str() +
               " (drawing caption states 1/6)";
    return o;
}

Outcome oracle() {
    SuiteOptions so;
    so.trials = 1000;
    so.workers = workers();
    const auto r = run_property("census_oracle", so);
    auto o = suite_outcome(r, 1000);
    o.passed = o.passed && r.counters.at("exhaustive_pairs") == 33867;
    return o;
}

Outcome lemma1() {
    SuiteOptions so;
    so.trials = 500;
    so.workers = workers();
    const auto r = run_property("lemma1", so);
    auto o = suite_outcome(r, 1);
    o.detail += ", " + std::to_string(r.counters.count("degenerate_zero") ? r.counters.at("degenerate_zero") : 0) +
                " all-zero pairs";
    return o;
}

Outcome theorem1() {
    SuiteOptions so;
    so.trials = 300;
    so.workers = workers();
    return suite_outcome(run_property("theorem1", so), 300);
}

Outcome lambda() {
    const auto r = run_property("lambda", {});
    return suite_outcome(r, 1);
}

Outcome structure() {
    SuiteOptions so;
    so.workers = workers();
    const auto r = run_property("reduction_structure", so);
    auto o = suite_outcome(r, 1);
    const auto paper = reduce(detail::k4_minus_edge(), 3, {std::nullopt, 0, false});
    o.passed = o.passed && paper.transformed_vertices == 516 && paper.gadget_size == 512;
    o.detail += "; K4-minus-edge default: " + paper.transformed_vertices.str() + " vertices, gadget " +
                paper.gadget_size.str();
    return o;
}

Outcome forward() {
    SuiteOptions so;
    so.trials = 200;
    so.workers = workers();
    return suite_outcome(run_property("theorem3_forward", so), 200);
}

Outcome iff() {
    Outcome o{true, ""};
    const std::pair<const char*, Graph> cases[] = {{"K4-minus-edge", detail::k4_minus_edge()},
                                                   {"C5", detail::cycle_graph(5)}};
    for (const auto& [name, g] : cases) {
        const auto sweep = sweep_gadget_sizes(g, 3, default_gadget_sweep());
        std::size_t too_small = 0;
        for (const auto& r : sweep.reports) {
            too_small += r.facts.at("status") == "gadget_too_small";
        }
        o.passed = o.passed && sweep.first_confirmed && !sweep.logic_failure;
        o.detail += std::string(o.detail.empty() ? "" : "; ") + name + ": " +
                    (sweep.first_confirmed ? "confirmed from gadget " + std::to_string(*sweep.first_confirmed)
                                           : "never confirmed") +
                    ", " + std::to_string(too_small) + "/" + std::to_string(sweep.sizes.size()) +
                    " sizes gadget_too_small, logic failures " + (sweep.logic_failure ? "yes" : "none");
        if (!sweep.first_confirmed) {
            const auto& last = sweep.reports.back();
            if (last.facts.count("spurious_example")) {
                o.detail += " (gadget " + std::to_string(sweep.sizes.back()) + ": " +
                            last.facts.at("spurious_example") + ")";
            }
        }
    }
    return o;
}

Outcome determinism() {
    std::vector<std::string> first, second;
    auto capture = [](std::vector<std::string>& out, std::size_t w) {
        for (const char* file : {"figure1.edges", "k5.edges", "two_k5_bridged.edges", "c6.edges"}) {
            const Graph g = load(file);
            SearchConfig cfg;
            cfg.rng_seed = 7;
            cfg.workers = w;
            out.push_back(to_json(solve_exact(g, cfg), g).dump());
            out.push_back(to_json(solve_heuristic(g, cfg), g).dump());
        }
        SuiteOptions so;
        so.trials = 40;
        so.rng_seed = 7;
        so.workers = w;
        for (const auto& r : run_suite(suite_names(), so)) {
            out.push_back(to_json(r).dump());
        }
    };
    capture(first, 1);
    capture(second, workers() == 1 ? 2 : workers());
    std::vector<std::string> third;
    capture(third, 1);
    Outcome o;
    o.passed = first == second && first == third;
    o.detail = std::to_string(first.size()) + " payloads compared across 3 runs";
    return o;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"figure1_census", 1, figure1},
        {"oracle_equivalence", 30, oracle},
        {"lemma1_suite", 300, lemma1},
        {"theorem1_suite", 300, theorem1},
        {"lambda_values", 1, lambda},
        {"reduction_structure", 60, structure},
        {"theorem3_forward", 300, forward},
        {"theorem3_iff_desk_scale", 600, iff},
        {"determinism", 600, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.limit_seconds;
        const bool ok = o.passed && in_time;
        failed += !ok;
        std::printf("%s %-24s %8.2fs (limit %gs)  %s%s\n", ok ? "PASS" : "FAIL", c.name, secs,
                    c.limit_seconds, o.detail.c_str(), in_time ? "" : " [over time limit]");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
