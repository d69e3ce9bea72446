#ifndef COHESION_LAB_SERIALIZE_HPP
#define COHESION_LAB_SERIALIZE_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cohesion.hpp"
#include "graph.hpp"
#include "reduction.hpp"
#include "solvers.hpp"
#include "triangles.hpp"
#include "verify.hpp"

namespace cohesion_lab {

using json = nlohmann::ordered_json;

/// {"n", "edges": [[u,v],...] (u < v, sorted), "labels": {"id": label}}.
inline json to_json(const Graph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges()) {
        edges.push_back({u, v});
    }
    json labels = json::object();
    for (std::size_t v = 0; v < g.labels().size(); ++v) {
        labels[std::to_string(v)] = g.labels()[v];
    }
    return {{"n", g.vertex_count()}, {"edges", std::move(edges)}, {"labels", std::move(labels)}};
}

inline Graph graph_from_json(const json& j) {
    try {
        const auto n = j.at("n").get<std::size_t>();
        std::vector<edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                throw validation_error("edge entry must be a [u, v] pair");
            }
            edges.emplace_back(e[0].get<vertex_id>(), e[1].get<vertex_id>());
        }
        std::vector<std::string> labels;
        if (j.contains("labels") && !j.at("labels").empty()) {
            labels.resize(n);
            std::vector<bool> seen(n, false);
            for (const auto& [key, value] : j.at("labels").items()) {
                const auto v = std::stoul(key);
                if (v >= n || seen[v]) {
                    throw validation_error("bad label key '" + key + "'");
                }
                seen[v] = true;
                labels[v] = value.get<std::string>();
            }
            if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
                throw validation_error("labels must cover every vertex");
            }
        }
        return Graph::from_edges(n, edges, std::move(labels));
    } catch (const json::exception& e) {
        throw validation_error(std::string("graph JSON: ") + e.what());
    } catch (const std::logic_error& e) {
        throw validation_error(std::string("graph JSON: ") + e.what());
    }
}

inline json to_json(const CohesionValue& c) {
    return {{"num", c.numerator().str()}, {"den", c.denominator().str()}, {"approx", c.approx()}};
}

inline json to_json(const TriangleCensus& c) {
    return {{"inside", c.inside.str()},
            {"outbound", c.outbound.str()},
            {"touching_one", c.touching_one.str()},
            {"outside", c.outside.str()}};
}

inline json label_list(const Graph& g, const VertexSet& s) {
    json out = json::array();
    for (vertex_id v : s.members()) {
        out.push_back(g.label(v));
    }
    return out;
}

// Elapsed time is left out so that repeated runs give identical payloads.
inline json to_json(const SolverResult& r, const Graph& g) {
    json ids = json::array();
    for (vertex_id v : r.best_set.members()) {
        ids.push_back(v);
    }
    return {{"best_set", label_list(g, r.best_set)},
            {"best_ids", std::move(ids)},
            {"size", r.best_set.size()},
            {"value", to_json(r.best_value)},
            {"explored", r.explored},
            {"exact", r.exact},
            {"no_positive_cohesion", r.no_positive_cohesion}};
}

inline json to_json(const ReductionInstance& inst) {
    json non_edges = json::array();
    for (auto [u, v] : inst.non_edges) {
        non_edges.push_back({u, v});
    }
    return {{"n", inst.original_n()},
            {"k", inst.k},
            {"lambda", to_json(inst.lambda)},
            {"gadget_size", inst.gadget_size.str()},
            {"non_edges", std::move(non_edges)},
            {"materialized", inst.materialized()},
            {"transformed_vertices", inst.transformed_vertices.str()},
            {"transformed_edges", inst.transformed_edges.str()},
            {"embedding", inst.embedding}};
}

inline json to_json(const InstanceReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return {{"passed", r.passed}, {"checks", std::move(checks)}};
}

inline json to_json(const Counterexample& c) {
    return {{"kind", c.kind}, {"n", c.n}, {"edges", c.edges}, {"detail", c.detail}};
}

inline json to_json(const PropertyReport& r) {
    json failures = json::array();
    for (const auto& f : r.failures) {
        failures.push_back(to_json(f));
    }
    json counters = json::object();
    for (const auto& [k, v] : r.counters) {
        counters[k] = v;
    }
    json facts = json::object();
    for (const auto& [k, v] : r.facts) {
        facts[k] = v;
    }
    return {{"property", r.property},
            {"passed", r.passed()},
            {"instances_checked", r.instances_checked},
            {"failure_count", r.failure_count},
            {"failures", std::move(failures)},
            {"counters", std::move(counters)},
            {"facts", std::move(facts)}};
}

} // namespace cohesion_lab

#endif // COHESION_LAB_SERIALIZE_HPP
