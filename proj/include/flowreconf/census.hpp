#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "flowreconf/errors.hpp"
#include "flowreconf/flows.hpp"
#include "flowreconf/graph6.hpp"
#include "flowreconf/multigraph.hpp"
#include "flowreconf/reconfig.hpp"

namespace flowreconf {

struct CensusFilters {
    bool require_cubic = true;
    int min_edge_connectivity = 3;
};

struct CensusOptions {
    std::vector<ValueDomain> domains;
    CensusFilters filters;
    long long budget = default_enumeration_budget;
    int jobs = 1;
    bool diameters = false;
};

/// Per-graph census row; deterministic for a given graph and domain list.
struct CensusRecord {
    std::string id; // canonical graph6 of the parsed graph
    int vertices = 0;
    int edges = 0;
    bool cubic = false;
    int edge_connectivity = 0;
    bool filtered_out = false;
    std::map<std::string, ReconfigReport> stats; // keyed by domain label
    std::string error;                           // parse/budget problems, recorded not fatal
};

struct DomainSummary {
    long long analyzed = 0;
    long long empty = 0;
    long long connected_nonempty = 0;
    long long disconnected = 0;
    long long perfect_matchings = 0;
    long long max_component_count = 0;
    std::vector<std::string> max_component_ids;
    std::map<long long, long long> component_size_histogram;
};

struct CensusSummary {
    long long lines = 0;
    long long analyzed = 0;
    long long filtered_out = 0;
    long long errors = 0;
    std::map<std::string, DomainSummary> by_domain;
};

namespace detail {

inline bool is_cubic(const OrientedMultigraph& g) {
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) != 3) return false;
    return true;
}

inline CensusRecord census_one(const std::string& line, const CensusOptions& opts) {
    CensusRecord rec;
    OrientedMultigraph g;
    try {
        g = parse_graph6(line);
        rec.id = write_graph6(g);
    } catch (const parse_error& e) {
        rec.id = line;
        rec.error = e.what();
        return rec;
    }
    rec.vertices = g.vertex_count();
    rec.edges = g.edge_count();
    rec.cubic = is_cubic(g);
    rec.edge_connectivity = edge_connectivity(g);
    if ((opts.filters.require_cubic && !rec.cubic) ||
        rec.edge_connectivity < opts.filters.min_edge_connectivity) {
        rec.filtered_out = true;
        return rec;
    }
    for (const auto& domain : opts.domains) {
        try {
            auto r = build_reconfig(g, domain, opts.budget);
            rec.stats[domain.label()] = report(r, opts.diameters);
        } catch (const budget_error& e) {
            rec.error = std::string(domain.label()) + ": " + e.what();
        }
    }
    return rec;
}

} // namespace detail

/// Runs every corpus line through the filters and the per-domain
/// reconfiguration analysis. Output order follows the input order whatever
/// the worker count.
inline std::pair<std::vector<CensusRecord>, CensusSummary>
run_census(const std::vector<std::string>& lines, const CensusOptions& opts) {
    std::vector<CensusRecord> records(lines.size());
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < lines.size(); ++i)
            records[i] = detail::census_one(lines[i], opts);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) {
            pool.emplace_back([&]() {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= lines.size()) return;
                    records[i] = detail::census_one(lines[i], opts);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    CensusSummary summary;
    summary.lines = static_cast<long long>(lines.size());
    for (const auto& rec : records) {
        if (!rec.error.empty()) ++summary.errors;
        if (rec.filtered_out) {
            ++summary.filtered_out;
            continue;
        }
        if (!rec.stats.empty()) ++summary.analyzed;
        for (const auto& [label, rep] : rec.stats) {
            DomainSummary& ds = summary.by_domain[label];
            ++ds.analyzed;
            if (rep.flow_count == 0) ++ds.empty;
            else if (rep.connected) ++ds.connected_nonempty;
            else ++ds.disconnected;
            if (rep.perfect_matching) ++ds.perfect_matchings;
            for (long long s : rep.component_sizes) ++ds.component_size_histogram[s];
            if (rep.component_count > ds.max_component_count) {
                ds.max_component_count = rep.component_count;
                ds.max_component_ids = {rec.id};
            } else if (rep.component_count == ds.max_component_count &&
                       ds.max_component_count > 0) {
                ds.max_component_ids.push_back(rec.id);
            }
        }
    }
    return {std::move(records), std::move(summary)};
}

/// Connected-cubic counts per vertex count; the standard ingestion check
/// against published census sizes.
inline std::map<int, long long> corpus_sanity(const std::vector<std::string>& lines) {
    std::map<int, long long> counts;
    for (const auto& line : lines) {
        if (line.empty()) continue;
        OrientedMultigraph g = parse_graph6(line);
        if (detail::is_cubic(g) && is_connected(g)) ++counts[g.vertex_count()];
    }
    return counts;
}

} // namespace flowreconf
