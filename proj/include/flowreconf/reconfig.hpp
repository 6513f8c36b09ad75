#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowreconf/errors.hpp"
#include "flowreconf/flows.hpp"
#include "flowreconf/multigraph.hpp"
#include "flowreconf/util.hpp"

namespace flowreconf {

/// The flow reconfiguration graph: vertices are the nowhere-zero flows in
/// canonical order, edges join flows whose difference is supported on a
/// single cycle. The empty graph counts as connected.
class ReconfigGraph {
  public:
    ValueDomain domain;
    std::vector<std::vector<int32_t>> flows; // canonical (lexicographic) order
    std::vector<std::vector<int>> adjacency; // symmetric, irreflexive
    std::vector<int> component;              // per flow
    std::vector<long long> component_sizes_by_id;

    long long flow_count() const { return static_cast<long long>(flows.size()); }
    int component_count() const { return static_cast<int>(component_sizes_by_id.size()); }

    Flow flow(int i) const { return Flow{domain, flows[i]}; }

    std::optional<int> index_of(const std::vector<int32_t>& values) const {
        auto it = index_.find(values);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    void rebuild_index() {
        index_.clear();
        for (int i = 0; i < static_cast<int>(flows.size()); ++i) index_[flows[i]] = i;
    }

  private:
    std::unordered_map<std::vector<int32_t>, int, VecHash> index_;
};

/// All distinct nowhere-zero flows one cycle move away from f. Sweeping
/// every nonzero move value over one canonical direction per cycle covers
/// both traversal directions.
inline std::vector<Flow> neighbors(const OrientedMultigraph& g, const Flow& f,
                                   const std::vector<SignedCycle>& cycles) {
    std::vector<Flow> out;
    const auto move_values = f.domain.nonzero_move_values();
    for (const auto& cyc : cycles) {
        for (int32_t a : move_values) {
            Flow cand = f;
            bool ok = true;
            for (const auto& se : cyc.entries) {
                int32_t delta = se.sign > 0 ? a : f.domain.negate(a);
                int32_t nv = f.domain.add(cand.values[se.edge], delta);
                if (nv == 0 || !f.domain.value_in_domain(nv)) {
                    ok = false;
                    break;
                }
                cand.values[se.edge] = nv;
            }
            if (ok) out.push_back(std::move(cand));
        }
    }
    return out;
}

inline std::vector<Flow> neighbors(const OrientedMultigraph& g, const Flow& f) {
    return neighbors(g, f, all_cycles(g));
}

inline ReconfigGraph build_reconfig(const OrientedMultigraph& g, const ValueDomain& domain,
                                    long long budget = default_enumeration_budget,
                                    int dim_cap = 24) {
    ReconfigGraph r;
    r.domain = domain;
    for (auto& f : enumerate_nz_flows(g, domain, nullptr, budget))
        r.flows.push_back(std::move(f.values));
    r.rebuild_index();
    r.adjacency.assign(r.flows.size(), {});

    const auto cycles = all_cycles(g, dim_cap);
    const auto move_values = domain.nonzero_move_values();
    std::vector<int32_t> cand;
    for (int i = 0; i < static_cast<int>(r.flows.size()); ++i) {
        for (const auto& cyc : cycles) {
            for (int32_t a : move_values) {
                cand = r.flows[i];
                bool ok = true;
                for (const auto& se : cyc.entries) {
                    int32_t delta = se.sign > 0 ? a : domain.negate(a);
                    int32_t nv = domain.add(cand[se.edge], delta);
                    if (nv == 0 || !domain.value_in_domain(nv)) {
                        ok = false;
                        break;
                    }
                    cand[se.edge] = nv;
                }
                if (!ok) continue;
                auto j = r.index_of(cand);
                if (!j) throw validation_error("internal: neighbor flow missing from enumeration");
                if (*j > i) {
                    r.adjacency[i].push_back(*j);
                    r.adjacency[*j].push_back(i);
                }
            }
        }
    }
    for (auto& nb : r.adjacency) std::sort(nb.begin(), nb.end());

    auto comps = label_components(r.adjacency);
    r.component = std::move(comps.label);
    r.component_sizes_by_id = std::move(comps.sizes);
    return r;
}

inline bool is_connected(const ReconfigGraph& r) { return r.component_count() <= 1; }

/// Component sizes as a sorted multiset (descending).
inline std::vector<long long> component_sizes(const ReconfigGraph& r) {
    auto sizes = r.component_sizes_by_id;
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
}

/// Minimum vertex degree; 0 for the empty graph.
inline int min_degree(const ReconfigGraph& r) {
    if (r.flows.empty()) return 0;
    std::size_t d = std::numeric_limits<std::size_t>::max();
    for (const auto& nb : r.adjacency) d = std::min(d, nb.size());
    return static_cast<int>(d);
}

inline int diameter(const ReconfigGraph& r, int component_id) {
    if (component_id < 0 || component_id >= r.component_count())
        throw validation_error("diameter: no such component");
    int member = -1;
    for (int i = 0; i < static_cast<int>(r.flows.size()); ++i)
        if (r.component[i] == component_id) {
            member = i;
            break;
        }
    if (member < 0) throw validation_error("diameter: empty component");
    return component_diameter(r.adjacency, member);
}

/// True when the graph is nonempty and every flow has exactly one neighbor.
inline bool is_perfect_matching(const ReconfigGraph& r) {
    if (r.flows.empty()) return false;
    for (const auto& nb : r.adjacency)
        if (nb.size() != 1) return false;
    return true;
}

struct ReconfigReport {
    long long flow_count = 0;
    int component_count = 0;
    std::vector<long long> component_sizes; // descending
    int min_degree = 0;
    bool perfect_matching = false;
    bool connected = true;
    std::optional<int> diameter; // of the whole graph, when connected and requested
};

inline ReconfigReport report(const ReconfigGraph& r, bool with_diameter = false) {
    ReconfigReport rep;
    rep.flow_count = r.flow_count();
    rep.component_count = r.component_count();
    rep.component_sizes = component_sizes(r);
    rep.min_degree = min_degree(r);
    rep.perfect_matching = is_perfect_matching(r);
    rep.connected = is_connected(r);
    if (with_diameter && rep.connected && rep.flow_count > 0) rep.diameter = diameter(r, 0);
    return rep;
}

/// Checks that reducing integer k-flows mod k maps every edge of the integer
/// reconfiguration graph onto an edge (or a single vertex) of the Z_k one
/// with the same difference support, that the projection is onto, and that
/// connectivity carries over on this instance. A failure would indicate an
/// implementation bug, so it throws.
inline void projection_functor_check(const OrientedMultigraph& g, int k,
                                     long long budget = default_enumeration_budget) {
    auto r_int = build_reconfig(g, ValueDomain::integer_band(k), budget);
    auto r_mod = build_reconfig(g, ValueDomain::group(make_group({k})), budget);

    if ((r_int.flow_count() == 0) != (r_mod.flow_count() == 0))
        throw validation_error("projection check: emptiness mismatch");

    std::vector<int> proj(r_int.flows.size());
    std::vector<char> hit(r_mod.flows.size(), 0);
    for (int i = 0; i < static_cast<int>(r_int.flows.size()); ++i) {
        Flow image = project_mod_k(r_int.flow(i));
        auto j = r_mod.index_of(image.values);
        if (!j) throw validation_error("projection check: image flow not found");
        proj[i] = *j;
        hit[*j] = 1;
    }
    for (char h : hit)
        if (!h) throw validation_error("projection check: projection is not onto");

    auto diff_support = [](const std::vector<int32_t>& a, const std::vector<int32_t>& b,
                           auto differs) {
        std::vector<int> s;
        for (int e = 0; e < static_cast<int>(a.size()); ++e)
            if (differs(a[e], b[e])) s.push_back(e);
        return s;
    };
    for (int i = 0; i < static_cast<int>(r_int.flows.size()); ++i) {
        for (int j : r_int.adjacency[i]) {
            if (j < i) continue;
            auto s_int = diff_support(r_int.flows[i], r_int.flows[j],
                                      [](int32_t x, int32_t y) { return x != y; });
            if (proj[i] == proj[j]) continue; // collapses to a single vertex
            bool adjacent = std::binary_search(r_mod.adjacency[proj[i]].begin(),
                                               r_mod.adjacency[proj[i]].end(), proj[j]);
            if (!adjacent) throw validation_error("projection check: image pair not adjacent");
            auto s_mod = diff_support(r_mod.flows[proj[i]], r_mod.flows[proj[j]],
                                      [](int32_t x, int32_t y) { return x != y; });
            if (s_int != s_mod) throw validation_error("projection check: support mismatch");
        }
    }

    if (is_connected(r_int) && !is_connected(r_mod))
        throw validation_error("projection check: connectivity did not transfer");
}

} // namespace flowreconf
