#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowreconf/errors.hpp"
#include "flowreconf/groups.hpp"
#include "flowreconf/multigraph.hpp"
#include "flowreconf/util.hpp"

namespace flowreconf {

/// Where flow values live: a finite abelian group, or the integers with all
/// magnitudes below a band bound k. Group values are stored as element
/// codes, integer values as themselves; zero is 0 in both encodings.
class ValueDomain {
  public:
    ValueDomain() = default;

    static ValueDomain group(GroupSpec spec) {
        ValueDomain d;
        d.is_group_ = true;
        d.group_ = std::move(spec);
        return d;
    }

    static ValueDomain integer_band(int k) {
        if (k < 2) throw validation_error("integer band needs k >= 2");
        ValueDomain d;
        d.is_group_ = false;
        d.band_k_ = k;
        return d;
    }

    bool is_group() const { return is_group_; }
    bool is_integer() const { return !is_group_; }
    const GroupSpec& group_spec() const {
        if (!is_group_) throw validation_error("not a group domain");
        return group_;
    }
    int band() const {
        if (is_group_) throw validation_error("not an integer domain");
        return band_k_;
    }

    int32_t add(int32_t a, int32_t b) const {
        return is_group_ ? group_.add_codes(a, b) : a + b;
    }
    int32_t negate(int32_t a) const { return is_group_ ? group_.neg_code(a) : -a; }
    static bool is_zero(int32_t a) { return a == 0; }

    bool value_in_domain(int32_t v) const {
        if (is_group_) return v >= 0 && v < group_.order();
        return std::abs(v) < band_k_;
    }

    /// Values a nowhere-zero flow may carry, in canonical ascending order.
    std::vector<int32_t> nonzero_flow_values() const {
        std::vector<int32_t> out;
        if (is_group_) {
            for (int32_t c = 1; c < group_.order(); ++c) out.push_back(c);
        } else {
            for (int32_t v = -(band_k_ - 1); v <= band_k_ - 1; ++v)
                if (v != 0) out.push_back(v);
        }
        return out;
    }

    /// Values a single cycle move may add. The difference of two integer
    /// band flows can reach 2k-2 in magnitude, so moves sweep that far.
    std::vector<int32_t> nonzero_move_values() const {
        std::vector<int32_t> out;
        if (is_group_) {
            for (int32_t c = 1; c < group_.order(); ++c) out.push_back(c);
        } else {
            for (int32_t v = -(2 * band_k_ - 2); v <= 2 * band_k_ - 2; ++v)
                if (v != 0) out.push_back(v);
        }
        return out;
    }

    /// CLI / report notation: "4" for an integer band, "z:2,2" for a group.
    std::string label() const {
        if (is_group_) return "z:" + group_.notation();
        return std::to_string(band_k_);
    }

    bool operator==(const ValueDomain& o) const {
        if (is_group_ != o.is_group_) return false;
        return is_group_ ? group_ == o.group_ : band_k_ == o.band_k_;
    }
    bool operator!=(const ValueDomain& o) const { return !(*this == o); }

  private:
    bool is_group_ = false;
    GroupSpec group_;
    int band_k_ = 0;
};

/// "4" -> integer band 4, "z:4" -> Z4, "z:2,2" -> Z2 x Z2.
inline ValueDomain parse_domain(const std::string& text) {
    if (text.rfind("z:", 0) == 0) {
        std::vector<int> moduli;
        std::stringstream ss(text.substr(2));
        std::string part;
        while (std::getline(ss, part, ',')) {
            try {
                moduli.push_back(std::stoi(part));
            } catch (const std::exception&) {
                throw parse_error("bad group notation: " + text);
            }
        }
        if (moduli.empty()) throw parse_error("bad group notation: " + text);
        try {
            return ValueDomain::group(make_group(moduli));
        } catch (const validation_error& e) {
            throw parse_error(std::string("bad group notation: ") + e.what());
        }
    }
    try {
        int k = std::stoi(text);
        if (std::to_string(k) != text) throw parse_error("bad domain: " + text);
        return ValueDomain::integer_band(k);
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("bad domain: " + text);
    }
}

/// Per-edge values under the graph's fixed orientation.
struct Flow {
    ValueDomain domain;
    std::vector<int32_t> values;

    bool operator==(const Flow& o) const { return values == o.values && domain == o.domain; }
};

/// Prescribed per-vertex excesses; must sum to zero. The default (empty)
/// boundary is the ordinary all-zero one.
struct Boundary {
    std::vector<int32_t> values;
};

inline Boundary make_boundary(const ValueDomain& domain, std::vector<int32_t> values) {
    int32_t sum = 0;
    for (int32_t v : values) {
        if (!domain.value_in_domain(v)) throw validation_error("boundary value out of domain");
        sum = domain.add(sum, v);
    }
    if (sum != 0) throw validation_error("boundary values must sum to zero");
    return Boundary{std::move(values)};
}

/// Net outflow at v (outgoing minus incoming), in the domain encoding.
inline int32_t flow_excess(const OrientedMultigraph& g, const Flow& f, int v) {
    int32_t acc = 0;
    for (const auto& [e, dir] : g.incident(v)) {
        int32_t val = f.values[e];
        acc = f.domain.add(acc, dir > 0 ? val : f.domain.negate(val));
    }
    return acc;
}

inline void verify_flow(const OrientedMultigraph& g, const Flow& f,
                        const Boundary* boundary = nullptr) {
    if (static_cast<int>(f.values.size()) != g.edge_count())
        throw validation_error("flow value list length must equal edge count");
    if (boundary && static_cast<int>(boundary->values.size()) != g.vertex_count())
        throw validation_error("boundary length must equal vertex count");
    for (int32_t v : f.values)
        if (!f.domain.value_in_domain(v))
            throw validation_error(f.domain.is_integer() ? "flow value outside integer band"
                                                         : "flow value outside group");
    for (int v = 0; v < g.vertex_count(); ++v) {
        int32_t expect = boundary ? boundary->values[v] : 0;
        if (flow_excess(g, f, v) != expect)
            throw validation_error("conservation violated at vertex " + std::to_string(v));
    }
}

inline std::vector<int> support(const Flow& f) {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(f.values.size()); ++e)
        if (f.values[e] != 0) out.push_back(e);
    return out;
}

inline bool is_nowhere_zero(const Flow& f) {
    for (int32_t v : f.values)
        if (v == 0) return false;
    return true;
}

/// f + a * cycle: adds a along the cycle's traversal direction. The result
/// conserves automatically; integer results must stay inside the band.
inline Flow add_cycle(const Flow& f, const SignedCycle& cycle, int32_t a) {
    if (a == 0) throw validation_error("cycle move value must be nonzero");
    Flow out = f;
    for (const auto& se : cycle.entries) {
        int32_t delta = se.sign > 0 ? a : f.domain.negate(a);
        int32_t nv = f.domain.add(out.values[se.edge], delta);
        if (!f.domain.value_in_domain(nv)) throw validation_error("cycle move overflows the band");
        out.values[se.edge] = nv;
    }
    return out;
}

namespace detail {

struct ForcingPlan {
    std::vector<int> cotree;                  // free edges, ascending
    std::vector<std::pair<int, int>> forced;  // (leaf vertex, its tree edge), leaf-inward order
    int root = 0;
};

inline ForcingPlan make_forcing_plan(const OrientedMultigraph& g, const CycleBasis& basis) {
    ForcingPlan plan;
    plan.cotree = basis.cotree_edges;
    const int n = g.vertex_count();
    std::vector<std::vector<int>> tree_at(n);
    for (int e : basis.tree_edges) {
        tree_at[g.arc(e).tail].push_back(e);
        tree_at[g.arc(e).head].push_back(e);
    }
    std::vector<int> deg(n);
    std::vector<char> removed_edge(g.edge_count(), 0), removed_vert(n, 0);
    std::queue<int> leaves;
    for (int v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(tree_at[v].size());
        if (deg[v] == 1) leaves.push(v);
    }
    while (!leaves.empty()) {
        int v = leaves.front();
        leaves.pop();
        if (removed_vert[v] || deg[v] != 1) continue;
        int e = -1;
        for (int cand : tree_at[v])
            if (!removed_edge[cand]) e = cand;
        plan.forced.push_back({v, e});
        removed_vert[v] = 1;
        removed_edge[e] = 1;
        int u = g.other_end(e, v);
        if (--deg[u] == 1) leaves.push(u);
        --deg[v];
    }
    for (int v = 0; v < n; ++v)
        if (!removed_vert[v]) plan.root = v;
    return plan;
}

// Solve the tree values for one cotree assignment; false if some forced
// value is zero or out of band.
inline bool force_tree_values(const OrientedMultigraph& g, const ValueDomain& domain,
                              const ForcingPlan& plan, const Boundary* boundary,
                              std::vector<int32_t>& values, std::vector<int32_t>& acc) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int e : plan.cotree) {
        const Arc& a = g.arc(e);
        acc[a.tail] = domain.add(acc[a.tail], values[e]);
        acc[a.head] = domain.add(acc[a.head], domain.negate(values[e]));
    }
    for (const auto& [v, e] : plan.forced) {
        int32_t target = boundary ? boundary->values[v] : 0;
        const Arc& a = g.arc(e);
        int32_t val;
        if (a.tail == v) {
            val = domain.add(target, domain.negate(acc[v]));
            acc[a.head] = domain.add(acc[a.head], domain.negate(val));
        } else {
            val = domain.add(acc[v], domain.negate(target));
            acc[a.tail] = domain.add(acc[a.tail], val);
        }
        if (val == 0 || !domain.value_in_domain(val)) return false;
        values[e] = val;
        acc[v] = target;
    }
    return true;
}

} // namespace detail

inline constexpr long long default_enumeration_budget = 1ll << 26;

/// Exhaustive, duplicate-free, canonically ordered list of nowhere-zero
/// flows. Free values are assigned on the cotree edges; tree values are
/// forced leaf-inward by conservation.
inline std::vector<Flow> enumerate_nz_flows(const OrientedMultigraph& g,
                                            const ValueDomain& domain,
                                            const Boundary* boundary = nullptr,
                                            long long budget = default_enumeration_budget) {
    if (!is_connected(g)) throw validation_error("flow enumeration requires a connected graph");
    if (boundary && static_cast<int>(boundary->values.size()) != g.vertex_count())
        throw validation_error("boundary length must equal vertex count");

    CycleBasis basis = cycle_basis(g);
    const auto plan = detail::make_forcing_plan(g, basis);
    const auto free_values = domain.nonzero_flow_values();
    const int d = static_cast<int>(plan.cotree.size());

    double size_estimate = 1;
    for (int i = 0; i < d; ++i) size_estimate *= static_cast<double>(free_values.size());
    if (size_estimate > static_cast<double>(budget))
        throw budget_error("flow enumeration budget exceeded");

    std::vector<Flow> out;
    std::vector<int32_t> values(g.edge_count(), 0), acc(g.vertex_count(), 0);
    std::vector<int> idx(d, 0);
    while (true) {
        for (int i = 0; i < d; ++i) values[plan.cotree[i]] = free_values[idx[i]];
        if (detail::force_tree_values(g, domain, plan, boundary, values, acc))
            out.push_back(Flow{domain, values});
        int pos = d - 1;
        while (pos >= 0 && ++idx[pos] == static_cast<int>(free_values.size())) {
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    std::sort(out.begin(), out.end(),
              [](const Flow& a, const Flow& b) { return a.values < b.values; });
    return out;
}

/// Reduce an integer band flow to its Z_k image; nowhere-zero survives.
inline Flow project_mod_k(const Flow& f) {
    const int k = f.domain.band();
    Flow out;
    out.domain = ValueDomain::group(make_group({k}));
    out.values.reserve(f.values.size());
    for (int32_t v : f.values) out.values.push_back(((v % k) + k) % k);
    return out;
}

/// Lift a nowhere-zero Z_k flow to a congruent nowhere-zero integer k-flow.
/// Starting from representatives in {1..k-1}, every vertex excess is a
/// multiple of k; while one is positive, k units are pushed along a path of
/// shiftable edges towards a vertex of negative excess.
inline Flow tutte_lift(const OrientedMultigraph& g, const Flow& f) {
    if (!f.domain.is_group() || f.domain.group_spec().factor_count() != 1)
        throw validation_error("tutte_lift expects a Z_k flow");
    const int k = f.domain.group_spec().moduli()[0];
    verify_flow(g, f);
    if (!is_nowhere_zero(f)) throw validation_error("tutte_lift expects a nowhere-zero flow");

    Flow out;
    out.domain = ValueDomain::integer_band(k);
    out.values.assign(f.values.begin(), f.values.end()); // codes 1..k-1 are the representatives

    const int n = g.vertex_count();
    std::vector<long long> excess(n, 0);
    auto recompute = [&](int v) {
        long long acc = 0;
        for (const auto& [e, dir] : g.incident(v)) acc += dir * out.values[e];
        excess[v] = acc;
    };
    for (int v = 0; v < n; ++v) recompute(v);

    while (true) {
        int x = -1;
        for (int v = 0; v < n; ++v)
            if (excess[v] > 0) {
                x = v;
                break;
            }
        if (x < 0) break;

        // BFS over shiftable arcs: leaving with value >= 1 (gets -k) or
        // entering with value <= -1 (gets +k)
        std::vector<int> par_edge(n, -1), par_vert(n, -1);
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        q.push(x);
        seen[x] = 1;
        int y = -1;
        while (!q.empty() && y < 0) {
            int v = q.front();
            q.pop();
            for (const auto& [e, dir] : g.incident(v)) {
                int32_t val = out.values[e];
                bool usable = (dir > 0) ? (val >= 1) : (val <= -1);
                if (!usable) continue;
                int w = g.other_end(e, v);
                if (seen[w]) continue;
                seen[w] = 1;
                par_edge[w] = e;
                par_vert[w] = v;
                if (excess[w] < 0) {
                    y = w;
                    break;
                }
                q.push(w);
            }
        }
        if (y < 0) throw validation_error("tutte_lift: no balancing path (input is not a flow?)");
        for (int v = y; v != x; v = par_vert[v]) {
            int e = par_edge[v];
            out.values[e] += (g.arc(e).tail == par_vert[v]) ? -k : +k;
        }
        excess[x] -= k;
        excess[y] += k;
    }
    return out;
}

} // namespace flowreconf
