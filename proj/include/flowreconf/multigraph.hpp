#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "flowreconf/errors.hpp"
#include "flowreconf/util.hpp"

namespace flowreconf {

struct Arc {
    int tail;
    int head;
};

/// Loopless multigraph with a fixed reference orientation. Arc indices are
/// stable edge identifiers; every flow on the graph is expressed against
/// this one orientation.
class OrientedMultigraph {
  public:
    OrientedMultigraph() = default;

    OrientedMultigraph(int vertex_count, const std::vector<std::pair<int, int>>& arcs)
        : n_(vertex_count) {
        if (vertex_count < 1) throw validation_error("graph needs at least one vertex");
        arcs_.reserve(arcs.size());
        incidence_.assign(n_, {});
        for (const auto& [t, h] : arcs) {
            if (t < 0 || t >= n_ || h < 0 || h >= n_)
                throw validation_error("arc endpoint out of range");
            if (t == h) throw validation_error("loops are not allowed");
            const int e = static_cast<int>(arcs_.size());
            arcs_.push_back(Arc{t, h});
            incidence_[t].push_back({e, +1});
            incidence_[h].push_back({e, -1});
        }
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(arcs_.size()); }
    const Arc& arc(int e) const { return arcs_[e]; }

    // (edge id, +1 if v is the tail / -1 if v is the head), in edge-id order.
    const std::vector<std::pair<int, int>>& incident(int v) const { return incidence_[v]; }
    int degree(int v) const { return static_cast<int>(incidence_[v].size()); }

    int other_end(int e, int v) const {
        const Arc& a = arcs_[e];
        return a.tail == v ? a.head : a.tail;
    }

  private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::vector<std::pair<int, int>>> incidence_;
};

struct SignedEdge {
    int edge;
    int sign; // +1: traversed tail->head, -1: head->tail

    bool operator==(const SignedEdge& o) const { return edge == o.edge && sign == o.sign; }
};

/// A cycle (connected 2-regular edge set) together with a traversal
/// direction, stored as the closed walk's (edge, sign) sequence.
struct SignedCycle {
    std::vector<SignedEdge> entries;

    std::size_t length() const { return entries.size(); }

    std::vector<int> edge_ids() const {
        std::vector<int> ids;
        ids.reserve(entries.size());
        for (const auto& se : entries) ids.push_back(se.edge);
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    int sign_of(int e) const {
        for (const auto& se : entries)
            if (se.edge == e) return se.sign;
        return 0;
    }

    SignedCycle reversed() const {
        SignedCycle out;
        out.entries.reserve(entries.size());
        for (auto it = entries.rbegin(); it != entries.rend(); ++it)
            out.entries.push_back({it->edge, -it->sign});
        return out;
    }
};

struct GraphInfo {
    int vertices = 0;
    int edges = 0;
    bool connected = false;
};

inline bool is_connected(const OrientedMultigraph& g) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto& [e, dir] : g.incident(v)) {
            int w = g.other_end(e, v);
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
        }
    }
    return reached == g.vertex_count();
}

// Loops are already rejected at construction; connectivity is reported,
// not enforced (several operations re-check it themselves).
inline GraphInfo validate(const OrientedMultigraph& g) {
    return GraphInfo{g.vertex_count(), g.edge_count(), is_connected(g)};
}

namespace detail {

inline bool connected_avoiding(const OrientedMultigraph& g, const std::vector<char>& banned_edge) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto& [e, dir] : g.incident(v)) {
            if (banned_edge[e]) continue;
            int w = g.other_end(e, v);
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
        }
    }
    return reached == g.vertex_count();
}

// Unit-capacity max-flow (Edmonds-Karp) between s and t, where every edge
// may carry one unit in either direction. Graphs here are tiny.
inline int unit_max_flow(const OrientedMultigraph& g, int s, int t) {
    const int m = g.edge_count();
    std::vector<int> used(m, 0); // -1, 0, +1: net unit along the arc
    int flow = 0;
    while (true) {
        std::vector<int> par_edge(g.vertex_count(), -1), par_vert(g.vertex_count(), -1);
        std::vector<char> seen(g.vertex_count(), 0);
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty() && !seen[t]) {
            int v = q.front();
            q.pop();
            for (const auto& [e, dir] : g.incident(v)) {
                // residual capacity along v -> other: |used - dir| <= 1
                if (used[e] == dir) continue; // saturated in this direction
                int w = g.other_end(e, v);
                if (seen[w]) continue;
                seen[w] = 1;
                par_edge[w] = e;
                par_vert[w] = v;
                q.push(w);
            }
        }
        if (!seen[t]) break;
        for (int v = t; v != s; v = par_vert[v]) {
            int e = par_edge[v];
            used[e] += (g.arc(e).tail == par_vert[v]) ? +1 : -1;
        }
        ++flow;
    }
    return flow;
}

} // namespace detail

inline int edge_connectivity(const OrientedMultigraph& g) {
    if (g.vertex_count() == 1) return g.edge_count() == 0 ? 0 : 0;
    if (!is_connected(g)) return 0;
    int best = g.edge_count();
    for (int t = 1; t < g.vertex_count(); ++t)
        best = std::min(best, detail::unit_max_flow(g, 0, t));
    return best;
}

inline bool is_k_edge_connected(const OrientedMultigraph& g, int k) {
    if (k < 1) throw validation_error("edge-connectivity threshold must be >= 1");
    if (g.vertex_count() == 1) return false;
    return edge_connectivity(g) >= k;
}

/// Canonical signed cycle over the given edge set: the walk starts at the
/// lowest edge id with sign +1. Returns nothing when the edges are not a
/// connected 2-regular subgraph.
inline std::optional<SignedCycle> make_signed_cycle(const OrientedMultigraph& g,
                                                    std::vector<int> edges) {
    if (edges.size() < 2) return std::nullopt;
    std::sort(edges.begin(), edges.end());
    std::vector<std::vector<int>> at(g.vertex_count());
    for (int e : edges) {
        at[g.arc(e).tail].push_back(e);
        at[g.arc(e).head].push_back(e);
    }
    for (int e : edges) {
        if (at[g.arc(e).tail].size() != 2 || at[g.arc(e).head].size() != 2)
            return std::nullopt;
    }
    SignedCycle cyc;
    const int e0 = edges[0];
    int cur = g.arc(e0).head;
    cyc.entries.push_back({e0, +1});
    int prev_edge = e0;
    while (true) {
        int next = (at[cur][0] == prev_edge) ? at[cur][1] : at[cur][0];
        if (next == e0) break;
        int sgn = (g.arc(next).tail == cur) ? +1 : -1;
        cyc.entries.push_back({next, sgn});
        cur = g.other_end(next, cur);
        prev_edge = next;
    }
    if (cur != g.arc(e0).tail) return std::nullopt;
    if (cyc.entries.size() != edges.size()) return std::nullopt; // disconnected union
    return cyc;
}

/// Spanning forest plus the fundamental cycle of every cotree edge. For a
/// connected graph the basis has |E| - |V| + 1 members.
struct CycleBasis {
    std::vector<int> tree_edges;
    std::vector<int> cotree_edges;
    std::vector<SignedCycle> fundamental; // aligned with cotree_edges
};

inline CycleBasis cycle_basis(const OrientedMultigraph& g) {
    const int n = g.vertex_count();
    CycleBasis basis;
    std::vector<int> parent_edge(n, -1), parent_vert(n, -1), depth(n, -1);
    std::vector<char> in_tree(g.edge_count(), 0);
    for (int root = 0; root < n; ++root) {
        if (depth[root] >= 0) continue;
        depth[root] = 0;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const auto& [e, dir] : g.incident(v)) {
                int w = g.other_end(e, v);
                if (depth[w] < 0) {
                    depth[w] = depth[v] + 1;
                    parent_edge[w] = e;
                    parent_vert[w] = v;
                    in_tree[e] = 1;
                    basis.tree_edges.push_back(e);
                    q.push(w);
                }
            }
        }
    }
    std::sort(basis.tree_edges.begin(), basis.tree_edges.end());
    for (int e = 0; e < g.edge_count(); ++e) {
        if (in_tree[e]) continue;
        basis.cotree_edges.push_back(e);
        // tree path between the endpoints, plus e itself
        std::vector<int> edges{e};
        int u = g.arc(e).tail, v = g.arc(e).head;
        while (u != v) {
            if (depth[u] < depth[v]) std::swap(u, v);
            edges.push_back(parent_edge[u]);
            u = parent_vert[u];
        }
        auto cyc = make_signed_cycle(g, edges);
        if (!cyc) throw validation_error("internal: fundamental cycle is not a cycle");
        basis.fundamental.push_back(*cyc);
    }
    return basis;
}

inline int cycle_space_dimension(const OrientedMultigraph& g) {
    return static_cast<int>(cycle_basis(g).cotree_edges.size());
}

/// Every connected 2-regular edge subset, one canonical direction each,
/// found by sweeping the 2^d cycle-space members. Results are sorted by
/// their edge-id sets.
inline std::vector<SignedCycle> all_cycles(const OrientedMultigraph& g, int dim_cap = 24) {
    if (g.edge_count() > 64) throw budget_error("all_cycles supports at most 64 edges");
    CycleBasis basis = cycle_basis(g);
    const int d = static_cast<int>(basis.cotree_edges.size());
    if (d > dim_cap) throw budget_error("cycle space dimension exceeds cap");

    std::vector<std::uint64_t> fmask(d, 0);
    for (int i = 0; i < d; ++i)
        for (const auto& se : basis.fundamental[i].entries)
            fmask[i] |= 1ull << se.edge;

    std::vector<std::vector<int>> at(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        at[g.arc(e).tail].push_back(e);
        at[g.arc(e).head].push_back(e);
    }

    std::vector<SignedCycle> cycles;
    std::uint64_t mask = 0;
    std::uint64_t prev_gray = 0;
    const std::uint64_t total = 1ull << d;
    for (std::uint64_t i = 1; i < total; ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        std::uint64_t changed = gray ^ prev_gray;
        prev_gray = gray;
        int bit = 0;
        while (!((changed >> bit) & 1)) ++bit;
        mask ^= fmask[bit];

        std::vector<int> edges;
        for (std::uint64_t m = mask; m;) {
            int e = __builtin_ctzll(m);
            m &= m - 1;
            edges.push_back(e);
        }
        auto cyc = make_signed_cycle(g, edges);
        if (cyc) cycles.push_back(std::move(*cyc));
    }
    std::sort(cycles.begin(), cycles.end(), [](const SignedCycle& a, const SignedCycle& b) {
        return a.edge_ids() < b.edge_ids();
    });
    return cycles;
}

/// Shortest cycle using edge e, as a cycle object; nothing if e is a bridge
/// or every such cycle is longer than max_len.
inline std::optional<SignedCycle> short_cycle_through_edge(const OrientedMultigraph& g, int e,
                                                           int max_len) {
    const int s = g.arc(e).head, t = g.arc(e).tail;
    std::vector<int> par_edge(g.vertex_count(), -1), par_vert(g.vertex_count(), -1);
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty() && dist[t] < 0) {
        int v = q.front();
        q.pop();
        for (const auto& [f, dir] : g.incident(v)) {
            if (f == e) continue;
            int w = g.other_end(f, v);
            if (dist[w] >= 0) continue;
            dist[w] = dist[v] + 1;
            par_edge[w] = f;
            par_vert[w] = v;
            q.push(w);
        }
    }
    if (dist[t] < 0 || dist[t] + 1 > max_len) return std::nullopt;
    std::vector<int> edges{e};
    for (int v = t; v != s; v = par_vert[v]) edges.push_back(par_edge[v]);
    auto cyc = make_signed_cycle(g, edges);
    if (!cyc) throw validation_error("internal: shortest closed walk is not a cycle");
    return cyc;
}

inline std::optional<int> shortest_cycle_through_edge(const OrientedMultigraph& g, int e) {
    auto cyc = short_cycle_through_edge(g, e, g.edge_count());
    if (!cyc) return std::nullopt;
    return static_cast<int>(cyc->length());
}

/// First cycle (DFS order) in the subgraph of allowed edges, or nothing if
/// that subgraph is a forest. Deterministic: vertices and edges are scanned
/// in id order.
inline std::optional<std::vector<int>> find_cycle_among(const OrientedMultigraph& g,
                                                        const std::vector<char>& allowed) {
    const int n = g.vertex_count();
    std::vector<int> state(n, 0), par_edge(n, -1), par_vert(n, -1);
    for (int root = 0; root < n; ++root) {
        if (state[root]) continue;
        std::vector<int> stack{root};
        state[root] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& [e, dir] : g.incident(v)) {
                if (!allowed[e] || e == par_edge[v]) continue;
                int w = g.other_end(e, v);
                if (state[w]) {
                    // close the cycle through the two tree paths
                    std::vector<int> edges{e};
                    std::vector<char> on_v(n, 0);
                    for (int x = v; x >= 0; x = par_vert[x]) on_v[x] = 1;
                    int meet = w;
                    while (!on_v[meet]) {
                        edges.push_back(par_edge[meet]);
                        meet = par_vert[meet];
                    }
                    for (int x = v; x != meet; x = par_vert[x]) edges.push_back(par_edge[x]);
                    return edges;
                }
                state[w] = 1;
                par_edge[w] = e;
                par_vert[w] = v;
                stack.push_back(w);
            }
        }
    }
    return std::nullopt;
}

/// Result of suppressing degree-2 vertices: each new edge remembers the
/// signed path of original edges it replaces (signs relative to the new
/// arc's direction).
struct SuppressResult {
    OrientedMultigraph graph;
    std::vector<std::vector<SignedEdge>> edge_paths; // per new edge
    std::vector<int> vertex_map;                     // old id -> new id, -1 if gone
};

/// Replaces every path whose internal vertices all have degree two by a
/// single edge. A pure cycle collapses to a two-vertex dipole instead of a
/// loop; a cycle hanging off a single branch vertex keeps one internal
/// vertex for the same reason.
inline SuppressResult suppress_degree_2(const OrientedMultigraph& g) {
    const int n = g.vertex_count();
    if (!is_connected(g)) throw validation_error("suppress_degree_2 requires a connected graph");
    for (int v = 0; v < n; ++v)
        if (g.degree(v) < 2) throw validation_error("suppress_degree_2: vertex of degree < 2");

    std::vector<char> keep(n, 0);
    bool any_branch = false;
    for (int v = 0; v < n; ++v) {
        if (g.degree(v) != 2) {
            keep[v] = 1;
            any_branch = true;
        }
    }
    if (!any_branch) {
        // connected 2-regular graph: one cycle
        keep[0] = 1;
        if (n >= 2) keep[1] = 1;
        else throw validation_error("suppress_degree_2: single-vertex cycle");
    }

    // walk chains between kept vertices
    struct Chain {
        int from, to;
        std::vector<SignedEdge> path;
        std::vector<int> internal;
    };
    std::vector<Chain> chains;
    std::vector<char> edge_done(g.edge_count(), 0);
    for (int v = 0; v < n; ++v) {
        if (!keep[v]) continue;
        for (const auto& [e0, dir0] : g.incident(v)) {
            if (edge_done[e0]) continue;
            Chain ch;
            ch.from = v;
            int cur = v, e = e0;
            while (true) {
                edge_done[e] = 1;
                int sgn = (g.arc(e).tail == cur) ? +1 : -1;
                ch.path.push_back({e, sgn});
                cur = g.other_end(e, cur);
                if (keep[cur]) break;
                ch.internal.push_back(cur);
                const auto& inc = g.incident(cur);
                e = (inc[0].first == e) ? inc[1].first : inc[0].first;
            }
            ch.to = cur;
            chains.push_back(std::move(ch));
        }
    }

    // a chain returning to its start would be a loop; keep one internal
    // vertex and split it
    std::vector<Chain> final_chains;
    for (auto& ch : chains) {
        if (ch.from != ch.to || ch.internal.empty()) {
            if (ch.from == ch.to)
                throw validation_error("suppress_degree_2: loop chain without internal vertex");
            final_chains.push_back(std::move(ch));
            continue;
        }
        int w = *std::min_element(ch.internal.begin(), ch.internal.end());
        Chain a, b;
        a.from = ch.from;
        a.to = w;
        b.from = w;
        b.to = ch.to;
        int cur = ch.from;
        bool first_half = true;
        for (const auto& se : ch.path) {
            (first_half ? a : b).path.push_back(se);
            cur = g.other_end(se.edge, cur);
            if (first_half) {
                if (cur == w) first_half = false;
                else a.internal.push_back(cur);
            } else if (cur != ch.to) {
                b.internal.push_back(cur);
            }
        }
        final_chains.push_back(std::move(a));
        final_chains.push_back(std::move(b));
    }

    // chains partition the edges, so the lowest contained edge id is a
    // unique sort key; an input that is already suppressed maps to itself
    std::sort(final_chains.begin(), final_chains.end(), [](const Chain& a, const Chain& b) {
        return a.path.front().edge < b.path.front().edge;
    });

    SuppressResult out;
    out.vertex_map.assign(n, -1);
    std::vector<char> kept2(keep.begin(), keep.end());
    for (const auto& ch : final_chains) {
        kept2[ch.from] = 1;
        kept2[ch.to] = 1;
    }
    int next_id = 0;
    for (int v = 0; v < n; ++v)
        if (kept2[v]) out.vertex_map[v] = next_id++;

    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(final_chains.size());
    for (const auto& ch : final_chains) {
        arcs.push_back({out.vertex_map[ch.from], out.vertex_map[ch.to]});
        out.edge_paths.push_back(ch.path);
    }
    out.graph = OrientedMultigraph(next_id, arcs);
    return out;
}

/// Longest shortest-path distance; requires a connected graph.
inline int graph_diameter(const OrientedMultigraph& g) {
    if (!is_connected(g)) throw validation_error("diameter of a disconnected graph");
    std::vector<std::vector<int>> adj(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        adj[g.arc(e).tail].push_back(g.arc(e).head);
        adj[g.arc(e).head].push_back(g.arc(e).tail);
    }
    int diam = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int d : bfs_distances(adj, v)) diam = std::max(diam, d);
    return diam;
}

} // namespace flowreconf
