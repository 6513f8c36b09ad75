#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "flowreconf/errors.hpp"
#include "flowreconf/flows.hpp"
#include "flowreconf/multigraph.hpp"
#include "flowreconf/reconfig.hpp"
#include "flowreconf/util.hpp"

namespace flowreconf {

/// A proper 3-edge-coloring of a cubic graph as an unlabelled partition:
/// the stored class sequence is the lexicographically least one over the 6
/// relabelings of {0,1,2}.
struct EdgeColoring3 {
    std::vector<std::uint8_t> classes;

    bool operator==(const EdgeColoring3& o) const { return classes == o.classes; }
    bool operator<(const EdgeColoring3& o) const { return classes < o.classes; }
};

inline void require_cubic(const OrientedMultigraph& g) {
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) != 3) throw validation_error("a cubic graph is required");
}

inline EdgeColoring3 canonical_coloring(std::vector<std::uint8_t> classes) {
    static constexpr std::array<std::array<std::uint8_t, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    std::vector<std::uint8_t> best;
    std::vector<std::uint8_t> cand(classes.size());
    for (const auto& p : perms) {
        for (std::size_t e = 0; e < classes.size(); ++e) cand[e] = p[classes[e]];
        if (best.empty() || cand < best) best = cand;
    }
    return EdgeColoring3{std::move(best)};
}

inline bool is_proper_edge_coloring(const OrientedMultigraph& g,
                                    const std::vector<std::uint8_t>& classes) {
    for (int v = 0; v < g.vertex_count(); ++v) {
        int seen = 0;
        for (const auto& [e, dir] : g.incident(v)) {
            int bit = 1 << classes[e];
            if (seen & bit) return false;
            seen |= bit;
        }
    }
    return true;
}

/// All unlabelled proper 3-edge-colorings, canonical and sorted. Labelled
/// count is exactly six per entry.
inline std::vector<EdgeColoring3> enumerate_colorings(const OrientedMultigraph& g) {
    require_cubic(g);
    const int m = g.edge_count();
    std::vector<std::uint8_t> classes(m, 0);
    std::vector<int> pick(m, -1);
    std::vector<EdgeColoring3> out;

    // normalize the three classes at vertex 0 to break the 3! relabeling
    std::array<int, 3> anchor{-1, -1, -1};
    {
        int i = 0;
        for (const auto& [e, dir] : g.incident(0)) anchor[i++] = e;
    }
    auto anchored_class = [&](int e) -> int {
        for (int i = 0; i < 3; ++i)
            if (anchor[i] == e) return i;
        return -1;
    };

    int pos = 0;
    while (pos >= 0) {
        if (pos == m) {
            out.push_back(canonical_coloring(classes));
            --pos;
            continue;
        }
        const int e = pos;
        bool advanced = false;
        int fixed = anchored_class(e);
        for (int c = pick[e] + 1; c < 3; ++c) {
            if (fixed >= 0 && c != fixed) continue;
            classes[e] = static_cast<std::uint8_t>(c);
            bool ok = true;
            for (int v : {g.arc(e).tail, g.arc(e).head}) {
                for (const auto& [e2, dir] : g.incident(v)) {
                    if (e2 < e && classes[e2] == c) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok) {
                pick[e] = c;
                advanced = true;
                break;
            }
        }
        if (advanced) {
            ++pos;
            if (pos < m) pick[pos] = -1;
        } else {
            pick[e] = -1;
            --pos;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// A connected component of two color classes; in a cubic graph these are
/// disjoint even cycles covering every vertex.
struct KempeChain {
    int class_a;
    int class_b;
    std::vector<int> edges;
};

inline std::vector<KempeChain> kempe_chains(const OrientedMultigraph& g, const EdgeColoring3& c,
                                            int class_a, int class_b) {
    UnionFind uf(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e)
        if (c.classes[e] == class_a || c.classes[e] == class_b)
            uf.unite(g.arc(e).tail, g.arc(e).head);
    std::unordered_map<std::size_t, int> root_to_chain;
    std::vector<KempeChain> chains;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (c.classes[e] != class_a && c.classes[e] != class_b) continue;
        std::size_t root = uf.find(g.arc(e).tail);
        auto it = root_to_chain.find(root);
        if (it == root_to_chain.end()) {
            it = root_to_chain.insert({root, static_cast<int>(chains.size())}).first;
            chains.push_back(KempeChain{class_a, class_b, {}});
        }
        chains[it->second].edges.push_back(e);
    }
    return chains;
}

inline EdgeColoring3 kempe_swap(const EdgeColoring3& c, const KempeChain& chain) {
    std::vector<std::uint8_t> classes = c.classes;
    for (int e : chain.edges) {
        if (classes[e] == chain.class_a) classes[e] = static_cast<std::uint8_t>(chain.class_b);
        else if (classes[e] == chain.class_b) classes[e] = static_cast<std::uint8_t>(chain.class_a);
        else throw validation_error("kempe_swap: chain edge outside its two classes");
    }
    return canonical_coloring(std::move(classes));
}

/// Distinct unlabelled colorings one Kempe change away; swapping a chain
/// that happens to relabel the whole coloring is not a neighbor.
inline std::vector<EdgeColoring3> kempe_neighbors(const OrientedMultigraph& g,
                                                  const EdgeColoring3& c) {
    std::set<EdgeColoring3> seen;
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            for (const auto& chain : kempe_chains(g, c, a, b)) {
                EdgeColoring3 next = kempe_swap(c, chain);
                if (!(next == c)) seen.insert(std::move(next));
            }
        }
    }
    return {seen.begin(), seen.end()};
}

struct KempeGraph {
    std::vector<EdgeColoring3> colorings; // sorted canonical
    std::vector<std::vector<int>> adjacency;
    std::vector<int> component;
    int component_count = 0;

    std::optional<int> index_of(const EdgeColoring3& c) const {
        auto it = std::lower_bound(colorings.begin(), colorings.end(), c);
        if (it == colorings.end() || !(*it == c)) return std::nullopt;
        return static_cast<int>(it - colorings.begin());
    }
};

inline KempeGraph build_kempe_graph(const OrientedMultigraph& g) {
    KempeGraph out;
    out.colorings = enumerate_colorings(g);
    out.adjacency.assign(out.colorings.size(), {});
    for (int i = 0; i < static_cast<int>(out.colorings.size()); ++i) {
        for (const auto& nb : kempe_neighbors(g, out.colorings[i])) {
            auto j = out.index_of(nb);
            if (!j) throw validation_error("internal: kempe neighbor missing from enumeration");
            if (*j > i) {
                out.adjacency[i].push_back(*j);
                out.adjacency[*j].push_back(i);
            }
        }
    }
    for (auto& nb : out.adjacency) std::sort(nb.begin(), nb.end());
    auto comps = label_components(out.adjacency);
    out.component = std::move(comps.label);
    out.component_count = comps.count;
    return out;
}

inline ValueDomain z2z2_domain() { return ValueDomain::group(make_group({2, 2})); }

/// The six flows obtained by assigning the nonzero Klein-group values to
/// the three color classes bijectively. Orientations are irrelevant since
/// every element is its own negative.
inline std::vector<Flow> flows_from_coloring(const OrientedMultigraph& g, const EdgeColoring3& c) {
    require_cubic(g);
    static constexpr std::array<std::array<int32_t, 3>, 6> assignments{
        {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}};
    std::vector<Flow> out;
    const ValueDomain domain = z2z2_domain();
    for (const auto& asg : assignments) {
        Flow f;
        f.domain = domain;
        f.values.resize(g.edge_count());
        for (int e = 0; e < g.edge_count(); ++e) f.values[e] = asg[c.classes[e]];
        out.push_back(std::move(f));
    }
    return out;
}

/// The partition of the edges by their Klein-group value, as an unlabelled
/// coloring; at a cubic vertex the three values are pairwise distinct.
inline EdgeColoring3 coloring_of_flow(const OrientedMultigraph& g, const Flow& f) {
    require_cubic(g);
    if (!(f.domain == z2z2_domain()))
        throw validation_error("coloring_of_flow expects a Z2xZ2 flow");
    if (!is_nowhere_zero(f)) throw validation_error("coloring_of_flow: flow has a zero edge");
    std::vector<std::uint8_t> classes(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e)
        classes[e] = static_cast<std::uint8_t>(f.values[e] - 1);
    if (!is_proper_edge_coloring(g, classes))
        throw validation_error("coloring_of_flow: values do not form a proper coloring");
    return canonical_coloring(std::move(classes));
}

/// Checks the component-level correspondence between the Klein-group flow
/// reconfiguration graph and the Kempe graph: two flows lie in one flow
/// component exactly when their colorings share a Kempe component (so all
/// six flows of a coloring sit together). A failure signals a bug.
inline void verify_correspondence(const OrientedMultigraph& g,
                                  long long budget = default_enumeration_budget) {
    require_cubic(g);
    auto fr = build_reconfig(g, z2z2_domain(), budget);
    auto kg = build_kempe_graph(g);

    if (fr.flow_count() != 6 * static_cast<long long>(kg.colorings.size()))
        throw validation_error("correspondence: flow count is not six per coloring");

    const int fcomps = fr.component_count();
    std::vector<int> image(fcomps, -1);
    for (int i = 0; i < static_cast<int>(fr.flows.size()); ++i) {
        auto col = coloring_of_flow(g, fr.flow(i));
        auto ci = kg.index_of(col);
        if (!ci) throw validation_error("correspondence: coloring missing");
        int fc = fr.component[i];
        int kc = kg.component[*ci];
        if (image[fc] < 0) image[fc] = kc;
        else if (image[fc] != kc)
            throw validation_error("correspondence: one flow component meets two Kempe components");
    }
    std::vector<int> preimage(kg.component_count, -1);
    for (int fc = 0; fc < fcomps; ++fc) {
        if (image[fc] < 0) continue;
        if (preimage[image[fc]] >= 0)
            throw validation_error("correspondence: two flow components share a Kempe component");
        preimage[image[fc]] = fc;
    }
    for (int kc = 0; kc < kg.component_count; ++kc)
        if (preimage[kc] < 0)
            throw validation_error("correspondence: Kempe component with no flows");
}

/// Cubic graphs built from K4 by repeatedly replacing a vertex with a
/// triangle; the expansion sequence names the vertex expanded at each step.
inline OrientedMultigraph klee_graph(const std::vector<int>& expansion_seq) {
    std::vector<std::pair<int, int>> arcs{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    int n = 4;
    for (int v : expansion_seq) {
        if (v < 0 || v >= n) throw validation_error("klee expansion vertex out of range");
        std::vector<int> nbrs;
        std::vector<std::pair<int, int>> next;
        for (const auto& [t, h] : arcs) {
            if (t == v) nbrs.push_back(h);
            else if (h == v) nbrs.push_back(t);
            else next.push_back({t, h});
        }
        std::sort(nbrs.begin(), nbrs.end());
        if (nbrs.size() != 3) throw validation_error("klee expansion needs a cubic vertex");
        const std::array<int, 3> tri{v, n, n + 1};
        for (int i = 0; i < 3; ++i)
            next.push_back({std::min(nbrs[i], tri[i]), std::max(nbrs[i], tri[i])});
        next.push_back({v, n});
        next.push_back({v, n + 1});
        next.push_back({n, n + 1});
        arcs = std::move(next);
        n += 2;
    }
    return OrientedMultigraph(n, arcs);
}

} // namespace flowreconf
