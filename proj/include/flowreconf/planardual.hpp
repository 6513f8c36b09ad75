#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowreconf/errors.hpp"
#include "flowreconf/flows.hpp"
#include "flowreconf/multigraph.hpp"
#include "flowreconf/pathbuild.hpp"
#include "flowreconf/util.hpp"

namespace flowreconf {

/// One step of a face boundary walk: the edge, and which side of the arc
/// the face lies on. A face on the left of an arc is traversed tail->head
/// by the walk that keeps the face on its left.
struct FaceEntry {
    int edge;
    bool face_on_right;
};

/// A plane graph given by explicit face boundary walks. Validation checks
/// that every edge is used exactly twice (once per side), that each walk
/// closes up, and the Euler count.
struct PlaneEmbedding {
    OrientedMultigraph graph;
    std::vector<std::vector<FaceEntry>> faces;
};

inline PlaneEmbedding make_embedding(OrientedMultigraph graph,
                                     std::vector<std::vector<FaceEntry>> faces) {
    const int m = graph.edge_count();
    std::vector<int> left_seen(m, 0), right_seen(m, 0);
    for (const auto& walk : faces) {
        if (walk.empty()) throw validation_error("embedding: empty face walk");
        int expected = -1;
        for (const auto& fe : walk) {
            if (fe.edge < 0 || fe.edge >= m) throw validation_error("embedding: bad edge id");
            (fe.face_on_right ? right_seen : left_seen)[fe.edge] += 1;
            const Arc& a = graph.arc(fe.edge);
            // face on left -> walked along the arc; on right -> against it
            int from = fe.face_on_right ? a.head : a.tail;
            int to = fe.face_on_right ? a.tail : a.head;
            if (expected >= 0 && from != expected)
                throw validation_error("embedding: face walk does not close up");
            expected = to;
        }
        const auto& first = walk.front();
        const Arc& a = graph.arc(first.edge);
        int start = first.face_on_right ? a.head : a.tail;
        if (expected != start) throw validation_error("embedding: face walk does not close up");
    }
    for (int e = 0; e < m; ++e)
        if (left_seen[e] != 1 || right_seen[e] != 1)
            throw validation_error("embedding: edge " + std::to_string(e) +
                                   " must appear once per side");
    int euler = graph.vertex_count() - m + static_cast<int>(faces.size());
    if (euler != 2) throw validation_error("embedding: Euler count is not 2");
    PlaneEmbedding emb;
    emb.graph = std::move(graph);
    emb.faces = std::move(faces);
    return emb;
}

/// The dual graph: one vertex per face, one arc per primal edge, indexed by
/// the same edge ids. Each dual arc runs from the face left of the primal
/// arc to the face on its right.
struct DualGraph {
    OrientedMultigraph dual;
    PlaneEmbedding embedding;
    std::vector<std::pair<int, int>> faces_of_edge; // (left face, right face)
};

inline DualGraph build_dual(PlaneEmbedding emb) {
    const int m = emb.graph.edge_count();
    std::vector<std::pair<int, int>> faces_of_edge(m, {-1, -1});
    for (int fid = 0; fid < static_cast<int>(emb.faces.size()); ++fid) {
        for (const auto& fe : emb.faces[fid]) {
            if (fe.face_on_right) faces_of_edge[fe.edge].second = fid;
            else faces_of_edge[fe.edge].first = fid;
        }
    }
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(m);
    for (int e = 0; e < m; ++e) {
        auto [l, r] = faces_of_edge[e];
        if (l == r)
            throw validation_error("dual has a loop: primal edge " + std::to_string(e) +
                                   " is a bridge");
        arcs.push_back({l, r});
    }
    DualGraph out;
    out.dual = OrientedMultigraph(static_cast<int>(emb.faces.size()), arcs);
    out.embedding = std::move(emb);
    out.faces_of_edge = std::move(faces_of_edge);
    return out;
}

/// Colors on the dual vertices; group element codes, or integers 1..k when
/// group is absent.
struct VertexColoring {
    std::vector<int32_t> colors;
};

inline bool is_proper(const OrientedMultigraph& h, const VertexColoring& c) {
    for (int e = 0; e < h.edge_count(); ++e)
        if (c.colors[h.arc(e).tail] == c.colors[h.arc(e).head]) return false;
    return true;
}

/// f(e) = c(right face) - c(left face). Proper group colorings induce
/// nowhere-zero group flows; colorings valued in {1..k} induce nowhere-zero
/// integer k-flows.
inline Flow induced_flow(const DualGraph& dual, const GroupSpec& spec, const VertexColoring& c) {
    if (!is_proper(dual.dual, c)) throw validation_error("induced_flow: coloring is not proper");
    Flow f;
    f.domain = ValueDomain::group(spec);
    f.values.resize(dual.dual.edge_count());
    for (int e = 0; e < dual.dual.edge_count(); ++e) {
        auto [l, r] = dual.faces_of_edge[e];
        f.values[e] = spec.add_codes(c.colors[r], spec.neg_code(c.colors[l]));
    }
    return f;
}

inline Flow induced_flow_k(const DualGraph& dual, int k, const VertexColoring& c) {
    for (int32_t col : c.colors)
        if (col < 1 || col > k) throw validation_error("induced_flow_k: color outside 1..k");
    if (!is_proper(dual.dual, c)) throw validation_error("induced_flow_k: coloring is not proper");
    Flow f;
    f.domain = ValueDomain::integer_band(k);
    f.values.resize(dual.dual.edge_count());
    for (int e = 0; e < dual.dual.edge_count(); ++e) {
        auto [l, r] = dual.faces_of_edge[e];
        f.values[e] = c.colors[r] - c.colors[l];
    }
    return f;
}

/// Inverts the induced-flow map: fixes the root's color and propagates
/// along a spanning tree of the dual; consistency of the non-tree arcs is
/// what certifies that f really is a flow.
inline VertexColoring coloring_from_flow(const DualGraph& dual, const Flow& f, int root,
                                         int32_t root_color) {
    if (!f.domain.is_group()) throw validation_error("coloring_from_flow expects a group flow");
    const GroupSpec& spec = f.domain.group_spec();
    const OrientedMultigraph& h = dual.dual;
    if (root < 0 || root >= h.vertex_count()) throw validation_error("bad root face");
    if (!is_nowhere_zero(f)) throw validation_error("coloring_from_flow: flow has a zero edge");

    std::vector<int32_t> colors(h.vertex_count(), 0);
    std::vector<char> seen(h.vertex_count(), 0);
    colors[root] = root_color;
    seen[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto& [e, dir] : h.incident(v)) {
            int w = h.other_end(e, v);
            if (seen[w]) continue;
            // arc tail -> head carries c(head) = c(tail) + f(e)
            int32_t cw = dir > 0 ? spec.add_codes(colors[v], f.values[e])
                                 : spec.add_codes(colors[v], spec.neg_code(f.values[e]));
            colors[w] = cw;
            seen[w] = 1;
            q.push(w);
        }
    }
    for (int e = 0; e < h.edge_count(); ++e) {
        const Arc& a = h.arc(e);
        if (spec.add_codes(colors[a.tail], f.values[e]) != colors[a.head])
            throw validation_error("coloring_from_flow: inconsistent propagation (not a flow?)");
    }
    return VertexColoring{std::move(colors)};
}

/// The proper k-coloring associated to an integer k-flow: propagate the
/// mod-k image from face 0 and replace each residue class by its
/// representative in {1..k}. Its induced flow agrees with f mod k.
inline VertexColoring associated_coloring(const DualGraph& dual, const Flow& f) {
    if (!f.domain.is_integer()) throw validation_error("associated_coloring expects a k-flow");
    const int k = f.domain.band();
    Flow image = project_mod_k(f);
    VertexColoring residues = coloring_from_flow(dual, image, 0, 0);
    for (auto& c : residues.colors) c = c == 0 ? k : c;
    return residues;
}

/// The recoloring graph over proper colorings with the given palette: two
/// colorings are adjacent iff they differ on exactly one vertex.
struct RecolorGraph {
    std::vector<VertexColoring> colorings; // sorted by color vectors
    std::vector<std::vector<int>> adjacency;
    std::vector<int> component;
    int component_count = 0;

    std::optional<int> index_of(const std::vector<int32_t>& colors) const {
        auto it = index.find(colors);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
    std::unordered_map<std::vector<int32_t>, int, VecHash> index;
};

inline RecolorGraph recolor_graph(const OrientedMultigraph& h, const std::vector<int32_t>& palette,
                                  long long budget = default_enumeration_budget) {
    double estimate = 1;
    for (int i = 0; i < h.vertex_count(); ++i) estimate *= static_cast<double>(palette.size());
    if (estimate > static_cast<double>(budget))
        throw budget_error("recoloring graph budget exceeded");

    RecolorGraph out;
    std::vector<int32_t> colors(h.vertex_count());
    // backtracking over vertices; adjacency to earlier vertices only
    std::vector<std::vector<int>> earlier(h.vertex_count());
    for (int e = 0; e < h.edge_count(); ++e) {
        auto [t, hd] = std::pair(h.arc(e).tail, h.arc(e).head);
        if (t > hd) std::swap(t, hd);
        earlier[hd].push_back(t);
    }
    std::vector<int> pick(h.vertex_count(), -1);
    int v = 0;
    while (v >= 0) {
        if (v == h.vertex_count()) {
            out.colorings.push_back(VertexColoring{colors});
            --v;
            continue;
        }
        bool advanced = false;
        for (int next = pick[v] + 1; next < static_cast<int>(palette.size()); ++next) {
            bool ok = true;
            for (int u : earlier[v])
                if (colors[u] == palette[next]) {
                    ok = false;
                    break;
                }
            if (ok) {
                pick[v] = next;
                colors[v] = palette[next];
                advanced = true;
                break;
            }
        }
        if (advanced) {
            ++v;
            if (v <= h.vertex_count() - 1) pick[v] = -1;
            if (v == h.vertex_count()) {
                out.colorings.push_back(VertexColoring{colors});
                --v;
            }
        } else {
            pick[v] = -1;
            --v;
        }
    }

    std::sort(out.colorings.begin(), out.colorings.end(),
              [](const VertexColoring& a, const VertexColoring& b) { return a.colors < b.colors; });
    for (int i = 0; i < static_cast<int>(out.colorings.size()); ++i)
        out.index[out.colorings[i].colors] = i;

    out.adjacency.assign(out.colorings.size(), {});
    for (int i = 0; i < static_cast<int>(out.colorings.size()); ++i) {
        auto base = out.colorings[i].colors;
        for (int vert = 0; vert < h.vertex_count(); ++vert) {
            int32_t old = base[vert];
            for (int32_t cand : palette) {
                if (cand == old) continue;
                base[vert] = cand;
                auto j = out.index_of(base);
                if (j && *j > i) {
                    out.adjacency[i].push_back(*j);
                    out.adjacency[*j].push_back(i);
                }
            }
            base[vert] = old;
        }
    }
    for (auto& nb : out.adjacency) std::sort(nb.begin(), nb.end());
    auto comps = label_components(out.adjacency);
    out.component = std::move(comps.label);
    out.component_count = comps.count;
    return out;
}

inline std::vector<int32_t> group_palette(const GroupSpec& spec) {
    std::vector<int32_t> out;
    for (int32_t c = 0; c < spec.order(); ++c) out.push_back(c);
    return out;
}

inline std::vector<int32_t> integer_palette(int k) {
    std::vector<int32_t> out;
    for (int32_t c = 1; c <= k; ++c) out.push_back(c);
    return out;
}

namespace detail {

/// The face boundary as a signed cycle whose positive direction is the one
/// along which recoloring that face by +a adds +a to the induced flow:
/// sign +1 exactly on the edges whose right face it is.
inline SignedCycle face_move_cycle(const DualGraph& dual, int face) {
    // the stored walk keeps the face on its left (sign +1 on left-face
    // edges); the move wants +1 exactly on the edges whose right face this
    // is, which is the reversed walk
    SignedCycle walk;
    for (const auto& fe : dual.embedding.faces[face])
        walk.entries.push_back({fe.edge, fe.face_on_right ? -1 : +1});
    return walk.reversed();
}

} // namespace detail

/// Turns a path of adjacent dual colorings into a flow path: each recolor
/// step becomes a cycle move along the recolored face's boundary. Group
/// colorings feed group flows directly; {1..k} colorings produce integer
/// flows, and optional endpoint flows congruent to the induced ones are
/// attached with mod-k zero-difference legs.
inline ReconfigPath transfer_color_path(const DualGraph& dual, const GroupSpec& spec,
                                        const std::vector<VertexColoring>& color_path) {
    if (color_path.empty()) throw validation_error("transfer: empty coloring path");
    ReconfigPath path;
    path.flows.push_back(induced_flow(dual, spec, color_path.front()));
    for (std::size_t i = 0; i + 1 < color_path.size(); ++i) {
        const auto& c = color_path[i].colors;
        const auto& d = color_path[i + 1].colors;
        int face = -1;
        for (std::size_t v = 0; v < c.size(); ++v) {
            if (c[v] == d[v]) continue;
            if (face >= 0) throw validation_error("transfer: colorings differ on two vertices");
            face = static_cast<int>(v);
        }
        if (face < 0) throw validation_error("transfer: consecutive colorings are equal");
        int32_t a = spec.add_codes(d[face], spec.neg_code(c[face]));
        Move mv{detail::face_move_cycle(dual, face), a};
        Flow next = induced_flow(dual, spec, color_path[i + 1]);
        Flow stepped = add_cycle(path.flows.back(), mv.cycle, mv.value);
        if (!(stepped.values == next.values))
            throw validation_error("transfer: face move does not match the induced flow");
        path.moves.push_back(std::move(mv));
        path.flows.push_back(std::move(next));
    }
    return path;
}

inline ReconfigPath transfer_color_path_k(const DualGraph& dual, int k,
                                          const std::vector<VertexColoring>& color_path,
                                          const Flow* start_flow = nullptr,
                                          const Flow* end_flow = nullptr) {
    if (color_path.empty()) throw validation_error("transfer: empty coloring path");
    const OrientedMultigraph& g = dual.embedding.graph;

    ReconfigPath path;
    Flow first = induced_flow_k(dual, k, color_path.front());
    if (start_flow) {
        path = mod_zero_path(g, *start_flow, first);
    } else {
        path.flows.push_back(first);
    }
    for (std::size_t i = 0; i + 1 < color_path.size(); ++i) {
        const auto& c = color_path[i].colors;
        const auto& d = color_path[i + 1].colors;
        int face = -1;
        for (std::size_t v = 0; v < c.size(); ++v) {
            if (c[v] == d[v]) continue;
            if (face >= 0) throw validation_error("transfer: colorings differ on two vertices");
            face = static_cast<int>(v);
        }
        if (face < 0) throw validation_error("transfer: consecutive colorings are equal");
        int32_t a = d[face] - c[face];
        Move mv{detail::face_move_cycle(dual, face), a};
        Flow next = induced_flow_k(dual, k, color_path[i + 1]);
        Flow stepped = add_cycle(path.flows.back(), mv.cycle, mv.value);
        if (!(stepped.values == next.values))
            throw validation_error("transfer: face move does not match the induced flow");
        path.moves.push_back(std::move(mv));
        path.flows.push_back(std::move(next));
    }
    if (end_flow) {
        ReconfigPath out_leg = mod_zero_path(g, path.flows.back(), *end_flow);
        for (std::size_t i = 0; i < out_leg.moves.size(); ++i) {
            path.flows.push_back(out_leg.flows[i + 1]);
            path.moves.push_back(out_leg.moves[i]);
        }
    }
    return path;
}

// --- hand-constructed embeddings used by the tests and the CLI demos ---

/// K4 embedded with vertex 3 inside the outer triangle 0-1-2.
inline PlaneEmbedding plane_k4() {
    OrientedMultigraph g(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    std::vector<std::vector<FaceEntry>> faces{
        {{0, false}, {4, false}, {2, true}},  // 0-1-3
        {{3, false}, {5, false}, {4, true}},  // 1-2-3
        {{2, false}, {5, true}, {1, true}},   // 0-3-2
        {{1, false}, {3, true}, {0, true}},   // outer 0-2-1
    };
    return make_embedding(std::move(g), std::move(faces));
}

/// Two vertices joined by m parallel strands; faces sit between
/// consecutive strands, so the dual is the cycle C_m.
inline PlaneEmbedding plane_dipole(int m) {
    if (m < 2) throw validation_error("dipole needs at least 2 edges");
    std::vector<std::pair<int, int>> arcs(m, {0, 1});
    OrientedMultigraph g(2, arcs);
    std::vector<std::vector<FaceEntry>> faces;
    for (int i = 0; i < m; ++i)
        faces.push_back({{(i + 1) % m, false}, {i, true}});
    return make_embedding(std::move(g), std::move(faces));
}

/// The cube drawn as a square annulus: outer square 0..3, inner 4..7.
inline PlaneEmbedding plane_cube() {
    OrientedMultigraph g(8, {{0, 1},
                             {1, 2},
                             {2, 3},
                             {3, 0},
                             {4, 5},
                             {5, 6},
                             {6, 7},
                             {7, 4},
                             {0, 4},
                             {1, 5},
                             {2, 6},
                             {3, 7}});
    std::vector<std::vector<FaceEntry>> faces{
        {{4, false}, {5, false}, {6, false}, {7, false}},           // inner square
        {{0, false}, {9, false}, {4, true}, {8, true}},             // 0-1-5-4
        {{1, false}, {10, false}, {5, true}, {9, true}},            // 1-2-6-5
        {{2, false}, {11, false}, {6, true}, {10, true}},           // 2-3-7-6
        {{3, false}, {8, false}, {7, true}, {11, true}},            // 3-0-4-7
        {{3, true}, {2, true}, {1, true}, {0, true}},               // outer
    };
    return make_embedding(std::move(g), std::move(faces));
}

/// Maximal outerplanar sample: the 5-cycle 0..4 with chords 0-2 and 0-3.
inline PlaneEmbedding plane_outerplanar() {
    OrientedMultigraph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}, {0, 3}});
    std::vector<std::vector<FaceEntry>> faces{
        {{0, false}, {1, false}, {5, true}},                         // 0-1-2
        {{5, false}, {2, false}, {6, true}},                         // 0-2-3
        {{6, false}, {3, false}, {4, false}},                        // 0-3-4
        {{4, true}, {3, true}, {2, true}, {1, true}, {0, true}},     // outer
    };
    return make_embedding(std::move(g), std::move(faces));
}

} // namespace flowreconf
