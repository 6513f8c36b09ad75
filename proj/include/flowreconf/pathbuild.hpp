#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <vector>

#include "flowreconf/errors.hpp"
#include "flowreconf/flows.hpp"
#include "flowreconf/groups.hpp"
#include "flowreconf/multigraph.hpp"

namespace flowreconf {

struct Move {
    SignedCycle cycle;
    int32_t value;
};

/// A walk in the reconfiguration graph: consecutive flows differ exactly by
/// the recorded cycle move and every flow along the way is nowhere-zero.
struct ReconfigPath {
    std::vector<Flow> flows; // moves.size() + 1 entries
    std::vector<Move> moves;

    std::size_t length() const { return moves.size(); }
};

inline void validate_path(const OrientedMultigraph& g, const ReconfigPath& path) {
    if (path.flows.empty()) throw validation_error("path needs at least one flow");
    if (path.flows.size() != path.moves.size() + 1)
        throw validation_error("path flow/move counts disagree");
    for (const auto& f : path.flows) {
        verify_flow(g, f);
        if (!is_nowhere_zero(f)) throw validation_error("path flow has a zero edge");
    }
    for (std::size_t i = 0; i < path.moves.size(); ++i) {
        const Move& mv = path.moves[i];
        if (!make_signed_cycle(g, mv.cycle.edge_ids()))
            throw validation_error("path move support is not a cycle");
        Flow next = add_cycle(path.flows[i], mv.cycle, mv.value);
        if (!(next.values == path.flows[i + 1].values))
            throw validation_error("path move does not reproduce the successor");
    }
}

namespace detail {

// Induced subgraph on the support edges; keeps the vertex set, remembers
// old edge ids.
struct SupportView {
    OrientedMultigraph graph;
    std::vector<int> old_edge; // new id -> old id
};

inline SupportView support_subgraph(const OrientedMultigraph& g, const std::vector<int32_t>& values) {
    SupportView view;
    std::vector<std::pair<int, int>> arcs;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (values[e] == 0) continue;
        arcs.push_back({g.arc(e).tail, g.arc(e).head});
        view.old_edge.push_back(e);
    }
    view.graph = OrientedMultigraph(g.vertex_count(), arcs);
    return view;
}

} // namespace detail

/// Greedy cycle decomposition of a flow: while the support contains a
/// cycle, subtract the cycle flow agreeing with f on the lowest support
/// edge. At most |E| - |V| + 1 terms come out and they sum back to f.
inline std::vector<Move> decompose_into_cycle_flows(const OrientedMultigraph& g, const Flow& f) {
    verify_flow(g, f);
    const ValueDomain& domain = f.domain;
    std::vector<int32_t> work = f.values;
    std::vector<Move> moves;
    const int max_rounds = g.edge_count() + 1;
    for (int round = 0; round <= max_rounds; ++round) {
        auto view = detail::support_subgraph(g, work);
        if (view.old_edge.empty()) return moves;
        const int target_old = view.old_edge[0];

        // lowest canonical cycle through the lowest support edge; edge ids in
        // the view are ascending in the old ids, so canonical order carries over
        auto cycles = all_cycles(view.graph);
        const SignedCycle* chosen = nullptr;
        for (const auto& cyc : cycles) {
            // canonical cycles start at their lowest edge, and the target is
            // the lowest support edge, so membership shows up at the front
            if (cyc.entries.front().edge == 0) {
                chosen = &cyc;
                break;
            }
        }
        if (!chosen)
            throw validation_error("decompose: nonzero residue with forest support");

        SignedCycle mapped;
        for (const auto& se : chosen->entries)
            mapped.entries.push_back({view.old_edge[se.edge], se.sign});
        int32_t a = mapped.sign_of(target_old) > 0 ? work[target_old]
                                                   : domain.negate(work[target_old]);
        for (const auto& se : mapped.entries) {
            int32_t delta = se.sign > 0 ? a : domain.negate(a);
            work[se.edge] = domain.add(work[se.edge], domain.negate(delta));
        }
        moves.push_back(Move{std::move(mapped), a});
    }
    throw validation_error("decompose: support did not shrink");
}

namespace detail {

inline std::vector<int32_t> component_values(const GroupProduct& prod,
                                             const std::vector<int32_t>& values, int which) {
    std::vector<int32_t> out(values.size());
    for (std::size_t e = 0; e < values.size(); ++e)
        out[e] = which == 0 ? prod.first_code(values[e]) : prod.second_code(values[e]);
    return out;
}

inline std::pair<Flow, Move> extend_support(const OrientedMultigraph& g, const GroupProduct& prod,
                                            const Flow& f, int which, int cycle_bound) {
    if (!(f.domain == ValueDomain::group(prod.combined)))
        throw validation_error("flow domain does not match the product group");
    const GroupSpec& block = which == 0 ? prod.first : prod.second;
    auto comp = component_values(prod, f.values, which);

    int edge = -1;
    for (int e = 0; e < g.edge_count(); ++e)
        if (comp[e] == 0) {
            edge = e;
            break;
        }
    if (edge < 0) throw validation_error("extend_support: component support is already full");

    auto cyc = short_cycle_through_edge(g, edge, cycle_bound);
    if (!cyc)
        throw validation_error("extend_support: edge lies on no cycle of length <= " +
                               std::to_string(cycle_bound));

    // least nonzero block value that keeps every cycle edge's block
    // component nonzero; the length bound guarantees one exists
    int32_t chosen = 0;
    for (int32_t a = 1; a < block.order(); ++a) {
        bool ok = true;
        for (const auto& se : cyc->entries) {
            int32_t delta = se.sign > 0 ? a : block.neg_code(a);
            if (block.add_codes(comp[se.edge], delta) == 0) {
                ok = false;
                break;
            }
        }
        if (ok) {
            chosen = a;
            break;
        }
    }
    if (chosen == 0) throw validation_error("extend_support: no admissible value (bound too weak)");

    int32_t move_value =
        which == 0 ? prod.combine(chosen, 0) : prod.combine(0, chosen);
    Move mv{*cyc, move_value};
    Flow next = add_cycle(f, mv.cycle, mv.value);
    return {std::move(next), std::move(mv)};
}

} // namespace detail

/// One cycle move that changes only the second block of a product-group
/// flow and strictly grows that block's support.
inline std::pair<Flow, Move> extend_second_support(const OrientedMultigraph& g,
                                                   const GroupProduct& prod, const Flow& f,
                                                   int cycle_bound) {
    return detail::extend_support(g, prod, f, 1, cycle_bound);
}

inline std::pair<Flow, Move> extend_first_support(const OrientedMultigraph& g,
                                                  const GroupProduct& prod, const Flow& f,
                                                  int cycle_bound) {
    return detail::extend_support(g, prod, f, 0, cycle_bound);
}

/// Path (a,b) -> (a',b) -> (a',b') of length at most 2|E|, built from the
/// cycle decompositions of a'-a and b'-b. Requires b and a' nowhere-zero,
/// which keeps every intermediate flow nowhere-zero.
inline ReconfigPath exchange_path(const OrientedMultigraph& g, const GroupProduct& prod,
                                  const Flow& from, const Flow& to) {
    const ValueDomain product_domain = ValueDomain::group(prod.combined);
    if (!(from.domain == product_domain) || !(to.domain == product_domain))
        throw validation_error("exchange_path: flows must live in the product group");
    verify_flow(g, from);
    verify_flow(g, to);

    auto b = detail::component_values(prod, from.values, 1);
    auto a2 = detail::component_values(prod, to.values, 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (b[e] == 0) throw validation_error("exchange_path: second block of 'from' has a zero");
        if (a2[e] == 0) throw validation_error("exchange_path: first block of 'to' has a zero");
    }

    ReconfigPath path;
    path.flows.push_back(from);

    auto apply_leg = [&](int which) {
        const GroupSpec& block = which == 0 ? prod.first : prod.second;
        auto cur = detail::component_values(prod, path.flows.back().values, which);
        auto tgt = detail::component_values(prod, to.values, which);
        std::vector<int32_t> diff(cur.size());
        for (std::size_t e = 0; e < cur.size(); ++e)
            diff[e] = block.add_codes(tgt[e], block.neg_code(cur[e]));
        Flow diff_flow{ValueDomain::group(block), diff};
        for (auto& term : decompose_into_cycle_flows(g, diff_flow)) {
            int32_t value = which == 0 ? prod.combine(term.value, 0) : prod.combine(0, term.value);
            Move mv{std::move(term.cycle), value};
            path.flows.push_back(add_cycle(path.flows.back(), mv.cycle, mv.value));
            path.moves.push_back(std::move(mv));
        }
    };
    apply_leg(0);
    apply_leg(1);
    return path;
}

/// Any two nowhere-zero product-group flows joined by a path of length at
/// most 4|E|: grow the second block of f1 and the first block of f2 to full
/// support, then exchange.
inline ReconfigPath product_path(const OrientedMultigraph& g, const GroupProduct& prod,
                                 const Flow& f1, const Flow& f2) {
    verify_flow(g, f1);
    verify_flow(g, f2);
    if (!is_nowhere_zero(f1) || !is_nowhere_zero(f2))
        throw validation_error("product_path expects nowhere-zero flows");

    int cycle_bound = static_cast<int>(std::min(prod.first.order(), prod.second.order())) - 1;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto len = shortest_cycle_through_edge(g, e);
        if (!len || *len > cycle_bound)
            throw validation_error("product_path: an edge lies on no short enough cycle");
    }

    if (f1.values == f2.values) return ReconfigPath{{f1}, {}};

    ReconfigPath head;
    head.flows.push_back(f1);
    while (true) {
        auto comp = detail::component_values(prod, head.flows.back().values, 1);
        if (std::find(comp.begin(), comp.end(), 0) == comp.end()) break;
        auto [next, mv] = extend_second_support(g, prod, head.flows.back(), cycle_bound);
        head.flows.push_back(std::move(next));
        head.moves.push_back(std::move(mv));
    }

    ReconfigPath tail; // forward from f2; replayed backwards at the end
    tail.flows.push_back(f2);
    while (true) {
        auto comp = detail::component_values(prod, tail.flows.back().values, 0);
        if (std::find(comp.begin(), comp.end(), 0) == comp.end()) break;
        auto [next, mv] = extend_first_support(g, prod, tail.flows.back(), cycle_bound);
        tail.flows.push_back(std::move(next));
        tail.moves.push_back(std::move(mv));
    }

    ReconfigPath middle = exchange_path(g, prod, head.flows.back(), tail.flows.back());

    ReconfigPath full = std::move(head);
    for (std::size_t i = 0; i < middle.moves.size(); ++i) {
        full.flows.push_back(middle.flows[i + 1]);
        full.moves.push_back(middle.moves[i]);
    }
    for (int i = static_cast<int>(tail.moves.size()) - 1; i >= 0; --i) {
        Move mv{tail.moves[i].cycle, prod.combined.neg_code(tail.moves[i].value)};
        full.flows.push_back(tail.flows[i]);
        full.moves.push_back(std::move(mv));
    }
    return full;
}

/// Short path between integer band flows that agree mod k: their difference
/// lies in {-k, 0, k} per edge, its support is Eulerian after reorienting,
/// and adding k along each directed cycle of a decomposition walks from one
/// flow to the other in at most |E| moves.
inline ReconfigPath mod_zero_path(const OrientedMultigraph& g, const Flow& from, const Flow& to) {
    if (!from.domain.is_integer() || !(from.domain == to.domain))
        throw validation_error("mod_zero_path expects two integer flows over one band");
    const int k = from.domain.band();
    verify_flow(g, from);
    verify_flow(g, to);
    if (!is_nowhere_zero(from) || !is_nowhere_zero(to))
        throw validation_error("mod_zero_path expects nowhere-zero flows");

    std::vector<int> sign(g.edge_count(), 0); // direction carrying diff +k
    for (int e = 0; e < g.edge_count(); ++e) {
        int d = from.values[e] - to.values[e];
        if (d % k != 0) throw validation_error("mod_zero_path: flows are not congruent mod k");
        if (d == 0) continue;
        if (d != k && d != -k)
            throw validation_error("mod_zero_path: difference out of the +-k range");
        sign[e] = d > 0 ? +1 : -1;
    }

    // peel simple directed cycles off the reoriented difference support
    std::vector<char> used(g.edge_count(), 0);
    auto out_edges = [&](int v) {
        std::vector<int> out;
        for (const auto& [e, dir] : g.incident(v))
            if (sign[e] != 0 && !used[e] && dir == sign[e]) out.push_back(e);
        return out;
    };

    ReconfigPath path;
    path.flows.push_back(from);
    while (true) {
        int start_edge = -1;
        for (int e = 0; e < g.edge_count(); ++e)
            if (sign[e] != 0 && !used[e]) {
                start_edge = e;
                break;
            }
        if (start_edge < 0) break;

        int v0 = sign[start_edge] > 0 ? g.arc(start_edge).tail : g.arc(start_edge).head;
        std::vector<int> vwalk{v0}, ewalk;
        int cur = v0;
        std::optional<SignedCycle> cycle;
        while (!cycle) {
            auto outs = out_edges(cur);
            if (outs.empty())
                throw validation_error("mod_zero_path: difference support is not balanced");
            int e = outs.front();
            int w = sign[e] > 0 ? g.arc(e).head : g.arc(e).tail;
            ewalk.push_back(e);
            for (std::size_t p = 0; p < vwalk.size(); ++p) {
                if (vwalk[p] != w) continue;
                SignedCycle cyc;
                for (std::size_t i = p; i < ewalk.size(); ++i)
                    cyc.entries.push_back({ewalk[i], sign[ewalk[i]]});
                cycle = std::move(cyc);
                break;
            }
            if (!cycle) {
                vwalk.push_back(w);
                cur = w;
            }
        }
        for (const auto& se : cycle->entries) used[se.edge] = 1;
        Move mv{std::move(*cycle), -k};
        path.flows.push_back(add_cycle(path.flows.back(), mv.cycle, mv.value));
        path.moves.push_back(std::move(mv));
    }
    if (!(path.flows.back().values == to.values))
        throw validation_error("mod_zero_path: decomposition did not reach the target");
    return path;
}

namespace detail {

// Every edge of a chain carries one block value; recover it from the first
// path entry, read against the replacement arc's direction.
inline std::vector<int32_t> suppressed_flow_values(const SuppressResult& sup, const Flow& f) {
    std::vector<int32_t> out(sup.graph.edge_count());
    for (int h = 0; h < sup.graph.edge_count(); ++h) {
        const SignedEdge& first = sup.edge_paths[h].front();
        out[h] = first.sign > 0 ? f.values[first.edge] : f.domain.negate(f.values[first.edge]);
    }
    return out;
}

inline SignedCycle expand_suppressed_cycle(const SuppressResult& sup, const SignedCycle& hcycle) {
    SignedCycle out;
    for (const auto& se : hcycle.entries) {
        const auto& chain = sup.edge_paths[se.edge];
        if (se.sign > 0) {
            for (const auto& step : chain) out.entries.push_back(step);
        } else {
            for (auto it = chain.rbegin(); it != chain.rend(); ++it)
                out.entries.push_back({it->edge, -it->sign});
        }
    }
    return out;
}

inline std::optional<Move> try_escape_on_suppressed(const OrientedMultigraph& g,
                                                    const SuppressResult& sup,
                                                    const ValueDomain& domain,
                                                    const std::vector<int32_t>& hvalues,
                                                    const SignedCycle& hcycle, int32_t a) {
    for (const auto& se : hcycle.entries) {
        int32_t delta = se.sign > 0 ? a : domain.negate(a);
        if (domain.add(hvalues[se.edge], delta) == 0) return std::nullopt;
    }
    return Move{expand_suppressed_cycle(sup, hcycle), a};
}

} // namespace detail

/// A cycle move guaranteed to produce a distinct nowhere-zero flow. Group
/// flows go through the suppressed graph: color edges by the value pair
/// {f(e), -f(e)} and add an avoided value along a cycle that misses the
/// least frequent class (for Z4, a cycle inside the +-1 edges takes value
/// 2). Integer flows reorient to all-positive values and subtract k along
/// any directed cycle. Z3 and Z5 are not supported.
inline Move escape_cycle(const OrientedMultigraph& g, const Flow& f) {
    verify_flow(g, f);
    if (!is_nowhere_zero(f)) throw validation_error("escape_cycle expects a nowhere-zero flow");

    if (f.domain.is_integer()) {
        const int k = f.domain.band();
        std::vector<int> sign(g.edge_count());
        for (int e = 0; e < g.edge_count(); ++e) sign[e] = f.values[e] > 0 ? +1 : -1;

        // walk forward along positive-direction arcs until a vertex repeats
        std::vector<int> vwalk{0}, ewalk;
        int cur = 0;
        while (true) {
            int next_edge = -1;
            for (const auto& [e, dir] : g.incident(cur))
                if (dir == sign[e]) {
                    next_edge = e;
                    break;
                }
            if (next_edge < 0)
                throw validation_error("escape_cycle: vertex without outgoing positive arc");
            int w = sign[next_edge] > 0 ? g.arc(next_edge).head : g.arc(next_edge).tail;
            ewalk.push_back(next_edge);
            auto it = std::find(vwalk.begin(), vwalk.end(), w);
            if (it != vwalk.end()) {
                SignedCycle cyc;
                for (std::size_t i = static_cast<std::size_t>(it - vwalk.begin());
                     i < ewalk.size(); ++i)
                    cyc.entries.push_back({ewalk[i], sign[ewalk[i]]});
                return Move{std::move(cyc), -k};
            }
            vwalk.push_back(w);
            cur = w;
        }
    }

    const GroupSpec& spec = f.domain.group_spec();
    const long long order = spec.order();
    if (order != 4 && order < 6)
        throw validation_error("escape_cycle: unsupported group (order 4 and >= 6 only)");

    auto sup = suppress_degree_2(g);
    const OrientedMultigraph& h = sup.graph;
    auto hvalues = detail::suppressed_flow_values(sup, f);

    int min_deg = h.edge_count() == 0 ? 0 : h.degree(0);
    for (int v = 0; v < h.vertex_count(); ++v) min_deg = std::min(min_deg, h.degree(v));

    if (min_deg >= 3) {
        std::optional<std::vector<int>> cycle_edges;
        int32_t value = 0;
        if (spec.moduli() == std::vector<int>{4}) {
            // edges valued +-1 outnumber the 2-valued matching; a cycle among
            // them accepts value 2
            std::vector<char> allowed(h.edge_count(), 0);
            for (int e = 0; e < h.edge_count(); ++e)
                allowed[e] = hvalues[e] == 1 || hvalues[e] == 3;
            cycle_edges = find_cycle_among(h, allowed);
            value = 2;
        } else {
            // least frequent {a,-a} class over the full palette
            std::vector<long long> count(order, 0);
            std::vector<int32_t> class_ids;
            for (int32_t c = 1; c < order; ++c)
                if (std::min(c, spec.neg_code(c)) == c) class_ids.push_back(c);
            for (int e = 0; e < h.edge_count(); ++e)
                ++count[std::min(hvalues[e], spec.neg_code(hvalues[e]))];
            int32_t least = class_ids.front();
            for (int32_t cid : class_ids)
                if (count[cid] < count[least]) least = cid;
            std::vector<char> allowed(h.edge_count(), 0);
            for (int e = 0; e < h.edge_count(); ++e)
                allowed[e] = std::min(hvalues[e], spec.neg_code(hvalues[e])) != least;
            cycle_edges = find_cycle_among(h, allowed);
            value = least;
        }
        if (cycle_edges) {
            auto hcycle = make_signed_cycle(h, *cycle_edges);
            if (hcycle) {
                auto mv = detail::try_escape_on_suppressed(g, sup, f.domain, hvalues, *hcycle,
                                                           value);
                if (mv) return *mv;
            }
        }
    }

    // degenerate shapes (dipole remnants, non-matching 2-values in Z4):
    // scan cycles of the suppressed graph for any admissible move
    for (const auto& hcycle : all_cycles(h)) {
        for (int32_t a = 1; a < order; ++a) {
            auto mv = detail::try_escape_on_suppressed(g, sup, f.domain, hvalues, hcycle, a);
            if (mv) return *mv;
        }
    }
    throw validation_error("escape_cycle: no move found (frozen flow?)");
}

} // namespace flowreconf
