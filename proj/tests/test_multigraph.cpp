#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <set>

#include "flowreconf/generators.hpp"
#include "flowreconf/multigraph.hpp"

using namespace flowreconf;

namespace {

// independent oracle: count connected 2-regular edge subsets directly
long long brute_force_cycle_count(const OrientedMultigraph& g) {
    REQUIRE(g.edge_count() <= 20);
    long long count = 0;
    for (std::uint32_t mask = 1; mask < (1u << g.edge_count()); ++mask) {
        std::vector<int> deg(g.vertex_count(), 0);
        for (int e = 0; e < g.edge_count(); ++e)
            if ((mask >> e) & 1) {
                ++deg[g.arc(e).tail];
                ++deg[g.arc(e).head];
            }
        bool two_regular = true;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (deg[v] != 0 && deg[v] != 2) two_regular = false;
        if (!two_regular) continue;
        // connectivity over touched vertices
        int start = -1;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (deg[v]) start = v;
        std::vector<char> seen(g.vertex_count(), 0);
        std::vector<int> stack{start};
        seen[start] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& [e, dir] : g.incident(v)) {
                if (!((mask >> e) & 1)) continue;
                int w = g.other_end(e, v);
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        bool connected = true;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (deg[v] && !seen[v]) connected = false;
        if (connected) ++count;
    }
    return count;
}

// brute-force edge connectivity: smallest edge set whose removal disconnects
int brute_force_edge_connectivity(const OrientedMultigraph& g) {
    REQUIRE(g.edge_count() <= 20);
    for (int k = 0; k <= g.edge_count(); ++k) {
        // try all k-subsets
        std::vector<int> pick(k);
        std::function<bool(int, int)> rec = [&](int pos, int from) {
            if (pos == k) {
                std::vector<char> banned(g.edge_count(), 0);
                for (int e : pick) banned[e] = 1;
                return !detail::connected_avoiding(g, banned);
            }
            for (int e = from; e < g.edge_count(); ++e) {
                pick[pos] = e;
                if (rec(pos + 1, e + 1)) return true;
            }
            return false;
        };
        if (rec(0, 0)) return k;
    }
    return g.edge_count();
}

} // namespace

TEST_CASE("construction rejects loops and bad ids") {
    CHECK_THROWS_AS(OrientedMultigraph(1, {{0, 0}}), validation_error);
    CHECK_THROWS_AS(OrientedMultigraph(2, {{0, 2}}), validation_error);
    CHECK_NOTHROW(OrientedMultigraph(2, {{0, 1}, {0, 1}})); // parallel edges fine
}

TEST_CASE("validate reports counts and connectivity") {
    auto info = validate(k4());
    CHECK(info.vertices == 4);
    CHECK(info.edges == 6);
    CHECK(info.connected);

    CHECK(validate(dipole(2)).connected);

    OrientedMultigraph two_parts(4, {{0, 1}, {2, 3}});
    CHECK_FALSE(validate(two_parts).connected);
}

TEST_CASE("edge connectivity matches brute force") {
    for (const auto& g : {k4(), k33(), cube(), dipole(3), theta_graph(), cycle(5),
                          OrientedMultigraph(2, {{0, 1}}), wheel(5)})
        CHECK(edge_connectivity(g) == brute_force_edge_connectivity(g));

    CHECK(is_k_edge_connected(k4(), 3));
    CHECK_FALSE(is_k_edge_connected(OrientedMultigraph(2, {{0, 1}}), 2));
    CHECK(is_k_edge_connected(moebius_ladder(6), 3)); // exact min-cut computation
    CHECK_THROWS_AS(is_k_edge_connected(k4(), 0), validation_error);
}

TEST_CASE("cycle basis size is the cycle space dimension") {
    CHECK(cycle_basis(k4()).cotree_edges.size() == 3);
    CHECK(cycle_basis(cycle(5)).cotree_edges.size() == 1);
    CHECK(cycle_basis(dipole(4)).cotree_edges.size() == 3);
    CHECK(cycle_basis(petersen()).cotree_edges.size() == 6);
}

TEST_CASE("all_cycles agrees with subset brute force") {
    for (const auto& g : {k4(), k33(), cube(), petersen(), dipole(3), dipole(5), theta_graph(),
                          cycle(6), wheel(5), moebius_ladder(4)}) {
        auto cycles = all_cycles(g);
        CHECK(static_cast<long long>(cycles.size()) == brute_force_cycle_count(g));
        std::set<std::vector<int>> seen;
        for (const auto& cyc : cycles) {
            // canonical direction: lowest edge id first, sign +1
            CHECK(cyc.entries.front().sign == +1);
            CHECK(cyc.entries.front().edge == cyc.edge_ids().front());
            CHECK(seen.insert(cyc.edge_ids()).second); // each cycle once

            std::vector<int> deg(g.vertex_count(), 0);
            for (const auto& se : cyc.entries) {
                ++deg[g.arc(se.edge).tail];
                ++deg[g.arc(se.edge).head];
            }
            for (int v = 0; v < g.vertex_count(); ++v) CHECK((deg[v] == 0 || deg[v] == 2));
        }
    }
}

TEST_CASE("all_cycles known counts") {
    CHECK(all_cycles(k4()).size() == 7); // 4 triangles + 3 squares
    CHECK(all_cycles(cycle(5)).size() == 1);
    CHECK(all_cycles(dipole(3)).size() == 3); // each pair of parallel edges
}

TEST_CASE("cycle space cap is enforced") {
    CHECK_THROWS_AS(all_cycles(k33(), 2), budget_error);
}

TEST_CASE("shortest cycle through an edge") {
    for (int e = 0; e < 6; ++e) CHECK(shortest_cycle_through_edge(k4(), e) == 3);
    for (int e = 0; e < 6; ++e) CHECK(shortest_cycle_through_edge(cycle(6), e) == 6);

    OrientedMultigraph bridged(4, {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 2}});
    CHECK_FALSE(shortest_cycle_through_edge(bridged, 2).has_value());
    CHECK(shortest_cycle_through_edge(bridged, 0) == 2);
}

TEST_CASE("suppressing degree-2 vertices") {
    SECTION("cubic graphs map to themselves") {
        auto res = suppress_degree_2(k4());
        CHECK(res.graph.vertex_count() == 4);
        CHECK(res.graph.edge_count() == 6);
        for (int e = 0; e < 6; ++e) {
            REQUIRE(res.edge_paths[e].size() == 1);
            CHECK(res.edge_paths[e][0] == SignedEdge{e, +1});
        }
    }
    SECTION("subdivided K4 contracts back to K4") {
        auto base = k4();
        std::vector<std::pair<int, int>> arcs;
        int next = 4;
        for (int e = 0; e < base.edge_count(); ++e) {
            arcs.push_back({base.arc(e).tail, next});
            arcs.push_back({next, base.arc(e).head});
            ++next;
        }
        OrientedMultigraph sub(next, arcs);
        auto res = suppress_degree_2(sub);
        CHECK(res.graph.vertex_count() == 4);
        CHECK(res.graph.edge_count() == 6);
        std::multiset<std::pair<int, int>> got, want;
        for (int e = 0; e < 6; ++e) {
            auto a = res.graph.arc(e);
            got.insert({std::min(a.tail, a.head), std::max(a.tail, a.head)});
            auto b = base.arc(e);
            want.insert({std::min(b.tail, b.head), std::max(b.tail, b.head)});
        }
        CHECK(got == want);
        for (const auto& path : res.edge_paths) CHECK(path.size() == 2);
    }
    SECTION("chordless path in a cycle with a chord") {
        // C_5 with a chord between the chord path endpoints
        OrientedMultigraph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}});
        auto res = suppress_degree_2(g);
        CHECK(res.graph.vertex_count() == 2);
        CHECK(res.graph.edge_count() == 3); // theta shape
    }
    SECTION("pure cycle becomes a dipole") {
        auto res = suppress_degree_2(cycle(6));
        CHECK(res.graph.vertex_count() == 2);
        CHECK(res.graph.edge_count() == 2);
    }
    SECTION("cycle space dimension is preserved") {
        for (const auto& g : {cycle(7), theta_graph(), moebius_ladder(4)}) {
            auto res = suppress_degree_2(g);
            CHECK(cycle_space_dimension(res.graph) == cycle_space_dimension(g));
        }
    }
    SECTION("degree-1 vertex is rejected") {
        CHECK_THROWS_AS(suppress_degree_2(OrientedMultigraph(2, {{0, 1}})), validation_error);
    }
}

TEST_CASE("petal cycles survive suppression without loops") {
    // two triangles glued at vertex 0; 2-edge-connected but not 2-connected
    OrientedMultigraph flower(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
    auto res = suppress_degree_2(flower);
    for (int e = 0; e < res.graph.edge_count(); ++e)
        CHECK(res.graph.arc(e).tail != res.graph.arc(e).head);
    CHECK(cycle_space_dimension(res.graph) == cycle_space_dimension(flower));
}

TEST_CASE("signed cycles traverse consistently") {
    auto g = k4();
    for (const auto& cyc : all_cycles(g)) {
        // walk: consecutive entries share the vertex the previous one ends at
        int cur = cyc.entries[0].sign > 0 ? g.arc(cyc.entries[0].edge).tail
                                          : g.arc(cyc.entries[0].edge).head;
        for (const auto& se : cyc.entries) {
            int from = se.sign > 0 ? g.arc(se.edge).tail : g.arc(se.edge).head;
            int to = se.sign > 0 ? g.arc(se.edge).head : g.arc(se.edge).tail;
            CHECK(from == cur);
            cur = to;
        }
        CHECK(cur == (cyc.entries[0].sign > 0 ? g.arc(cyc.entries[0].edge).tail
                                              : g.arc(cyc.entries[0].edge).head));
    }
}

TEST_CASE("graph diameter") {
    CHECK(graph_diameter(k4()) == 1);
    CHECK(graph_diameter(cycle(6)) == 3);
    CHECK(graph_diameter(petersen()) == 2);
}
