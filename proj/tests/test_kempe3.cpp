#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "flowreconf/generators.hpp"
#include "flowreconf/kempe3.hpp"
#include "flowreconf/reconfig.hpp"

using namespace flowreconf;

namespace {

// oracle: count labelled proper 3-edge-colorings by raw sweep (3^m)
long long brute_force_labelled_colorings(const OrientedMultigraph& g) {
    REQUIRE(g.edge_count() <= 12);
    long long count = 0;
    std::vector<std::uint8_t> classes(g.edge_count(), 0);
    long long total = 1;
    for (int e = 0; e < g.edge_count(); ++e) total *= 3;
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int e = 0; e < g.edge_count(); ++e) {
            classes[e] = static_cast<std::uint8_t>(c % 3);
            c /= 3;
        }
        if (is_proper_edge_coloring(g, classes)) ++count;
    }
    return count;
}

} // namespace

TEST_CASE("coloring enumeration") {
    SECTION("K4 has a single unlabelled coloring") {
        CHECK(enumerate_colorings(k4()).size() == 1);
    }
    SECTION("the Petersen graph has none") {
        CHECK(enumerate_colorings(petersen()).empty());
    }
    SECTION("the cube count matches the raw oracle") {
        auto unlabelled = enumerate_colorings(cube());
        CHECK(6 * static_cast<long long>(unlabelled.size()) ==
              brute_force_labelled_colorings(cube()));
    }
    SECTION("K33 count matches the raw oracle") {
        auto unlabelled = enumerate_colorings(k33());
        CHECK(6 * static_cast<long long>(unlabelled.size()) ==
              brute_force_labelled_colorings(k33()));
    }
    SECTION("non-cubic input is rejected") {
        CHECK_THROWS_AS(enumerate_colorings(cycle(4)), validation_error);
    }
    SECTION("colorings come out canonical and proper") {
        for (const auto& c : enumerate_colorings(cube())) {
            CHECK(canonical_coloring(c.classes) == c);
            CHECK(is_proper_edge_coloring(cube(), c.classes));
        }
    }
}

TEST_CASE("kempe chains and swaps") {
    auto colorings = enumerate_colorings(cube());
    REQUIRE(!colorings.empty());
    for (const auto& c : colorings) {
        for (int a = 0; a < 3; ++a) {
            for (int b = a + 1; b < 3; ++b) {
                auto chains = kempe_chains(cube(), c, a, b);
                // chains partition the two-class subgraph
                std::set<int> seen;
                std::size_t total = 0;
                for (const auto& chain : chains) {
                    total += chain.edges.size();
                    for (int e : chain.edges) CHECK(seen.insert(e).second);
                    CHECK(chain.edges.size() % 2 == 0); // cycles in a cubic graph are even here
                }
                long long expect = 0;
                for (int e = 0; e < cube().edge_count(); ++e)
                    if (c.classes[e] == a || c.classes[e] == b) ++expect;
                CHECK(static_cast<long long>(total) == expect);

                for (const auto& chain : chains) {
                    auto swapped = kempe_swap(c, chain);
                    CHECK(is_proper_edge_coloring(cube(), swapped.classes));
                    // the same edge set is a chain of the swapped coloring
                    // (with possibly relabeled classes) and swapping it back
                    // recovers the original
                    int x = swapped.classes[chain.edges[0]], y = -1;
                    for (int e : chain.edges)
                        if (swapped.classes[e] != x) y = swapped.classes[e];
                    REQUIRE(y >= 0);
                    KempeChain back{x, y, chain.edges};
                    CHECK(kempe_swap(swapped, back) == c);
                }
            }
        }
    }
}

TEST_CASE("swapping a full class pair relabels only") {
    // in K4 every two classes span a Hamiltonian cycle: single chain, and
    // swapping it yields the same unlabelled coloring
    auto colorings = enumerate_colorings(k4());
    REQUIRE(colorings.size() == 1);
    auto chains = kempe_chains(k4(), colorings[0], 0, 1);
    REQUIRE(chains.size() == 1);
    CHECK(kempe_swap(colorings[0], chains[0]) == colorings[0]);
    CHECK(kempe_neighbors(k4(), colorings[0]).empty());
}

TEST_CASE("kempe graphs") {
    SECTION("Klee graphs sit on a single coloring") {
        for (const auto& seq : {std::vector<int>{}, {0}, {0, 1}, {0, 0, 2}}) {
            auto kg = build_kempe_graph(klee(seq));
            CHECK(kg.colorings.size() == 1);
            CHECK(kg.component_count == 1);
        }
    }
    SECTION("the cube graph is Kempe-connected") {
        auto kg = build_kempe_graph(cube());
        CHECK(kg.component_count == 1);
        CHECK(kg.colorings.size() > 1);
    }
    SECTION("K33 is not Kempe-connected") {
        auto kg = build_kempe_graph(k33());
        CHECK(kg.component_count > 1);
    }
}

TEST_CASE("flows correspond to colorings") {
    SECTION("six flows per coloring, matching the flow enumeration") {
        auto colorings = enumerate_colorings(k4());
        auto flows = flows_from_coloring(k4(), colorings[0]);
        REQUIRE(flows.size() == 6);
        std::set<std::vector<int32_t>> distinct;
        for (const auto& f : flows) {
            CHECK_NOTHROW(verify_flow(k4(), f));
            CHECK(is_nowhere_zero(f));
            distinct.insert(f.values);
        }
        CHECK(distinct.size() == 6);
        auto enumerated = enumerate_nz_flows(k4(), z2z2_domain());
        CHECK(enumerated.size() == 6);
        for (const auto& f : enumerated) CHECK(distinct.count(f.values) == 1);
    }
    SECTION("coloring_of_flow inverts flows_from_coloring") {
        for (const auto& g : {k4(), cube(), k33(), klee({0})}) {
            for (const auto& c : enumerate_colorings(g)) {
                for (const auto& f : flows_from_coloring(g, c)) {
                    CHECK(coloring_of_flow(g, f) == c);
                }
            }
        }
    }
}

TEST_CASE("move-level correspondence") {
    for (const auto& g : {k4(), cube(), k33(), klee({0, 1})}) {
        auto fr = build_reconfig(g, z2z2_domain());
        auto kg = build_kempe_graph(g);

        // flow edges project to Kempe edges or to the identity
        std::set<std::pair<int, int>> projected;
        for (int i = 0; i < fr.flow_count(); ++i) {
            auto ci = kg.index_of(coloring_of_flow(g, fr.flow(i)));
            REQUIRE(ci.has_value());
            for (int j : fr.adjacency[i]) {
                auto cj = kg.index_of(coloring_of_flow(g, fr.flow(j)));
                REQUIRE(cj.has_value());
                if (*ci == *cj) continue;
                CHECK(std::binary_search(kg.adjacency[*ci].begin(), kg.adjacency[*ci].end(),
                                         *cj));
                projected.insert({std::min(*ci, *cj), std::max(*ci, *cj)});
            }
        }
        // and every Kempe edge is hit by at least one flow edge
        for (int i = 0; i < static_cast<int>(kg.colorings.size()); ++i)
            for (int j : kg.adjacency[i])
                if (i < j) CHECK(projected.count({i, j}) == 1);
    }
}

TEST_CASE("component-level correspondence verifies") {
    for (const auto& g : {k4(), cube(), k33(), klee({0}), klee({0, 1}), moebius_ladder(4)})
        CHECK_NOTHROW(verify_correspondence(g));
}

TEST_CASE("K33 flow graph is disconnected over the Klein group") {
    auto r = build_reconfig(k33(), z2z2_domain());
    CHECK_FALSE(is_connected(r));
    CHECK(r.flow_count() > 0);
}

TEST_CASE("Klee family invariants up to 16 vertices") {
    std::vector<std::vector<int>> seqs{
        {}, {0}, {1}, {0, 0}, {0, 1}, {0, 4}, {0, 1, 2}, {0, 0, 0}, {3, 2, 1},
        {0, 1, 2, 3}, {0, 0, 4, 6}, {2, 3, 5, 7}, {0, 2, 4, 6, 8}, {0, 1, 0, 1, 0},
    };
    for (const auto& seq : seqs) {
        auto g = klee(seq);
        CHECK(g.vertex_count() == 4 + 2 * static_cast<int>(seq.size()));
        for (int v = 0; v < g.vertex_count(); ++v) CHECK(g.degree(v) == 3);
        CHECK(enumerate_colorings(g).size() == 1);

        auto rv = build_reconfig(g, z2z2_domain());
        CHECK(rv.flow_count() == 6);
        CHECK(is_connected(rv));
        for (const auto& nb : rv.adjacency) CHECK(nb.size() == 3); // K33 shape

        auto r4 = build_reconfig(g, ValueDomain::group(make_group({4})));
        CHECK(r4.flow_count() == 6);
        CHECK(is_perfect_matching(r4));
    }
}
