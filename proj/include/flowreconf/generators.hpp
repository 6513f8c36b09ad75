#pragma once

#include <utility>
#include <vector>

#include "flowreconf/errors.hpp"
#include "flowreconf/kempe3.hpp"
#include "flowreconf/multigraph.hpp"

namespace flowreconf {

inline OrientedMultigraph k4() {
    return OrientedMultigraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

/// Two vertices joined by m parallel edges.
inline OrientedMultigraph dipole(int m) {
    if (m < 2) throw validation_error("dipole needs m >= 2");
    return OrientedMultigraph(2, std::vector<std::pair<int, int>>(m, {0, 1}));
}

inline OrientedMultigraph cycle(int m) {
    if (m < 2) throw validation_error("cycle needs m >= 2");
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < m; ++i) arcs.push_back({i, (i + 1) % m});
    return OrientedMultigraph(m, arcs);
}

/// Moebius ladder on 2n vertices: the cycle C_2n plus the n long chords.
inline OrientedMultigraph moebius_ladder(int n) {
    if (n < 2) throw validation_error("moebius ladder needs n >= 2");
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < 2 * n; ++i) arcs.push_back({i, (i + 1) % (2 * n)});
    for (int i = 0; i < n; ++i) arcs.push_back({i, i + n});
    return OrientedMultigraph(2 * n, arcs);
}

inline OrientedMultigraph klee(const std::vector<int>& expansion_seq) {
    return klee_graph(expansion_seq);
}

inline OrientedMultigraph k33() {
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) arcs.push_back({i, j});
    return OrientedMultigraph(6, arcs);
}

inline OrientedMultigraph cube() {
    return OrientedMultigraph(8, {{0, 1},
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
}

inline OrientedMultigraph petersen() {
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < 5; ++i) arcs.push_back({i, (i + 1) % 5});
    for (int i = 0; i < 5; ++i) arcs.push_back({i, i + 5});
    for (int i = 0; i < 5; ++i) arcs.push_back({5 + i, 5 + (i + 2) % 5});
    return OrientedMultigraph(10, arcs);
}

/// Hub vertex 0 joined to an m-cycle rim.
inline OrientedMultigraph wheel(int m) {
    if (m < 2) throw validation_error("wheel needs m >= 2");
    std::vector<std::pair<int, int>> arcs;
    for (int i = 1; i <= m; ++i) arcs.push_back({0, i});
    for (int i = 1; i <= m; ++i) arcs.push_back({i, i % m + 1});
    return OrientedMultigraph(m + 1, arcs);
}

/// Two branch vertices joined by three internally disjoint paths of lengths
/// 1, 2 and 2.
inline OrientedMultigraph theta_graph() {
    return OrientedMultigraph(4, {{0, 1}, {0, 2}, {2, 1}, {0, 3}, {3, 1}});
}

} // namespace flowreconf
