#pragma once

#include <string>
#include <vector>

#include "flowreconf/errors.hpp"
#include "flowreconf/multigraph.hpp"

namespace flowreconf {

/// graph6 short-format decoder (simple graphs, n <= 62). Arcs come out in
/// the format's column-major upper-triangle order, oriented low -> high.
inline OrientedMultigraph parse_graph6(const std::string& raw) {
    std::string line = raw;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r' || line.back() == ' '))
        line.pop_back();
    if (line.rfind(">>graph6<<", 0) == 0) line = line.substr(10);
    if (line.empty()) throw parse_error("graph6: empty line");
    for (char ch : line)
        if (ch < 63 || ch > 126) throw parse_error("graph6: byte out of range");
    if (line[0] == 126) throw parse_error("graph6: long format (n > 62) not supported");

    const int n = line[0] - 63;
    const long long bits = static_cast<long long>(n) * (n - 1) / 2;
    const long long expect = 1 + (bits + 5) / 6;
    if (static_cast<long long>(line.size()) != expect)
        throw parse_error("graph6: bad length for declared vertex count");

    std::vector<std::pair<int, int>> arcs;
    long long bit = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++bit) {
            int byte = line[1 + bit / 6] - 63;
            if ((byte >> (5 - bit % 6)) & 1) arcs.push_back({i, j});
        }
    }
    for (long long b = bits; b < 6 * (expect - 1); ++b) {
        int byte = line[1 + b / 6] - 63;
        if ((byte >> (5 - b % 6)) & 1) throw parse_error("graph6: nonzero padding");
    }
    return OrientedMultigraph(n, arcs);
}

inline std::string write_graph6(const OrientedMultigraph& g) {
    const int n = g.vertex_count();
    if (n > 62) throw validation_error("graph6: more than 62 vertices");
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int e = 0; e < g.edge_count(); ++e) {
        const Arc& a = g.arc(e);
        if (adj[a.tail][a.head]) throw validation_error("graph6: parallel edges not representable");
        adj[a.tail][a.head] = adj[a.head][a.tail] = 1;
    }
    std::string out(1, static_cast<char>(63 + n));
    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | adj[i][j];
            if (++nbits == 6) {
                out.push_back(static_cast<char>(63 + acc));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(static_cast<char>(63 + (acc << (6 - nbits))));
    return out;
}

} // namespace flowreconf
