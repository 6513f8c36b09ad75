#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "flowreconf/errors.hpp"

namespace flowreconf {

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]]; // path halving
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    bool connected(std::size_t a, std::size_t b) { return find(a) == find(b); }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

// FNV-1a over a vector of int32 values; used to key flows and colorings.
struct VecHash {
    std::size_t operator()(const std::vector<int32_t>& v) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (int32_t x : v) {
            std::uint64_t u = static_cast<std::uint32_t>(x);
            h = (h ^ u) * 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

struct ComponentLabels {
    std::vector<int> label;           // per vertex, -1 never occurs after run
    std::vector<long long> sizes;     // per component id
    int count = 0;
};

// Connected components of an undirected adjacency-list graph.
inline ComponentLabels label_components(const std::vector<std::vector<int>>& adj) {
    ComponentLabels out;
    const int n = static_cast<int>(adj.size());
    out.label.assign(n, -1);
    for (int s = 0; s < n; ++s) {
        if (out.label[s] >= 0) continue;
        const int c = out.count++;
        long long sz = 0;
        std::queue<int> q;
        q.push(s);
        out.label[s] = c;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            ++sz;
            for (int w : adj[v]) {
                if (out.label[w] < 0) {
                    out.label[w] = c;
                    q.push(w);
                }
            }
        }
        out.sizes.push_back(sz);
    }
    return out;
}

inline std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int src) {
    std::vector<int> dist(adj.size(), -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

// Eccentricity maximum over one component, given any member vertex.
inline int component_diameter(const std::vector<std::vector<int>>& adj, int member) {
    auto reach = bfs_distances(adj, member);
    int diam = 0;
    for (std::size_t v = 0; v < adj.size(); ++v) {
        if (reach[v] < 0) continue;
        auto d = bfs_distances(adj, static_cast<int>(v));
        for (int x : d) diam = std::max(diam, x);
    }
    return diam;
}

} // namespace flowreconf
