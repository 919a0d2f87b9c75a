#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <tuple>
#include <vector>

#include "citenet/edge_list.hpp"
#include "citenet/error.hpp"

namespace citenet {

constexpr node_id invalid_node = static_cast<node_id>(-1);

// Immutable undirected simple graph in compressed adjacency (CSR) form.
// Neighbor lists are sorted ascending and duplicate-free; adjacency is
// symmetric with equal weights on both directions. Raw graphs have unit
// edge weights and no self-loops; aggregation levels carry weights and
// per-node self-loop weight.
class Graph {
public:
    Graph() = default;

    node_id n() const { return n_; }
    std::uint64_t m() const { return m_; }
    double total_weight() const { return total_weight_; }
    bool unit_weights() const { return weights_.empty(); }

    std::span<const node_id> neighbors(node_id u) const {
        return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
    }

    // Number of distinct proper neighbors (self-loops excluded).
    std::uint64_t degree(node_id u) const { return offsets_[u + 1] - offsets_[u]; }

    // Weight of the i-th incident edge of u, aligned with neighbors(u).
    double weight_at(node_id u, std::size_t i) const {
        return weights_.empty() ? 1.0 : weights_[offsets_[u] + i];
    }

    double self_weight(node_id u) const {
        return self_weights_.empty() ? 0.0 : self_weights_[u];
    }

    // Weighted degree: incident edge weights plus twice the self-loop weight.
    double strength(node_id u) const {
        double s = 2.0 * self_weight(u);
        if (weights_.empty()) {
            s += static_cast<double>(degree(u));
        } else {
            for (std::size_t i = offsets_[u]; i < offsets_[u + 1]; ++i) s += weights_[i];
        }
        return s;
    }

    // Builds an unweighted graph from undirected edges given as (min,max)
    // sorted unique pairs. n is max id + 1.
    static Graph from_undirected_edges(node_id n, const std::vector<std::pair<node_id, node_id>>& edges) {
        Graph g;
        g.n_ = n;
        g.m_ = edges.size();
        g.total_weight_ = static_cast<double>(edges.size());
        g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (auto [u, v] : edges) {
            ++g.offsets_[u + 1];
            ++g.offsets_[v + 1];
        }
        for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
        g.neighbors_.resize(2 * edges.size());
        std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
        for (auto [u, v] : edges) {
            g.neighbors_[cursor[u]++] = v;
            g.neighbors_[cursor[v]++] = u;
        }
        // counting pass over edges sorted by (u,v) leaves each list sorted for
        // u-side entries but not for v-side ones; sort per node to be safe
        for (node_id u = 0; u < n; ++u) {
            std::sort(g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]),
                      g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]));
        }
        return g;
    }

    // Builds a weighted graph from undirected proper edges (u < v, unique)
    // plus per-node self-loop weights. Used for aggregation levels.
    static Graph from_weighted_edges(node_id n,
                                     std::vector<std::tuple<node_id, node_id, double>> edges,
                                     std::vector<double> self_weights) {
        std::sort(edges.begin(), edges.end(),
                  [](const auto& a, const auto& b) {
                      return std::tie(std::get<0>(a), std::get<1>(a)) <
                             std::tie(std::get<0>(b), std::get<1>(b));
                  });
        Graph g;
        g.n_ = n;
        g.m_ = edges.size();
        g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& [u, v, w] : edges) {
            ++g.offsets_[u + 1];
            ++g.offsets_[v + 1];
        }
        for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
        g.neighbors_.resize(2 * edges.size());
        g.weights_.resize(2 * edges.size());
        std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
        double total = 0.0;
        for (const auto& [u, v, w] : edges) {
            g.neighbors_[cursor[u]] = v;
            g.weights_[cursor[u]++] = w;
            g.neighbors_[cursor[v]] = u;
            g.weights_[cursor[v]++] = w;
            total += w;
        }
        for (node_id u = 0; u < n; ++u) {
            std::vector<std::pair<node_id, double>> row;
            row.reserve(g.offsets_[u + 1] - g.offsets_[u]);
            for (std::size_t i = g.offsets_[u]; i < g.offsets_[u + 1]; ++i) {
                row.emplace_back(g.neighbors_[i], g.weights_[i]);
            }
            std::sort(row.begin(), row.end());
            for (std::size_t i = 0; i < row.size(); ++i) {
                g.neighbors_[g.offsets_[u] + i] = row[i].first;
                g.weights_[g.offsets_[u] + i] = row[i].second;
            }
        }
        if (!self_weights.empty()) {
            self_weights.resize(n, 0.0);
            bool any = std::any_of(self_weights.begin(), self_weights.end(),
                                   [](double w) { return w != 0.0; });
            if (any) {
                g.self_weights_ = std::move(self_weights);
                for (double w : g.self_weights_) total += w;
            }
        }
        g.total_weight_ = total;
        return g;
    }

private:
    node_id n_ = 0;
    std::uint64_t m_ = 0;
    double total_weight_ = 0.0;
    std::vector<std::size_t> offsets_{0};
    std::vector<node_id> neighbors_;
    std::vector<double> weights_;      // empty = all edges weight 1
    std::vector<double> self_weights_; // empty = no self-loops
};

// Collapses a directed edge list into an undirected simple graph: a pair
// cited in both directions becomes one undirected edge of weight 1.
inline Graph build_graph(const EdgeList& list) {
    std::vector<std::uint64_t> keys;
    keys.reserve(list.edges.size());
    node_id max_id = 0;
    for (auto [src, dst] : list.edges) {
        node_id lo = std::min(src, dst);
        node_id hi = std::max(src, dst);
        keys.push_back((static_cast<std::uint64_t>(lo) << 32) | hi);
        max_id = std::max(max_id, hi);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    std::vector<std::pair<node_id, node_id>> edges;
    edges.reserve(keys.size());
    for (std::uint64_t k : keys) {
        edges.emplace_back(static_cast<node_id>(k >> 32), static_cast<node_id>(k & 0xffffffffULL));
    }
    node_id n = list.edges.empty() ? 0 : max_id + 1;
    return Graph::from_undirected_edges(n, edges);
}

// Writes the graph back to edge-list text, one undirected edge per line.
inline void write_edge_list(const Graph& g, std::ostream& out) {
    for (node_id u = 0; u < g.n(); ++u) {
        for (node_id v : g.neighbors(u)) {
            if (v > u) out << u << ' ' << v << '\n';
        }
    }
}

// Symmetry audit: every neighbor entry has a mirror entry of equal weight.
inline bool check_symmetry(const Graph& g) {
    for (node_id u = 0; u < g.n(); ++u) {
        auto nbrs = g.neighbors(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            node_id v = nbrs[i];
            if (i > 0 && nbrs[i - 1] >= v) return false; // sorted, duplicate-free
            auto back = g.neighbors(v);
            auto it = std::lower_bound(back.begin(), back.end(), u);
            if (it == back.end() || *it != u) return false;
            std::size_t j = static_cast<std::size_t>(it - back.begin());
            if (g.weight_at(u, i) != g.weight_at(v, j)) return false;
        }
    }
    return true;
}

} // namespace citenet
