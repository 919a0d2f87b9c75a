#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "citenet/error.hpp"
#include "citenet/graph.hpp"
#include "citenet/runtime.hpp"

namespace citenet {

struct DegreeStats {
    std::uint64_t min = 0;
    std::uint64_t max = 0;
    double mean = 0.0;
    double median = 0.0;
    std::map<std::uint64_t, std::uint64_t> histogram; // degree -> node count
};

// Mean degree of an undirected graph with n nodes and m edges.
inline double mean_degree(std::uint64_t n, std::uint64_t m) {
    return 2.0 * static_cast<double>(m) / static_cast<double>(n);
}

inline DegreeStats degree_stats(const Graph& g) {
    if (g.n() == 0) throw input_error("degree_stats: empty graph");

    std::uint64_t max_degree = 0;
    for (node_id u = 0; u < g.n(); ++u) max_degree = std::max(max_degree, g.degree(u));

    // integer counts merge identically regardless of chunking
    std::vector<std::vector<std::uint64_t>> partial(runtime::thread_cap(),
                                                    std::vector<std::uint64_t>(max_degree + 1, 0));
    runtime::for_each_chunk(g.n(), [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto& counts = partial[chunk];
        for (std::size_t u = begin; u < end; ++u) {
            ++counts[g.degree(static_cast<node_id>(u))];
        }
    });
    std::vector<std::uint64_t> counts(max_degree + 1, 0);
    for (const auto& p : partial) {
        for (std::size_t d = 0; d < p.size(); ++d) counts[d] += p[d];
    }

    DegreeStats stats;
    stats.max = max_degree;
    stats.min = max_degree;
    for (std::uint64_t d = 0; d <= max_degree; ++d) {
        if (counts[d] == 0) continue;
        stats.min = std::min(stats.min, d);
        stats.histogram.emplace(d, counts[d]);
    }
    stats.mean = mean_degree(g.n(), g.m());

    // median: average of the two central order statistics for even n
    auto nth_degree = [&](std::uint64_t rank) {
        std::uint64_t seen = 0;
        for (const auto& [d, c] : stats.histogram) {
            seen += c;
            if (seen > rank) return d;
        }
        return stats.max;
    };
    std::uint64_t half = g.n() / 2;
    if (g.n() % 2 == 1) {
        stats.median = static_cast<double>(nth_degree(half));
    } else {
        stats.median = 0.5 * (static_cast<double>(nth_degree(half - 1)) +
                              static_cast<double>(nth_degree(half)));
    }
    return stats;
}

// The k nodes of highest degree, ties broken by smaller node id; sorted
// descending by degree then ascending by id.
inline std::vector<std::pair<node_id, std::uint64_t>> top_degree_nodes(const Graph& g,
                                                                       std::uint64_t k) {
    if (k < 1 || k > g.n()) {
        throw input_error("top_degree_nodes: k=" + std::to_string(k) + " out of range [1, " +
                          std::to_string(g.n()) + "]");
    }
    std::vector<std::pair<node_id, std::uint64_t>> nodes;
    nodes.reserve(g.n());
    for (node_id u = 0; u < g.n(); ++u) nodes.emplace_back(u, g.degree(u));
    std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    nodes.resize(k);
    return nodes;
}

struct NeighborhoodCensus {
    node_id root = 0;
    std::uint64_t depth = 0;
    std::uint64_t n_nodes = 0; // reached nodes including the root
    std::uint64_t n_edges = 0; // edges induced on the reached set
};

struct ReachProfile {
    node_id root = 0;
    std::vector<std::uint64_t> cumulative; // entry d = nodes within distance <= d
};

namespace detail {

// BFS layers from root up to max_depth; fills dist (invalid = unreached) and
// returns cumulative reached counts per depth. Neighbors are visited in
// sorted order, so layer contents are reproducible.
inline std::vector<std::uint64_t> bfs_layers(const Graph& g, node_id root,
                                             std::uint64_t max_depth,
                                             std::vector<std::uint32_t>& dist) {
    constexpr std::uint32_t unreached = static_cast<std::uint32_t>(-1);
    dist.assign(g.n(), unreached);
    dist[root] = 0;
    std::vector<node_id> frontier{root};
    std::vector<std::uint64_t> cumulative{1};
    std::vector<node_id> next;
    for (std::uint64_t d = 1; d <= max_depth && !frontier.empty(); ++d) {
        next.clear();
        for (node_id u : frontier) {
            for (node_id v : g.neighbors(u)) {
                if (dist[v] == unreached) {
                    dist[v] = static_cast<std::uint32_t>(d);
                    next.push_back(v);
                }
            }
        }
        cumulative.push_back(cumulative.back() + next.size());
        frontier.swap(next);
        if (frontier.empty()) break;
    }
    // pad with the fixed point once the component is exhausted
    while (cumulative.size() <= max_depth) cumulative.push_back(cumulative.back());
    return cumulative;
}

} // namespace detail

// Depth-limited neighborhood: reached node count plus the edge count of the
// induced subgraph on the reached set.
inline NeighborhoodCensus neighborhood_census(const Graph& g, node_id root, std::uint64_t depth) {
    if (root >= g.n()) {
        throw input_error("neighborhood_census: root " + std::to_string(root) + " out of range");
    }
    std::vector<std::uint32_t> dist;
    auto cumulative = detail::bfs_layers(g, root, depth, dist);

    NeighborhoodCensus census;
    census.root = root;
    census.depth = depth;
    census.n_nodes = cumulative[std::min<std::size_t>(depth, cumulative.size() - 1)];
    constexpr std::uint32_t unreached = static_cast<std::uint32_t>(-1);
    for (node_id u = 0; u < g.n(); ++u) {
        if (dist[u] == unreached) continue;
        for (node_id v : g.neighbors(u)) {
            if (v > u && dist[v] != unreached) ++census.n_edges;
        }
    }
    return census;
}

// Cumulative reached-node counts per depth 0..max_depth.
inline ReachProfile reach_profile(const Graph& g, node_id root, std::uint64_t max_depth) {
    if (root >= g.n()) {
        throw input_error("reach_profile: root " + std::to_string(root) + " out of range");
    }
    std::vector<std::uint32_t> dist;
    ReachProfile profile;
    profile.root = root;
    profile.cumulative = detail::bfs_layers(g, root, max_depth, dist);
    return profile;
}

} // namespace citenet
