#pragma once

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "citenet/error.hpp"
#include "citenet/graph.hpp"
#include "citenet/modularity.hpp"
#include "citenet/partition.hpp"
#include "citenet/rng.hpp"

namespace citenet {

// Termination controls shared by the multilevel optimizers.
struct ClusteringConfig {
    Resolution gamma{};
    std::uint64_t seed = 0;
    std::uint32_t max_levels = 50;
    std::uint32_t max_passes_per_level = 100;
    double min_quality_gain = 1e-10;
};

// Optional per-level quality record, filled after each level's local move.
struct ClusteringTrace {
    std::vector<double> level_quality;
};

namespace detail {

// Greedy single-node move optimizer over one graph level. Nodes are visited
// in a seeded-shuffled order per sweep; each node moves to the neighboring
// community with maximal positive quality gain (ties to the lowest community
// id). Sweeps repeat until one makes no move.
class LocalMover {
public:
    LocalMover(const Graph& g, Resolution gamma, std::vector<community_id> assignment,
               community_id n_communities)
        : g_(g),
          gamma_(gamma.gamma),
          assignment_(std::move(assignment)),
          strength_(g.n()),
          comm_strength_(n_communities, 0.0),
          weight_to_(n_communities, 0.0) {
        for (node_id u = 0; u < g.n(); ++u) {
            strength_[u] = g.strength(u);
            comm_strength_[assignment_[u]] += strength_[u];
        }
    }

    bool run(Rng& rng, std::uint32_t max_passes) {
        const double w = g_.total_weight();
        const double inv_w = 1.0 / w;
        const double null_factor = gamma_ / (2.0 * w * w);

        std::vector<node_id> order(g_.n());
        for (node_id u = 0; u < g_.n(); ++u) order[u] = u;
        std::vector<community_id> touched;

        bool any_move = false;
        for (std::uint32_t pass = 0; pass < max_passes; ++pass) {
            rng.shuffle(order);
            std::uint64_t moves = 0;
            for (node_id u : order) {
                community_id current = assignment_[u];
                double ku = strength_[u];

                touched.clear();
                weight_to_[current] = 0.0;
                touched.push_back(current);
                auto nbrs = g_.neighbors(u);
                for (std::size_t i = 0; i < nbrs.size(); ++i) {
                    community_id c = assignment_[nbrs[i]];
                    if (weight_to_[c] == 0.0 && c != current) touched.push_back(c);
                    weight_to_[c] += g_.weight_at(u, i);
                }
                // community ids never repeat in touched: entries are only
                // appended while their scratch weight is still zero
                double stay_value =
                    weight_to_[current] * inv_w - ku * (comm_strength_[current] - ku) * null_factor;

                community_id best = current;
                double best_value = stay_value;
                for (community_id c : touched) {
                    if (c == current) continue;
                    double value = weight_to_[c] * inv_w - ku * comm_strength_[c] * null_factor;
                    if (value > best_value || (value == best_value && best != current && c < best)) {
                        best = c;
                        best_value = value;
                    }
                }

                if (best != current) {
                    comm_strength_[current] -= ku;
                    comm_strength_[best] += ku;
                    assignment_[u] = best;
                    ++moves;
                }
                for (community_id c : touched) weight_to_[c] = 0.0;
            }
            if (moves == 0) break;
            any_move = true;
        }
        return any_move;
    }

    const std::vector<community_id>& assignment() const { return assignment_; }

private:
    const Graph& g_;
    double gamma_;
    std::vector<community_id> assignment_;
    std::vector<double> strength_;
    std::vector<double> comm_strength_;
    std::vector<double> weight_to_;
};

} // namespace detail

// One round of greedy single-node moves from the given starting partition.
// Returns the resulting partition and whether any node moved.
inline std::pair<Partition, bool> local_move(const Graph& g, const Partition& p,
                                             Resolution gamma, std::uint64_t seed,
                                             std::uint32_t max_passes = 100) {
    if (p.n() != g.n()) {
        throw input_error("local_move: partition does not cover the graph");
    }
    detail::LocalMover mover(g, gamma, p.assignment, p.k);
    Rng rng(seed);
    bool improved = mover.run(rng, max_passes);
    return {Partition::normalized(mover.assignment()), improved};
}

// Coarsens the graph to one node per community: inter-community edge weights
// are summed, intra-community weight becomes self-loop weight. Total weight
// and the quality of the induced partition are preserved.
inline Graph aggregate(const Graph& g, const Partition& p) {
    if (p.n() != g.n()) {
        throw input_error("aggregate: partition does not cover the graph");
    }
    std::vector<double> self_weights(p.k, 0.0);
    std::vector<std::pair<std::uint64_t, double>> cross;
    for (node_id u = 0; u < g.n(); ++u) {
        community_id cu = p.assignment[u];
        self_weights[cu] += g.self_weight(u);
        auto nbrs = g.neighbors(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            node_id v = nbrs[i];
            if (v <= u) continue;
            community_id cv = p.assignment[v];
            double w = g.weight_at(u, i);
            if (cu == cv) {
                self_weights[cu] += w;
            } else {
                community_id lo = std::min(cu, cv);
                community_id hi = std::max(cu, cv);
                cross.emplace_back((static_cast<std::uint64_t>(lo) << 32) | hi, w);
            }
        }
    }
    // sort on (key, weight) so equal keys accumulate in a fixed order
    std::sort(cross.begin(), cross.end());
    std::vector<std::tuple<community_id, community_id, double>> edges;
    for (std::size_t i = 0; i < cross.size();) {
        std::uint64_t key = cross[i].first;
        double sum = 0.0;
        while (i < cross.size() && cross[i].first == key) sum += cross[i++].second;
        edges.emplace_back(static_cast<community_id>(key >> 32),
                           static_cast<community_id>(key & 0xffffffffULL), sum);
    }
    return Graph::from_weighted_edges(p.k, std::move(edges), std::move(self_weights));
}

// Multilevel Louvain: alternates local moves and aggregation until no level
// improves quality by more than min_quality_gain.
inline Partition louvain(const Graph& g, const ClusteringConfig& cfg,
                         ClusteringTrace* trace = nullptr) {
    if (g.total_weight() <= 0.0) {
        throw input_error("louvain: graph has no edges");
    }
    if (cfg.max_levels < 1) {
        throw input_error("louvain: max_levels must be >= 1");
    }

    Rng rng(cfg.seed);
    std::vector<community_id> flat(g.n());
    for (node_id u = 0; u < g.n(); ++u) flat[u] = u;

    Graph owned;
    const Graph* level_graph = &g;
    double prev_quality = 0.0;
    for (std::uint32_t level = 0; level < cfg.max_levels; ++level) {
        Partition start = Partition::singletons(level_graph->n());
        detail::LocalMover mover(*level_graph, cfg.gamma, start.assignment, start.k);
        bool improved = mover.run(rng, cfg.max_passes_per_level);
        Partition part = Partition::normalized(mover.assignment());
        double q = quality(*level_graph, part, cfg.gamma);
        if (trace) trace->level_quality.push_back(q);

        for (auto& c : flat) c = part.assignment[c];
        if (!improved) break;
        if (part.k == level_graph->n()) break;
        if (level > 0 && q - prev_quality < cfg.min_quality_gain) break;
        prev_quality = q;

        Graph next = aggregate(*level_graph, part);
        owned = std::move(next);
        level_graph = &owned;
    }
    return Partition::normalized(flat);
}

} // namespace citenet
