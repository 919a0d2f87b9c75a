#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "citenet/error.hpp"
#include "citenet/graph.hpp"
#include "citenet/louvain.hpp"
#include "citenet/modularity.hpp"
#include "citenet/partition.hpp"
#include "citenet/rng.hpp"

namespace citenet {

namespace detail {

// Leiden refinement: within each community of `part`, re-partitions the nodes
// into well-connected subcommunities. Starting from singletons, each node that
// is still alone may merge into an adjacent subcommunity of the same parent
// community, chosen at random with probability proportional to the quality
// gain. Only merges with positive gain are considered, so refined communities
// stay connected and the refined partition's quality is maximal among the
// visited merge sequences.
inline std::vector<community_id> refine_partition(const Graph& g, const Partition& part,
                                                  Resolution gamma, Rng& rng) {
    const node_id n = g.n();
    const double w = g.total_weight();
    const double inv_w = 1.0 / w;
    const double null_factor = gamma.gamma / (2.0 * w * w);

    std::vector<community_id> refined(n);
    std::vector<std::uint32_t> ref_size(n, 1);
    std::vector<double> ref_strength(n);
    std::vector<double> ref_external(n, 0.0); // weight to the rest of the parent community
    std::vector<double> parent_strength(part.k, 0.0);
    for (node_id u = 0; u < n; ++u) {
        refined[u] = u;
        ref_strength[u] = g.strength(u);
        parent_strength[part.assignment[u]] += ref_strength[u];
    }
    for (node_id u = 0; u < n; ++u) {
        auto nbrs = g.neighbors(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (part.assignment[nbrs[i]] == part.assignment[u]) {
                ref_external[u] += g.weight_at(u, i);
            }
        }
    }

    std::vector<node_id> order(n);
    for (node_id u = 0; u < n; ++u) order[u] = u;
    rng.shuffle(order);

    std::vector<double> weight_to(n, 0.0);
    std::vector<community_id> touched;
    std::vector<std::pair<community_id, double>> candidates;
    for (node_id v : order) {
        if (ref_size[refined[v]] != 1) continue;
        community_id parent = part.assignment[v];
        double kv = ref_strength[refined[v]];
        double rest = parent_strength[parent] - kv;
        // only nodes sufficiently connected to the rest of their community
        // may seed a merge
        if (ref_external[refined[v]] < gamma.gamma * kv * rest * inv_w / 2.0) continue;

        touched.clear();
        auto nbrs = g.neighbors(v);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            node_id u = nbrs[i];
            if (part.assignment[u] != parent) continue;
            community_id d = refined[u];
            if (weight_to[d] == 0.0) touched.push_back(d);
            weight_to[d] += g.weight_at(v, i);
        }

        candidates.clear();
        double total_gain = 0.0;
        for (community_id d : touched) {
            double kd = ref_strength[d];
            if (ref_external[d] < gamma.gamma * kd * (parent_strength[parent] - kd) * inv_w / 2.0) {
                continue;
            }
            double gain = weight_to[d] * inv_w - kv * kd * null_factor;
            if (gain > 0.0) {
                candidates.emplace_back(d, gain);
                total_gain += gain;
            }
        }

        if (!candidates.empty()) {
            double pick = rng.next_double() * total_gain;
            community_id target = candidates.back().first;
            double cumulative = 0.0;
            for (const auto& [d, gain] : candidates) {
                cumulative += gain;
                if (pick < cumulative) {
                    target = d;
                    break;
                }
            }
            community_id old = refined[v];
            refined[v] = target;
            ref_size[target] += 1;
            ref_size[old] -= 1;
            ref_strength[target] += kv;
            ref_external[target] += ref_external[old] - 2.0 * weight_to[target];
        }
        for (community_id d : touched) weight_to[d] = 0.0;
    }
    return refined;
}

// Splits every community that induces a disconnected subgraph into its
// connected components. For gamma > 0 this never decreases quality.
inline Partition split_disconnected_communities(const Graph& g, const Partition& p) {
    Partition out;
    out.assignment.assign(g.n(), invalid_community);
    community_id next = 0;
    std::vector<node_id> queue;
    for (node_id root = 0; root < g.n(); ++root) {
        if (out.assignment[root] != invalid_community) continue;
        community_id original = p.assignment[root];
        queue.clear();
        queue.push_back(root);
        out.assignment[root] = next;
        while (!queue.empty()) {
            node_id u = queue.back();
            queue.pop_back();
            for (node_id v : g.neighbors(u)) {
                if (out.assignment[v] == invalid_community && p.assignment[v] == original) {
                    out.assignment[v] = next;
                    queue.push_back(v);
                }
            }
        }
        ++next;
    }
    out.k = next;
    return out;
}

} // namespace detail

// Leiden: multilevel optimization with a refinement phase between the local
// moves and the aggregation. Aggregation runs on the refined partition while
// the level's community assignment constrains the next level's starting
// point. Every returned community induces a connected subgraph.
inline Partition leiden(const Graph& g, const ClusteringConfig& cfg,
                        ClusteringTrace* trace = nullptr) {
    if (g.total_weight() <= 0.0) {
        throw input_error("leiden: graph has no edges");
    }

    if (cfg.max_levels < 1) {
        throw input_error("leiden: max_levels must be >= 1");
    }

    Rng rng(cfg.seed);
    std::vector<community_id> flat(g.n());
    for (node_id u = 0; u < g.n(); ++u) flat[u] = u;

    Graph owned;
    const Graph* level_graph = &g;
    Partition constrained = Partition::singletons(g.n());
    Partition level_part;
    double prev_quality = 0.0;
    for (std::uint32_t level = 0; level < cfg.max_levels; ++level) {
        detail::LocalMover mover(*level_graph, cfg.gamma, constrained.assignment, constrained.k);
        mover.run(rng, cfg.max_passes_per_level);
        level_part = Partition::normalized(mover.assignment());
        double q = quality(*level_graph, level_part, cfg.gamma);
        if (trace) trace->level_quality.push_back(q);

        Partition refined =
            Partition::normalized(detail::refine_partition(*level_graph, level_part, cfg.gamma, rng));
        if (refined.k == level_graph->n()) break; // nothing to coarsen
        if (level > 0 && q - prev_quality < cfg.min_quality_gain) break;
        prev_quality = q;

        // carry the level's community assignment down to the refined nodes so
        // it constrains the next level's starting partition
        std::vector<community_id> projected(refined.k, invalid_community);
        for (node_id u = 0; u < level_graph->n(); ++u) {
            projected[refined.assignment[u]] = level_part.assignment[u];
        }
        for (auto& c : flat) c = refined.assignment[c];

        Graph next = aggregate(*level_graph, refined);
        owned = std::move(next);
        level_graph = &owned;
        constrained = Partition::normalized(projected);
    }

    std::vector<community_id> result(g.n());
    for (node_id u = 0; u < g.n(); ++u) result[u] = level_part.assignment[flat[u]];
    Partition final_part =
        detail::split_disconnected_communities(g, Partition::normalized(result));
    if (trace) trace->level_quality.push_back(quality(g, final_part, cfg.gamma));
    return final_part;
}

} // namespace citenet
