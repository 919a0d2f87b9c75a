#pragma once

#include <numeric>
#include <ostream>
#include <utility>
#include <vector>

#include "citenet/error.hpp"
#include "citenet/graph.hpp"

namespace citenet {

// Relabeling produced by a cleaning step. old_to_new is partial (unmapped
// entries hold invalid_node); new_to_old is total and injective.
struct NodeMapping {
    std::vector<node_id> old_to_new;
    std::vector<node_id> new_to_old;

    static NodeMapping identity(node_id n) {
        NodeMapping m;
        m.old_to_new.resize(n);
        m.new_to_old.resize(n);
        std::iota(m.old_to_new.begin(), m.old_to_new.end(), node_id{0});
        std::iota(m.new_to_old.begin(), m.new_to_old.end(), node_id{0});
        return m;
    }

    bool retained(node_id old) const { return old_to_new[old] != invalid_node; }

    // Composition first∘second: maps ids of the original graph to ids of the
    // graph produced by applying `second` after `first`.
    static NodeMapping compose(const NodeMapping& first, const NodeMapping& second) {
        NodeMapping out;
        out.old_to_new.assign(first.old_to_new.size(), invalid_node);
        out.new_to_old.resize(second.new_to_old.size());
        for (std::size_t i = 0; i < first.old_to_new.size(); ++i) {
            node_id mid = first.old_to_new[i];
            if (mid != invalid_node) out.old_to_new[i] = second.old_to_new[mid];
        }
        for (std::size_t i = 0; i < second.new_to_old.size(); ++i) {
            out.new_to_old[i] = first.new_to_old[second.new_to_old[i]];
        }
        return out;
    }
};

// Mapping file format: `new_id<TAB>old_id` per line.
inline void write_mapping(const NodeMapping& m, std::ostream& out) {
    for (std::size_t i = 0; i < m.new_to_old.size(); ++i) {
        out << i << '\t' << m.new_to_old[i] << '\n';
    }
}

// Induced subgraph on `retained` (ascending node ids), relabeled
// consecutively preserving relative order. Weights and self-loops carry over.
inline std::pair<Graph, NodeMapping> induced_subgraph(const Graph& g,
                                                      const std::vector<node_id>& retained) {
    NodeMapping mapping;
    mapping.old_to_new.assign(g.n(), invalid_node);
    mapping.new_to_old = retained;
    for (std::size_t i = 0; i < retained.size(); ++i) {
        mapping.old_to_new[retained[i]] = static_cast<node_id>(i);
    }

    std::vector<std::tuple<node_id, node_id, double>> edges;
    std::vector<double> self_weights;
    bool any_self = false;
    self_weights.resize(retained.size(), 0.0);
    for (std::size_t i = 0; i < retained.size(); ++i) {
        node_id old_u = retained[i];
        double sw = g.self_weight(old_u);
        if (sw != 0.0) any_self = true;
        self_weights[i] = sw;
        auto nbrs = g.neighbors(old_u);
        for (std::size_t j = 0; j < nbrs.size(); ++j) {
            node_id new_v = mapping.old_to_new[nbrs[j]];
            if (new_v == invalid_node) continue;
            if (new_v > i) edges.emplace_back(static_cast<node_id>(i), new_v, g.weight_at(old_u, j));
        }
    }
    if (!any_self) self_weights.clear();

    if (g.unit_weights() && !any_self) {
        std::vector<std::pair<node_id, node_id>> plain;
        plain.reserve(edges.size());
        for (const auto& [u, v, w] : edges) plain.emplace_back(u, v);
        return {Graph::from_undirected_edges(static_cast<node_id>(retained.size()), plain),
                std::move(mapping)};
    }
    return {Graph::from_weighted_edges(static_cast<node_id>(retained.size()), std::move(edges),
                                       std::move(self_weights)),
            std::move(mapping)};
}

// Keeps the largest connected component; ties broken by the smallest
// contained original node id. Relabels consecutively.
inline std::pair<Graph, NodeMapping> largest_connected_component(const Graph& g) {
    if (g.n() == 0) throw input_error("largest_connected_component: empty graph");

    std::vector<node_id> component(g.n(), invalid_node);
    std::vector<std::uint64_t> comp_size;
    std::vector<node_id> queue;
    for (node_id root = 0; root < g.n(); ++root) {
        if (component[root] != invalid_node) continue;
        node_id comp = static_cast<node_id>(comp_size.size());
        std::uint64_t size = 0;
        queue.clear();
        queue.push_back(root);
        component[root] = comp;
        while (!queue.empty()) {
            node_id u = queue.back();
            queue.pop_back();
            ++size;
            for (node_id v : g.neighbors(u)) {
                if (component[v] == invalid_node) {
                    component[v] = comp;
                    queue.push_back(v);
                }
            }
        }
        comp_size.push_back(size);
    }

    // components are discovered in ascending order of their minimum node id,
    // so the first maximal one wins ties
    node_id best = 0;
    for (node_id c = 1; c < comp_size.size(); ++c) {
        if (comp_size[c] > comp_size[best]) best = c;
    }

    std::vector<node_id> retained;
    retained.reserve(comp_size[best]);
    for (node_id u = 0; u < g.n(); ++u) {
        if (component[u] == best) retained.push_back(u);
    }
    return induced_subgraph(g, retained);
}

// Removes nodes with degree <= k. Single pass evaluates degrees on the input
// graph; iterative mode repeats until the minimum degree exceeds k.
inline std::pair<Graph, NodeMapping> prune_low_degree(const Graph& g, std::uint64_t k,
                                                      bool iterative = false) {
    auto single_pass = [k](const Graph& cur) {
        std::vector<node_id> retained;
        for (node_id u = 0; u < cur.n(); ++u) {
            if (cur.degree(u) > k) retained.push_back(u);
        }
        return retained;
    };

    std::vector<node_id> retained = single_pass(g);
    if (retained.empty()) {
        throw input_error("prune_low_degree: all nodes pruned (degree <= " + std::to_string(k) + ")");
    }
    auto [pruned, mapping] = induced_subgraph(g, retained);
    if (!iterative) return {std::move(pruned), std::move(mapping)};

    while (pruned.n() > 0) {
        std::vector<node_id> keep = single_pass(pruned);
        if (keep.size() == pruned.n()) break;
        if (keep.empty()) {
            throw input_error("prune_low_degree: all nodes pruned (degree <= " + std::to_string(k) + ")");
        }
        auto [next, step] = induced_subgraph(pruned, keep);
        mapping = NodeMapping::compose(mapping, step);
        pruned = std::move(next);
    }
    return {std::move(pruned), std::move(mapping)};
}

} // namespace citenet
