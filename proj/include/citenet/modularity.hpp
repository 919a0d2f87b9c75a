#pragma once

#include <string>
#include <vector>

#include "citenet/error.hpp"
#include "citenet/graph.hpp"
#include "citenet/partition.hpp"

namespace citenet {

// Resolution parameter of the quality function. gamma = 1 is classic
// modularity; smaller values favor fewer, larger communities.
struct Resolution {
    double gamma = 1.0;

    Resolution() = default;
    explicit Resolution(double g) : gamma(g) {
        if (!(g > 0.0)) {
            throw input_error("resolution must be positive, got " + std::to_string(g));
        }
    }
};

// Resolution-scaled modularity of a partition:
//   Q(gamma) = sum_c [ e_c / W - gamma * (d_c / 2W)^2 ]
// with e_c the intra-community edge weight (self-loops counted once), d_c the
// total community strength (self-loops counted twice) and W the total edge
// weight of the graph.
inline double quality(const Graph& g, const Partition& p, Resolution resolution = Resolution()) {
    if (p.n() != g.n()) {
        throw input_error("quality: partition covers " + std::to_string(p.n()) +
                          " nodes but graph has " + std::to_string(g.n()));
    }
    if (g.total_weight() <= 0.0) {
        throw input_error("quality: undefined on a graph without edges");
    }

    std::vector<double> intra(p.k, 0.0);
    std::vector<double> degree_sum(p.k, 0.0);
    for (node_id u = 0; u < g.n(); ++u) {
        community_id c = p.assignment[u];
        degree_sum[c] += g.strength(u);
        intra[c] += g.self_weight(u);
        auto nbrs = g.neighbors(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            node_id v = nbrs[i];
            if (v > u && p.assignment[v] == c) intra[c] += g.weight_at(u, i);
        }
    }

    double w = g.total_weight();
    double q = 0.0;
    for (community_id c = 0; c < p.k; ++c) {
        double frac = degree_sum[c] / (2.0 * w);
        q += intra[c] / w - resolution.gamma * frac * frac;
    }
    return q;
}

} // namespace citenet
