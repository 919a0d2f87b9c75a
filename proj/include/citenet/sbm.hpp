#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "citenet/error.hpp"
#include "citenet/graph.hpp"
#include "citenet/partition.hpp"
#include "citenet/rng.hpp"

namespace citenet {

// Planted-partition benchmark generator: nodes are split into near-equal
// contiguous blocks, node pairs within a block are connected with p_in and
// pairs across blocks with p_out.
struct SbmConfig {
    node_id n = 0;
    std::uint32_t blocks = 2;
    double p_in = 0.1;
    double p_out = 0.01;
    std::uint64_t seed = 0;
};

struct SbmGraph {
    Graph graph;
    std::vector<community_id> block_of; // planted block per node
};

namespace detail {

// Emits column indices j in [begin, end) hit by independent p-coin flips,
// using geometric jumps so the cost is proportional to the hits.
template <typename Emit>
inline void sample_row(Rng& rng, node_id begin, node_id end, double p, Emit&& emit) {
    if (p <= 0.0 || begin >= end) return;
    if (p >= 1.0) {
        for (node_id j = begin; j < end; ++j) emit(j);
        return;
    }
    const double log_q = std::log1p(-p);
    std::uint64_t j = begin;
    for (;;) {
        double u = 1.0 - rng.next_double(); // in (0, 1]
        j += static_cast<std::uint64_t>(std::floor(std::log(u) / log_q)) + 1;
        if (j > end) return;
        emit(static_cast<node_id>(j - 1));
    }
}

} // namespace detail

inline SbmGraph sbm_generate(const SbmConfig& cfg) {
    if (cfg.n == 0 || cfg.blocks == 0) {
        throw input_error("sbm_generate: n and blocks must be positive");
    }
    if (cfg.blocks > cfg.n) {
        throw input_error("sbm_generate: more blocks than nodes");
    }

    // contiguous near-equal blocks; the first n % blocks blocks get one extra
    std::vector<node_id> block_start(cfg.blocks + 1, 0);
    node_id per = cfg.n / cfg.blocks;
    node_id extra = cfg.n % cfg.blocks;
    for (std::uint32_t b = 0; b < cfg.blocks; ++b) {
        block_start[b + 1] = block_start[b] + per + (b < extra ? 1 : 0);
    }

    SbmGraph out;
    out.block_of.resize(cfg.n);
    for (std::uint32_t b = 0; b < cfg.blocks; ++b) {
        for (node_id u = block_start[b]; u < block_start[b + 1]; ++u) out.block_of[u] = b;
    }

    Rng rng(cfg.seed);
    std::vector<std::pair<node_id, node_id>> edges;
    // within-block pairs (i < j)
    for (std::uint32_t b = 0; b < cfg.blocks; ++b) {
        for (node_id i = block_start[b]; i < block_start[b + 1]; ++i) {
            detail::sample_row(rng, i + 1, block_start[b + 1], cfg.p_in,
                               [&](node_id j) { edges.emplace_back(i, j); });
        }
    }
    // cross-block pairs
    for (std::uint32_t a = 0; a < cfg.blocks; ++a) {
        for (std::uint32_t b = a + 1; b < cfg.blocks; ++b) {
            for (node_id i = block_start[a]; i < block_start[a + 1]; ++i) {
                detail::sample_row(rng, block_start[b], block_start[b + 1], cfg.p_out,
                                   [&](node_id j) { edges.emplace_back(i, j); });
            }
        }
    }

    out.graph = Graph::from_undirected_edges(cfg.n, edges);
    return out;
}

} // namespace citenet
