#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "citenet/error.hpp"
#include "citenet/graph.hpp"

namespace citenet {

using community_id = std::uint32_t;
constexpr community_id invalid_community = static_cast<community_id>(-1);

// Node -> community assignment with consecutive community ids 0..k-1.
struct Partition {
    std::vector<community_id> assignment;
    community_id k = 0;

    node_id n() const { return static_cast<node_id>(assignment.size()); }

    static Partition singletons(node_id n) {
        Partition p;
        p.assignment.resize(n);
        for (node_id u = 0; u < n; ++u) p.assignment[u] = u;
        p.k = n;
        return p;
    }

    static Partition all_in_one(node_id n) {
        Partition p;
        p.assignment.assign(n, 0);
        p.k = n > 0 ? 1 : 0;
        return p;
    }

    // Renumbers an arbitrary assignment to consecutive ids in order of first
    // occurrence (scanning nodes ascending).
    static Partition normalized(const std::vector<community_id>& raw) {
        Partition p;
        p.assignment.resize(raw.size());
        std::vector<community_id> remap;
        community_id next = 0;
        community_id max_raw = 0;
        for (community_id c : raw) max_raw = std::max(max_raw, c);
        remap.assign(static_cast<std::size_t>(max_raw) + 1, invalid_community);
        for (std::size_t u = 0; u < raw.size(); ++u) {
            community_id& slot = remap[raw[u]];
            if (slot == invalid_community) slot = next++;
            p.assignment[u] = slot;
        }
        p.k = next;
        return p;
    }

    std::vector<std::uint64_t> community_sizes() const {
        std::vector<std::uint64_t> sizes(k, 0);
        for (community_id c : assignment) ++sizes[c];
        return sizes;
    }
};

// Partition file format: `node_id<TAB>community_id` per line.
inline void write_partition(const Partition& p, std::ostream& out) {
    for (node_id u = 0; u < p.n(); ++u) {
        out << u << '\t' << p.assignment[u] << '\n';
    }
}

// Reads a partition covering exactly the nodes 0..n-1 of its companion graph;
// any out-of-range, duplicate, or missing node id is rejected by name.
inline Partition read_partition(std::istream& in, node_id n) {
    std::vector<community_id> raw(n, invalid_community);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw parse_error("malformed partition line: expected node_id<TAB>community_id", line_no);
        }
        const char* p = line.data();
        node_id node, comm;
        if (!detail::parse_node_id(p, line.data() + tab, node) || p != line.data() + tab) {
            throw parse_error("malformed partition line: bad node id", line_no);
        }
        p = line.data() + tab + 1;
        if (!detail::parse_node_id(p, line.data() + line.size(), comm) ||
            p != line.data() + line.size()) {
            throw parse_error("malformed partition line: bad community id", line_no);
        }
        if (node >= n) {
            throw input_error("partition node id " + std::to_string(node) +
                              " out of range (graph has n=" + std::to_string(n) + ")");
        }
        if (raw[node] != invalid_community) {
            throw input_error("duplicate partition entry for node " + std::to_string(node));
        }
        raw[node] = comm;
    }
    for (node_id u = 0; u < n; ++u) {
        if (raw[u] == invalid_community) {
            throw input_error("partition missing node " + std::to_string(u));
        }
    }
    return Partition::normalized(raw);
}

} // namespace citenet
