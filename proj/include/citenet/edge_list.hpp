#pragma once

#include <cstdint>
#include <istream>
#include <limits>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "citenet/error.hpp"

namespace citenet {

using node_id = std::uint32_t;

// Raw directed edge records as read from a .gph file, plus ingestion
// statistics. Self-loops and exact duplicate directed pairs are already
// dropped (and counted) at this stage.
struct EdgeList {
    std::vector<std::pair<node_id, node_id>> edges;
    std::uint64_t n_declared = 0;           // distinct node ids seen in the input
    std::uint64_t n_self_loops_dropped = 0;
    std::uint64_t n_duplicates_dropped = 0;
};

namespace detail {

inline bool parse_node_id(const char*& p, const char* end, node_id& out) {
    if (p == end || *p < '0' || *p > '9') return false;
    std::uint64_t v = 0;
    while (p != end && *p >= '0' && *p <= '9') {
        v = v * 10 + static_cast<std::uint64_t>(*p - '0');
        if (v > std::numeric_limits<node_id>::max()) return false;
        ++p;
    }
    out = static_cast<node_id>(v);
    return true;
}

inline void skip_blanks(const char*& p, const char* end) {
    while (p != end && (*p == ' ' || *p == '\t')) ++p;
}

} // namespace detail

// Reads an edge-list text stream: one `src dst` pair per line, separated by
// any run of spaces/tabs, `#`-prefixed comment lines skipped, LF or CRLF line
// endings. Whitespace-only lines are ignored.
inline EdgeList parse_edge_list(std::istream& in) {
    EdgeList result;
    std::unordered_set<std::uint64_t> seen_edges;
    std::unordered_set<node_id> seen_ids;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        const char* p = line.data();
        const char* end = p + line.size();
        detail::skip_blanks(p, end);
        if (p == end) continue;
        if (*p == '#') continue;

        node_id src, dst;
        if (!detail::parse_node_id(p, end, src)) {
            throw parse_error("malformed edge line: expected non-negative integer", line_no);
        }
        detail::skip_blanks(p, end);
        if (!detail::parse_node_id(p, end, dst)) {
            throw parse_error("malformed edge line: expected two node ids", line_no);
        }
        detail::skip_blanks(p, end);
        if (p != end) {
            throw parse_error("malformed edge line: trailing tokens", line_no);
        }

        seen_ids.insert(src);
        seen_ids.insert(dst);
        if (src == dst) {
            ++result.n_self_loops_dropped;
            continue;
        }
        std::uint64_t key = (static_cast<std::uint64_t>(src) << 32) | dst;
        if (!seen_edges.insert(key).second) {
            ++result.n_duplicates_dropped;
            continue;
        }
        result.edges.emplace_back(src, dst);
    }

    result.n_declared = seen_ids.size();
    if (result.edges.empty() && result.n_self_loops_dropped == 0) {
        throw input_error("empty input: no edges found");
    }
    return result;
}

} // namespace citenet
