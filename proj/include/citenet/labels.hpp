#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "citenet/error.hpp"
#include "citenet/graph.hpp"

namespace citenet {

// Reserved label under which evaluation groups unlabeled nodes.
inline constexpr const char* unlabeled_label = "∅"; // "∅"

// Ground-truth field labels for a subset of a graph's nodes.
class LabelMap {
public:
    LabelMap() = default;

    LabelMap(node_id n, const std::vector<std::pair<node_id, std::string>>& entries) {
        label_index_.assign(n, -1);
        std::map<std::string, std::int32_t> index_of;
        for (const auto& [node, label] : entries) index_of.emplace(label, 0);
        std::int32_t next = 0;
        for (auto& [label, idx] : index_of) {
            idx = next++;
            universe_.push_back(label);
        }
        for (const auto& [node, label] : entries) {
            label_index_[node] = index_of[label];
            ++n_labeled_;
        }
    }

    node_id n() const { return static_cast<node_id>(label_index_.size()); }
    std::uint64_t n_labeled() const { return n_labeled_; }

    // Distinct labels, sorted lexicographically.
    const std::vector<std::string>& universe() const { return universe_; }

    bool labeled(node_id u) const { return label_index_[u] >= 0; }

    // Index into universe(), or -1 when unlabeled.
    std::int32_t label_index(node_id u) const { return label_index_[u]; }

    const std::string& label(node_id u) const { return universe_[static_cast<std::size_t>(label_index_[u])]; }

private:
    std::vector<std::int32_t> label_index_;
    std::vector<std::string> universe_;
    std::uint64_t n_labeled_ = 0;
};

// Reads a node-label list: `node_id<TAB>label` per line, label being any
// non-empty token without tabs. Node ids must fall inside the companion
// graph; conflicting duplicate assignments are rejected.
inline LabelMap load_labels(std::istream& in, const Graph& g) {
    std::vector<std::pair<node_id, std::string>> entries;
    std::vector<std::int32_t> seen(g.n(), -1); // index into entries
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw parse_error("malformed label line: expected node_id<TAB>label", line_no);
        }
        const char* p = line.data();
        const char* id_end = line.data() + tab;
        node_id id;
        if (!detail::parse_node_id(p, id_end, id) || p != id_end) {
            throw parse_error("malformed label line: bad node id", line_no);
        }
        std::string label = line.substr(tab + 1);
        if (label.empty() || label.find('\t') != std::string::npos) {
            throw parse_error("malformed label line: label must be a non-empty tab-free token", line_no);
        }
        if (id >= g.n()) {
            throw input_error("label node id " + std::to_string(id) + " out of range (n=" +
                              std::to_string(g.n()) + ", line " + std::to_string(line_no) + ")");
        }
        if (seen[id] >= 0) {
            if (entries[static_cast<std::size_t>(seen[id])].second != label) {
                throw input_error("conflicting labels for node " + std::to_string(id) +
                                  " (line " + std::to_string(line_no) + ")");
            }
            continue;
        }
        seen[id] = static_cast<std::int32_t>(entries.size());
        entries.emplace_back(id, std::move(label));
    }
    return LabelMap(g.n(), entries);
}

} // namespace citenet
