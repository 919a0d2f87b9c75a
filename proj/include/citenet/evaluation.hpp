#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "citenet/error.hpp"
#include "citenet/graph.hpp"
#include "citenet/labels.hpp"
#include "citenet/partition.hpp"
#include "citenet/runtime.hpp"

namespace citenet {

// Dense k x k symmetric matrix of edge counts between cluster pairs; the
// diagonal holds intra-cluster counts.
struct LinkMatrix {
    community_id k = 0;
    std::vector<std::uint64_t> counts; // row-major k*k

    std::uint64_t at(community_id i, community_id j) const {
        return counts[static_cast<std::size_t>(i) * k + j];
    }
    std::uint64_t& at(community_id i, community_id j) {
        return counts[static_cast<std::size_t>(i) * k + j];
    }
};

struct LinkSummary {
    std::uint64_t intra = 0;
    std::uint64_t inter = 0;
    double intra_fraction = 0.0;
};

struct FragmentationRow {
    std::string label;
    std::uint64_t total = 0;        // nodes carrying the label
    std::uint64_t n_clusters = 0;   // clusters containing the label
    community_id dominant_cluster = 0;
    double concentration = 0.0;     // fraction in the dominant cluster
};

struct PurityRow {
    community_id cluster = 0;
    std::uint64_t size = 0;
    std::string dominant_label;
    double purity = 0.0;
};

// Cluster sizes sorted descending, ties by ascending cluster id.
inline std::vector<std::pair<community_id, std::uint64_t>> cluster_sizes(const Partition& p) {
    auto sizes = p.community_sizes();
    std::vector<std::pair<community_id, std::uint64_t>> out;
    out.reserve(p.k);
    for (community_id c = 0; c < p.k; ++c) out.emplace_back(c, sizes[c]);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

inline LinkMatrix link_matrix(const Graph& g, const Partition& p) {
    if (p.n() != g.n()) {
        throw input_error("link_matrix: partition covers " + std::to_string(p.n()) +
                          " nodes but graph has " + std::to_string(g.n()));
    }
    if (p.k > 20000) {
        throw input_error("link_matrix: " + std::to_string(p.k) +
                          " clusters would need an oversized dense matrix");
    }
    LinkMatrix lm;
    lm.k = p.k;
    std::size_t cells = static_cast<std::size_t>(p.k) * p.k;

    // per-chunk integer tallies merge identically regardless of chunking
    std::size_t max_chunks = static_cast<std::size_t>(runtime::thread_cap());
    bool parallel = p.k <= 1024 && max_chunks > 1;
    if (parallel) {
        std::vector<std::vector<std::uint64_t>> partial(max_chunks,
                                                        std::vector<std::uint64_t>(cells, 0));
        runtime::for_each_chunk(g.n(), [&](std::size_t chunk, std::size_t begin, std::size_t end) {
            auto& acc = partial[chunk];
            for (std::size_t u = begin; u < end; ++u) {
                community_id cu = p.assignment[u];
                for (node_id v : g.neighbors(static_cast<node_id>(u))) {
                    if (v <= u) continue;
                    community_id cv = p.assignment[v];
                    ++acc[static_cast<std::size_t>(std::min(cu, cv)) * p.k + std::max(cu, cv)];
                }
            }
        });
        lm.counts.assign(cells, 0);
        for (const auto& acc : partial) {
            for (std::size_t i = 0; i < cells; ++i) lm.counts[i] += acc[i];
        }
    } else {
        lm.counts.assign(cells, 0);
        for (node_id u = 0; u < g.n(); ++u) {
            community_id cu = p.assignment[u];
            for (node_id v : g.neighbors(u)) {
                if (v <= u) continue;
                community_id cv = p.assignment[v];
                ++lm.at(std::min(cu, cv), std::max(cu, cv));
            }
        }
    }
    // mirror the upper triangle
    for (community_id i = 0; i < lm.k; ++i) {
        for (community_id j = i + 1; j < lm.k; ++j) lm.at(j, i) = lm.at(i, j);
    }
    return lm;
}

inline LinkSummary link_summary(const LinkMatrix& lm) {
    if (lm.k == 0) throw input_error("link_summary: empty link matrix");
    LinkSummary s;
    std::uint64_t total = 0;
    for (community_id i = 0; i < lm.k; ++i) {
        s.intra += lm.at(i, i);
        for (community_id j = i; j < lm.k; ++j) total += lm.at(i, j);
    }
    s.inter = total - s.intra;
    s.intra_fraction = total == 0 ? 1.0 : static_cast<double>(s.intra) / static_cast<double>(total);
    return s;
}

// Symmetric edge census over label pairs; unlabeled nodes are grouped under
// the reserved label so totals stay exact.
struct LabelLinkCensus {
    std::vector<std::string> labels;
    std::vector<std::uint64_t> counts; // row-major |labels|^2

    std::uint64_t at(std::size_t i, std::size_t j) const { return counts[i * labels.size() + j]; }
    std::uint64_t& at(std::size_t i, std::size_t j) { return counts[i * labels.size() + j]; }

    std::uint64_t internal() const {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) s += at(i, i);
        return s;
    }
    std::uint64_t external() const {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            for (std::size_t j = i + 1; j < labels.size(); ++j) s += at(i, j);
        }
        return s;
    }
};

namespace detail {

// Label index per node with unlabeled nodes appended as an extra trailing
// label when present.
inline std::pair<std::vector<std::uint32_t>, std::vector<std::string>>
effective_labels(const LabelMap& labels) {
    std::vector<std::string> names = labels.universe();
    bool any_unlabeled = labels.n_labeled() < labels.n();
    std::uint32_t unlabeled_index = static_cast<std::uint32_t>(names.size());
    if (any_unlabeled) names.push_back(unlabeled_label);

    std::vector<std::uint32_t> index(labels.n());
    for (node_id u = 0; u < labels.n(); ++u) {
        index[u] = labels.labeled(u) ? static_cast<std::uint32_t>(labels.label_index(u))
                                     : unlabeled_index;
    }
    return {std::move(index), std::move(names)};
}

} // namespace detail

inline LabelLinkCensus label_link_census(const Graph& g, const LabelMap& labels) {
    if (labels.n() != g.n()) {
        throw input_error("label_link_census: label map does not cover the graph");
    }
    auto [index, names] = detail::effective_labels(labels);
    LabelLinkCensus census;
    census.labels = std::move(names);
    census.counts.assign(census.labels.size() * census.labels.size(), 0);
    for (node_id u = 0; u < g.n(); ++u) {
        for (node_id v : g.neighbors(u)) {
            if (v <= u) continue;
            std::size_t a = std::min(index[u], index[v]);
            std::size_t b = std::max(index[u], index[v]);
            ++census.at(a, b);
            if (a != b) ++census.at(b, a);
        }
    }
    return census;
}

namespace detail {

// node x (cluster, label) contingency counts shared by the fragmentation and
// purity metrics.
inline std::vector<std::uint64_t> contingency(const Partition& p,
                                              const std::vector<std::uint32_t>& label_index,
                                              std::size_t n_labels) {
    std::vector<std::uint64_t> table(static_cast<std::size_t>(p.k) * n_labels, 0);
    for (node_id u = 0; u < p.n(); ++u) {
        table[static_cast<std::size_t>(p.assignment[u]) * n_labels + label_index[u]] += 1;
    }
    return table;
}

} // namespace detail

// Per label: how many clusters contain it and how concentrated it is in its
// dominant cluster (ties to the lowest cluster id).
inline std::vector<FragmentationRow> label_fragmentation(const Partition& p,
                                                         const LabelMap& labels) {
    if (labels.n() != p.n()) {
        throw input_error("label_fragmentation: label map does not cover the partition");
    }
    if (labels.universe().empty() && labels.n() == 0) {
        throw input_error("label_fragmentation: empty label map");
    }
    auto [index, names] = detail::effective_labels(labels);
    auto table = detail::contingency(p, index, names.size());

    std::vector<FragmentationRow> rows;
    for (std::size_t l = 0; l < names.size(); ++l) {
        FragmentationRow row;
        row.label = names[l];
        community_id dominant = 0;
        std::uint64_t dominant_count = 0;
        for (community_id c = 0; c < p.k; ++c) {
            std::uint64_t count = table[static_cast<std::size_t>(c) * names.size() + l];
            if (count == 0) continue;
            row.total += count;
            ++row.n_clusters;
            if (count > dominant_count) {
                dominant_count = count;
                dominant = c;
            }
        }
        if (row.total == 0) continue; // label absent from this graph
        row.dominant_cluster = dominant;
        row.concentration = static_cast<double>(dominant_count) / static_cast<double>(row.total);
        rows.push_back(std::move(row));
    }
    return rows;
}

// Per cluster: its dominant label (ties to the lexicographically smallest)
// and the fraction of members carrying it.
inline std::vector<PurityRow> cluster_purity(const Partition& p, const LabelMap& labels) {
    if (labels.n() != p.n()) {
        throw input_error("cluster_purity: label map does not cover the partition");
    }
    auto [index, names] = detail::effective_labels(labels);
    auto table = detail::contingency(p, index, names.size());

    std::vector<PurityRow> rows;
    rows.reserve(p.k);
    for (community_id c = 0; c < p.k; ++c) {
        PurityRow row;
        row.cluster = c;
        std::size_t dominant = 0;
        std::uint64_t dominant_count = 0;
        for (std::size_t l = 0; l < names.size(); ++l) {
            std::uint64_t count = table[static_cast<std::size_t>(c) * names.size() + l];
            row.size += count;
            if (count > dominant_count) {
                dominant_count = count;
                dominant = l;
            }
        }
        row.dominant_label = names[dominant];
        row.purity = row.size == 0
                         ? 0.0
                         : static_cast<double>(dominant_count) / static_cast<double>(row.size);
        rows.push_back(std::move(row));
    }
    return rows;
}

// Outcome of the small-cluster merge heuristic. Cluster ids in the ledger
// refer to the input partition.
struct MergeResult {
    Partition partition;
    std::vector<std::pair<community_id, community_id>> merges; // small -> target
    std::vector<community_id> unmerged; // small clusters without a strict-majority target
};

// Merges every cluster smaller than min_size into the cluster receiving the
// strict majority of its external edges, provided that receiver is itself of
// size >= min_size (or has absorbed earlier merges into such a cluster).
// Small clusters are processed in ascending (size, id) order; ties or zero
// external edges leave a cluster unmerged.
inline MergeResult merge_small_clusters(const Graph& g, const Partition& p,
                                        std::uint64_t min_size) {
    if (p.n() != g.n()) {
        throw input_error("merge_small_clusters: partition does not cover the graph");
    }
    auto sizes = p.community_sizes();
    std::vector<community_id> representative(p.k);
    for (community_id c = 0; c < p.k; ++c) representative[c] = c;
    auto find = [&](community_id c) {
        while (representative[c] != c) {
            representative[c] = representative[representative[c]];
            c = representative[c];
        }
        return c;
    };

    std::vector<community_id> small;
    for (community_id c = 0; c < p.k; ++c) {
        if (sizes[c] < min_size) small.push_back(c);
    }
    std::sort(small.begin(), small.end(), [&](community_id a, community_id b) {
        if (sizes[a] != sizes[b]) return sizes[a] < sizes[b];
        return a < b;
    });

    std::vector<std::vector<node_id>> members(p.k);
    for (node_id u = 0; u < g.n(); ++u) members[p.assignment[u]].push_back(u);

    MergeResult result;
    std::vector<std::uint64_t> tally(p.k, 0);
    std::vector<community_id> tallied;
    for (community_id s : small) {
        std::uint64_t total_external = 0;
        for (node_id u : members[s]) {
            for (node_id v : g.neighbors(u)) {
                if (p.assignment[v] == s) continue;
                community_id rep = find(p.assignment[v]);
                if (tally[rep] == 0) tallied.push_back(rep);
                ++tally[rep];
                ++total_external;
            }
        }
        community_id best = invalid_community;
        std::uint64_t best_count = 0;
        for (community_id rep : tallied) {
            if (tally[rep] > best_count || (tally[rep] == best_count && rep < best)) {
                best = rep;
                best_count = tally[rep];
            }
        }
        bool merged = total_external > 0 && best != invalid_community &&
                      2 * best_count > total_external && sizes[best] >= min_size;
        if (merged) {
            representative[s] = best;
            sizes[best] += sizes[s];
            result.merges.emplace_back(s, best);
        } else {
            result.unmerged.push_back(s);
        }
        for (community_id rep : tallied) tally[rep] = 0;
        tallied.clear();
    }

    std::vector<community_id> raw(g.n());
    for (node_id u = 0; u < g.n(); ++u) raw[u] = find(p.assignment[u]);
    result.partition = Partition::normalized(raw);
    return result;
}

// ---------------------------------------------------------------------------
// Report bundle and CSV writers (the plot-ready equivalents of the size
// distribution, link heatmap, fragmentation and purity tables).

struct ClusterReport {
    std::vector<std::pair<community_id, std::uint64_t>> sizes;
    LinkMatrix links;
    LinkSummary summary;
    std::vector<FragmentationRow> fragmentation; // empty without labels
    std::vector<PurityRow> purity;               // empty without labels
};

inline ClusterReport build_report(const Graph& g, const Partition& p,
                                  const LabelMap* labels = nullptr) {
    ClusterReport report;
    report.sizes = cluster_sizes(p);
    report.links = link_matrix(g, p);
    report.summary = link_summary(report.links);
    if (labels) {
        report.fragmentation = label_fragmentation(p, *labels);
        report.purity = cluster_purity(p, *labels);
    }
    return report;
}

namespace detail {

// fractions are reported to 4 significant digits
inline std::string format_fraction(double f) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", f);
    return buf;
}

} // namespace detail

inline void write_sizes_csv(const ClusterReport& report, std::ostream& out) {
    out << "cluster_id,size\n";
    for (const auto& [cluster, size] : report.sizes) out << cluster << ',' << size << '\n';
}

inline void write_link_matrix_csv(const ClusterReport& report, std::ostream& out) {
    const LinkMatrix& lm = report.links;
    for (community_id i = 0; i < lm.k; ++i) {
        for (community_id j = 0; j < lm.k; ++j) {
            if (j > 0) out << ',';
            out << lm.at(i, j);
        }
        out << '\n';
    }
}

inline void write_summary_txt(const ClusterReport& report, std::ostream& out) {
    out << "intra=" << report.summary.intra << '\n'
        << "inter=" << report.summary.inter << '\n'
        << "intra_fraction=" << detail::format_fraction(report.summary.intra_fraction) << '\n';
}

inline void write_fragmentation_csv(const ClusterReport& report, std::ostream& out) {
    out << "label,total,n_clusters,dominant_cluster,concentration\n";
    for (const auto& row : report.fragmentation) {
        out << row.label << ',' << row.total << ',' << row.n_clusters << ','
            << row.dominant_cluster << ',' << detail::format_fraction(row.concentration) << '\n';
    }
}

inline void write_purity_csv(const ClusterReport& report, std::ostream& out) {
    out << "cluster_id,size,dominant_label,purity\n";
    for (const auto& row : report.purity) {
        out << row.cluster << ',' << row.size << ',' << row.dominant_label << ','
            << detail::format_fraction(row.purity) << '\n';
    }
}

} // namespace citenet
