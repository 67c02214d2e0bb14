#include "citepop/snapshot.hpp"

#include <algorithm>

#include "citepop/errors.hpp"

namespace citepop {

GraphSnapshot make_snapshot(const CitationGraph& graph, MonthStamp t, bool filter_uncited) {
    const std::size_t parent_n = graph.node_count();

    std::vector<char> included(parent_n, 0);
    std::size_t included_count = 0;
    for (NodeIndex v = 0; v < parent_n; ++v) {
        if (graph.publication_month(v) <= t) {
            included[v] = 1;
            ++included_count;
        }
    }
    if (included_count == 0) {
        throw EmptySnapshotError("no papers published on or before " + t.to_string());
    }

    if (filter_uncited) {
        // Single pass over the membership computed above: a paper stays if
        // some other included paper cites it. Papers left uncited only
        // because this pass removed their citers are not re-examined.
        std::vector<char> keep(parent_n, 0);
        std::size_t kept = 0;
        for (NodeIndex v = 0; v < parent_n; ++v) {
            if (!included[v]) continue;
            for (const NodeIndex u : graph.citers(v)) {
                if (included[u]) {
                    keep[v] = 1;
                    ++kept;
                    break;
                }
            }
        }
        included.swap(keep);
        included_count = kept;
        if (included_count == 0) {
            throw EmptySnapshotError("uncited-paper filtering left no papers at " +
                                     t.to_string());
        }
    }

    GraphSnapshot s;
    s.parent_ = &graph;
    s.t_ = t;
    s.filtered_ = filter_uncited;
    s.to_parent_.reserve(included_count);
    s.from_parent_.assign(parent_n, GraphSnapshot::kNotIncluded);
    for (NodeIndex v = 0; v < parent_n; ++v) {
        if (!included[v]) continue;
        s.from_parent_[v] = static_cast<NodeIndex>(s.to_parent_.size());
        s.to_parent_.push_back(v);
    }

    const std::size_t n = s.to_parent_.size();
    s.age_.resize(n);
    for (NodeIndex v = 0; v < n; ++v) {
        s.age_[v] = t - graph.publication_month(s.to_parent_[v]);
    }

    s.forward_offsets_.assign(n + 1, 0);
    s.reverse_offsets_.assign(n + 1, 0);
    std::size_t edge_total = 0;
    for (NodeIndex v = 0; v < n; ++v) {
        for (const NodeIndex p : graph.references(s.to_parent_[v])) {
            if (s.from_parent_[p] == GraphSnapshot::kNotIncluded) continue;
            ++s.forward_offsets_[v + 1];
            ++s.reverse_offsets_[s.from_parent_[p] + 1];
            ++edge_total;
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        s.forward_offsets_[v + 1] += s.forward_offsets_[v];
        s.reverse_offsets_[v + 1] += s.reverse_offsets_[v];
    }
    s.forward_targets_.resize(edge_total);
    s.reverse_targets_.resize(edge_total);
    std::vector<std::uint64_t> fcur(s.forward_offsets_.begin(), s.forward_offsets_.end() - 1);
    std::vector<std::uint64_t> rcur(s.reverse_offsets_.begin(), s.reverse_offsets_.end() - 1);
    for (NodeIndex v = 0; v < n; ++v) {
        for (const NodeIndex p : graph.references(s.to_parent_[v])) {
            const NodeIndex w = s.from_parent_[p];
            if (w == GraphSnapshot::kNotIncluded) continue;
            s.forward_targets_[fcur[v]++] = w;
            s.reverse_targets_[rcur[w]++] = v;
        }
    }
    // Parent adjacency is sorted by parent index; the dense re-indexing is
    // monotone, so forward runs stay sorted. Reverse runs are filled in
    // ascending citing order, so they are sorted as well.
    return s;
}

} // namespace citepop
