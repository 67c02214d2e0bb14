#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "citepop/graph.hpp"
#include "citepop/month.hpp"

namespace citepop {

// Training view of the graph at testing time t: papers published on or
// before t, edges restricted to included endpoints, nodes re-indexed
// densely in parent order. With `filter_uncited` the zero-in-degree papers
// are removed in a single pass; papers whose in-degree drops to zero only
// because of that pass stay in.
//
// The parent graph must outlive the snapshot.
class GraphSnapshot {
public:
    static constexpr NodeIndex kNotIncluded = std::numeric_limits<NodeIndex>::max();

    const CitationGraph& parent() const { return *parent_; }
    MonthStamp testing_time() const { return t_; }
    bool uncited_filtered() const { return filtered_; }

    std::size_t node_count() const { return to_parent_.size(); }
    std::size_t edge_count() const { return forward_targets_.size(); }

    int age_months(NodeIndex node) const { return age_[node]; }
    std::span<const int> ages() const { return age_; }

    std::span<const NodeIndex> references(NodeIndex node) const {
        return {forward_targets_.data() + forward_offsets_[node],
                forward_targets_.data() + forward_offsets_[node + 1]};
    }
    std::span<const NodeIndex> citers(NodeIndex node) const {
        return {reverse_targets_.data() + reverse_offsets_[node],
                reverse_targets_.data() + reverse_offsets_[node + 1]};
    }

    std::size_t out_degree(NodeIndex node) const { return references(node).size(); }
    std::size_t in_degree(NodeIndex node) const { return citers(node).size(); }

    NodeIndex parent_index(NodeIndex node) const { return to_parent_[node]; }
    // kNotIncluded when the parent node is outside the snapshot.
    NodeIndex snapshot_index(NodeIndex parent_node) const { return from_parent_[parent_node]; }

    const std::string& external_id(NodeIndex node) const {
        return parent_->external_id(to_parent_[node]);
    }
    // Empty when the id is unknown or its paper fell outside the snapshot.
    std::optional<NodeIndex> find(std::string_view external_id) const {
        const std::optional<NodeIndex> parent_node = parent_->find(external_id);
        if (!parent_node || from_parent_[*parent_node] == kNotIncluded) return std::nullopt;
        return from_parent_[*parent_node];
    }
    MonthStamp publication_month(NodeIndex node) const {
        return parent_->publication_month(to_parent_[node]);
    }

private:
    GraphSnapshot() = default;

    const CitationGraph* parent_ = nullptr;
    MonthStamp t_;
    bool filtered_ = false;
    std::vector<NodeIndex> to_parent_;
    std::vector<NodeIndex> from_parent_;
    std::vector<int> age_;
    std::vector<std::uint64_t> forward_offsets_;
    std::vector<NodeIndex> forward_targets_;
    std::vector<std::uint64_t> reverse_offsets_;
    std::vector<NodeIndex> reverse_targets_;

    friend GraphSnapshot make_snapshot(const CitationGraph&, MonthStamp, bool);
};

// Throws EmptySnapshotError when no paper qualifies (t before every
// publication, or filtering removed everything).
GraphSnapshot make_snapshot(const CitationGraph& graph, MonthStamp t, bool filter_uncited);

} // namespace citepop
