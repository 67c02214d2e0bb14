#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citepop/month.hpp"

namespace citepop {

using NodeIndex = std::uint32_t;

struct PaperRecord {
    std::string external_id;
    MonthStamp pub_month;
};

class CitationGraph;
struct GraphBuild;
GraphBuild build_graph(std::vector<PaperRecord> records,
                       const std::vector<std::pair<std::string, std::string>>& edges);

// Immutable citation network in CSR form. An edge i -> j means paper i cites
// paper j; `references` is the forward adjacency, `citers` its exact
// transpose. Node indices are dense and assigned in ascending external-id
// order, so two builds from the same input produce identical arrays.
class CitationGraph {
public:
    std::size_t node_count() const { return ids_.size(); }
    std::size_t edge_count() const { return forward_targets_.size(); }

    MonthStamp publication_month(NodeIndex node) const { return pub_month_[node]; }
    const std::string& external_id(NodeIndex node) const { return ids_[node]; }
    std::optional<NodeIndex> find(std::string_view external_id) const;

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

    MonthStamp min_publication_month() const { return min_pub_; }
    MonthStamp max_publication_month() const { return max_pub_; }

    // Raw arrays, exposed so rebuild determinism can be checked exactly.
    std::span<const std::uint64_t> forward_offsets() const { return forward_offsets_; }
    std::span<const NodeIndex> forward_targets() const { return forward_targets_; }
    std::span<const std::uint64_t> reverse_offsets() const { return reverse_offsets_; }
    std::span<const NodeIndex> reverse_targets() const { return reverse_targets_; }

private:
    CitationGraph() = default;

    std::vector<std::string> ids_;      // sorted ascending
    std::vector<MonthStamp> pub_month_; // aligned to ids_
    std::vector<std::uint64_t> forward_offsets_;
    std::vector<NodeIndex> forward_targets_;
    std::vector<std::uint64_t> reverse_offsets_;
    std::vector<NodeIndex> reverse_targets_;
    MonthStamp min_pub_;
    MonthStamp max_pub_;

    friend struct GraphBuild;
    friend GraphBuild build_graph(std::vector<PaperRecord>,
                                  const std::vector<std::pair<std::string, std::string>>&);
};

struct GraphBuild {
    CitationGraph graph;
    std::size_t dropped_self_loops = 0;
    std::size_t dropped_duplicate_edges = 0;
};

// Rejects duplicate external ids and edges whose endpoints are unknown.
// Self-loops and duplicate edges are dropped and counted.
GraphBuild build_graph(std::vector<PaperRecord> records,
                       const std::vector<std::pair<std::string, std::string>>& edges);

} // namespace citepop
