#include "citepop/graph.hpp"

#include <algorithm>
#include <unordered_map>

#include "citepop/errors.hpp"

namespace citepop {

std::optional<NodeIndex> CitationGraph::find(std::string_view external_id) const {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), external_id);
    if (it == ids_.end() || *it != external_id) return std::nullopt;
    return static_cast<NodeIndex>(it - ids_.begin());
}

namespace {

// offsets[v+1] holds the degree on entry; turned into prefix sums, then the
// target fill pass restores them.
void fill_csr(std::vector<std::uint64_t>& offsets, std::vector<NodeIndex>& targets,
              const std::vector<std::pair<NodeIndex, NodeIndex>>& edges, bool forward) {
    const std::size_t n = offsets.size() - 1;
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
    targets.resize(edges.size());
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [u, v] : edges) {
        if (forward) {
            targets[cursor[u]++] = v;
        } else {
            targets[cursor[v]++] = u;
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
                  targets.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
    }
}

} // namespace

GraphBuild build_graph(std::vector<PaperRecord> records,
                       const std::vector<std::pair<std::string, std::string>>& edges) {
    if (records.empty()) throw DataError("corpus has no papers");

    std::sort(records.begin(), records.end(),
              [](const PaperRecord& a, const PaperRecord& b) {
                  return a.external_id < b.external_id;
              });
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].external_id == records[i - 1].external_id) {
            throw DataError("duplicate paper id: " + records[i].external_id);
        }
    }

    GraphBuild result;
    CitationGraph& g = result.graph;
    const std::size_t n = records.size();
    g.ids_.reserve(n);
    g.pub_month_.reserve(n);
    for (auto& r : records) {
        g.ids_.push_back(std::move(r.external_id));
        g.pub_month_.push_back(r.pub_month);
    }
    g.min_pub_ = *std::min_element(g.pub_month_.begin(), g.pub_month_.end());
    g.max_pub_ = *std::max_element(g.pub_month_.begin(), g.pub_month_.end());

    std::unordered_map<std::string_view, NodeIndex> index;
    index.reserve(n);
    for (NodeIndex i = 0; i < n; ++i) index.emplace(g.ids_[i], i);

    std::vector<std::pair<NodeIndex, NodeIndex>> resolved;
    resolved.reserve(edges.size());
    for (const auto& [citing, cited] : edges) {
        const auto u = index.find(citing);
        if (u == index.end()) throw DataError("edge references unknown paper: " + citing);
        const auto v = index.find(cited);
        if (v == index.end()) throw DataError("edge references unknown paper: " + cited);
        if (u->second == v->second) {
            ++result.dropped_self_loops;
            continue;
        }
        resolved.emplace_back(u->second, v->second);
    }
    std::sort(resolved.begin(), resolved.end());
    const auto last = std::unique(resolved.begin(), resolved.end());
    result.dropped_duplicate_edges = static_cast<std::size_t>(resolved.end() - last);
    resolved.erase(last, resolved.end());

    g.forward_offsets_.assign(n + 1, 0);
    g.reverse_offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : resolved) {
        ++g.forward_offsets_[u + 1];
        ++g.reverse_offsets_[v + 1];
    }
    fill_csr(g.forward_offsets_, g.forward_targets_, resolved, true);
    fill_csr(g.reverse_offsets_, g.reverse_targets_, resolved, false);
    return result;
}

} // namespace citepop
