#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "citepop/io.hpp"
#include "citepop/snapshot.hpp"

namespace citepop {

// Per-paper prediction scores aligned to a snapshot's node indexing.
struct ScoreVector {
    std::vector<double> values;
    std::string method_tag;
    std::string params_tag;
    bool converged = true;
};

// All rank comparisons use one total order: score descending, external id
// ascending. The id tie-break makes every ordering deterministic.
template <typename T>
std::vector<NodeIndex> ranking_order(std::span<const T> values, const GraphSnapshot& snapshot) {
    std::vector<NodeIndex> order(values.size());
    std::iota(order.begin(), order.end(), NodeIndex{0});
    std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return snapshot.external_id(a) < snapshot.external_id(b);
    });
    return order;
}

// 1-based rank per node under the total order.
template <typename T>
std::vector<std::uint32_t> ranking_positions(std::span<const T> values,
                                             const GraphSnapshot& snapshot) {
    const auto order = ranking_order(values, snapshot);
    std::vector<std::uint32_t> rank(order.size());
    for (std::uint32_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos + 1;
    return rank;
}

// First n nodes of the total order.
template <typename T>
std::vector<NodeIndex> top_set(std::span<const T> values, const GraphSnapshot& snapshot,
                               std::size_t n) {
    auto order = ranking_order(values, snapshot);
    order.resize(std::min(n, order.size()));
    return order;
}

// `external_id,score,rank` sorted by the total order; scores printed with
// 17 significant digits.
void write_score_csv(std::ostream& out, const GraphSnapshot& snapshot, const ScoreVector& scores,
                     const RunMetadata& meta);

} // namespace citepop
