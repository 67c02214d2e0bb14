#include "citepop/rankers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "citepop/io.hpp"

namespace citepop {

std::pair<std::size_t, std::size_t> rescale_window(std::size_t position, std::size_t count,
                                                   int window_size) {
    // Inclusive bounds [position - w/2, position + w/2] clamped to the valid
    // range; boundary windows shrink instead of shifting.
    const std::size_t half = static_cast<std::size_t>(window_size) / 2;
    const std::size_t lo = position > half ? position - half : 0;
    const std::size_t hi = std::min(position + half, count - 1);
    return {lo, hi};
}

ScoreVector rescaled_pagerank(const GraphSnapshot& snapshot, const ScoreVector& pagerank_scores,
                              const RescaleParams& params) {
    if (params.window_size < 2 || params.window_size % 2 != 0) {
        throw std::invalid_argument("rescale window_size must be even and at least 2");
    }
    const std::size_t n = snapshot.node_count();
    if (pagerank_scores.values.size() != n) {
        throw std::invalid_argument("score size does not match snapshot");
    }

    // Newest first; same-month papers ordered by external id.
    std::vector<NodeIndex> order(n);
    std::iota(order.begin(), order.end(), NodeIndex{0});
    std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
        if (snapshot.age_months(a) != snapshot.age_months(b)) {
            return snapshot.age_months(a) < snapshot.age_months(b);
        }
        return snapshot.external_id(a) < snapshot.external_id(b);
    });

    // chg[pos + 1] counts order positions q <= pos whose value differs from
    // position q - 1. Integer prefix sums carry no rounding, so a window is
    // constant, and its population sigma exactly zero, iff the count is flat
    // across it. Tied scores are common (every uncited paper shares one
    // PageRank value), which rules out the usual sum/sum-of-squares prefix
    // trick: its cancellation noise turns sigma = 0 windows into garbage
    // ratios. Moments are instead recomputed per window, O(n * window).
    const std::vector<double>& v = pagerank_scores.values;
    std::vector<std::uint64_t> chg(n + 1, 0);
    for (std::size_t pos = 1; pos < n; ++pos) {
        chg[pos + 1] = chg[pos] + (v[order[pos]] != v[order[pos - 1]] ? 1 : 0);
    }

    ScoreVector result;
    result.values.resize(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const auto [lo, hi] = rescale_window(pos, n, params.window_size);
        if (chg[hi + 1] == chg[lo + 1]) {
            result.values[order[pos]] = 0.0;
            continue;
        }
        const double m = static_cast<double>(hi - lo + 1);
        double mean = 0.0;
        for (std::size_t q = lo; q <= hi; ++q) mean += v[order[q]];
        mean /= m;
        double var = 0.0;
        for (std::size_t q = lo; q <= hi; ++q) {
            const double d = v[order[q]] - mean;
            var += d * d;
        }
        var /= m;
        const double sigma = var > 0.0 ? std::sqrt(var) : 0.0;
        result.values[order[pos]] = sigma > 0.0 ? (v[order[pos]] - mean) / sigma : 0.0;
    }
    result.method_tag = "rescaled_pagerank";
    result.params_tag = pagerank_scores.params_tag + ",window=" + std::to_string(params.window_size);
    result.converged = pagerank_scores.converged;
    return result;
}

} // namespace citepop
