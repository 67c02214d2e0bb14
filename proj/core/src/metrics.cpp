#include "citepop/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "citepop/score.hpp"

namespace citepop {

CorrelationResult pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("correlation inputs differ in size");
    if (a.empty()) throw std::invalid_argument("correlation inputs are empty");
    const double n = static_cast<double>(a.size());
    const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double cov = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) return {0.0, true};
    return {cov / std::sqrt(var_a * var_b), false};
}

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        // Positions i..j (0-based) share the mean of 1-based ranks i+1..j+1.
        const double shared = static_cast<double>(i + j) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

CorrelationResult spearman(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("correlation inputs differ in size");
    if (a.empty()) throw std::invalid_argument("correlation inputs are empty");
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    return pearson(ra, rb);
}

PrecisionResult precision_at_top(const GraphSnapshot& snapshot, std::span<const double> scores,
                                 const FuturePopularity& f, double fraction) {
    if (scores.size() != snapshot.node_count() || f.values.size() != snapshot.node_count()) {
        throw std::invalid_argument("score or ground-truth size does not match snapshot");
    }
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("top fraction must be in (0,1]");
    }
    const std::size_t n_top =
        static_cast<std::size_t>(fraction * static_cast<double>(snapshot.node_count()));
    if (n_top == 0) {
        throw std::invalid_argument(
            "top fraction selects no papers; raise the fraction or use a larger corpus");
    }
    PrecisionResult result;
    result.n_top = n_top;
    const auto predicted = top_set<double>(scores, snapshot, n_top);
    const auto real = top_set<std::uint32_t>(f.values, snapshot, n_top);
    std::vector<char> in_real(snapshot.node_count(), 0);
    for (const NodeIndex v : real) in_real[v] = 1;
    std::size_t hits = 0;
    for (const NodeIndex v : predicted) hits += in_real[v];
    result.precision = static_cast<double>(hits) / static_cast<double>(n_top);
    return result;
}

} // namespace citepop
