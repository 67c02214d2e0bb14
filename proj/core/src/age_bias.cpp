#include "citepop/age_bias.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "citepop/score.hpp"

namespace citepop {

namespace {

std::size_t top_count(const GraphSnapshot& snapshot, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("top fraction must be in (0,1]");
    }
    return static_cast<std::size_t>(fraction * static_cast<double>(snapshot.node_count()));
}

} // namespace

std::vector<DeltaREntry> delta_r(const GraphSnapshot& snapshot, std::span<const double> scores,
                                 const FuturePopularity& f, double top_fraction) {
    if (scores.size() != snapshot.node_count() || f.values.size() != snapshot.node_count()) {
        throw std::invalid_argument("score or ground-truth size does not match snapshot");
    }
    const std::size_t n = top_count(snapshot, top_fraction);
    std::vector<DeltaREntry> result;
    if (n == 0) return result;

    const auto predicted_rank = ranking_positions<double>(scores, snapshot);
    const auto real_top = top_set<std::uint32_t>(f.values, snapshot, n);
    result.reserve(real_top.size());
    for (std::size_t pos = 0; pos < real_top.size(); ++pos) {
        const NodeIndex v = real_top[pos];
        const double real_rank = static_cast<double>(pos + 1);
        result.push_back(
            {v, std::log(static_cast<double>(predicted_rank[v])) - std::log(real_rank)});
    }
    return result;
}

AgeBinStats detection_rate_by_age(const GraphSnapshot& snapshot, std::span<const double> scores,
                                  const FuturePopularity& f, double top_fraction,
                                  int bin_width_months) {
    if (bin_width_months < 1) throw std::invalid_argument("bin width must be positive");
    const std::size_t n = top_count(snapshot, top_fraction);

    AgeBinStats stats;
    stats.bin_width_months = bin_width_months;
    stats.n_top = n;

    int max_age = 0;
    for (const int age : snapshot.ages()) max_age = std::max(max_age, age);
    const std::size_t n_bins = static_cast<std::size_t>(max_age / bin_width_months) + 1;
    stats.bins.resize(n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
        stats.bins[b].age_lo_months = static_cast<int>(b) * bin_width_months;
        stats.bins[b].age_hi_months = static_cast<int>(b + 1) * bin_width_months;
    }
    if (n == 0) return stats;

    const auto predicted = top_set<double>(scores, snapshot, n);
    std::vector<char> in_predicted(snapshot.node_count(), 0);
    for (const NodeIndex v : predicted) in_predicted[v] = 1;

    std::vector<double> delta_sum(n_bins, 0.0);
    for (const auto& entry : delta_r(snapshot, scores, f, top_fraction)) {
        const std::size_t b =
            static_cast<std::size_t>(snapshot.age_months(entry.node) / bin_width_months);
        AgeBin& bin = stats.bins[b];
        ++bin.real_top_count;
        bin.detected_count += in_predicted[entry.node];
        delta_sum[b] += entry.value;
    }
    for (std::size_t b = 0; b < n_bins; ++b) {
        AgeBin& bin = stats.bins[b];
        if (bin.real_top_count == 0) continue;
        bin.rate_defined = true;
        bin.detection_rate =
            static_cast<double>(bin.detected_count) / static_cast<double>(bin.real_top_count);
        bin.mean_delta_r = delta_sum[b] / static_cast<double>(bin.real_top_count);
    }
    return stats;
}

std::vector<AgeCdfPoint> cumulative_age_distribution(std::span<const NodeIndex> papers,
                                                     const GraphSnapshot& snapshot,
                                                     int bin_width_months) {
    if (bin_width_months < 1) throw std::invalid_argument("bin width must be positive");
    if (papers.empty()) throw std::invalid_argument("empty paper set");

    std::vector<int> ages;
    ages.reserve(papers.size());
    for (const NodeIndex v : papers) {
        if (v >= snapshot.node_count()) throw std::invalid_argument("node index out of range");
        ages.push_back(snapshot.age_months(v));
    }
    std::sort(ages.begin(), ages.end());

    const double total = static_cast<double>(ages.size());
    std::vector<AgeCdfPoint> curve;
    for (int x = 0;; x += bin_width_months) {
        const auto it = std::lower_bound(ages.begin(), ages.end(), x);
        const double frac = static_cast<double>(ages.end() - it) / total;
        curve.push_back({x, frac});
        if (frac == 0.0) break;
    }
    return curve;
}

} // namespace citepop
