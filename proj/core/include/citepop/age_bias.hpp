#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "citepop/future_popularity.hpp"
#include "citepop/snapshot.hpp"

namespace citepop {

struct DeltaREntry {
    NodeIndex node = 0;
    double value = 0.0; // ln(predicted rank) - ln(real rank); positive = underestimated
};

// Rank difference for every paper in the real top-fraction set, in real-rank
// order. Ranks come from the total order on scores and on ground truth.
std::vector<DeltaREntry> delta_r(const GraphSnapshot& snapshot, std::span<const double> scores,
                                 const FuturePopularity& f, double top_fraction);

struct AgeBin {
    int age_lo_months = 0; // inclusive
    int age_hi_months = 0; // exclusive
    std::size_t real_top_count = 0;
    std::size_t detected_count = 0;
    bool rate_defined = false; // false for bins holding no real-top paper
    double detection_rate = 0.0;
    double mean_delta_r = 0.0; // defined iff real_top_count > 0
};

struct AgeBinStats {
    int bin_width_months = 60;
    std::size_t n_top = 0;
    std::vector<AgeBin> bins; // partition of [0, max snapshot age]
};

// Bins the real top-fraction papers by age and reports, per bin, how many
// the prediction also places in its top set, plus the mean rank difference.
AgeBinStats detection_rate_by_age(const GraphSnapshot& snapshot, std::span<const double> scores,
                                  const FuturePopularity& f, double top_fraction,
                                  int bin_width_months = 60);

struct AgeCdfPoint {
    int age_months = 0;
    double fraction = 0.0; // share of the set with age >= age_months
};

// Survival-style curve P(age >= x) sampled at bin edges; monotone
// nonincreasing, starts at 1 and ends at 0.
std::vector<AgeCdfPoint> cumulative_age_distribution(std::span<const NodeIndex> papers,
                                                     const GraphSnapshot& snapshot,
                                                     int bin_width_months = 12);

} // namespace citepop
