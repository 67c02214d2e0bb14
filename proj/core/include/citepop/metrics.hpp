#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "citepop/future_popularity.hpp"
#include "citepop/snapshot.hpp"

namespace citepop {

// Correlations use population (1/N) statistics throughout. Zero-variance
// input is reported as value 0 with the degenerate flag instead of an
// error, so parameter sweeps never abort on pathological cells.
struct CorrelationResult {
    double value = 0.0;
    bool degenerate = false;
};

CorrelationResult pearson(std::span<const double> a, std::span<const double> b);

// Pearson of the two rank vectors; tied values share the average of their
// 1-based positions.
CorrelationResult spearman(std::span<const double> a, std::span<const double> b);

std::vector<double> average_ranks(std::span<const double> values);

struct PrecisionResult {
    double precision = 0.0;
    std::size_t n_top = 0;
};

// n = floor(fraction * N); top-n sets are taken independently from the
// scores and from the ground truth under the total order, and precision is
// their overlap divided by n.
PrecisionResult precision_at_top(const GraphSnapshot& snapshot, std::span<const double> scores,
                                 const FuturePopularity& f, double fraction = 0.01);

} // namespace citepop
