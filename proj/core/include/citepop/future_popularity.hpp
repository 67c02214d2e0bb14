#pragma once

#include <cstdint>
#include <vector>

#include "citepop/month.hpp"
#include "citepop/snapshot.hpp"

namespace citepop {

// Ground truth: per-paper citation increase over the future window, aligned
// to the snapshot's node indexing.
struct FuturePopularity {
    std::vector<std::uint32_t> values;
    MonthStamp testing_time;
    int window_months = 0;
};

// Counts citations each snapshot paper receives from papers published in
// (t, t + window]; the citing papers themselves need not be in the
// snapshot. Rejects window <= 0 and windows extending past the corpus.
FuturePopularity future_popularity(const GraphSnapshot& snapshot, int window_months);

std::vector<double> to_double_vector(const FuturePopularity& f);

} // namespace citepop
