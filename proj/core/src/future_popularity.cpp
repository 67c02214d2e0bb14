#include "citepop/future_popularity.hpp"

#include <stdexcept>

#include "citepop/errors.hpp"

namespace citepop {

FuturePopularity future_popularity(const GraphSnapshot& snapshot, int window_months) {
    if (window_months <= 0) {
        throw std::invalid_argument("future window must be positive");
    }
    const CitationGraph& parent = snapshot.parent();
    const MonthStamp t = snapshot.testing_time();
    if (t.value() + window_months > parent.max_publication_month().value()) {
        throw DataError("future window (" + t.to_string() + " + " +
                        std::to_string(window_months) +
                        " months) extends past the last publication at " +
                        parent.max_publication_month().to_string());
    }
    const MonthStamp end = t.plus_months(window_months);

    FuturePopularity f;
    f.testing_time = t;
    f.window_months = window_months;
    f.values.assign(snapshot.node_count(), 0);
    for (NodeIndex v = 0; v < snapshot.node_count(); ++v) {
        for (const NodeIndex u : parent.citers(snapshot.parent_index(v))) {
            const MonthStamp pub = parent.publication_month(u);
            if (pub > t && pub <= end) ++f.values[v];
        }
    }
    return f;
}

std::vector<double> to_double_vector(const FuturePopularity& f) {
    return std::vector<double>(f.values.begin(), f.values.end());
}

} // namespace citepop
