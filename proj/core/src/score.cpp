#include "citepop/score.hpp"

#include <ostream>

namespace citepop {

void write_score_csv(std::ostream& out, const GraphSnapshot& snapshot, const ScoreVector& scores,
                     const RunMetadata& meta) {
    write_comment_header(out, meta);
    out << "external_id,score,rank\n";
    const auto order = ranking_order<double>(scores.values, snapshot);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const NodeIndex v = order[pos];
        out << snapshot.external_id(v) << ',' << format_double17(scores.values[v]) << ','
            << (pos + 1) << '\n';
    }
}

} // namespace citepop
