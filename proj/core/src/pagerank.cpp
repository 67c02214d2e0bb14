#include "citepop/rankers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "citepop/io.hpp"

namespace citepop {

ScoreVector pagerank(const GraphSnapshot& snapshot, const PageRankParams& params) {
    if (!(params.damping > 0.0 && params.damping < 1.0)) {
        throw std::invalid_argument("pagerank damping must be in (0,1)");
    }
    if (!(params.tolerance > 0.0)) {
        throw std::invalid_argument("pagerank tolerance must be positive");
    }
    if (params.max_iterations < 1) {
        throw std::invalid_argument("pagerank max_iterations must be at least 1");
    }

    const std::size_t n = snapshot.node_count();
    const double c = params.damping;
    std::vector<double> score(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);

    bool converged = false;
    for (int iter = 0; iter < params.max_iterations; ++iter) {
        double dangling = 0.0;
        for (NodeIndex v = 0; v < n; ++v) {
            if (snapshot.out_degree(v) == 0) dangling += score[v];
        }
        const double base = (1.0 - c + c * dangling) / static_cast<double>(n);
        for (NodeIndex v = 0; v < n; ++v) {
            double in = 0.0;
            for (const NodeIndex u : snapshot.citers(v)) {
                in += score[u] / static_cast<double>(snapshot.out_degree(u));
            }
            next[v] = base + c * in;
        }
        double change = 0.0;
        for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - score[v]);
        score.swap(next);
        if (change < params.tolerance) {
            converged = true;
            break;
        }
    }

    ScoreVector result;
    result.values = std::move(score);
    result.method_tag = "pagerank";
    result.params_tag = "c=" + format_double(c);
    result.converged = converged;
    return result;
}

} // namespace citepop
