#include "citepop/rankers.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "citepop/io.hpp"

namespace citepop {

ScoreVector seed_vector(const GraphSnapshot& snapshot, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("seed tau must be positive");
    ScoreVector seed;
    seed.values.resize(snapshot.node_count());
    for (NodeIndex v = 0; v < snapshot.node_count(); ++v) {
        seed.values[v] = age_weight(snapshot.age_months(v), tau);
    }
    seed.method_tag = "seed";
    seed.params_tag = "tau=" + format_double(tau);
    return seed;
}

namespace {

void check_series_params(double alpha, double tolerance, int max_terms) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must be in [0,1)");
    }
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (max_terms < 1) throw std::invalid_argument("max_terms must be at least 1");
}

double l1_mass(const std::vector<double>& v) {
    double mass = 0.0;
    for (const double x : v) mass += std::abs(x);
    return mass;
}

} // namespace

ScoreVector citerank_with_seed(const GraphSnapshot& snapshot, std::span<const double> seed,
                               const CiteRankParams& params) {
    check_series_params(params.alpha, params.tolerance, params.max_terms);
    const std::size_t n = snapshot.node_count();
    if (seed.size() != n) throw std::invalid_argument("seed size does not match snapshot");

    std::vector<double> total(seed.begin(), seed.end());
    std::vector<double> term(total);
    std::vector<double> next(n);

    bool converged = false;
    for (int k = 1; k <= params.max_terms; ++k) {
        std::fill(next.begin(), next.end(), 0.0);
        for (NodeIndex u = 0; u < n; ++u) {
            const auto refs = snapshot.references(u);
            if (refs.empty()) continue;
            const double share = params.alpha * term[u] / static_cast<double>(refs.size());
            for (const NodeIndex v : refs) next[v] += share;
        }
        term.swap(next);
        const double term_mass = l1_mass(term);
        for (std::size_t v = 0; v < n; ++v) total[v] += term[v];
        if (term_mass < params.tolerance * l1_mass(total)) {
            converged = true;
            break;
        }
    }

    ScoreVector result;
    result.values = std::move(total);
    result.method_tag = "citerank";
    result.params_tag =
        "tau=" + format_double(params.tau) + ",alpha=" + format_double(params.alpha);
    result.converged = converged;
    return result;
}

ScoreVector citerank(const GraphSnapshot& snapshot, const CiteRankParams& params) {
    const ScoreVector seed = seed_vector(snapshot, params.tau);
    return citerank_with_seed(snapshot, seed.values, params);
}

} // namespace citepop
