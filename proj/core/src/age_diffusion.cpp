#include "citepop/rankers.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "citepop/io.hpp"

namespace citepop {

namespace {

double l1_mass(const std::vector<double>& v) {
    double mass = 0.0;
    for (const double x : v) mass += std::abs(x);
    return mass;
}

} // namespace

ScoreVector age_diffusion_with_seed(const GraphSnapshot& snapshot, std::span<const double> seed,
                                    const AgeDiffusionParams& params) {
    if (!(params.tau > 0.0)) throw std::invalid_argument("tau must be positive");
    if (!(params.alpha >= 0.0 && params.alpha < 1.0)) {
        throw std::invalid_argument("alpha must be in [0,1)");
    }
    if (!(params.step_decay_base > 1.0)) {
        throw std::invalid_argument("step_decay_base must exceed 1");
    }
    if (!(params.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (params.max_terms < 1) throw std::invalid_argument("max_terms must be at least 1");

    const std::size_t n = snapshot.node_count();
    if (seed.size() != n) throw std::invalid_argument("seed size does not match snapshot");

    // Per-paper transfer weight of the citing side; the full (undivided)
    // score flows along every reference.
    std::vector<double> transfer(n);
    for (NodeIndex v = 0; v < n; ++v) {
        transfer[v] = age_weight(snapshot.age_months(v), params.tau);
    }

    std::vector<double> total(seed.begin(), seed.end());
    std::vector<double> term(total);
    std::vector<double> next(n);

    bool converged = false;
    double step_alpha = params.alpha;
    for (int k = 1; k <= params.max_terms; ++k) {
        std::fill(next.begin(), next.end(), 0.0);
        for (NodeIndex u = 0; u < n; ++u) {
            if (term[u] == 0.0) continue;
            const double out = step_alpha * transfer[u] * term[u];
            for (const NodeIndex v : snapshot.references(u)) next[v] += out;
        }
        term.swap(next);
        step_alpha /= params.step_decay_base;
        const double term_mass = l1_mass(term);
        for (std::size_t v = 0; v < n; ++v) total[v] += term[v];
        if (term_mass < params.tolerance * l1_mass(total)) {
            converged = true;
            break;
        }
    }

    ScoreVector result;
    result.values = std::move(total);
    result.method_tag = "age_diffusion";
    result.params_tag = "tau=" + format_double(params.tau) +
                        ",alpha=" + format_double(params.alpha) +
                        ",base=" + format_double(params.step_decay_base);
    result.converged = converged;
    return result;
}

ScoreVector age_diffusion(const GraphSnapshot& snapshot, const AgeDiffusionParams& params) {
    const ScoreVector seed = seed_vector(snapshot, params.tau);
    return age_diffusion_with_seed(snapshot, seed.values, params);
}

} // namespace citepop
