#pragma once

#include <cmath>
#include <span>

#include "citepop/score.hpp"
#include "citepop/snapshot.hpp"

namespace citepop {

// Exponential age decay shared by the diffusion seed and the age-based
// transfer weights.
inline double age_weight(int age_months, double tau) {
    return std::exp(-static_cast<double>(age_months) / tau);
}

struct PageRankParams {
    double damping = 0.5; // c, in (0,1); 0.5 is the customary value on citation graphs
    double tolerance = 1e-12; // L1 change between iterations
    int max_iterations = 1000;
};

// Random-walk scores: a paper's score splits evenly over its references,
// dangling papers spread theirs uniformly over all N nodes, and every node
// receives the (1-c)/N teleport term. Output sums to 1. Non-convergence at
// max_iterations is reported through ScoreVector::converged.
ScoreVector pagerank(const GraphSnapshot& snapshot, const PageRankParams& params = {});

// rho_i = exp(-age_i / tau), deliberately unnormalized: every consumer is
// invariant under positive scaling of the seed.
ScoreVector seed_vector(const GraphSnapshot& snapshot, double tau);

struct CiteRankParams {
    double tau;  // seed decay timescale, months
    double alpha; // follow probability per step, in [0,1)
    double tolerance = 1e-12; // stop when the new term's L1 mass < tolerance * accumulated mass
    int max_terms = 100;
};

// S = sum_k alpha^k W^k rho with w_ij = 1/k_out(j) for j citing i.
// Papers without references absorb score (their transfer column is zero).
ScoreVector citerank(const GraphSnapshot& snapshot, const CiteRankParams& params);
ScoreVector citerank_with_seed(const GraphSnapshot& snapshot, std::span<const double> seed,
                               const CiteRankParams& params);

struct AgeDiffusionParams {
    double tau;  // decay timescale for both the seed and the transfer weights, months
    double alpha; // first-step follow probability, in [0,1)
    double step_decay_base = 10.0; // follow probability at step i is alpha / base^(i-1)
    double tolerance = 1e-12;
    int max_terms = 30;
};

// Age-based diffusion: a citing paper passes its full score (no out-degree
// division) to every reference, damped by exp(-age/tau) of the citing paper
// and by a per-step follow probability that shrinks by `step_decay_base`
// each step. The cumulative step coefficient alpha^k / base^(k(k-1)/2)
// decays super-exponentially, so the series converges although the
// transfer matrix is not column-stochastic.
ScoreVector age_diffusion(const GraphSnapshot& snapshot, const AgeDiffusionParams& params);
ScoreVector age_diffusion_with_seed(const GraphSnapshot& snapshot, std::span<const double> seed,
                                    const AgeDiffusionParams& params);

struct RescaleParams {
    int window_size = 1000; // papers per averaging window; >= 2 and even
};

// z-score of each paper's PageRank within a window of similarly-dated
// papers. Papers are ordered newest first (ties by external id); the window
// around position i is [i - w/2, i + w/2] clamped to valid positions, so
// boundary windows shrink rather than shift. Zero-deviation windows give 0.
ScoreVector rescaled_pagerank(const GraphSnapshot& snapshot, const ScoreVector& pagerank_scores,
                              const RescaleParams& params = {});

// Window bounds used by rescaled_pagerank, exposed for verification.
std::pair<std::size_t, std::size_t> rescale_window(std::size_t position, std::size_t count,
                                                   int window_size);

} // namespace citepop
