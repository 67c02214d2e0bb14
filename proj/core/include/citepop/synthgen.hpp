#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "citepop/graph.hpp"
#include "citepop/month.hpp"

namespace citepop {

struct SynthParams {
    std::size_t n_papers = 5000;
    std::size_t papers_per_month = 25;
    std::size_t refs_per_paper = 10;
    double fitness_log_mean = 0.0;
    double fitness_log_sigma = 1.0;
    double relevance_tau_months = 24.0;
    MonthStamp start_month = MonthStamp::from_ym(1990, 1);
    std::uint64_t seed = 1;
};

struct SynthCorpus {
    std::vector<PaperRecord> records; // arrival order, ids "P0000000"...
    std::vector<std::pair<std::string, std::string>> edges; // (citing, cited)
    std::vector<double> fitness; // parallel to records
};

// Preferential-attachment corpus with fitness and exponential aging. Papers
// arrive in monthly batches and cite strictly earlier months; attachment
// weight is (in_degree + 1) * fitness * exp(-age / tau), drawn without
// replacement, with in-degrees updated as each paper lands.
SynthCorpus generate_corpus(const SynthParams& params);

// Writes papers.csv and edges.csv in the format parse_metadata/parse_edges
// read, plus fitness.json with the hidden fitness values.
void write_corpus(const SynthCorpus& corpus, const SynthParams& params, const std::string& dir);

} // namespace citepop
