#include "citepop/synthgen.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "citepop/errors.hpp"
#include "citepop/io.hpp"

namespace citepop {

namespace {

void check_params(const SynthParams& p) {
    if (p.n_papers < 1) throw std::invalid_argument("n_papers must be positive");
    if (p.papers_per_month < 1) throw std::invalid_argument("papers_per_month must be positive");
    if (p.n_papers < p.refs_per_paper + 1) {
        throw std::invalid_argument("n_papers must exceed refs_per_paper");
    }
    if (!(p.relevance_tau_months > 0.0)) {
        throw std::invalid_argument("relevance_tau_months must be positive");
    }
    if (!(p.fitness_log_sigma >= 0.0)) {
        throw std::invalid_argument("fitness_log_sigma must be nonnegative");
    }
}

std::string make_id(std::size_t index) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "P%07zu", index);
    return std::string(buf);
}

} // namespace

SynthCorpus generate_corpus(const SynthParams& params) {
    check_params(params);

    std::mt19937_64 rng(params.seed);
    std::lognormal_distribution<double> fitness_dist(params.fitness_log_mean,
                                                     params.fitness_log_sigma);

    SynthCorpus corpus;
    corpus.records.reserve(params.n_papers);
    corpus.fitness.reserve(params.n_papers);
    std::vector<std::size_t> in_degree(params.n_papers, 0);
    std::vector<int> month_of(params.n_papers, 0);

    std::vector<std::size_t> picked;
    std::vector<double> weight;
    for (std::size_t i = 0; i < params.n_papers; ++i) {
        const int month_index = static_cast<int>(i / params.papers_per_month);
        month_of[i] = month_index;
        corpus.records.push_back({make_id(i), params.start_month.plus_months(month_index)});
        corpus.fitness.push_back(fitness_dist(rng));

        // Candidates are the papers from strictly earlier months, so papers
        // within one batch never cite each other.
        const std::size_t n_candidates =
            static_cast<std::size_t>(month_index) * params.papers_per_month;
        if (n_candidates == 0 || params.refs_per_paper == 0) continue;

        weight.resize(n_candidates);
        double total = 0.0;
        for (std::size_t c = 0; c < n_candidates; ++c) {
            const double age = static_cast<double>(month_index - month_of[c]);
            weight[c] = static_cast<double>(in_degree[c] + 1) * corpus.fitness[c] *
                        std::exp(-age / params.relevance_tau_months);
            total += weight[c];
        }

        // Successive draws without replacement: each pick zeroes its weight.
        const std::size_t n_refs = std::min(params.refs_per_paper, n_candidates);
        picked.clear();
        for (std::size_t r = 0; r < n_refs; ++r) {
            std::uniform_real_distribution<double> pick(0.0, total);
            double x = pick(rng);
            std::size_t chosen = n_candidates;
            for (std::size_t c = 0; c < n_candidates; ++c) {
                if (weight[c] == 0.0) continue;
                x -= weight[c];
                if (x < 0.0) {
                    chosen = c;
                    break;
                }
            }
            if (chosen == n_candidates) {
                // Rounding pushed x past the last positive weight.
                for (std::size_t c = n_candidates; c-- > 0;) {
                    if (weight[c] > 0.0) {
                        chosen = c;
                        break;
                    }
                }
            }
            picked.push_back(chosen);
            total -= weight[chosen];
            weight[chosen] = 0.0;
        }
        for (const std::size_t c : picked) {
            ++in_degree[c];
            corpus.edges.emplace_back(corpus.records[i].external_id,
                                      corpus.records[c].external_id);
        }
    }
    return corpus;
}

namespace {

RunMetadata synth_metadata(const SynthParams& params) {
    RunMetadata meta = tool_metadata("synth");
    meta.add("n_papers", params.n_papers);
    meta.add("papers_per_month", params.papers_per_month);
    meta.add("refs_per_paper", params.refs_per_paper);
    meta.add("fitness_log_mean", params.fitness_log_mean);
    meta.add("fitness_log_sigma", params.fitness_log_sigma);
    meta.add("relevance_tau_months", params.relevance_tau_months);
    meta.add("start_month", params.start_month.to_string());
    meta.add("seed", params.seed);
    return meta;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

} // namespace

void write_corpus(const SynthCorpus& corpus, const SynthParams& params, const std::string& dir) {
    const std::filesystem::path base(dir);
    std::filesystem::create_directories(base);
    const RunMetadata meta = synth_metadata(params);

    {
        auto out = open_out(base / "papers.csv");
        write_comment_header(out, meta);
        out << "external_id,pub_date\n";
        for (const auto& r : corpus.records) {
            out << r.external_id << ',' << r.pub_month.to_string() << '\n';
        }
    }
    {
        auto out = open_out(base / "edges.csv");
        write_comment_header(out, meta);
        out << "citing_id,cited_id\n";
        for (const auto& [citing, cited] : corpus.edges) {
            out << citing << ',' << cited << '\n';
        }
    }
    {
        nlohmann::ordered_json doc;
        for (const auto& [key, value] : meta.entries()) doc["meta"][key] = value;
        nlohmann::ordered_json fit;
        for (std::size_t i = 0; i < corpus.records.size(); ++i) {
            fit[corpus.records[i].external_id] = corpus.fitness[i];
        }
        doc["fitness"] = std::move(fit);
        auto out = open_out(base / "fitness.json");
        out << doc.dump(2) << '\n';
    }
}

} // namespace citepop
