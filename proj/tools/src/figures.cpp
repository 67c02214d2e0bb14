#include "figures.hpp"

#include <array>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "citepop/age_bias.hpp"
#include "citepop/errors.hpp"
#include "citepop/future_popularity.hpp"
#include "citepop/ingest.hpp"
#include "citepop/rankers.hpp"
#include "citepop/score.hpp"
#include "citepop/snapshot.hpp"
#include "common.hpp"

namespace citepop::cli {

namespace {

constexpr std::array<Method, 4> kMethods = {Method::pagerank, Method::citerank,
                                            Method::rescaled_pagerank, Method::age_diffusion};

RunMetadata figure_meta(const FiguresConfig& c, std::string_view figure) {
    RunMetadata meta = tool_metadata("figures");
    meta.add("figure", figure);
    meta.add("papers", c.papers_path);
    meta.add("edges", c.edges_path);
    meta.add("t", c.testing_time.to_string());
    meta.add("tf_months", c.tf_months);
    meta.add("fraction", format_double(c.top_fraction));
    meta.add("tau", format_double(c.params.tau));
    meta.add("alpha", format_double(c.params.alpha));
    meta.add("damping", format_double(c.params.damping));
    meta.add("rescale_window", c.params.rescale_window);
    meta.add("filter_uncited", c.filter_uncited ? 1 : 0);
    if (!c.times.empty()) meta.add("times", join_months(c.times));
    return meta;
}

SweepOptions sweep_options(const FiguresConfig& c) {
    SweepOptions opts;
    opts.top_fraction = c.top_fraction;
    opts.tolerance = c.params.tolerance;
    opts.max_terms = c.params.max_terms;
    opts.step_decay_base = c.params.step_decay_base;
    opts.threads = c.threads;
    return opts;
}

} // namespace

int run_figures(const FiguresConfig& config) {
    for (const Method m : kMethods) validate_params(m, config.params);
    if (config.tf_months < 1) throw std::invalid_argument("tf must be positive");
    if (config.times.empty()) throw std::invalid_argument("need testing times for averaging");
    for (const int tf : config.tf_list) {
        if (tf < 1) throw std::invalid_argument("tf list entries must be positive");
    }

    const LoadedCorpus corpus = load_corpus(config.papers_path, config.edges_path);
    const GraphSnapshot snapshot =
        make_snapshot(corpus.graph, config.testing_time, config.filter_uncited);
    const FuturePopularity f = future_popularity(snapshot, config.tf_months);

    const std::size_t n_top = static_cast<std::size_t>(
        config.top_fraction * static_cast<double>(snapshot.node_count()));
    if (n_top == 0) {
        throw std::invalid_argument(
            "top fraction selects no papers; raise the fraction or use a larger corpus");
    }

    bool all_converged = true;

    // Rankings at the configured parameters, shared by figures 3 to 6.
    std::array<ScoreVector, kMethods.size()> scores;
    for (std::size_t mi = 0; mi < kMethods.size(); ++mi) {
        scores[mi] = run_method(snapshot, kMethods[mi], config.params);
        all_converged = all_converged && scores[mi].converged;
    }

    // fig1: the age-diffusion parameter surface at (t, tf).
    const SweepResult fig1 = parameter_sweep(snapshot, Method::age_diffusion, f,
                                             config.tau_grid, config.alpha_grid,
                                             sweep_options(config));
    for (const SweepCell& cell : fig1.cells) {
        all_converged = all_converged && cell.converged;
    }
    std::ostringstream fig1_out;
    write_sweep_csv(fig1_out, fig1, figure_meta(config, "fig1"));

    // fig2: metric curves vs the future window, averaged over the testing
    // times; cr/ad re-optimized per (metric, window).
    std::ostringstream fig2_out;
    write_comment_header(fig2_out, figure_meta(config, "fig2"));
    fig2_out << "tf_months,method,metric,value,tau,alpha\n";
    for (const int tf : config.tf_list) {
        for (const Method m : {Method::pagerank, Method::rescaled_pagerank}) {
            const MultiTimeAverage avg =
                multi_time_average(corpus.graph, m, config.times, {tf}, config.params,
                                   config.top_fraction, config.filter_uncited);
            const TfCurvePoint& p = avg.points.front();
            all_converged = all_converged && p.all_converged;
            const std::pair<std::string_view, double> rows[] = {
                {metric_tag(MetricKind::pearson), p.mean_pearson},
                {metric_tag(MetricKind::spearman), p.mean_spearman},
                {metric_tag(MetricKind::precision), p.mean_precision},
            };
            for (const auto& [name, value] : rows) {
                fig2_out << tf << ',' << method_tag(m) << ',' << name << ','
                         << format_double17(value) << ",,\n";
            }
        }
        for (const Method m : {Method::citerank, Method::age_diffusion}) {
            const MultiTimeSweep mts =
                multi_time_sweep(corpus.graph, m, config.times, tf, config.tau_grid,
                                 config.alpha_grid, sweep_options(config),
                                 config.filter_uncited);
            for (const MultiTimeCell& cell : mts.cells) {
                all_converged = all_converged && cell.all_converged;
            }
            for (const SweepBest& b : mts.best) {
                fig2_out << tf << ',' << method_tag(m) << ',' << metric_tag(b.metric) << ','
                         << format_double17(b.value) << ',' << format_double(b.tau) << ','
                         << format_double(b.alpha) << '\n';
            }
        }
    }

    // fig3: rank scatter of age diffusion against each baseline, rows in
    // ascending external-id order.
    const std::size_t ad_index = kMethods.size() - 1;
    const auto rank_ad = ranking_positions<double>(scores[ad_index].values, snapshot);
    std::array<std::ostringstream, 3> fig3_out;
    for (std::size_t mi = 0; mi < 3; ++mi) {
        const auto rank_other = ranking_positions<double>(scores[mi].values, snapshot);
        RunMetadata meta = figure_meta(config, "fig3");
        meta.add("other_method", method_tag(kMethods[mi]));
        write_comment_header(fig3_out[mi], meta);
        fig3_out[mi] << "external_id,rank_ad,rank_other\n";
        for (NodeIndex v = 0; v < snapshot.node_count(); ++v) {
            fig3_out[mi] << snapshot.external_id(v) << ',' << rank_ad[v] << ','
                         << rank_other[v] << '\n';
        }
    }

    // Figures 4 and 6 analogues: per-age-bin mean rank difference and
    // detection rate over the real top set; undefined bins are omitted.
    std::ostringstream fig4_out;
    write_comment_header(fig4_out, figure_meta(config, "fig4"));
    fig4_out << "age_bin_months,method,mean_delta_r\n";
    std::ostringstream fig6_out;
    write_comment_header(fig6_out, figure_meta(config, "fig6"));
    fig6_out << "age_bin_months,method,rate\n";
    for (std::size_t mi = 0; mi < kMethods.size(); ++mi) {
        const AgeBinStats stats =
            detection_rate_by_age(snapshot, scores[mi].values, f, config.top_fraction,
                                  config.bin_width_months);
        for (const AgeBin& bin : stats.bins) {
            if (!bin.rate_defined) continue;
            fig4_out << bin.age_lo_months << ',' << method_tag(kMethods[mi]) << ','
                     << format_double17(bin.mean_delta_r) << '\n';
            fig6_out << bin.age_lo_months << ',' << method_tag(kMethods[mi]) << ','
                     << format_double17(bin.detection_rate) << '\n';
        }
    }

    // fig5: survival curve of paper age for the real top set and each
    // method's predicted top set.
    std::ostringstream fig5_out;
    write_comment_header(fig5_out, figure_meta(config, "fig5"));
    fig5_out << "age_months,set,fraction\n";
    const auto real_top = top_set<std::uint32_t>(f.values, snapshot, n_top);
    for (const AgeCdfPoint& p :
         cumulative_age_distribution(real_top, snapshot, config.cdf_bin_width_months)) {
        fig5_out << p.age_months << ",real," << format_double17(p.fraction) << '\n';
    }
    for (std::size_t mi = 0; mi < kMethods.size(); ++mi) {
        const auto predicted = top_set<double>(scores[mi].values, snapshot, n_top);
        for (const AgeCdfPoint& p :
             cumulative_age_distribution(predicted, snapshot, config.cdf_bin_width_months)) {
            fig5_out << p.age_months << ',' << method_tag(kMethods[mi]) << ','
                     << format_double17(p.fraction) << '\n';
        }
    }

    if (config.strict && !all_converged) {
        std::cerr << "error: a ranking did not converge; no figures written\n";
        return 3;
    }

    const std::filesystem::path dir = resolve_output(config.out_dir);
    write_file(dir / "fig1_sweep_ad.csv", fig1_out.str());
    write_file(dir / "fig2_tf_curves.csv", fig2_out.str());
    write_file(dir / "fig3_ranks_pr.csv", fig3_out[0].str());
    write_file(dir / "fig3_ranks_cr.csv", fig3_out[1].str());
    write_file(dir / "fig3_ranks_rs.csv", fig3_out[2].str());
    write_file(dir / "fig4_delta_r.csv", fig4_out.str());
    write_file(dir / "fig5_age_cdf.csv", fig5_out.str());
    write_file(dir / "fig6_detection.csv", fig6_out.str());
    return 0;
}

} // namespace citepop::cli
