#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "citepop/errors.hpp"
#include "citepop/evaluation.hpp"
#include "citepop/ingest.hpp"
#include "citepop/score.hpp"
#include "citepop/snapshot.hpp"
#include "citepop/synthgen.hpp"
#include "citepop/version.hpp"
#include "common.hpp"
#include "figures.hpp"

namespace {

using namespace citepop;

// Flags shared by the ranking-driven subcommands.
struct MethodFlags {
    std::string method_str = "pr";
    MethodRunParams params;
    bool keep_uncited = false;
    bool strict = false;
};

void add_param_options(CLI::App* cmd, MethodFlags& flags) {
    cmd->add_option("--c", flags.params.damping, "PageRank damping factor (pr/rs)");
    cmd->add_option("--tau", flags.params.tau, "decay timescale in months (cr/ad)");
    cmd->add_option("--alpha", flags.params.alpha, "follow probability (cr/ad)");
    cmd->add_option("--window", flags.params.rescale_window, "rescaling window size (rs)");
    cmd->add_option("--tol", flags.params.tolerance, "convergence tolerance");
    cmd->add_option("--max-iter", flags.params.max_iterations, "iteration cap (pr/rs)");
    cmd->add_option("--max-terms", flags.params.max_terms,
                    "series term cap, 0 = method default (cr/ad)");
    cmd->add_option("--decay-base", flags.params.step_decay_base,
                    "per-step follow-probability divisor (ad)");
    cmd->add_flag("--keep-uncited", flags.keep_uncited,
                  "keep papers that are uncited at the testing time");
    cmd->add_flag("--strict", flags.strict, "exit 3 when a ranking fails to converge");
}

Method required_method(const std::string& tag) {
    const auto method = method_from_tag(tag);
    if (!method) throw std::invalid_argument("unknown method '" + tag + "'");
    return *method;
}

void check_grid_values(const std::vector<double>& tau_grid,
                       const std::vector<double>& alpha_grid) {
    if (tau_grid.empty() || alpha_grid.empty()) {
        throw std::invalid_argument("parameter grids must be nonempty");
    }
    for (const double tau : tau_grid) {
        if (!(tau > 0.0)) throw std::invalid_argument("tau grid values must be positive");
    }
    for (const double alpha : alpha_grid) {
        if (!(alpha >= 0.0 && alpha < 1.0)) {
            throw std::invalid_argument("alpha grid values must be in [0,1)");
        }
    }
}

void add_method_metadata(RunMetadata& meta, Method method, const MethodRunParams& params) {
    meta.add("method", method_tag(method));
    switch (method) {
    case Method::pagerank:
        meta.add("damping", format_double(params.damping));
        meta.add("max_iterations", params.max_iterations);
        break;
    case Method::rescaled_pagerank:
        meta.add("damping", format_double(params.damping));
        meta.add("max_iterations", params.max_iterations);
        meta.add("rescale_window", params.rescale_window);
        break;
    case Method::citerank:
        meta.add("tau", format_double(params.tau));
        meta.add("alpha", format_double(params.alpha));
        meta.add("max_terms", params.max_terms);
        break;
    case Method::age_diffusion:
        meta.add("tau", format_double(params.tau));
        meta.add("alpha", format_double(params.alpha));
        meta.add("step_decay_base", format_double(params.step_decay_base));
        meta.add("max_terms", params.max_terms);
        break;
    }
    meta.add("tolerance", format_double(params.tolerance));
}

int run_ingest(const std::string& papers, const std::string& edges, const std::string& out) {
    const LoadedCorpus corpus = load_corpus(papers, edges);
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(to_json_string(corpus.stats));
    doc["node_count"] = corpus.graph.node_count();
    doc["edge_count"] = corpus.graph.edge_count();
    doc["min_pub_month"] = corpus.graph.min_publication_month().to_string();
    doc["max_pub_month"] = corpus.graph.max_publication_month().to_string();
    nlohmann::ordered_json meta;
    meta["tool"] = kToolName;
    meta["version"] = kVersion;
    meta["command"] = "ingest";
    meta["papers"] = papers;
    meta["edges"] = edges;
    doc["meta"] = std::move(meta);
    const std::string text = doc.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        cli::write_file(cli::resolve_output(out), text);
    }
    return 0;
}

int run_synth(const SynthParams& params, const std::string& out_dir) {
    const SynthCorpus corpus = generate_corpus(params);
    write_corpus(corpus, params, cli::resolve_output(out_dir).string());
    return 0;
}

int run_rank(const std::string& papers, const std::string& edges, const MethodFlags& flags,
             const std::string& t_str, const std::string& out) {
    const Method method = required_method(flags.method_str);
    validate_params(method, flags.params);
    const MonthStamp t = cli::parse_month_flag(t_str, "--t");

    const LoadedCorpus corpus = load_corpus(papers, edges);
    const GraphSnapshot snapshot = make_snapshot(corpus.graph, t, !flags.keep_uncited);
    const ScoreVector scores = run_method(snapshot, method, flags.params);
    if (flags.strict && !scores.converged) {
        std::cerr << "error: ranking did not converge within its term/iteration cap\n";
        return 3;
    }

    RunMetadata meta = tool_metadata("rank");
    meta.add("papers", papers);
    meta.add("edges", edges);
    add_method_metadata(meta, method, flags.params);
    meta.add("t", t.to_string());
    meta.add("filter_uncited", flags.keep_uncited ? 0 : 1);
    meta.add("converged", scores.converged ? 1 : 0);

    std::ostringstream csv;
    write_score_csv(csv, snapshot, scores, meta);
    cli::write_file(cli::resolve_output(out), csv.str());
    return 0;
}

int run_evaluate(const std::string& papers, const std::string& edges, const MethodFlags& flags,
                 const std::string& t_str, int tf, double fraction, const std::string& out) {
    const Method method = required_method(flags.method_str);
    validate_params(method, flags.params);
    if (tf < 1) throw std::invalid_argument("--tf must be positive");
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("--fraction must be in (0,1]");
    }
    const MonthStamp t = cli::parse_month_flag(t_str, "--t");

    const LoadedCorpus corpus = load_corpus(papers, edges);
    const GraphSnapshot snapshot = make_snapshot(corpus.graph, t, !flags.keep_uncited);
    const ScoreVector scores = run_method(snapshot, method, flags.params);
    const FuturePopularity f = future_popularity(snapshot, tf);
    const EvalReport report = evaluate_scores(snapshot, scores, f, fraction);
    if (flags.strict && !report.convergence_ok) {
        std::cerr << "error: ranking did not converge within its term/iteration cap\n";
        return 3;
    }

    RunMetadata meta = tool_metadata("evaluate");
    meta.add("papers", papers);
    meta.add("edges", edges);
    add_method_metadata(meta, method, flags.params);
    meta.add("t", t.to_string());
    meta.add("tf_months", tf);
    meta.add("fraction", format_double(fraction));
    meta.add("filter_uncited", flags.keep_uncited ? 0 : 1);

    const std::string text = to_json_string(report, &meta);
    if (out.empty()) {
        std::cout << text;
    } else {
        cli::write_file(cli::resolve_output(out), text);
    }
    return 0;
}

struct SweepFlags {
    std::string t_str;
    std::vector<std::string> times_str;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int n_times = 5;
    int tf = 0;
    std::vector<double> tau_grid;
    std::vector<double> alpha_grid;
    double fraction = 0.01;
    unsigned threads = 1;
    std::string format = "csv";
};

int run_sweep(const std::string& papers, const std::string& edges, const MethodFlags& flags,
              const SweepFlags& sweep, const std::string& out) {
    const Method method = required_method(flags.method_str);
    if (method != Method::citerank && method != Method::age_diffusion) {
        throw std::invalid_argument("sweep requires --method cr or ad");
    }
    check_grid_values(sweep.tau_grid, sweep.alpha_grid);
    if (sweep.tf < 1) throw std::invalid_argument("--tf must be positive");
    if (!(sweep.fraction > 0.0 && sweep.fraction <= 1.0)) {
        throw std::invalid_argument("--fraction must be in (0,1]");
    }
    if (!(flags.params.tolerance > 0.0)) {
        throw std::invalid_argument("--tol must be positive");
    }

    const int sources = (!sweep.t_str.empty() ? 1 : 0) + (!sweep.times_str.empty() ? 1 : 0) +
                        (sweep.seed_given ? 1 : 0);
    if (sources != 1) {
        throw std::invalid_argument("give exactly one of --t, --times, or --seed");
    }
    if (sweep.seed_given && sweep.n_times < 1) {
        throw std::invalid_argument("--n-times must be positive");
    }

    SweepOptions options;
    options.top_fraction = sweep.fraction;
    options.tolerance = flags.params.tolerance;
    options.max_terms = flags.params.max_terms;
    options.step_decay_base = flags.params.step_decay_base;
    options.threads = sweep.threads;

    RunMetadata meta = tool_metadata("sweep");
    meta.add("papers", papers);
    meta.add("edges", edges);
    meta.add("method", method_tag(method));
    meta.add("tf_months", sweep.tf);
    meta.add("tau_grid", cli::join_doubles(sweep.tau_grid));
    meta.add("alpha_grid", cli::join_doubles(sweep.alpha_grid));
    meta.add("fraction", format_double(sweep.fraction));
    meta.add("tolerance", format_double(flags.params.tolerance));
    meta.add("max_terms", flags.params.max_terms);
    meta.add("step_decay_base", format_double(flags.params.step_decay_base));
    meta.add("filter_uncited", flags.keep_uncited ? 0 : 1);

    const LoadedCorpus corpus = load_corpus(papers, edges);

    std::string csv_text;
    std::string json_text;
    bool converged = true;
    if (!sweep.t_str.empty()) {
        const MonthStamp t = cli::parse_month_flag(sweep.t_str, "--t");
        meta.add("t", t.to_string());
        const GraphSnapshot snapshot = make_snapshot(corpus.graph, t, !flags.keep_uncited);
        const FuturePopularity f = future_popularity(snapshot, sweep.tf);
        const SweepResult result =
            parameter_sweep(snapshot, method, f, sweep.tau_grid, sweep.alpha_grid, options);
        for (const SweepCell& cell : result.cells) converged = converged && cell.converged;
        if (sweep.format == "csv") {
            std::ostringstream out;
            write_sweep_csv(out, result, meta);
            csv_text = out.str();
        } else {
            json_text = to_json_string(result, &meta);
        }
    } else {
        std::vector<MonthStamp> times;
        if (!sweep.times_str.empty()) {
            times = cli::parse_time_list(sweep.times_str, "--times");
        } else {
            times = draw_testing_times(sweep.seed, static_cast<std::size_t>(sweep.n_times));
            meta.add("seed", sweep.seed);
        }
        meta.add("times", cli::join_months(times));
        const MultiTimeSweep result =
            multi_time_sweep(corpus.graph, method, times, sweep.tf, sweep.tau_grid,
                             sweep.alpha_grid, options, !flags.keep_uncited);
        for (const MultiTimeCell& cell : result.cells) {
            converged = converged && cell.all_converged;
        }
        if (sweep.format == "csv") {
            std::ostringstream out;
            write_sweep_csv(out, result, meta);
            csv_text = out.str();
        } else {
            json_text = to_json_string(result, &meta);
        }
    }

    if (flags.strict && !converged) {
        std::cerr << "error: a sweep cell did not converge within its term cap\n";
        return 3;
    }
    cli::write_file(cli::resolve_output(out), sweep.format == "csv" ? csv_text : json_text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"citation-network popularity prediction toolkit"};
    app.set_version_flag("--version",
                         std::string(kToolName) + " " + std::string(kVersion));
    app.require_subcommand(1);

    // ingest
    auto* ingest_cmd =
        app.add_subcommand("ingest", "parse a corpus and report cleaning statistics");
    std::string in_papers;
    std::string in_edges;
    std::string ingest_out;
    ingest_cmd->add_option("--papers", in_papers, "paper metadata CSV")->required();
    ingest_cmd->add_option("--edges", in_edges, "citing-pair CSV")->required();
    ingest_cmd->add_option("--out", ingest_out, "stats JSON path (default: stdout)");

    // synth
    auto* synth_cmd =
        app.add_subcommand("synth", "generate a seeded synthetic citation corpus");
    SynthParams synth_params;
    std::string synth_start = "1990-01";
    std::string synth_out;
    synth_cmd->add_option("--n", synth_params.n_papers, "total number of papers");
    synth_cmd->add_option("--papers-per-month", synth_params.papers_per_month,
                          "papers arriving per month");
    synth_cmd->add_option("--m", synth_params.refs_per_paper, "references per paper");
    synth_cmd->add_option("--mu", synth_params.fitness_log_mean, "fitness log-mean");
    synth_cmd->add_option("--sigma", synth_params.fitness_log_sigma, "fitness log-sigma");
    synth_cmd->add_option("--theta", synth_params.relevance_tau_months,
                          "attachment aging timescale, months");
    synth_cmd->add_option("--start", synth_start, "first publication month (YYYY-MM)");
    synth_cmd->add_option("--seed", synth_params.seed, "generator seed")->required();
    synth_cmd->add_option("--out", synth_out, "output directory")->required();

    // rank
    auto* rank_cmd = app.add_subcommand("rank", "score a snapshot and export the ranking");
    std::string rank_papers;
    std::string rank_edges;
    std::string rank_t;
    std::string rank_out;
    MethodFlags rank_flags;
    rank_cmd->add_option("--papers", rank_papers, "paper metadata CSV")->required();
    rank_cmd->add_option("--edges", rank_edges, "citing-pair CSV")->required();
    rank_cmd->add_option("--method", rank_flags.method_str, "ranking method (pr|cr|rs|ad)")
        ->required();
    rank_cmd->add_option("--t", rank_t, "testing time (YYYY-MM)")->required();
    rank_cmd->add_option("--out", rank_out, "score CSV path")->required();
    add_param_options(rank_cmd, rank_flags);

    // evaluate
    auto* eval_cmd =
        app.add_subcommand("evaluate", "score a snapshot and compare against the future window");
    std::string eval_papers;
    std::string eval_edges;
    std::string eval_t;
    std::string eval_out;
    int eval_tf = 0;
    double eval_fraction = 0.01;
    MethodFlags eval_flags;
    eval_cmd->add_option("--papers", eval_papers, "paper metadata CSV")->required();
    eval_cmd->add_option("--edges", eval_edges, "citing-pair CSV")->required();
    eval_cmd->add_option("--method", eval_flags.method_str, "ranking method (pr|cr|rs|ad)")
        ->required();
    eval_cmd->add_option("--t", eval_t, "testing time (YYYY-MM)")->required();
    eval_cmd->add_option("--tf", eval_tf, "future window, months")->required();
    eval_cmd->add_option("--fraction", eval_fraction, "top fraction for precision");
    eval_cmd->add_option("--out", eval_out, "report JSON path (default: stdout)");
    add_param_options(eval_cmd, eval_flags);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a tau/alpha parameter grid");
    std::string sweep_papers;
    std::string sweep_edges;
    std::string sweep_out;
    MethodFlags sweep_method_flags;
    SweepFlags sweep_flags;
    sweep_cmd->add_option("--papers", sweep_papers, "paper metadata CSV")->required();
    sweep_cmd->add_option("--edges", sweep_edges, "citing-pair CSV")->required();
    sweep_cmd->add_option("--method", sweep_method_flags.method_str, "ranking method (cr|ad)")
        ->required();
    sweep_cmd->add_option("--t", sweep_flags.t_str, "single testing time (YYYY-MM)");
    sweep_cmd->add_option("--times", sweep_flags.times_str, "testing times to average over")
        ->delimiter(',');
    auto* sweep_seed_opt =
        sweep_cmd->add_option("--seed", sweep_flags.seed, "seed for drawing testing times");
    sweep_cmd->add_option("--n-times", sweep_flags.n_times, "number of drawn testing times");
    sweep_cmd->add_option("--tf", sweep_flags.tf, "future window, months")->required();
    sweep_cmd->add_option("--tau-grid", sweep_flags.tau_grid, "tau values, months")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--alpha-grid", sweep_flags.alpha_grid, "alpha values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--fraction", sweep_flags.fraction, "top fraction for precision");
    sweep_cmd->add_option("--threads", sweep_flags.threads, "worker threads for grid cells");
    sweep_cmd->add_option("--format", sweep_flags.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--out", sweep_out, "output path")->required();
    add_param_options(sweep_cmd, sweep_method_flags);

    // figures
    auto* fig_cmd =
        app.add_subcommand("figures", "export plot-ready data for every figure analogue");
    std::string fig_papers;
    std::string fig_edges;
    std::string fig_t;
    std::string fig_out_dir = ".";
    std::vector<std::string> fig_times;
    std::uint64_t fig_seed = 0;
    int fig_n_times = 5;
    int fig_tf = 0;
    std::vector<int> fig_tf_list;
    MethodFlags fig_flags;
    fig_flags.params.tau = 24.0;
    fig_flags.params.alpha = 0.74;
    double fig_fraction = 0.01;
    int fig_bin_width = 60;
    int fig_cdf_bin_width = 12;
    unsigned fig_threads = 1;
    fig_cmd->add_option("--papers", fig_papers, "paper metadata CSV")->required();
    fig_cmd->add_option("--edges", fig_edges, "citing-pair CSV")->required();
    fig_cmd->add_option("--t", fig_t, "testing time (YYYY-MM)")->required();
    fig_cmd->add_option("--tf", fig_tf, "future window, months")->required();
    fig_cmd->add_option("--tf-list", fig_tf_list, "future windows for the tf curves")
        ->delimiter(',');
    fig_cmd->add_option("--times", fig_times, "testing times to average over")->delimiter(',');
    auto* fig_seed_opt =
        fig_cmd->add_option("--seed", fig_seed, "seed for drawing testing times");
    fig_cmd->add_option("--n-times", fig_n_times, "number of drawn testing times");
    std::vector<double> fig_tau_grid = {6, 12, 24, 48, 96};
    std::vector<double> fig_alpha_grid = {0.1, 0.3, 0.5, 0.7, 0.9};
    fig_cmd->add_option("--tau-grid", fig_tau_grid, "tau values, months")->delimiter(',');
    fig_cmd->add_option("--alpha-grid", fig_alpha_grid, "alpha values")->delimiter(',');
    fig_cmd->add_option("--fraction", fig_fraction, "top fraction");
    fig_cmd->add_option("--bin-width", fig_bin_width, "age bin width, months");
    fig_cmd->add_option("--cdf-bin-width", fig_cdf_bin_width, "age distribution step, months");
    fig_cmd->add_option("--threads", fig_threads, "worker threads for grid cells");
    fig_cmd->add_option("--out-dir", fig_out_dir, "output directory");
    add_param_options(fig_cmd, fig_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (ingest_cmd->parsed()) return run_ingest(in_papers, in_edges, ingest_out);
        if (synth_cmd->parsed()) {
            synth_params.start_month = cli::parse_month_flag(synth_start, "--start");
            return run_synth(synth_params, synth_out);
        }
        if (rank_cmd->parsed()) {
            return run_rank(rank_papers, rank_edges, rank_flags, rank_t, rank_out);
        }
        if (eval_cmd->parsed()) {
            return run_evaluate(eval_papers, eval_edges, eval_flags, eval_t, eval_tf,
                                eval_fraction, eval_out);
        }
        if (sweep_cmd->parsed()) {
            sweep_flags.seed_given = sweep_seed_opt->count() > 0;
            return run_sweep(sweep_papers, sweep_edges, sweep_method_flags, sweep_flags,
                             sweep_out);
        }
        if (fig_cmd->parsed()) {
            cli::FiguresConfig config;
            config.papers_path = fig_papers;
            config.edges_path = fig_edges;
            config.out_dir = fig_out_dir;
            config.testing_time = cli::parse_month_flag(fig_t, "--t");
            config.tf_months = fig_tf;
            config.tf_list = fig_tf_list.empty() ? std::vector<int>{fig_tf} : fig_tf_list;
            if (!fig_times.empty()) {
                config.times = cli::parse_time_list(fig_times, "--times");
            } else if (fig_seed_opt->count() > 0) {
                if (fig_n_times < 1) throw std::invalid_argument("--n-times must be positive");
                config.times =
                    draw_testing_times(fig_seed, static_cast<std::size_t>(fig_n_times));
            } else {
                throw std::invalid_argument("figures needs --times or --seed");
            }
            check_grid_values(fig_tau_grid, fig_alpha_grid);
            config.tau_grid = fig_tau_grid;
            config.alpha_grid = fig_alpha_grid;
            config.params = fig_flags.params;
            config.top_fraction = fig_fraction;
            config.bin_width_months = fig_bin_width;
            config.cdf_bin_width_months = fig_cdf_bin_width;
            config.threads = fig_threads;
            config.filter_uncited = !fig_flags.keep_uncited;
            config.strict = fig_flags.strict;
            return cli::run_figures(config);
        }
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
