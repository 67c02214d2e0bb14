#include "citepop/evaluation.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <mutex>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "citepop/errors.hpp"
#include "citepop/rankers.hpp"

namespace citepop {

std::string_view method_tag(Method m) {
    switch (m) {
    case Method::pagerank: return "pr";
    case Method::citerank: return "cr";
    case Method::rescaled_pagerank: return "rs";
    case Method::age_diffusion: return "ad";
    }
    throw std::invalid_argument("unknown method");
}

std::optional<Method> method_from_tag(std::string_view tag) {
    if (tag == "pr") return Method::pagerank;
    if (tag == "cr") return Method::citerank;
    if (tag == "rs") return Method::rescaled_pagerank;
    if (tag == "ad") return Method::age_diffusion;
    return std::nullopt;
}

std::string_view metric_tag(MetricKind m) {
    switch (m) {
    case MetricKind::pearson: return "pearson";
    case MetricKind::spearman: return "spearman";
    case MetricKind::precision: return "precision";
    }
    throw std::invalid_argument("unknown metric");
}

void validate_params(Method method, const MethodRunParams& params) {
    if (!(params.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    switch (method) {
    case Method::pagerank:
        if (!(params.damping > 0.0 && params.damping < 1.0)) {
            throw std::invalid_argument("damping must be in (0,1)");
        }
        if (params.max_iterations < 1) {
            throw std::invalid_argument("max_iterations must be at least 1");
        }
        break;
    case Method::rescaled_pagerank:
        if (!(params.damping > 0.0 && params.damping < 1.0)) {
            throw std::invalid_argument("damping must be in (0,1)");
        }
        if (params.max_iterations < 1) {
            throw std::invalid_argument("max_iterations must be at least 1");
        }
        if (params.rescale_window < 2 || params.rescale_window % 2 != 0) {
            throw std::invalid_argument("rescale window must be even and at least 2");
        }
        break;
    case Method::citerank:
    case Method::age_diffusion:
        if (!(params.tau > 0.0)) throw std::invalid_argument("tau must be positive");
        if (!(params.alpha >= 0.0 && params.alpha < 1.0)) {
            throw std::invalid_argument("alpha must be in [0,1)");
        }
        if (params.max_terms < 0) throw std::invalid_argument("max_terms must be nonnegative");
        if (method == Method::age_diffusion && !(params.step_decay_base > 1.0)) {
            throw std::invalid_argument("step_decay_base must exceed 1");
        }
        break;
    }
}

ScoreVector run_method(const GraphSnapshot& snapshot, Method method,
                       const MethodRunParams& params) {
    validate_params(method, params);
    switch (method) {
    case Method::pagerank: {
        PageRankParams p;
        p.damping = params.damping;
        p.tolerance = params.tolerance;
        p.max_iterations = params.max_iterations;
        return pagerank(snapshot, p);
    }
    case Method::rescaled_pagerank: {
        PageRankParams p;
        p.damping = params.damping;
        p.tolerance = params.tolerance;
        p.max_iterations = params.max_iterations;
        RescaleParams r;
        r.window_size = params.rescale_window;
        return rescaled_pagerank(snapshot, pagerank(snapshot, p), r);
    }
    case Method::citerank: {
        CiteRankParams p;
        p.tau = params.tau;
        p.alpha = params.alpha;
        p.tolerance = params.tolerance;
        if (params.max_terms > 0) p.max_terms = params.max_terms;
        return citerank(snapshot, p);
    }
    case Method::age_diffusion: {
        AgeDiffusionParams p;
        p.tau = params.tau;
        p.alpha = params.alpha;
        p.step_decay_base = params.step_decay_base;
        p.tolerance = params.tolerance;
        if (params.max_terms > 0) p.max_terms = params.max_terms;
        return age_diffusion(snapshot, p);
    }
    }
    throw std::invalid_argument("unknown method");
}

EvalReport evaluate_scores(const GraphSnapshot& snapshot, const ScoreVector& scores,
                           const FuturePopularity& f, double top_fraction) {
    EvalReport report;
    report.method_tag = scores.method_tag;
    report.testing_time = snapshot.testing_time();
    report.future_window_months = f.window_months;
    report.node_count = snapshot.node_count();
    const std::vector<double> truth = to_double_vector(f);
    report.pearson = pearson(scores.values, truth);
    report.spearman = spearman(scores.values, truth);
    const PrecisionResult p = precision_at_top(snapshot, scores.values, f, top_fraction);
    report.precision = p.precision;
    report.n_top = p.n_top;
    report.convergence_ok = scores.converged;
    return report;
}

namespace {

nlohmann::ordered_json meta_json(const RunMetadata* metadata) {
    nlohmann::ordered_json meta;
    if (metadata != nullptr) {
        for (const auto& [key, value] : metadata->entries()) meta[key] = value;
    }
    return meta;
}

nlohmann::ordered_json report_json(const EvalReport& report) {
    nlohmann::ordered_json doc;
    doc["method"] = report.method_tag;
    doc["t"] = report.testing_time.to_string();
    doc["tf_months"] = report.future_window_months;
    doc["node_count"] = report.node_count;
    doc["pearson"] = report.pearson.value;
    doc["pearson_degenerate"] = report.pearson.degenerate;
    doc["spearman"] = report.spearman.value;
    doc["spearman_degenerate"] = report.spearman.degenerate;
    doc["precision"] = report.precision;
    doc["n_top"] = report.n_top;
    doc["convergence_ok"] = report.convergence_ok;
    return doc;
}

} // namespace

std::string to_json_string(const EvalReport& report, const RunMetadata* metadata) {
    nlohmann::ordered_json doc = report_json(report);
    if (metadata != nullptr) doc["meta"] = meta_json(metadata);
    return doc.dump(2) + "\n";
}

namespace {

void check_sweep_method(Method method) {
    if (method != Method::citerank && method != Method::age_diffusion) {
        throw std::invalid_argument("parameter sweep requires method cr or ad");
    }
}

void check_grids(const std::vector<double>& tau_grid, const std::vector<double>& alpha_grid) {
    if (tau_grid.empty() || alpha_grid.empty()) {
        throw std::invalid_argument("parameter grids must be nonempty");
    }
}

MethodRunParams cell_params(double tau, double alpha, const SweepOptions& options) {
    MethodRunParams params;
    params.tau = tau;
    params.alpha = alpha;
    params.tolerance = options.tolerance;
    params.max_terms = options.max_terms;
    params.step_decay_base = options.step_decay_base;
    return params;
}

// Workers pull cell indices from a shared counter and write into
// preallocated slots, so the result layout is independent of scheduling.
template <typename Fn>
void run_cells(std::size_t cell_count, unsigned threads, Fn&& body) {
    if (threads <= 1 || cell_count <= 1) {
        for (std::size_t i = 0; i < cell_count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cell_count) return;
            try {
                body(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(cell_count));
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<SweepBest> pick_best(const std::vector<double>& tau_grid,
                                 const std::vector<double>& alpha_grid,
                                 const std::vector<std::array<double, 3>>& values) {
    std::vector<SweepBest> best;
    for (const MetricKind metric : kAllMetrics) {
        const std::size_t mi = static_cast<std::size_t>(metric);
        SweepBest b;
        b.metric = metric;
        std::size_t arg = 0;
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (values[i][mi] > values[arg][mi]) arg = i;
        }
        b.tau = tau_grid[arg / alpha_grid.size()];
        b.alpha = alpha_grid[arg % alpha_grid.size()];
        b.value = values[arg][mi];
        best.push_back(b);
    }
    return best;
}

} // namespace

SweepResult parameter_sweep(const GraphSnapshot& snapshot, Method method,
                            const FuturePopularity& f, std::vector<double> tau_grid,
                            std::vector<double> alpha_grid, const SweepOptions& options) {
    check_sweep_method(method);
    check_grids(tau_grid, alpha_grid);

    SweepResult result;
    result.method_tag = std::string(method_tag(method));
    result.testing_time = snapshot.testing_time();
    result.future_window_months = f.window_months;
    result.tau_grid = std::move(tau_grid);
    result.alpha_grid = std::move(alpha_grid);
    const std::size_t cell_count = result.tau_grid.size() * result.alpha_grid.size();
    result.cells.resize(cell_count);

    run_cells(cell_count, options.threads, [&](std::size_t i) {
        const double tau = result.tau_grid[i / result.alpha_grid.size()];
        const double alpha = result.alpha_grid[i % result.alpha_grid.size()];
        const ScoreVector scores =
            run_method(snapshot, method, cell_params(tau, alpha, options));
        const EvalReport report = evaluate_scores(snapshot, scores, f, options.top_fraction);
        SweepCell& cell = result.cells[i];
        cell.tau = tau;
        cell.alpha = alpha;
        cell.pearson = report.pearson.value;
        cell.spearman = report.spearman.value;
        cell.precision = report.precision;
        cell.converged = report.convergence_ok;
        cell.degenerate = report.pearson.degenerate || report.spearman.degenerate;
    });

    std::vector<std::array<double, 3>> values(cell_count);
    for (std::size_t i = 0; i < cell_count; ++i) {
        values[i] = {result.cells[i].pearson, result.cells[i].spearman,
                     result.cells[i].precision};
    }
    result.best = pick_best(result.tau_grid, result.alpha_grid, values);
    return result;
}

namespace {

nlohmann::ordered_json best_json(const std::vector<SweepBest>& best) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const SweepBest& b : best) {
        nlohmann::ordered_json e;
        e["metric"] = std::string(metric_tag(b.metric));
        e["tau"] = b.tau;
        e["alpha"] = b.alpha;
        e["value"] = b.value;
        list.push_back(std::move(e));
    }
    return list;
}

} // namespace

std::string to_json_string(const SweepResult& result, const RunMetadata* metadata) {
    nlohmann::ordered_json doc;
    doc["method"] = result.method_tag;
    doc["t"] = result.testing_time.to_string();
    doc["tf_months"] = result.future_window_months;
    doc["tau_grid"] = result.tau_grid;
    doc["alpha_grid"] = result.alpha_grid;
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const SweepCell& cell : result.cells) {
        nlohmann::ordered_json c;
        c["tau"] = cell.tau;
        c["alpha"] = cell.alpha;
        c["pearson"] = cell.pearson;
        c["spearman"] = cell.spearman;
        c["precision"] = cell.precision;
        c["converged"] = cell.converged;
        c["degenerate"] = cell.degenerate;
        cells.push_back(std::move(c));
    }
    doc["cells"] = std::move(cells);
    doc["best"] = best_json(result.best);
    if (metadata != nullptr) doc["meta"] = meta_json(metadata);
    return doc.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, const RunMetadata& metadata) {
    write_comment_header(out, metadata);
    out << "tau,alpha,metric,value\n";
    for (const SweepCell& cell : result.cells) {
        const std::pair<std::string_view, double> rows[] = {
            {metric_tag(MetricKind::pearson), cell.pearson},
            {metric_tag(MetricKind::spearman), cell.spearman},
            {metric_tag(MetricKind::precision), cell.precision},
        };
        for (const auto& [name, value] : rows) {
            out << format_double(cell.tau) << ',' << format_double(cell.alpha) << ',' << name
                << ',' << format_double17(value) << '\n';
        }
    }
}

std::vector<MonthStamp> draw_testing_times(std::uint64_t seed, std::size_t count, MonthStamp lo,
                                           MonthStamp hi) {
    if (hi < lo) throw std::invalid_argument("testing-time range is inverted");
    std::mt19937_64 rng(seed);
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::vector<MonthStamp> times;
    times.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        times.push_back(lo.plus_months(static_cast<int>(rng() % span)));
    }
    return times;
}

namespace {

[[noreturn]] void rethrow_with_context(MonthStamp t, int tf) {
    try {
        throw;
    } catch (const std::exception& e) {
        throw DataError("evaluation failed at t=" + t.to_string() +
                        ", tf=" + std::to_string(tf) + " months: " + e.what());
    }
}

} // namespace

MultiTimeAverage multi_time_average(const CitationGraph& parent, Method method,
                                    const std::vector<MonthStamp>& times,
                                    const std::vector<int>& tf_list,
                                    const MethodRunParams& params, double top_fraction,
                                    bool filter_uncited) {
    if (times.empty()) throw std::invalid_argument("need at least one testing time");
    if (tf_list.empty()) throw std::invalid_argument("need at least one future window");
    validate_params(method, params);

    MultiTimeAverage result;
    result.method_tag = std::string(method_tag(method));
    result.testing_times = times;
    result.points.resize(tf_list.size());
    for (std::size_t pi = 0; pi < tf_list.size(); ++pi) {
        result.points[pi].future_window_months = tf_list[pi];
    }

    const double n_times = static_cast<double>(times.size());
    for (const MonthStamp t : times) {
        // One snapshot and one score vector per time, reused for every T_f.
        int current_tf = tf_list.front();
        try {
            const GraphSnapshot snapshot = make_snapshot(parent, t, filter_uncited);
            const ScoreVector scores = run_method(snapshot, method, params);
            for (std::size_t pi = 0; pi < tf_list.size(); ++pi) {
                current_tf = tf_list[pi];
                const FuturePopularity f = future_popularity(snapshot, current_tf);
                const EvalReport report = evaluate_scores(snapshot, scores, f, top_fraction);
                TfCurvePoint& point = result.points[pi];
                point.mean_pearson += report.pearson.value / n_times;
                point.mean_spearman += report.spearman.value / n_times;
                point.mean_precision += report.precision / n_times;
                point.all_converged = point.all_converged && report.convergence_ok;
                point.any_degenerate = point.any_degenerate || report.pearson.degenerate ||
                                       report.spearman.degenerate;
            }
        } catch (...) {
            rethrow_with_context(t, current_tf);
        }
    }
    return result;
}

std::string to_json_string(const MultiTimeAverage& result, const RunMetadata* metadata) {
    nlohmann::ordered_json doc;
    doc["method"] = result.method_tag;
    nlohmann::ordered_json times = nlohmann::ordered_json::array();
    for (const MonthStamp t : result.testing_times) times.push_back(t.to_string());
    doc["testing_times"] = std::move(times);
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const TfCurvePoint& p : result.points) {
        nlohmann::ordered_json e;
        e["tf_months"] = p.future_window_months;
        e["mean_pearson"] = p.mean_pearson;
        e["mean_spearman"] = p.mean_spearman;
        e["mean_precision"] = p.mean_precision;
        e["all_converged"] = p.all_converged;
        e["any_degenerate"] = p.any_degenerate;
        points.push_back(std::move(e));
    }
    doc["points"] = std::move(points);
    if (metadata != nullptr) doc["meta"] = meta_json(metadata);
    return doc.dump(2) + "\n";
}

MultiTimeSweep multi_time_sweep(const CitationGraph& parent, Method method,
                                const std::vector<MonthStamp>& times, int future_window_months,
                                std::vector<double> tau_grid, std::vector<double> alpha_grid,
                                const SweepOptions& options, bool filter_uncited) {
    if (times.empty()) throw std::invalid_argument("need at least one testing time");
    check_sweep_method(method);
    check_grids(tau_grid, alpha_grid);

    MultiTimeSweep result;
    result.method_tag = std::string(method_tag(method));
    result.testing_times = times;
    result.future_window_months = future_window_months;
    result.tau_grid = std::move(tau_grid);
    result.alpha_grid = std::move(alpha_grid);
    const std::size_t cell_count = result.tau_grid.size() * result.alpha_grid.size();
    result.cells.resize(cell_count);
    for (std::size_t i = 0; i < cell_count; ++i) {
        result.cells[i].tau = result.tau_grid[i / result.alpha_grid.size()];
        result.cells[i].alpha = result.alpha_grid[i % result.alpha_grid.size()];
    }

    const double n_times = static_cast<double>(times.size());
    for (const MonthStamp t : times) {
        SweepResult sweep;
        try {
            const GraphSnapshot snapshot = make_snapshot(parent, t, filter_uncited);
            const FuturePopularity f = future_popularity(snapshot, future_window_months);
            sweep = parameter_sweep(snapshot, method, f, result.tau_grid, result.alpha_grid,
                                    options);
        } catch (...) {
            rethrow_with_context(t, future_window_months);
        }
        for (std::size_t i = 0; i < cell_count; ++i) {
            MultiTimeCell& cell = result.cells[i];
            cell.mean_pearson += sweep.cells[i].pearson / n_times;
            cell.mean_spearman += sweep.cells[i].spearman / n_times;
            cell.mean_precision += sweep.cells[i].precision / n_times;
            cell.all_converged = cell.all_converged && sweep.cells[i].converged;
            cell.any_degenerate = cell.any_degenerate || sweep.cells[i].degenerate;
        }
    }

    std::vector<std::array<double, 3>> values(cell_count);
    for (std::size_t i = 0; i < cell_count; ++i) {
        values[i] = {result.cells[i].mean_pearson, result.cells[i].mean_spearman,
                     result.cells[i].mean_precision};
    }
    result.best = pick_best(result.tau_grid, result.alpha_grid, values);
    return result;
}

std::string to_json_string(const MultiTimeSweep& result, const RunMetadata* metadata) {
    nlohmann::ordered_json doc;
    doc["method"] = result.method_tag;
    nlohmann::ordered_json times = nlohmann::ordered_json::array();
    for (const MonthStamp t : result.testing_times) times.push_back(t.to_string());
    doc["testing_times"] = std::move(times);
    doc["tf_months"] = result.future_window_months;
    doc["tau_grid"] = result.tau_grid;
    doc["alpha_grid"] = result.alpha_grid;
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const MultiTimeCell& cell : result.cells) {
        nlohmann::ordered_json c;
        c["tau"] = cell.tau;
        c["alpha"] = cell.alpha;
        c["mean_pearson"] = cell.mean_pearson;
        c["mean_spearman"] = cell.mean_spearman;
        c["mean_precision"] = cell.mean_precision;
        c["all_converged"] = cell.all_converged;
        c["any_degenerate"] = cell.any_degenerate;
        cells.push_back(std::move(c));
    }
    doc["cells"] = std::move(cells);
    doc["best"] = best_json(result.best);
    if (metadata != nullptr) doc["meta"] = meta_json(metadata);
    return doc.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& out, const MultiTimeSweep& result,
                     const RunMetadata& metadata) {
    write_comment_header(out, metadata);
    out << "tau,alpha,metric,value\n";
    for (const MultiTimeCell& cell : result.cells) {
        const std::pair<std::string_view, double> rows[] = {
            {metric_tag(MetricKind::pearson), cell.mean_pearson},
            {metric_tag(MetricKind::spearman), cell.mean_spearman},
            {metric_tag(MetricKind::precision), cell.mean_precision},
        };
        for (const auto& [name, value] : rows) {
            out << format_double(cell.tau) << ',' << format_double(cell.alpha) << ',' << name
                << ',' << format_double17(value) << '\n';
        }
    }
}

} // namespace citepop
