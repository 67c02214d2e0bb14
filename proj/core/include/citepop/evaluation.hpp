#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citepop/future_popularity.hpp"
#include "citepop/graph.hpp"
#include "citepop/io.hpp"
#include "citepop/metrics.hpp"
#include "citepop/month.hpp"
#include "citepop/score.hpp"
#include "citepop/snapshot.hpp"

namespace citepop {

enum class Method {
    pagerank,
    citerank,
    rescaled_pagerank,
    age_diffusion,
};

std::string_view method_tag(Method m);
std::optional<Method> method_from_tag(std::string_view tag); // pr|cr|rs|ad

enum class MetricKind {
    pearson,
    spearman,
    precision,
};

std::string_view metric_tag(MetricKind m);
inline constexpr MetricKind kAllMetrics[] = {MetricKind::pearson, MetricKind::spearman,
                                             MetricKind::precision};

// Parameter bag covering every method; each method reads only its own
// fields. max_terms 0 means the method default.
struct MethodRunParams {
    double damping = 0.5;
    double tau = 24.0;
    double alpha = 0.5;
    int rescale_window = 1000;
    double tolerance = 1e-12;
    int max_iterations = 1000;
    int max_terms = 0;
    double step_decay_base = 10.0;
};

// Rejects out-of-range values for the fields the method uses, without
// touching any data. The CLI calls this before reading files.
void validate_params(Method method, const MethodRunParams& params);

ScoreVector run_method(const GraphSnapshot& snapshot, Method method,
                       const MethodRunParams& params);

struct EvalReport {
    std::string method_tag;
    MonthStamp testing_time;
    int future_window_months = 0;
    std::size_t node_count = 0;
    CorrelationResult pearson;
    CorrelationResult spearman;
    double precision = 0.0;
    std::size_t n_top = 0;
    bool convergence_ok = true;
};

EvalReport evaluate_scores(const GraphSnapshot& snapshot, const ScoreVector& scores,
                           const FuturePopularity& f, double top_fraction = 0.01);

std::string to_json_string(const EvalReport& report, const RunMetadata* metadata = nullptr);

struct SweepOptions {
    double top_fraction = 0.01;
    double tolerance = 1e-12;
    int max_terms = 0; // 0 = method default
    double step_decay_base = 10.0;
    unsigned threads = 1;
};

struct SweepCell {
    double tau = 0.0;
    double alpha = 0.0;
    double pearson = 0.0;
    double spearman = 0.0;
    double precision = 0.0;
    bool converged = true;
    bool degenerate = false;
};

struct SweepBest {
    MetricKind metric = MetricKind::pearson;
    double tau = 0.0;
    double alpha = 0.0;
    double value = 0.0;
};

struct SweepResult {
    std::string method_tag;
    MonthStamp testing_time;
    int future_window_months = 0;
    std::vector<double> tau_grid;
    std::vector<double> alpha_grid;
    std::vector<SweepCell> cells; // tau-major: cells[ti * alpha_grid.size() + ai]
    std::vector<SweepBest> best;  // one entry per MetricKind; first cell wins ties
};

// Grid evaluation for the seed-propagation methods (citerank or
// age_diffusion). Cells are independent; `threads` workers fill the grid
// with results gathered in grid order, so output is deterministic.
SweepResult parameter_sweep(const GraphSnapshot& snapshot, Method method,
                            const FuturePopularity& f, std::vector<double> tau_grid,
                            std::vector<double> alpha_grid, const SweepOptions& options = {});

std::string to_json_string(const SweepResult& result, const RunMetadata* metadata = nullptr);

// Long form `tau,alpha,metric,value`, cells in grid order.
void write_sweep_csv(std::ostream& out, const SweepResult& result, const RunMetadata& metadata);

// Testing times drawn uniformly from [lo, hi] inclusive, deterministic in
// the seed. Duplicates are possible by design.
std::vector<MonthStamp> draw_testing_times(std::uint64_t seed, std::size_t count,
                                           MonthStamp lo = MonthStamp::from_ym(1990, 1),
                                           MonthStamp hi = MonthStamp::from_ym(2006, 1));

struct TfCurvePoint {
    int future_window_months = 0;
    double mean_pearson = 0.0;
    double mean_spearman = 0.0;
    double mean_precision = 0.0;
    bool all_converged = true;
    bool any_degenerate = false;
};

struct MultiTimeAverage {
    std::string method_tag;
    std::vector<MonthStamp> testing_times;
    std::vector<TfCurvePoint> points; // aligned to the tf list
};

// Mean of each metric across testing times, per future window, for one
// parameter set. A failing combination aborts with its (t, T_f) identified.
MultiTimeAverage multi_time_average(const CitationGraph& parent, Method method,
                                    const std::vector<MonthStamp>& times,
                                    const std::vector<int>& tf_list,
                                    const MethodRunParams& params, double top_fraction = 0.01,
                                    bool filter_uncited = true);

std::string to_json_string(const MultiTimeAverage& result, const RunMetadata* metadata = nullptr);

struct MultiTimeCell {
    double tau = 0.0;
    double alpha = 0.0;
    double mean_pearson = 0.0;
    double mean_spearman = 0.0;
    double mean_precision = 0.0;
    bool all_converged = true;
    bool any_degenerate = false;
};

struct MultiTimeSweep {
    std::string method_tag;
    std::vector<MonthStamp> testing_times;
    int future_window_months = 0;
    std::vector<double> tau_grid;
    std::vector<double> alpha_grid;
    std::vector<MultiTimeCell> cells; // tau-major
    std::vector<SweepBest> best;      // argmax of the per-cell means
};

// Per-cell means of parameter_sweep across testing times; feeds the "best
// parameters per metric" selection when curves are averaged over times.
MultiTimeSweep multi_time_sweep(const CitationGraph& parent, Method method,
                                const std::vector<MonthStamp>& times, int future_window_months,
                                std::vector<double> tau_grid, std::vector<double> alpha_grid,
                                const SweepOptions& options = {}, bool filter_uncited = true);

std::string to_json_string(const MultiTimeSweep& result, const RunMetadata* metadata = nullptr);

// Long form `tau,alpha,metric,value` over the per-cell means.
void write_sweep_csv(std::ostream& out, const MultiTimeSweep& result,
                     const RunMetadata& metadata);

} // namespace citepop
