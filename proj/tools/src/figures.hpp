#pragma once

#include <string>
#include <vector>

#include "citepop/evaluation.hpp"
#include "citepop/month.hpp"

namespace citepop::cli {

struct FiguresConfig {
    std::string papers_path;
    std::string edges_path;
    std::string out_dir = ".";
    MonthStamp testing_time;
    int tf_months = 0;
    std::vector<int> tf_list;          // fig2 curve windows
    std::vector<MonthStamp> times;     // fig2 averaging times
    std::vector<double> tau_grid;
    std::vector<double> alpha_grid;
    MethodRunParams params;            // cr/ad tau+alpha, pr damping, rs window
    double top_fraction = 0.01;
    int bin_width_months = 60;
    int cdf_bin_width_months = 12;
    unsigned threads = 1;
    bool filter_uncited = true;
    bool strict = false;
};

// Computes every figure export in one pass over shared rankings, then
// writes all files in a fixed order. Returns 0, or 3 when strict mode saw
// any non-converged ranking.
int run_figures(const FiguresConfig& config);

} // namespace citepop::cli
