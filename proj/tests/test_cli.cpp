#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "citepop/evaluation.hpp"
#include "citepop/ingest.hpp"
#include "citepop/snapshot.hpp"

using namespace citepop;
namespace fs = std::filesystem;

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Runs the installed binary through the shell; stdout and stderr are
// captured together.
CommandResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const fs::path log = "cli_run_" + std::to_string(counter++) + ".log";
    std::string cmd;
    if (!env_prefix.empty()) cmd += env_prefix + " ";
    cmd += std::string(CITEPOP_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    CommandResult result;
    REQUIRE(raw != -1);
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.output = slurp(log);
    fs::remove(log);
    return result;
}

void cleanup_corpus() { fs::remove_all("cli_corpus_tmp"); }

// Shared synthetic corpus: 400 papers over 20 months starting 1990-01.
const std::string& corpus_dir() {
    static const std::string dir = [] {
        const std::string d = "cli_corpus_tmp";
        fs::remove_all(d);
        const auto r = run_cli("synth --n 400 --papers-per-month 20 --m 5 --seed 3 --out " + d);
        REQUIRE(r.exit_code == 0);
        std::atexit(cleanup_corpus);
        return d;
    }();
    return dir;
}

std::string corpus_args() {
    return "--papers " + corpus_dir() + "/papers.csv --edges " + corpus_dir() + "/edges.csv";
}

} // namespace

TEST_CASE("version and help exit cleanly") {
    const auto version = run_cli("--version");
    CHECK(version.exit_code == 0);
    CHECK(version.output.find("0.1.0") != std::string::npos);
    const auto help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.output.find("rank") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("rank --method ad").exit_code == 2); // missing required options
    // Bad parameter values are rejected before any file is read.
    const auto bad_alpha = run_cli(
        "rank --papers no_such.csv --edges no_such.csv --method ad --alpha 1.5 --t 2000-01 "
        "--out never.csv");
    CHECK(bad_alpha.exit_code == 2);
    CHECK_FALSE(fs::exists("never.csv"));
    const auto bad_month = run_cli(
        "rank --papers no_such.csv --edges no_such.csv --method ad --t 200-1 --out never.csv");
    CHECK(bad_month.exit_code == 2);
    const auto bad_window = run_cli(
        "rank --papers no_such.csv --edges no_such.csv --method rs --window 7 --t 2000-01 "
        "--out never.csv");
    CHECK(bad_window.exit_code == 2);
}

TEST_CASE("data errors exit with code 1") {
    const auto missing = run_cli("ingest --papers no_such.csv --edges no_such.csv");
    CHECK(missing.exit_code == 1);

    fs::create_directories("cli_data_tmp");
    {
        std::ofstream bad("cli_data_tmp/papers.csv");
        bad << "wrong,header\nA,2000-01\n";
        std::ofstream edges("cli_data_tmp/edges.csv");
        edges << "citing_id,cited_id\n";
    }
    const auto header = run_cli("ingest --papers cli_data_tmp/papers.csv --edges "
                                "cli_data_tmp/edges.csv");
    CHECK(header.exit_code == 1);

    // A testing time before every publication leaves an empty snapshot.
    const auto empty = run_cli("rank " + corpus_args() +
                               " --method pr --t 1980-01 --out cli_data_tmp/never.csv");
    CHECK(empty.exit_code == 1);
    CHECK_FALSE(fs::exists("cli_data_tmp/never.csv"));
    fs::remove_all("cli_data_tmp");
}

TEST_CASE("ingest reports cleaning statistics as JSON") {
    const auto r = run_cli("ingest " + corpus_args());
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["raw_paper_count"] == 400);
    CHECK(doc["kept_paper_count"] == 400);
    CHECK(doc["kept_edge_count"].get<std::size_t>() > 0);
}

TEST_CASE("synthesis is reproducible byte for byte") {
    const auto a = run_cli("synth --n 120 --papers-per-month 12 --m 4 --seed 9 --out cli_syn_a");
    const auto b = run_cli("synth --n 120 --papers-per-month 12 --m 4 --seed 9 --out cli_syn_b");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    for (const char* name : {"papers.csv", "edges.csv", "fitness.json"}) {
        CHECK(slurp(fs::path("cli_syn_a") / name) == slurp(fs::path("cli_syn_b") / name));
    }
    fs::remove_all("cli_syn_a");
    fs::remove_all("cli_syn_b");
}

TEST_CASE("rank writes a deterministic ordered score file") {
    fs::create_directories("cli_rank_tmp");
    const std::string cmd = "rank " + corpus_args() +
                            " --method ad --tau 24 --alpha 0.74 --t 1990-10 --out ";
    const auto a = run_cli(cmd + "cli_rank_tmp/a.csv");
    const auto b = run_cli(cmd + "cli_rank_tmp/b.csv");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    const std::string text = slurp("cli_rank_tmp/a.csv");
    CHECK(text == slurp("cli_rank_tmp/b.csv"));
    CHECK(text.find("# tool=citepop") == 0);
    CHECK(text.find("# method=ad") != std::string::npos);
    CHECK(text.find("external_id,score,rank") != std::string::npos);
    fs::remove_all("cli_rank_tmp");
}

TEST_CASE("relative outputs honour CITEPOP_OUTPUT_DIR") {
    fs::remove_all("cli_env_tmp");
    const auto r = run_cli("rank " + corpus_args() +
                               " --method pr --t 1990-10 --out scores_env.csv",
                           "CITEPOP_OUTPUT_DIR=cli_env_tmp");
    CHECK(r.exit_code == 0);
    CHECK(fs::exists("cli_env_tmp/scores_env.csv"));
    CHECK_FALSE(fs::exists("scores_env.csv"));
    fs::remove_all("cli_env_tmp");
}

TEST_CASE("strict mode turns non-convergence into exit 3") {
    const auto r = run_cli("rank " + corpus_args() +
                           " --method pr --max-iter 1 --strict --t 1990-10 --out strict.csv");
    CHECK(r.exit_code == 3);
    CHECK_FALSE(fs::exists("strict.csv"));
    // Without --strict the same run succeeds and writes the file.
    const auto lax = run_cli("rank " + corpus_args() +
                             " --method pr --max-iter 1 --t 1990-10 --out strict.csv");
    CHECK(lax.exit_code == 0);
    CHECK(fs::exists("strict.csv"));
    fs::remove("strict.csv");
}

TEST_CASE("evaluate emits a report that matches the library") {
    const auto r = run_cli("evaluate " + corpus_args() +
                           " --method ad --tau 24 --alpha 0.74 --t 1990-10 --tf 6 --fraction 0.05");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);

    const LoadedCorpus corpus =
        load_corpus(corpus_dir() + "/papers.csv", corpus_dir() + "/edges.csv");
    const GraphSnapshot snap = make_snapshot(corpus.graph, MonthStamp::from_ym(1990, 10), true);
    MethodRunParams params;
    params.tau = 24.0;
    params.alpha = 0.74;
    const FuturePopularity f = future_popularity(snap, 6);
    const EvalReport direct =
        evaluate_scores(snap, run_method(snap, Method::age_diffusion, params), f, 0.05);

    CHECK(doc["method"] == "age_diffusion");
    CHECK(doc["t"] == "1990-10");
    CHECK(doc["tf_months"] == 6);
    CHECK(doc["node_count"] == snap.node_count());
    CHECK(doc["pearson"].get<double>() == doctest::Approx(direct.pearson.value).epsilon(1e-15));
    CHECK(doc["spearman"].get<double>() ==
          doctest::Approx(direct.spearman.value).epsilon(1e-15));
    CHECK(doc["precision"].get<double>() == direct.precision);
    CHECK(doc["n_top"] == direct.n_top);
}

TEST_CASE("sweep writes both output formats") {
    fs::create_directories("cli_sweep_tmp");
    const std::string common = "sweep " + corpus_args() +
                               " --method cr --t 1990-10 --tf 6 --fraction 0.05 --tau-grid 12,24 "
                               "--alpha-grid 0.3,0.7 ";
    const auto csv = run_cli(common + "--format csv --out cli_sweep_tmp/sweep.csv");
    REQUIRE(csv.exit_code == 0);
    const std::string text = slurp("cli_sweep_tmp/sweep.csv");
    CHECK(text.find("# tool=citepop") == 0);
    CHECK(text.find("tau,alpha,metric,value\n") != std::string::npos);

    const auto json = run_cli(common + "--format json --out cli_sweep_tmp/sweep.json");
    REQUIRE(json.exit_code == 0);
    const auto doc = nlohmann::json::parse(slurp("cli_sweep_tmp/sweep.json"));
    CHECK(doc["cells"].size() == 4);
    CHECK(doc["best"].size() == 3);

    // Exactly one of --t, --times, --seed must be given.
    const auto both = run_cli("sweep " + corpus_args() +
                              " --method cr --t 1990-10 --times 1990-09,1990-10 --tf 6 "
                              "--tau-grid 12 --alpha-grid 0.3 --out cli_sweep_tmp/x.csv");
    CHECK(both.exit_code == 2);
    const auto neither = run_cli("sweep " + corpus_args() +
                                 " --method cr --tf 6 --tau-grid 12 --alpha-grid 0.3 "
                                 "--out cli_sweep_tmp/x.csv");
    CHECK(neither.exit_code == 2);
    const auto pr = run_cli("sweep " + corpus_args() +
                            " --method pr --t 1990-10 --tf 6 --tau-grid 12 --alpha-grid 0.3 "
                            "--out cli_sweep_tmp/x.csv");
    CHECK(pr.exit_code == 2);
    fs::remove_all("cli_sweep_tmp");
}

TEST_CASE("figures exports every data file") {
    fs::remove_all("cli_fig_tmp");
    const auto r = run_cli("figures " + corpus_args() +
                           " --t 1990-10 --tf 6 --tf-list 3,6 --times 1990-08,1990-10 --fraction 0.05 "
                           "--tau-grid 12,24 --alpha-grid 0.3,0.7 --out-dir cli_fig_tmp");
    REQUIRE(r.exit_code == 0);
    for (const char* name :
         {"fig1_sweep_ad.csv", "fig2_tf_curves.csv", "fig3_ranks_pr.csv", "fig3_ranks_cr.csv",
          "fig3_ranks_rs.csv", "fig4_delta_r.csv", "fig5_age_cdf.csv", "fig6_detection.csv"}) {
        CHECK(fs::exists(fs::path("cli_fig_tmp") / name));
    }
    // Byte-identical on a rerun.
    const std::string first = slurp("cli_fig_tmp/fig2_tf_curves.csv");
    const auto again = run_cli("figures " + corpus_args() +
                               " --t 1990-10 --tf 6 --tf-list 3,6 --times 1990-08,1990-10 --fraction 0.05 "
                               "--tau-grid 12,24 --alpha-grid 0.3,0.7 --out-dir cli_fig_tmp");
    REQUIRE(again.exit_code == 0);
    CHECK(slurp("cli_fig_tmp/fig2_tf_curves.csv") == first);
    fs::remove_all("cli_fig_tmp");
}
