#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "citepop/errors.hpp"
#include "citepop/ingest.hpp"

using namespace citepop;

namespace {

ParsedPapers papers_from(const std::string& text) {
    std::istringstream in(text);
    return parse_metadata(in);
}

ParsedEdges edges_from(const std::string& text, const std::vector<PaperRecord>& known) {
    std::istringstream in(text);
    return parse_edges(in, known);
}

const std::string kPapersHeader = "external_id,pub_date\n";
const std::string kEdgesHeader = "citing_id,cited_id\n";

} // namespace

TEST_CASE("paper metadata requires the exact header") {
    CHECK_THROWS_AS(papers_from(""), DataError);
    CHECK_THROWS_AS(papers_from("id,date\nA,2000-01\n"), DataError);
    CHECK_THROWS_AS(papers_from("external_id,pub_date,extra\n"), DataError);
    CHECK_NOTHROW(papers_from(kPapersHeader));
    CHECK_NOTHROW(papers_from("# leading comment\n\n" + kPapersHeader + "A,2000-01\n"));
}

TEST_CASE("paper rows parse dates and drop the day") {
    const auto out = papers_from(kPapersHeader + "PhysRev.1.1,1893-07-01\nA,2000-11\n");
    REQUIRE(out.records.size() == 2);
    CHECK(out.records[0].external_id == "PhysRev.1.1");
    CHECK(out.records[0].pub_month == MonthStamp::from_ym(1893, 7));
    CHECK(out.records[1].pub_month == MonthStamp::from_ym(2000, 11));
    CHECK(out.stats.raw_paper_count == 2);
    CHECK(out.stats.kept_paper_count == 2);
    CHECK(out.stats.dropped_incomplete == 0);
    CHECK(out.stats.flagged_out_of_range == 0);
}

TEST_CASE("incomplete or malformed paper rows are counted, not fatal") {
    const auto out = papers_from(kPapersHeader + "A,2000-01\n"     // kept
                                                 ",2000-02\n"      // missing id
                                                 "B\n"             // no comma
                                                 "C,\n"            // empty date
                                                 "D,20x0-01\n" // mangled date
                                                 "E,2000-13\n"     // month out of range
                                                 "F,1880-05\n"     // before the epoch
                                                 "G,2000-01-42\n"  // impossible day
                                                 "H,2001-02-28\n"); // kept
    CHECK(out.stats.raw_paper_count == 9);
    CHECK(out.stats.kept_paper_count == 2);
    CHECK(out.stats.dropped_incomplete == 7);
    REQUIRE(out.records.size() == 2);
    CHECK(out.records[1].external_id == "H");
    CHECK(out.records[1].pub_month == MonthStamp::from_ym(2001, 2));
}

TEST_CASE("comments, blank lines and CRLF endings are tolerated") {
    const auto out = papers_from("# generated\r\n" + kPapersHeader +
                                 "A,2000-01\r\n\r\n# mid comment\nB,2000-02\n");
    CHECK(out.stats.raw_paper_count == 2);
    CHECK(out.records.size() == 2);
    CHECK(out.records[1].external_id == "B");
}

TEST_CASE("years outside the corpus era are kept but flagged") {
    const auto out = papers_from(kPapersHeader + "A,2017-12\nB,2018-01\nC,2100-06\n");
    CHECK(out.stats.kept_paper_count == 3);
    CHECK(out.stats.flagged_out_of_range == 2); // B and C; 2017 is still in range
    REQUIRE(out.records.size() == 3);
}

TEST_CASE("edge parsing requires its header and at least one usable edge") {
    const std::vector<PaperRecord> known = {{"A", MonthStamp::from_ym(2000, 1)},
                                            {"B", MonthStamp::from_ym(2001, 1)}};
    CHECK_THROWS_AS(edges_from("", known), DataError);
    CHECK_THROWS_AS(edges_from("cited_id,citing_id\n", known), DataError);
    CHECK_THROWS_AS(edges_from(kEdgesHeader, known), DataError); // zero edges
    CHECK_THROWS_AS(edges_from(kEdgesHeader + "X,Y\n", known), DataError);
    CHECK_NOTHROW(edges_from(kEdgesHeader + "B,A\n", known));
}

TEST_CASE("edge cleaning counts each drop reason") {
    const std::vector<PaperRecord> known = {{"A", MonthStamp::from_ym(2000, 1)},
                                            {"B", MonthStamp::from_ym(2001, 1)},
                                            {"C", MonthStamp::from_ym(2002, 1)}};
    const auto out = edges_from(kEdgesHeader + "B,A\n"   // kept
                                               "B,A\n"   // duplicate
                                               "C,C\n"   // self loop
                                               "C,X\n"   // unknown endpoint
                                               "X,A\n"   // unknown endpoint
                                               "C\n"     // malformed: counted as unknown
                                               "C,\n"    // malformed: counted as unknown
                                               "C,B\n",  // kept
                                known);
    CHECK(out.stats.raw_edge_count == 8);
    CHECK(out.stats.kept_edge_count == 2);
    CHECK(out.stats.dropped_duplicates == 1);
    CHECK(out.stats.dropped_self_loops == 1);
    CHECK(out.stats.dropped_unknown_endpoint == 4);
    CHECK(out.stats.raw_edge_count ==
          out.stats.kept_edge_count + out.stats.dropped_duplicates +
              out.stats.dropped_self_loops + out.stats.dropped_unknown_endpoint);
    REQUIRE(out.edges.size() == 2);
    CHECK(out.edges[0] == std::pair<std::string, std::string>{"B", "A"});
    CHECK(out.edges[1] == std::pair<std::string, std::string>{"C", "B"});
}

TEST_CASE("paper counters always reconcile") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::string text = kPapersHeader;
        const std::size_t rows = rng() % 40;
        for (std::size_t i = 0; i < rows; ++i) {
            switch (rng() % 4) {
            case 0: text += "K" + std::to_string(i) + ",19" + std::to_string(90 + i % 10) + "-0" +
                            std::to_string(1 + i % 9) + "\n";
                break;
            case 1: text += "M" + std::to_string(i) + "\n"; break;
            case 2: text += ",2000-01\n"; break;
            case 3: text += "F" + std::to_string(i) + ",2020-01\n"; break;
            }
        }
        const auto out = papers_from(text);
        CHECK(out.stats.raw_paper_count ==
              out.stats.kept_paper_count + out.stats.dropped_incomplete);
        CHECK(out.stats.kept_paper_count == out.records.size());
        CHECK(out.stats.flagged_out_of_range <= out.stats.kept_paper_count);
    }
}

TEST_CASE("loading a corpus ties the stats to the built graph") {
    const std::string dir = "ingest_test_tmp";
    std::filesystem::create_directories(dir);
    {
        std::ofstream papers(dir + "/papers.csv");
        papers << kPapersHeader << "A,2000-01\nB,2000-05\nC,2001-01\nbad-row\nD,2020-03\n";
        std::ofstream edges(dir + "/edges.csv");
        edges << kEdgesHeader << "B,A\nC,A\nC,B\nC,B\nA,A\nC,zzz\n";
    }
    const LoadedCorpus corpus = load_corpus(dir + "/papers.csv", dir + "/edges.csv");
    CHECK(corpus.stats.raw_paper_count == 5);
    CHECK(corpus.stats.kept_paper_count == 4);
    CHECK(corpus.stats.dropped_incomplete == 1);
    CHECK(corpus.stats.flagged_out_of_range == 1);
    CHECK(corpus.stats.raw_edge_count == 6);
    CHECK(corpus.stats.kept_edge_count == 3);
    CHECK(corpus.stats.dropped_duplicates == 1);
    CHECK(corpus.stats.dropped_self_loops == 1);
    CHECK(corpus.stats.dropped_unknown_endpoint == 1);
    CHECK(corpus.graph.node_count() == 4);
    CHECK(corpus.graph.edge_count() == corpus.stats.kept_edge_count);
    CHECK(corpus.graph.find("D").has_value());

    CHECK_THROWS_AS(load_corpus(dir + "/papers.csv", dir + "/nope.csv"), DataError);
    CHECK_THROWS_AS(load_corpus(dir + "/nope.csv", dir + "/edges.csv"), DataError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("row order does not change the kept set") {
    std::vector<std::string> paper_rows = {"A,2000-01", "B,2000-02", "C,2000-03", "D,2000-04",
                                           "E,2000-05"};
    std::vector<std::string> edge_rows = {"B,A", "C,A", "C,B", "D,C", "E,A", "E,D"};
    std::mt19937_64 rng(11);

    auto run = [&](const std::vector<std::string>& papers, const std::vector<std::string>& edges) {
        std::string ptext = kPapersHeader;
        for (const auto& r : papers) ptext += r + "\n";
        const auto parsed = papers_from(ptext);
        std::string etext = kEdgesHeader;
        for (const auto& r : edges) etext += r + "\n";
        const auto eparsed = edges_from(etext, parsed.records);
        GraphBuild build = build_graph(parsed.records, eparsed.edges);
        return build;
    };

    const GraphBuild reference = run(paper_rows, edge_rows);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(paper_rows.begin(), paper_rows.end(), rng);
        std::shuffle(edge_rows.begin(), edge_rows.end(), rng);
        const GraphBuild shuffled = run(paper_rows, edge_rows);
        REQUIRE(shuffled.graph.node_count() == reference.graph.node_count());
        CHECK(shuffled.graph.edge_count() == reference.graph.edge_count());
        for (NodeIndex v = 0; v < reference.graph.node_count(); ++v) {
            CHECK(shuffled.graph.external_id(v) == reference.graph.external_id(v));
            const auto a = reference.graph.references(v);
            const auto b = shuffled.graph.references(v);
            CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
        }
    }
}

TEST_CASE("stats serialize with stable key names") {
    CorpusStats stats;
    stats.raw_paper_count = 3;
    stats.kept_edge_count = 2;
    const std::string json = to_json_string(stats);
    for (const char* key :
         {"raw_paper_count", "kept_paper_count", "raw_edge_count", "kept_edge_count",
          "dropped_incomplete", "dropped_self_loops", "dropped_duplicates",
          "dropped_unknown_endpoint", "flagged_out_of_range"}) {
        CHECK(json.find(key) != std::string::npos);
    }
    CHECK(json.find("\"raw_paper_count\": 3") != std::string::npos);
}
