#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "citepop/graph.hpp"

namespace citepop {

// Cleaning counters. Invariants: raw - kept = dropped_incomplete for papers
// and = dropped_unknown_endpoint + dropped_self_loops + dropped_duplicates
// for edges. flagged_out_of_range papers are kept, only counted.
struct CorpusStats {
    std::size_t raw_paper_count = 0;
    std::size_t kept_paper_count = 0;
    std::size_t raw_edge_count = 0;
    std::size_t kept_edge_count = 0;
    std::size_t dropped_incomplete = 0;
    std::size_t dropped_self_loops = 0;
    std::size_t dropped_duplicates = 0;
    std::size_t dropped_unknown_endpoint = 0;
    std::size_t flagged_out_of_range = 0; // valid date outside 1893..2017

    void absorb(const CorpusStats& other);
};

std::string to_json_string(const CorpusStats& stats);

struct ParsedPapers {
    std::vector<PaperRecord> records;
    CorpusStats stats;
};

struct ParsedEdges {
    std::vector<std::pair<std::string, std::string>> edges; // (citing, cited)
    CorpusStats stats;
};

// CSV with a required `external_id,pub_date` header; '#' comment lines and
// blank lines are skipped. Dates are YYYY-MM or YYYY-MM-DD with the day
// dropped. Rows with a missing id or missing/invalid date are counted as
// dropped_incomplete, never fatal; a wrong header is fatal.
ParsedPapers parse_metadata(std::istream& in);
ParsedPapers parse_metadata_file(const std::string& path);

// CSV with a required `citing_id,cited_id` header. Edges touching ids not
// in `known` count as dropped_unknown_endpoint; self loops and repeated
// pairs are dropped and counted. No surviving edge at all is fatal.
ParsedEdges parse_edges(std::istream& in, const std::vector<PaperRecord>& known);
ParsedEdges parse_edges_file(const std::string& path, const std::vector<PaperRecord>& known);

struct LoadedCorpus {
    CitationGraph graph;
    CorpusStats stats;
};

// Parses both files and builds the graph; stats.kept_edge_count equals the
// graph's edge count exactly.
LoadedCorpus load_corpus(const std::string& papers_path, const std::string& edges_path);

} // namespace citepop
