#include "citepop/ingest.hpp"

#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "citepop/errors.hpp"

namespace citepop {

void CorpusStats::absorb(const CorpusStats& other) {
    raw_paper_count += other.raw_paper_count;
    kept_paper_count += other.kept_paper_count;
    raw_edge_count += other.raw_edge_count;
    kept_edge_count += other.kept_edge_count;
    dropped_incomplete += other.dropped_incomplete;
    dropped_self_loops += other.dropped_self_loops;
    dropped_duplicates += other.dropped_duplicates;
    dropped_unknown_endpoint += other.dropped_unknown_endpoint;
    flagged_out_of_range += other.flagged_out_of_range;
}

std::string to_json_string(const CorpusStats& stats) {
    std::ostringstream out;
    out << "{\n"
        << "  \"raw_paper_count\": " << stats.raw_paper_count << ",\n"
        << "  \"kept_paper_count\": " << stats.kept_paper_count << ",\n"
        << "  \"raw_edge_count\": " << stats.raw_edge_count << ",\n"
        << "  \"kept_edge_count\": " << stats.kept_edge_count << ",\n"
        << "  \"dropped_incomplete\": " << stats.dropped_incomplete << ",\n"
        << "  \"dropped_self_loops\": " << stats.dropped_self_loops << ",\n"
        << "  \"dropped_duplicates\": " << stats.dropped_duplicates << ",\n"
        << "  \"dropped_unknown_endpoint\": " << stats.dropped_unknown_endpoint << ",\n"
        << "  \"flagged_out_of_range\": " << stats.flagged_out_of_range << "\n"
        << "}\n";
    return out.str();
}

namespace {

// Strips a trailing '\r' so CRLF files parse like LF files.
std::string_view trim_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

bool skippable(std::string_view line) {
    return line.empty() || line.front() == '#';
}

// Reads lines until the first non-comment line and checks it against the
// expected header. Throws on mismatch or a header-less file.
void expect_header(std::istream& in, std::string_view expected) {
    std::string line;
    while (std::getline(in, line)) {
        const std::string_view row = trim_cr(line);
        if (skippable(row)) continue;
        if (row != expected) {
            throw DataError("expected header '" + std::string(expected) + "', got '" +
                            std::string(row) + "'");
        }
        return;
    }
    throw DataError("missing header '" + std::string(expected) + "'");
}

constexpr int kFlagYearLo = 1893;
constexpr int kFlagYearHi = 2017;

} // namespace

ParsedPapers parse_metadata(std::istream& in) {
    expect_header(in, "external_id,pub_date");
    ParsedPapers out;
    std::string line;
    while (std::getline(in, line)) {
        const std::string_view row = trim_cr(line);
        if (skippable(row)) continue;
        ++out.stats.raw_paper_count;
        const std::size_t comma = row.find(',');
        if (comma == std::string_view::npos || comma == 0) {
            ++out.stats.dropped_incomplete;
            continue;
        }
        const std::string_view id = row.substr(0, comma);
        const std::string_view date = row.substr(comma + 1);
        const auto month = MonthStamp::parse(date);
        if (!month) {
            ++out.stats.dropped_incomplete;
            continue;
        }
        if (month->year() < kFlagYearLo || month->year() > kFlagYearHi) {
            ++out.stats.flagged_out_of_range;
        }
        out.records.push_back({std::string(id), *month});
        ++out.stats.kept_paper_count;
    }
    return out;
}

ParsedPapers parse_metadata_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return parse_metadata(in);
}

ParsedEdges parse_edges(std::istream& in, const std::vector<PaperRecord>& known) {
    expect_header(in, "citing_id,cited_id");

    std::unordered_map<std::string_view, std::uint32_t> index;
    index.reserve(known.size());
    for (std::uint32_t i = 0; i < known.size(); ++i) index.emplace(known[i].external_id, i);

    ParsedEdges out;
    std::unordered_set<std::uint64_t> seen;
    std::string line;
    while (std::getline(in, line)) {
        const std::string_view row = trim_cr(line);
        if (skippable(row)) continue;
        ++out.stats.raw_edge_count;
        const std::size_t comma = row.find(',');
        if (comma == std::string_view::npos || comma == 0 || comma + 1 == row.size()) {
            ++out.stats.dropped_unknown_endpoint;
            continue;
        }
        const auto citing = index.find(row.substr(0, comma));
        const auto cited = index.find(row.substr(comma + 1));
        if (citing == index.end() || cited == index.end()) {
            ++out.stats.dropped_unknown_endpoint;
            continue;
        }
        if (citing->second == cited->second) {
            ++out.stats.dropped_self_loops;
            continue;
        }
        const std::uint64_t key =
            (static_cast<std::uint64_t>(citing->second) << 32) | cited->second;
        if (!seen.insert(key).second) {
            ++out.stats.dropped_duplicates;
            continue;
        }
        out.edges.emplace_back(known[citing->second].external_id,
                               known[cited->second].external_id);
        ++out.stats.kept_edge_count;
    }
    if (out.edges.empty()) throw DataError("no usable citation edges");
    return out;
}

ParsedEdges parse_edges_file(const std::string& path, const std::vector<PaperRecord>& known) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return parse_edges(in, known);
}

LoadedCorpus load_corpus(const std::string& papers_path, const std::string& edges_path) {
    ParsedPapers papers = parse_metadata_file(papers_path);
    ParsedEdges edges = parse_edges_file(edges_path, papers.records);

    CorpusStats stats = papers.stats;
    stats.absorb(edges.stats);

    GraphBuild build = build_graph(std::move(papers.records), edges.edges);
    // Edges were already deduplicated against the known-id set, so the graph
    // build drops nothing further and kept_edge_count matches exactly.
    stats.dropped_self_loops += build.dropped_self_loops;
    stats.dropped_duplicates += build.dropped_duplicate_edges;
    stats.kept_edge_count -= build.dropped_self_loops + build.dropped_duplicate_edges;
    return {std::move(build.graph), stats};
}

} // namespace citepop
