#pragma once

// Plain-text undirected edge lists: whitespace-separated integer pairs, one
// edge per line, '#' comment lines. A comment containing "nodes <N>" (any
// case, e.g. the "# Nodes: 4158 Edges: 13428" style) declares a node count so
// isolated nodes survive a write/read round trip.

#include "cascadelab/graph.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <limits>
#include <string>
#include <vector>

namespace cascadelab {

struct IngestResult {
    Graph graph;
    // dense id -> id in the file; kNoOriginalId for declared-but-absent nodes
    std::vector<uint64_t> original_ids;
    uint64_t self_loops_dropped = 0;
    uint64_t duplicate_edges_dropped = 0;
    uint64_t declared_nodes = 0; // 0 when no header declared a count
};

inline constexpr uint64_t kNoOriginalId = std::numeric_limits<uint64_t>::max();

// Parses and cleans an edge list: both edge directions collapse to one
// undirected edge, duplicates and self-loops are dropped (counted), ids are
// relabeled densely in order of first appearance.
// Throws data_error on malformed lines (with the line number) and on files
// that describe no nodes at all.
IngestResult parse_edge_list(std::istream& in, const std::string& source_name);
IngestResult ingest_edge_list(const std::filesystem::path& path);

// "# nodes <n>" header followed by one "u v" line per edge; atomic write.
std::string format_edge_list(const Graph& g);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

} // namespace cascadelab
