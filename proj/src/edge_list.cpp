#include "cascadelab/edge_list.hpp"
#include "cascadelab/errors.hpp"
#include "cascadelab/io_util.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cascadelab {

namespace {

// first integer following a case-insensitive "nodes" token, if any
std::optional<uint64_t> declared_node_count(const std::string& comment) {
    std::string lower(comment.size(), '\0');
    std::transform(comment.begin(), comment.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    const size_t at = lower.find("nodes");
    if (at == std::string::npos) return std::nullopt;
    size_t i = at + 5;
    while (i < lower.size() && !std::isdigit(static_cast<unsigned char>(lower[i]))) {
        // punctuation/space between the token and the number is fine; another
        // word means this comment is not a count declaration
        if (std::isalpha(static_cast<unsigned char>(lower[i]))) return std::nullopt;
        ++i;
    }
    if (i >= lower.size()) return std::nullopt;
    uint64_t value = 0;
    while (i < lower.size() && std::isdigit(static_cast<unsigned char>(lower[i]))) {
        value = value * 10 + static_cast<uint64_t>(lower[i] - '0');
        ++i;
    }
    return value;
}

bool parse_u64(const std::string& token, uint64_t& out) {
    if (token.empty()) return false;
    uint64_t value = 0;
    for (const char c : token) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        const uint64_t digit = static_cast<uint64_t>(c - '0');
        if (value > (std::numeric_limits<uint64_t>::max() - digit) / 10) return false;
        value = value * 10 + digit;
    }
    out = value;
    return true;
}

} // namespace

IngestResult parse_edge_list(std::istream& in, const std::string& source_name) {
    IngestResult result;
    std::unordered_map<uint64_t, uint32_t> dense_id;
    std::unordered_set<uint64_t> seen_edges; // packed (lo << 32 | hi) dense pairs
    std::vector<Edge> edges;

    auto dense = [&](uint64_t original) {
        auto [it, inserted] = dense_id.emplace(original, static_cast<uint32_t>(dense_id.size()));
        if (inserted) result.original_ids.push_back(original);
        return it->second;
    };

    std::string line;
    uint64_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') {
            if (const auto declared = declared_node_count(line))
                result.declared_nodes = std::max(result.declared_nodes, *declared);
            continue;
        }
        std::istringstream tokens(line);
        std::string a, b, extra;
        tokens >> a >> b;
        uint64_t u = 0, v = 0;
        if (!tokens || !parse_u64(a, u) || !parse_u64(b, v) || (tokens >> extra))
            throw data_error(source_name + ":" + std::to_string(line_number) +
                             ": expected two integer endpoints");
        const uint32_t du = dense(u);
        const uint32_t dv = dense(v);
        if (du == dv) {
            ++result.self_loops_dropped;
            continue;
        }
        const uint64_t key =
            (static_cast<uint64_t>(std::min(du, dv)) << 32) | std::max(du, dv);
        if (!seen_edges.insert(key).second) {
            ++result.duplicate_edges_dropped;
            continue;
        }
        edges.push_back(Edge{std::min(du, dv), std::max(du, dv)});
    }

    const uint64_t distinct = dense_id.size();
    const uint64_t n = std::max<uint64_t>(distinct, result.declared_nodes);
    if (n == 0) throw data_error(source_name + ": empty edge list (no nodes)");
    if (n > std::numeric_limits<uint32_t>::max())
        throw data_error(source_name + ": too many nodes");
    result.original_ids.resize(n, kNoOriginalId);
    result.graph = Graph::from_edges(static_cast<uint32_t>(n), edges);
    return result;
}

IngestResult ingest_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path.string() + "'");
    return parse_edge_list(in, path.filename().string());
}

std::string format_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "# nodes " << g.node_count() << "\n";
    for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
    return out.str();
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
    write_file_atomic(path, format_edge_list(g));
}

} // namespace cascadelab
