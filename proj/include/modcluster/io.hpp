#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "modcluster/clustering.hpp"
#include "modcluster/graph.hpp"

namespace modcluster {

enum class GraphFormat { EdgeList, Pajek };

GraphFormat parse_format(std::string_view name);
std::string_view to_string(GraphFormat format);

/// Picks Pajek for .net/.paj extensions, edge list otherwise.
GraphFormat guess_format(const std::filesystem::path& path);

struct ReadOptions {
    bool drop_self_edges = false;
    /// Ignore input weights (every kept edge gets weight 1) and drop
    /// self-edges; mirrors how the unweighted benchmark subsets are used.
    bool unweighted = false;
};

struct InputGraph {
    Graph graph;
    std::vector<std::string> labels;  // original vertex labels, by dense id
};

/// Edge list: lines "u v [w]" (w defaults to 1), '#' starts a comment, ids
/// are arbitrary nonnegative integers remapped densely in order of first
/// appearance. Pajek subset: *Vertices N with optional vertex lines, then
/// *Edges/*Arcs sections of 1-based "u v [w]" lines; arcs are symmetrized.
/// Duplicate pairs accumulate their weights in both formats. Malformed
/// input raises std::runtime_error with the offending line number; negative
/// weights are rejected.
InputGraph read_graph(const std::filesystem::path& path, GraphFormat format,
                      const ReadOptions& options = {});

/// One line per vertex: "<label> <cluster>", clusters renumbered densely
/// from 0, vertices in input order. Labels containing whitespace are quoted.
void write_clustering(const Clustering& clustering, const std::vector<std::string>& labels,
                      const std::filesystem::path& path);

/// Reads a file produced by write_clustering back into label -> cluster id.
std::unordered_map<std::string, ClusterId> read_clustering(const std::filesystem::path& path);

}  // namespace modcluster
