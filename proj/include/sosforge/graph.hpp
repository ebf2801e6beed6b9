#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace sosforge {

/// Undirected simple graph on vertices 0..n-1 with string labels.
struct Graph {
  std::vector<std::string> vertices;
  std::set<std::pair<int, int>> edges;  // u < v
  std::optional<std::vector<std::vector<int>>> partition;

  int size() const { return static_cast<int>(vertices.size()); }
  bool adjacent(int u, int v) const;
  void add_edge(int u, int v);
  /// Block of each vertex, or -1.
  std::vector<int> block_of() const;
  /// Throws std::invalid_argument on self-loops, bad indices or a
  /// partition that is not a disjoint cover.
  void validate() const;

  bool operator==(const Graph&) const = default;
};

Graph cycle_graph(int n);
Graph complete_graph(int n);

nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

/// Some k-clique in vertex order, by backtracking.
std::optional<std::vector<int>> find_clique(const Graph& g, int k);

}  // namespace sosforge
