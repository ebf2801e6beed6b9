#include "sosforge/graph.hpp"

#include <map>
#include <stdexcept>

namespace sosforge {

bool Graph::adjacent(int u, int v) const {
  if (u > v) std::swap(u, v);
  return edges.count({u, v}) != 0;
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self-loop");
  if (u > v) std::swap(u, v);
  edges.insert({u, v});
}

std::vector<int> Graph::block_of() const {
  std::vector<int> out(vertices.size(), -1);
  if (!partition) return out;
  for (std::size_t b = 0; b < partition->size(); ++b)
    for (int v : (*partition)[b]) out.at(v) = static_cast<int>(b);
  return out;
}

void Graph::validate() const {
  std::set<std::string> labels(vertices.begin(), vertices.end());
  if (labels.size() != vertices.size()) throw std::invalid_argument("duplicate vertex label");
  for (auto [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loop");
    if (u < 0 || v >= size() || u > v) throw std::invalid_argument("bad edge");
  }
  if (partition) {
    std::vector<int> seen(vertices.size(), 0);
    for (const auto& block : *partition)
      for (int v : block) {
        if (v < 0 || v >= size()) throw std::invalid_argument("partition names unknown vertex");
        if (seen[v]++) throw std::invalid_argument("partition blocks overlap");
      }
    for (int s : seen)
      if (!s) throw std::invalid_argument("partition does not cover all vertices");
  }
}

Graph cycle_graph(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.vertices.push_back(std::to_string(i + 1));
  if (n >= 3)
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  else if (n == 2)
    g.add_edge(0, 1);
  return g;
}

Graph complete_graph(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.vertices.push_back(std::to_string(i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["vertices"] = g.vertices;
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges) j["edges"].push_back({g.vertices[u], g.vertices[v]});
  if (g.partition) {
    j["partition"] = nlohmann::json::array();
    for (const auto& block : *g.partition) {
      nlohmann::json b = nlohmann::json::array();
      for (int v : block) b.push_back(g.vertices[v]);
      j["partition"].push_back(b);
    }
  }
  return j;
}

namespace {
std::string label_of(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw std::invalid_argument("vertex labels must be strings or integers");
}
}  // namespace

Graph graph_from_json(const nlohmann::json& j) {
  Graph g;
  std::map<std::string, int> index;
  for (const auto& v : j.at("vertices")) {
    std::string label = label_of(v);
    if (!index.emplace(label, g.size()).second) throw std::invalid_argument("duplicate vertex " + label);
    g.vertices.push_back(label);
  }
  auto lookup = [&](const nlohmann::json& v) {
    auto it = index.find(label_of(v));
    if (it == index.end() && v.is_number_integer() && v.get<int>() >= 0 && v.get<int>() < g.size())
      return v.get<int>();
    if (it == index.end()) throw std::invalid_argument("edge names unknown vertex " + label_of(v));
    return it->second;
  };
  if (j.contains("edges"))
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair");
      g.add_edge(lookup(e[0]), lookup(e[1]));
    }
  if (j.contains("partition") && !j.at("partition").is_null()) {
    std::vector<std::vector<int>> blocks;
    for (const auto& b : j.at("partition")) {
      std::vector<int> block;
      for (const auto& v : b) block.push_back(lookup(v));
      blocks.push_back(block);
    }
    g.partition = blocks;
  }
  g.validate();
  return g;
}

namespace {
bool extend(const Graph& g, int k, std::vector<int>& cur, int start) {
  if (static_cast<int>(cur.size()) == k) return true;
  for (int v = start; v < g.size(); ++v) {
    bool ok = true;
    for (int u : cur)
      if (!g.adjacent(u, v)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    cur.push_back(v);
    if (extend(g, k, cur, v + 1)) return true;
    cur.pop_back();
  }
  return false;
}
}  // namespace

std::optional<std::vector<int>> find_clique(const Graph& g, int k) {
  std::vector<int> cur;
  if (k <= 0) return cur;
  if (extend(g, k, cur, 0)) return cur;
  return std::nullopt;
}

}  // namespace sosforge
