#include "gsm/oracles.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace gsm {

TaskKind task_kind_from_name(const std::string& name) {
  if (name == "node_degree") return TaskKind::node_degree;
  if (name == "cycle_check") return TaskKind::cycle_check;
  if (name == "triangle_count") return TaskKind::triangle_count;
  if (name == "connectivity") return TaskKind::connectivity;
  if (name == "color_counts") return TaskKind::color_counts;
  if (name == "shortest_path") return TaskKind::shortest_path;
  throw std::invalid_argument("unknown task kind: " + name);
}

std::string task_kind_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::node_degree: return "node_degree";
    case TaskKind::cycle_check: return "cycle_check";
    case TaskKind::triangle_count: return "triangle_count";
    case TaskKind::connectivity: return "connectivity";
    case TaskKind::color_counts: return "color_counts";
    case TaskKind::shortest_path: return "shortest_path";
  }
  throw std::logic_error("bad task kind");
}

long long oracle_triangle_count(const Graph& g) {
  std::vector<std::set<int>> nb(g.n);
  for (const auto& [u, v] : g.edges) {
    nb[u].insert(v);
    nb[v].insert(u);
  }
  long long count = 0;
  for (const auto& [u, v] : g.edges) {
    int a = std::min(u, v), b = std::max(u, v);
    for (int w : nb[a])
      if (w > b && nb[b].count(w)) ++count;
  }
  return count;
}

bool oracle_has_cycle(const Graph& g) {
  UnionFind uf(g.n);
  for (const auto& [u, v] : g.edges)
    if (!uf.unite(u, v)) return true;
  return false;
}

std::vector<long long> oracle_color_counts(const Graph& g) {
  if (!g.colors) throw std::invalid_argument("color_counts: graph has no colors");
  int C = 0;
  for (int c : *g.colors) C = std::max(C, c + 1);
  std::vector<long long> counts(C, 0);
  for (int c : *g.colors) ++counts[c];
  return counts;
}

std::vector<std::vector<int>> oracle_all_pairs_distances(const Graph& g) {
  std::vector<std::vector<int>> m(g.n);
  for (int v = 0; v < g.n; ++v) m[v] = bfs_distances(g, v);
  return m;
}

TaskLabel oracle(const Graph& g, TaskKind kind) {
  TaskLabel label;
  label.kind = kind;
  switch (kind) {
    case TaskKind::node_degree:
      label.node_values = degrees(g);
      break;
    case TaskKind::cycle_check:
      label.flag = oracle_has_cycle(g);
      break;
    case TaskKind::triangle_count:
      label.scalar = oracle_triangle_count(g);
      break;
    case TaskKind::connectivity: {
      // union-find here; is_connected (BFS) is the independent cross-check
      UnionFind uf(g.n);
      for (const auto& [u, v] : g.edges) uf.unite(u, v);
      label.flag = uf.count_roots() == 1 || g.n <= 1;
      break;
    }
    case TaskKind::color_counts:
      label.counts = oracle_color_counts(g);
      break;
    case TaskKind::shortest_path:
      label.matrix = oracle_all_pairs_distances(g);
      break;
  }
  return label;
}

long long oracle_induced_occurrences(const Graph& g, const Graph& H) {
  int h = H.n;
  if (h < 1 || h > g.n) return 0;
  std::vector<int> subset(h);
  long long count = 0;
  // enumerate ascending h-subsets of 0..n-1
  for (int i = 0; i < h; ++i) subset[i] = i;
  while (true) {
    if (graphs_isomorphic(induced_subgraph(g, subset), H)) ++count;
    int i = h - 1;
    while (i >= 0 && subset[i] == g.n - h + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < h; ++j) subset[j] = subset[j - 1] + 1;
  }
  return count;
}

std::string task_label_to_json(const TaskLabel& label) {
  nlohmann::ordered_json j;
  j["kind"] = task_kind_name(label.kind);
  switch (label.kind) {
    case TaskKind::node_degree: j["degrees"] = label.node_values; break;
    case TaskKind::cycle_check: j["has_cycle"] = label.flag; break;
    case TaskKind::connectivity: j["connected"] = label.flag; break;
    case TaskKind::triangle_count: j["triangles"] = label.scalar; break;
    case TaskKind::color_counts: j["counts"] = label.counts; break;
    case TaskKind::shortest_path: j["distances"] = label.matrix; break;
  }
  return j.dump();
}

}  // namespace gsm
