#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gsm {

struct Graph {
  int n = 0;
  // unordered node pairs; list order is semantic (edge tokenization consumes it)
  std::vector<std::pair<int, int>> edges;
  std::optional<std::vector<int>> colors;                 // per-node color id in 0..C-1
  std::optional<std::vector<std::vector<double>>> features;  // per-node, fixed dim

  void validate() const;  // throws std::invalid_argument on any broken invariant
  int edge_count() const { return static_cast<int>(edges.size()); }
};

// adjacency list in node-id order; each neighbor list sorted ascending
std::vector<std::vector<int>> adjacency(const Graph& g);

std::vector<int> degrees(const Graph& g);

// BFS distances from src; unreachable = -1
std::vector<int> bfs_distances(const Graph& g, int src);

bool is_connected(const Graph& g);

// connected components labelled 0..c-1 in order of first occurrence
std::vector<int> component_labels(const Graph& g);

// nodes within distance <= k of center (includes center), ascending order
std::vector<int> ball(const Graph& g, int center, int k);

// subgraph induced by `nodes` (need not be sorted); node i of the result is nodes[i];
// edge order follows g's edge order
Graph induced_subgraph(const Graph& g, const std::vector<int>& nodes);

// exact induced-subgraph isomorphism by permutation search; both graphs small
bool graphs_isomorphic(const Graph& a, const Graph& b);

// largest pairwise BFS distance; -1 if disconnected
int diameter(const Graph& g);

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }
  int count_roots() {
    int c = 0;
    for (int i = 0; i < static_cast<int>(parent_.size()); ++i)
      if (find(i) == i) ++c;
    return c;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

}  // namespace gsm
