#pragma once
#include <string>
#include <vector>

#include "gsm/graph.hpp"
#include "gsm/tokenize.hpp"

namespace gsm {

struct HacNode {
  int level = 0;              // merge round that created the node; leaves = 0
  std::vector<int> members;   // sorted ascending
  std::vector<int> children;  // tree-node ids, ordered by minimum member id
};

struct HacTree {
  std::vector<HacNode> nodes;  // ids 0..n-1 are the leaves, leaf v = node v
  int root = 0;
  std::vector<int> leaf_order;  // left-to-right under recursive child order
  int depth() const { return nodes[root].level; }
};

std::string hac_tree_to_json(const HacTree& t);
HacTree hac_tree_from_json(const std::string& text);

// Affinity-clustering rounds: every active cluster picks its cheapest outgoing edge
// (ties -> lowest edge index); the components of the picked edges merge, one parent
// per component. Disconnected graphs finish per component and join under a synthetic
// root one level above the last round.
HacTree build_hac(const Graph& g, const std::vector<double>& cost);

enum class CostMetric { euclidean, neg_cosine };
std::vector<double> edge_costs_from_features(const Graph& g, CostMetric metric);

// node -> cluster index at the given level; clusters indexed in leaf_order.
// Also returns each cluster's member set through `cluster_members` if non-null.
std::vector<int> partition_at(const HacTree& t, int level,
                              std::vector<std::vector<int>>* cluster_members = nullptr);

// per-node sequence of the clusters on the root-to-leaf path, root first
Tokenization dfs_tokenize(const HacTree& t, const Graph& g);

// one sequence per level, coarse to fine; every level partitions V (clusters that
// stopped splitting are carried down); deepest level = singletons in leaf_order
Tokenization bfs_tokenize(const HacTree& t, const Graph& g);

// entry j = shortest-path length between the clusters holding u and v in the
// level-(depth-j) cluster graph, so the first entry is at the root partition and
// the last entry is the plain node distance; unreachable = -1
std::vector<int> hierarchical_pe(const HacTree& t, const Graph& g, int u, int v);

// all-pairs variant: result[j][u][v], levels ordered as in hierarchical_pe
std::vector<std::vector<std::vector<int>>> hierarchical_pe_all(const HacTree& t,
                                                               const Graph& g);

// Kruskal with (cost, edge index) ordering; returns edge indices of a minimum
// spanning forest, in g's edge order.
std::vector<int> minimum_spanning_forest(const Graph& g, const std::vector<double>& cost);

// true iff clustering g and clustering its spanning forest give identical
// level-by-level partitions
bool hac_on_mst_equivalence(const Graph& g, const std::vector<double>& cost);

}  // namespace gsm
