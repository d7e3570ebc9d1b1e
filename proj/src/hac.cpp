#include "gsm/hac.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gsm/graph_io.hpp"
#include "json.hpp"

namespace gsm {

using ordered_json = nlohmann::ordered_json;

std::string hac_tree_to_json(const HacTree& t) {
  ordered_json j;
  j["depth"] = t.depth();
  ordered_json nodes = ordered_json::array();
  for (const auto& nd : t.nodes) {
    ordered_json o = ordered_json::object();
    o["level"] = nd.level;
    o["members"] = nd.members;
    o["children"] = nd.children;
    nodes.push_back(o);
  }
  j["nodes"] = nodes;
  j["root"] = t.root;
  j["leaf_order"] = t.leaf_order;
  return j.dump();
}

HacTree hac_tree_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  HacTree t;
  for (const auto& o : j.at("nodes")) {
    HacNode nd;
    nd.level = o.at("level").get<int>();
    nd.members = o.at("members").get<std::vector<int>>();
    nd.children = o.at("children").get<std::vector<int>>();
    t.nodes.push_back(std::move(nd));
  }
  t.root = j.at("root").get<int>();
  t.leaf_order = j.at("leaf_order").get<std::vector<int>>();
  if (j.at("depth").get<int>() != t.depth())
    throw std::invalid_argument("hac tree: depth field inconsistent with root level");
  return t;
}

namespace {

void collect_leaves(const HacTree& t, int id, std::vector<int>& out) {
  if (t.nodes[id].children.empty()) {
    out.push_back(id);
    return;
  }
  for (int c : t.nodes[id].children) collect_leaves(t, c, out);
}

}  // namespace

HacTree build_hac(const Graph& g, const std::vector<double>& cost) {
  if (g.n < 1) throw std::invalid_argument("build_hac: empty graph");
  if (static_cast<int>(cost.size()) != g.edge_count())
    throw std::invalid_argument("build_hac: cost size != edge count");
  for (double c : cost)
    if (!std::isfinite(c)) throw std::invalid_argument("build_hac: non-finite cost");

  HacTree t;
  std::vector<int> cluster_of(g.n);  // node -> current tree-node id
  for (int v = 0; v < g.n; ++v) {
    t.nodes.push_back({0, {v}, {}});
    cluster_of[v] = v;
  }
  std::vector<int> active(g.n);
  std::iota(active.begin(), active.end(), 0);

  int round = 0;
  while (true) {
    ++round;
    // cheapest outgoing edge per active cluster, ties -> lowest edge index
    std::map<int, int> best;  // cluster id -> edge index
    auto better = [&](int e, int old) {
      if (old < 0) return true;
      if (cost[e] != cost[old]) return cost[e] < cost[old];
      return e < old;
    };
    for (int e = 0; e < g.edge_count(); ++e) {
      int cu = cluster_of[g.edges[e].first];
      int cv = cluster_of[g.edges[e].second];
      if (cu == cv) continue;
      for (int c : {cu, cv}) {
        auto it = best.find(c);
        if (it == best.end()) {
          best[c] = e;
        } else if (better(e, it->second)) {
          it->second = e;
        }
      }
    }
    if (best.empty()) break;

    // merge groups = connected components of the picked edges over clusters
    std::map<int, int> cluster_slot;
    for (std::size_t i = 0; i < active.size(); ++i) cluster_slot[active[i]] = static_cast<int>(i);
    UnionFind uf(static_cast<int>(active.size()));
    std::set<int> picked;
    for (const auto& [c, e] : best) picked.insert(e);
    for (int e : picked) {
      int cu = cluster_of[g.edges[e].first];
      int cv = cluster_of[g.edges[e].second];
      uf.unite(cluster_slot[cu], cluster_slot[cv]);
    }
    std::map<int, std::vector<int>> groups;  // root slot -> cluster ids
    for (std::size_t i = 0; i < active.size(); ++i)
      groups[uf.find(static_cast<int>(i))].push_back(active[i]);

    std::vector<int> next_active;
    for (auto& [slot, clusters] : groups) {
      if (clusters.size() == 1) {
        next_active.push_back(clusters.front());  // finished component, carried down
        continue;
      }
      std::sort(clusters.begin(), clusters.end(), [&](int a, int b) {
        return t.nodes[a].members.front() < t.nodes[b].members.front();
      });
      HacNode parent;
      parent.level = round;
      parent.children = clusters;
      for (int c : clusters)
        parent.members.insert(parent.members.end(), t.nodes[c].members.begin(),
                              t.nodes[c].members.end());
      std::sort(parent.members.begin(), parent.members.end());
      int id = static_cast<int>(t.nodes.size());
      t.nodes.push_back(std::move(parent));
      for (int v : t.nodes[id].members) cluster_of[v] = id;
      next_active.push_back(id);
    }
    std::sort(next_active.begin(), next_active.end(), [&](int a, int b) {
      return t.nodes[a].members.front() < t.nodes[b].members.front();
    });
    active = std::move(next_active);
    if (active.size() == 1) break;
  }

  if (active.size() == 1) {
    t.root = active.front();
  } else {
    HacNode root;
    root.level = round;  // synthetic root joining finished components
    root.children = active;
    for (int c : active)
      root.members.insert(root.members.end(), t.nodes[c].members.begin(),
                          t.nodes[c].members.end());
    std::sort(root.members.begin(), root.members.end());
    t.root = static_cast<int>(t.nodes.size());
    t.nodes.push_back(std::move(root));
  }
  collect_leaves(t, t.root, t.leaf_order);
  return t;
}

std::vector<double> edge_costs_from_features(const Graph& g, CostMetric metric) {
  if (!g.features) throw std::invalid_argument("edge_costs_from_features: no features");
  std::vector<double> cost;
  cost.reserve(g.edges.size());
  for (const auto& [u, v] : g.edges) {
    const auto& a = (*g.features)[u];
    const auto& b = (*g.features)[v];
    if (metric == CostMetric::euclidean) {
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
      cost.push_back(std::sqrt(s));
    } else {
      double dot = 0.0, na = 0.0, nb = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
      }
      double denom = std::sqrt(na) * std::sqrt(nb);
      cost.push_back(denom > 0.0 ? 1.0 - dot / denom : 1.0);
    }
  }
  return cost;
}

std::vector<int> partition_at(const HacTree& t, int level,
                              std::vector<std::vector<int>>* cluster_members) {
  if (level < 0 || level > t.depth())
    throw std::invalid_argument("partition_at: level out of range");
  // parents in this tree always have strictly higher level than their children,
  // so the partition is the set of maximal nodes with node.level <= level
  std::vector<int> parent(t.nodes.size(), -1);
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    for (int c : t.nodes[i].children) parent[c] = static_cast<int>(i);

  int n = static_cast<int>(t.leaf_order.size());
  std::vector<int> node_cluster(n, -1);
  if (cluster_members) cluster_members->clear();
  std::vector<bool> leaf_done(n, false);
  int next = 0;
  for (int leaf : t.leaf_order) {
    if (leaf_done[leaf]) continue;
    int x = leaf;
    while (parent[x] >= 0 && t.nodes[parent[x]].level <= level) x = parent[x];
    if (cluster_members) cluster_members->push_back(t.nodes[x].members);
    for (int v : t.nodes[x].members) {
      node_cluster[v] = next;
      leaf_done[v] = true;
    }
    ++next;
  }
  return node_cluster;
}

Tokenization dfs_tokenize(const HacTree& t, const Graph& g) {
  std::vector<int> parent(t.nodes.size(), -1);
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    for (int c : t.nodes[i].children) parent[c] = static_cast<int>(i);
  Tokenization tok;
  tok.tokenizer = "hac-dfs";
  tok.graph_fingerprint = graph_fingerprint(g);
  for (int v = 0; v < g.n; ++v) {
    std::vector<int> path;
    for (int x = v; x >= 0; x = parent[x]) path.push_back(x);
    std::vector<Token> seq;
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      seq.push_back(Token::subgraph_tok(t.nodes[*it].members));
    tok.sequences.push_back(std::move(seq));
  }
  return tok;
}

Tokenization bfs_tokenize(const HacTree& t, const Graph& g) {
  Tokenization tok;
  tok.tokenizer = "hac-bfs";
  tok.graph_fingerprint = graph_fingerprint(g);
  for (int level = t.depth(); level >= 0; --level) {
    std::vector<std::vector<int>> clusters;
    partition_at(t, level, &clusters);
    std::vector<Token> seq;
    for (auto& members : clusters) seq.push_back(Token::subgraph_tok(std::move(members)));
    tok.sequences.push_back(std::move(seq));
  }
  return tok;
}

namespace {

// BFS distances between clusters; clusters adjacent iff an original edge crosses them
std::vector<std::vector<int>> cluster_graph_distances(const Graph& g,
                                                      const std::vector<int>& node_cluster) {
  int c = *std::max_element(node_cluster.begin(), node_cluster.end()) + 1;
  std::vector<std::set<int>> adj(c);
  for (const auto& [u, v] : g.edges) {
    int cu = node_cluster[u], cv = node_cluster[v];
    if (cu != cv) {
      adj[cu].insert(cv);
      adj[cv].insert(cu);
    }
  }
  std::vector<std::vector<int>> dist(c, std::vector<int>(c, -1));
  for (int s = 0; s < c; ++s) {
    dist[s][s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : adj[x])
        if (dist[s][y] < 0) {
          dist[s][y] = dist[s][x] + 1;
          q.push_back(y);
        }
    }
  }
  return dist;
}

}  // namespace

std::vector<std::vector<std::vector<int>>> hierarchical_pe_all(const HacTree& t,
                                                               const Graph& g) {
  std::vector<std::vector<std::vector<int>>> out;
  for (int level = t.depth(); level >= 0; --level) {
    auto node_cluster = partition_at(t, level);
    auto cdist = cluster_graph_distances(g, node_cluster);
    std::vector<std::vector<int>> m(g.n, std::vector<int>(g.n, -1));
    for (int u = 0; u < g.n; ++u)
      for (int v = 0; v < g.n; ++v) m[u][v] = cdist[node_cluster[u]][node_cluster[v]];
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<int> hierarchical_pe(const HacTree& t, const Graph& g, int u, int v) {
  if (u < 0 || u >= g.n || v < 0 || v >= g.n)
    throw std::invalid_argument("hierarchical_pe: node out of range");
  std::vector<int> pe;
  for (int level = t.depth(); level >= 0; --level) {
    auto node_cluster = partition_at(t, level);
    if (node_cluster[u] == node_cluster[v]) {
      pe.push_back(0);
      continue;
    }
    auto cdist = cluster_graph_distances(g, node_cluster);
    pe.push_back(cdist[node_cluster[u]][node_cluster[v]]);
  }
  return pe;
}

std::vector<int> minimum_spanning_forest(const Graph& g, const std::vector<double>& cost) {
  if (static_cast<int>(cost.size()) != g.edge_count())
    throw std::invalid_argument("minimum_spanning_forest: cost size mismatch");
  std::vector<int> idx(g.edges.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (cost[a] != cost[b]) return cost[a] < cost[b];
    return a < b;
  });
  UnionFind uf(g.n);
  std::vector<int> chosen;
  for (int e : idx)
    if (uf.unite(g.edges[e].first, g.edges[e].second)) chosen.push_back(e);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

bool hac_on_mst_equivalence(const Graph& g, const std::vector<double>& cost) {
  auto mst_edges = minimum_spanning_forest(g, cost);
  Graph mst;
  mst.n = g.n;
  std::vector<double> mst_cost;
  for (int e : mst_edges) {
    mst.edges.push_back(g.edges[e]);
    mst_cost.push_back(cost[e]);
  }
  HacTree a = build_hac(g, cost);
  HacTree b = build_hac(mst, mst_cost);
  if (a.depth() != b.depth()) return false;
  for (int level = 0; level <= a.depth(); ++level) {
    std::vector<std::vector<int>> ca, cb;
    partition_at(a, level, &ca);
    partition_at(b, level, &cb);
    std::set<std::vector<int>> sa(ca.begin(), ca.end()), sb(cb.begin(), cb.end());
    if (sa != sb) return false;
  }
  return true;
}

}  // namespace gsm
