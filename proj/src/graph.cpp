#include "gsm/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gsm {

void Graph::validate() const {
  if (n < 0) throw std::invalid_argument("graph: negative node count");
  std::set<std::pair<int, int>> seen;
  for (const auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("graph: self-loop");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("graph: endpoint out of range");
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) throw std::invalid_argument("graph: duplicate edge");
  }
  if (colors && static_cast<int>(colors->size()) != n)
    throw std::invalid_argument("graph: colors length != n");
  if (colors)
    for (int c : *colors)
      if (c < 0) throw std::invalid_argument("graph: negative color");
  if (features) {
    if (static_cast<int>(features->size()) != n)
      throw std::invalid_argument("graph: features length != n");
    for (const auto& f : *features)
      if (f.size() != features->front().size())
        throw std::invalid_argument("graph: ragged feature vectors");
  }
}

std::vector<std::vector<int>> adjacency(const Graph& g) {
  std::vector<std::vector<int>> adj(g.n);
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

std::vector<int> degrees(const Graph& g) {
  std::vector<int> d(g.n, 0);
  for (const auto& [u, v] : g.edges) {
    ++d[u];
    ++d[v];
  }
  return d;
}

std::vector<int> bfs_distances(const Graph& g, int src) {
  if (src < 0 || src >= g.n) throw std::invalid_argument("bfs: source out of range");
  auto adj = adjacency(g);
  std::vector<int> dist(g.n, -1);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : adj[x])
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.n <= 1) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

std::vector<int> component_labels(const Graph& g) {
  UnionFind uf(g.n);
  for (const auto& [u, v] : g.edges) uf.unite(u, v);
  std::vector<int> label(g.n, -1);
  int next = 0;
  for (int v = 0; v < g.n; ++v) {
    int r = uf.find(v);
    if (label[r] < 0) label[r] = next++;
    label[v] = label[r];
  }
  return label;
}

std::vector<int> ball(const Graph& g, int center, int k) {
  auto dist = bfs_distances(g, center);
  std::vector<int> out;
  for (int v = 0; v < g.n; ++v)
    if (dist[v] >= 0 && dist[v] <= k) out.push_back(v);
  return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& nodes) {
  std::vector<int> pos(g.n, -1);
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    int v = nodes[i];
    if (v < 0 || v >= g.n) throw std::invalid_argument("induced_subgraph: node out of range");
    if (pos[v] >= 0) throw std::invalid_argument("induced_subgraph: repeated node");
    pos[v] = i;
  }
  Graph h;
  h.n = static_cast<int>(nodes.size());
  for (const auto& [u, v] : g.edges)
    if (pos[u] >= 0 && pos[v] >= 0) h.edges.emplace_back(pos[u], pos[v]);
  if (g.colors) {
    h.colors.emplace();
    for (int v : nodes) h.colors->push_back((*g.colors)[v]);
  }
  if (g.features) {
    h.features.emplace();
    for (int v : nodes) h.features->push_back((*g.features)[v]);
  }
  return h;
}

namespace {

std::vector<std::set<int>> neighbor_sets(const Graph& g) {
  std::vector<std::set<int>> nb(g.n);
  for (const auto& [u, v] : g.edges) {
    nb[u].insert(v);
    nb[v].insert(u);
  }
  return nb;
}

}  // namespace

bool graphs_isomorphic(const Graph& a, const Graph& b) {
  if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
  auto da = degrees(a), db = degrees(b);
  auto sa = da, sb = db;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  auto nba = neighbor_sets(a);
  auto nbb = neighbor_sets(b);
  std::vector<int> perm(a.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int v = 0; v < a.n && ok; ++v) ok = da[v] == db[perm[v]];
    for (const auto& [u, v] : a.edges) {
      if (!ok) break;
      ok = nbb[perm[u]].count(perm[v]) > 0;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

int diameter(const Graph& g) {
  int best = 0;
  for (int v = 0; v < g.n; ++v) {
    auto dist = bfs_distances(g, v);
    for (int d : dist) {
      if (d < 0) return -1;
      best = std::max(best, d);
    }
  }
  return best;
}

}  // namespace gsm
