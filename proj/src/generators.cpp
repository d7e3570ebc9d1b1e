#include "gsm/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gsm/rng.hpp"

namespace gsm {

Graph generate_erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("erdos_renyi: n must be >= 1");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("erdos_renyi: p outside [0,1]");
  Rng rng(seed);
  Graph g;
  g.n = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.edges.emplace_back(u, v);
  return g;
}

Graph generate_regular(int n, int d, std::uint64_t seed) {
  if (d < 0 || d >= n) throw std::invalid_argument("regular: need 0 <= d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("regular: n*d must be even");
  Rng rng(seed);
  const int budget = 100 * n;
  for (int attempt = 0; attempt < budget; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    rng.shuffle(stubs);
    std::set<std::pair<int, int>> seen;
    Graph g;
    g.n = n;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) {
        ok = false;
        break;
      }
      auto key = std::minmax(u, v);
      if (!seen.insert(key).second) {
        ok = false;
        break;
      }
      g.edges.emplace_back(key.first, key.second);
    }
    if (ok) {
      std::sort(g.edges.begin(), g.edges.end());
      return g;
    }
  }
  throw std::runtime_error("regular: pairing retry budget exhausted");
}

Graph generate_cycles(int n, bool split, std::uint64_t seed) {
  if (split && n % 2 != 0) throw std::invalid_argument("cycles: split requires even n");
  int piece = split ? n / 2 : n;
  if (piece < 3) throw std::invalid_argument("cycles: each cycle needs >= 3 nodes");
  Graph g;
  g.n = n;
  for (int start : split ? std::vector<int>{0, n / 2} : std::vector<int>{0}) {
    for (int i = 0; i < piece; ++i) {
      int u = start + i, v = start + (i + 1) % piece;
      g.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  Rng rng(seed);
  rng.shuffle(g.edges);
  return g;
}

Graph generate_path(int n) {
  if (n < 1) throw std::invalid_argument("path: n must be >= 1");
  Graph g;
  g.n = n;
  g.features.emplace();
  for (int v = 0; v < n; ++v) {
    if (v + 1 < n) g.edges.emplace_back(v, v + 1);
    g.features->push_back({static_cast<double>(v)});
  }
  return g;
}

Graph generate_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid: dims must be >= 1");
  Graph g;
  g.n = rows * cols;
  g.features.emplace();
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) g.edges.emplace_back(v, v + 1);
      if (r + 1 < rows) g.edges.emplace_back(v, v + cols);
      g.features->push_back({static_cast<double>(r), static_cast<double>(c)});
    }
  return g;
}

Graph generate_connected_er(int n, double p, std::uint64_t seed) {
  for (std::uint64_t s = 0; s < 10000; ++s) {
    Graph g = generate_erdos_renyi(n, p, seed + s * 0x9e3779b97f4a7c15ULL);
    if (is_connected(g)) return g;
  }
  throw std::runtime_error("connected_er: no connected sample found");
}

Graph color_connectivity_instance(const Graph& g, std::uint64_t seed) {
  if (g.n < 4) throw std::invalid_argument("color_connectivity: need n >= 4");
  if (!is_connected(g)) throw std::invalid_argument("color_connectivity: graph disconnected");
  Rng rng(seed);
  auto adj = adjacency(g);
  int quota = g.n / 2;
  std::vector<int> colors(g.n, 0);
  int walker[2];
  walker[0] = static_cast<int>(rng.uniform_int(0, g.n - 1));
  do {
    walker[1] = static_cast<int>(rng.uniform_int(0, g.n - 1));
  } while (walker[1] == walker[0]);
  int red = 0;
  auto mark = [&](int v) {
    if (red < quota && colors[v] == 0) {
      colors[v] = 1;
      ++red;
    }
  };
  mark(walker[0]);
  mark(walker[1]);
  // walks alternate steps until the red quota is met
  int turn = 0;
  while (red < quota) {
    int& w = walker[turn];
    w = rng.pick(adj[w]);
    mark(w);
    turn ^= 1;
  }
  Graph out = g;
  out.colors = colors;
  return out;
}

FactoredInstance generate_factored(const Graph& kernel, int n_prime, int k,
                                   std::uint64_t seed) {
  (void)seed;  // gadget layout is deterministic; seed reserved for future layouts
  if (k < 1) throw std::invalid_argument("factored: need k >= 1");
  if (n_prime < 2 * k + 2) throw std::invalid_argument("factored: need n_prime >= 2k+2");
  kernel.validate();
  std::set<std::pair<int, int>> kernel_edges;
  for (const auto& [u, v] : kernel.edges) kernel_edges.insert(std::minmax(u, v));

  FactoredInstance inst;
  inst.kernel = kernel;
  inst.n_prime = n_prime;
  inst.k = k;
  Graph& g = inst.graph;
  g.n = kernel.n;

  auto fresh = [&g]() { return g.n++; };
  // path of `len` edges from `from`; returns the far endpoint (fresh nodes inbetween)
  auto emit_path = [&](int from, int len, int to /*-1 = dangling*/) {
    int cur = from;
    for (int i = 0; i < len; ++i) {
      int nxt = (i + 1 == len && to >= 0) ? to : fresh();
      g.edges.emplace_back(cur, nxt);
      cur = nxt;
    }
  };

  for (int v1 = 0; v1 < kernel.n; ++v1)
    for (int v2 = 0; v2 < kernel.n; ++v2) {
      if (v1 == v2) continue;
      inst.blocks.push_back({v1, v2, g.edge_count()});
      if (kernel_edges.count(std::minmax(v1, v2))) {
        emit_path(v1, n_prime, v2);
      } else {
        // two components, one holding each super-node
        int half = (n_prime + 1) / 2;
        emit_path(v1, half, -1);
        emit_path(v2, n_prime - half, -1);
      }
    }

  inst.edge_order.resize(g.edges.size());
  std::iota(inst.edge_order.begin(), inst.edge_order.end(), 0);
  return inst;
}

}  // namespace gsm
