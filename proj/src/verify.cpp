#include "gsm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gsm/connectivity.hpp"
#include "gsm/generators.hpp"
#include "gsm/graph.hpp"
#include "gsm/graph_io.hpp"
#include "gsm/hac.hpp"
#include "gsm/local_encoder.hpp"
#include "gsm/oracles.hpp"
#include "gsm/rng.hpp"
#include "gsm/seq_models.hpp"
#include "gsm/tokenize.hpp"

namespace gsm {

namespace {

CheckResult pass(std::string name, std::string detail) {
  return {std::move(name), true, std::move(detail)};
}

CheckResult fail(std::string name, std::string detail) {
  return {std::move(name), false, std::move(detail)};
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Graph random_mixed_graph(Rng& rng, int max_n, bool with_features) {
  int family = static_cast<int>(rng.uniform_int(5));
  switch (family) {
    case 0: {
      int n = 1 + static_cast<int>(rng.uniform_int(max_n));
      return generate_erdos_renyi(n, rng.uniform01() * 0.6, rng.next_u64());
    }
    case 1: {
      int n = 4 + 2 * static_cast<int>(rng.uniform_int(std::max(1, max_n / 2)));
      int d = 2 + static_cast<int>(rng.uniform_int(2));
      if (static_cast<long long>(n) * d % 2 != 0 || d >= n) return generate_path(n);
      return generate_regular(n, d, rng.next_u64());
    }
    case 2: {
      int n = 6 + 2 * static_cast<int>(rng.uniform_int(std::max(1, max_n / 2)));
      return generate_cycles(n, rng.bernoulli(0.5), rng.next_u64());
    }
    case 3:
      return generate_path(2 + static_cast<int>(rng.uniform_int(max_n)));
    default: {
      int r = 2 + static_cast<int>(rng.uniform_int(4));
      int c = 2 + static_cast<int>(rng.uniform_int(4));
      return generate_grid(r, c);
    }
  }
  (void)with_features;
}

Graph relabel_graph(const Graph& g, const std::vector<int>& sigma) {
  Graph h;
  h.n = g.n;
  for (auto [u, v] : g.edges)
    h.edges.emplace_back(std::min(sigma[u], sigma[v]), std::max(sigma[u], sigma[v]));
  if (g.colors) {
    h.colors.emplace(g.n);
    for (int v = 0; v < g.n; ++v) (*h.colors)[sigma[v]] = (*g.colors)[v];
  }
  if (g.features) {
    h.features.emplace(g.n);
    for (int v = 0; v < g.n; ++v) (*h.features)[sigma[v]] = (*g.features)[v];
  }
  return h;
}

std::vector<int> random_permutation(Rng& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(p);
  return p;
}

bool vectors_equal_exact(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

}  // namespace

CheckResult check_graph_roundtrip(int instances, std::uint64_t seed) {
  const std::string name = "graph-json-roundtrip";
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    Graph g = random_mixed_graph(rng, 24, true);
    if (i % 3 == 0) {
      g.colors.emplace(g.n);
      for (int v = 0; v < g.n; ++v) (*g.colors)[v] = static_cast<int>(rng.uniform_int(4));
    }
    std::string j1 = graph_to_json(g);
    Graph h = graph_from_json(j1);
    std::string j2 = graph_to_json(h);
    if (j1 != j2) return fail(name, "serialize/parse/serialize mismatch at instance " +
                                        std::to_string(i));
    if (h.n != g.n || h.edges != g.edges || h.colors != g.colors ||
        h.features != g.features)
      return fail(name, "structural mismatch at instance " + std::to_string(i));
    if (graph_fingerprint(g) != graph_fingerprint(h))
      return fail(name, "fingerprint changed at instance " + std::to_string(i));
  }
  return pass(name, std::to_string(instances) + " graphs round-tripped byte-identically");
}

CheckResult check_connectivity_oracles_agree(int instances, int max_n,
                                             std::uint64_t seed) {
  const std::string name = "connectivity-oracles-agree";
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    int n = 1 + static_cast<int>(rng.uniform_int(max_n));
    double u = rng.uniform01();
    Graph g = generate_erdos_renyi(n, std::min(1.0, u * u * 1.2), rng.next_u64());
    bool bfs = is_connected(g);
    bool uf = oracle(g, TaskKind::connectivity).flag;
    if (bfs != uf)
      return fail(name, "BFS and union-find disagree on instance " + std::to_string(i) +
                            " (n=" + std::to_string(n) + ")");
    auto labels = component_labels(g);
    int comps = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    if (bfs != (comps <= 1))
      return fail(name, "component label count inconsistent at " + std::to_string(i));
  }
  return pass(name, std::to_string(instances) + " instances, three methods agree");
}

CheckResult check_cycles_components(std::uint64_t seed) {
  const std::string name = "cycle-generator-structure";
  Rng rng(seed);
  for (int n : {6, 8, 12, 20, 40}) {
    for (bool split : {false, true}) {
      Graph g = generate_cycles(n, split, rng.next_u64());
      if (g.n != n || g.edge_count() != n)
        return fail(name, "wrong size for n=" + std::to_string(n));
      for (int d : degrees(g))
        if (d != 2) return fail(name, "non-2 degree for n=" + std::to_string(n));
      auto labels = component_labels(g);
      int comps = *std::max_element(labels.begin(), labels.end()) + 1;
      if (comps != (split ? 2 : 1))
        return fail(name, "component count " + std::to_string(comps) + " for n=" +
                              std::to_string(n) + " split=" + std::to_string(split));
      if (!oracle_has_cycle(g)) return fail(name, "cycle oracle missed a cycle");
    }
  }
  return pass(name, "one-cycle vs two-cycle instances have the advertised structure");
}

CheckResult check_color_instance_quota(int instances, std::uint64_t seed) {
  const std::string name = "color-instance-quota";
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    int n = 4 + static_cast<int>(rng.uniform_int(37));
    Graph g = generate_connected_er(n, 2.2 / n + 0.1, rng.next_u64());
    Graph c = color_connectivity_instance(g, rng.next_u64());
    if (!c.colors || static_cast<int>(c.colors->size()) != n)
      return fail(name, "missing colors at instance " + std::to_string(i));
    long long red = 0;
    for (int col : *c.colors) {
      if (col != 0 && col != 1) return fail(name, "color outside {0,1}");
      red += col;
    }
    if (red != n / 2)
      return fail(name, "red quota " + std::to_string(red) + " != floor(n/2) at n=" +
                            std::to_string(n));
    if (c.edges != g.edges) return fail(name, "coloring altered the graph");
  }
  return pass(name, std::to_string(instances) + " instances hit the floor(n/2) quota");
}

CheckResult check_khop_zero_degenerates(int instances, std::uint64_t seed) {
  const std::string name = "khop0-degenerates-to-node";
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    Graph g = random_mixed_graph(rng, 20, false);
    Tokenization hop0 = khop_tokenize(g, 0);
    Tokenization converted;
    converted.tokenizer = "node";
    converted.graph_fingerprint = hop0.graph_fingerprint;
    for (const auto& seq : hop0.sequences) {
      if (seq.size() != 1 || seq[0].kind != Token::Kind::subgraph ||
          seq[0].members.size() != 1 || seq[0].empty_marker)
        return fail(name, "hop-0 ring is not the singleton {v}");
      converted.sequences.push_back({Token::node_tok(seq[0].members[0])});
    }
    if (!(converted == node_tokenize(g)))
      return fail(name, "hop-0 relabeling differs from node tokenization at instance " +
                            std::to_string(i));
  }
  return pass(name, std::to_string(instances) +
                        " graphs: K=0 hop rings relabel to the node tokenization");
}

CheckResult check_locality_bruteforce(int instances, int max_n, std::uint64_t seed) {
  const std::string name = "locality-bruteforce";
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    int n = 2 + static_cast<int>(rng.uniform_int(max_n - 1));
    Graph g = generate_erdos_renyi(n, rng.uniform01() * 0.5, rng.next_u64());
    std::vector<int> order = random_permutation(rng, g.edge_count());
    int got = node_locality(g, order);
    int want = 0;
    for (int v = 0; v < g.n; ++v) {
      int lo = -1, hi = -1;
      for (int pos = 0; pos < g.edge_count(); ++pos) {
        auto [a, b] = g.edges[order[pos]];
        if (a == v || b == v) {
          if (lo < 0) lo = pos;
          hi = pos;
        }
      }
      if (lo >= 0) want = std::max(want, hi - lo);
    }
    if (got != want)
      return fail(name, "locality " + std::to_string(got) + " != brute " +
                            std::to_string(want) + " at instance " + std::to_string(i));
    // relabeling nodes cannot change positional spans
    Graph h = relabel_graph(g, random_permutation(rng, g.n));
    if (node_locality(h, order) != want)
      return fail(name, "locality not relabel-invariant at instance " + std::to_string(i));
  }
  return pass(name, std::to_string(instances) + " random orders match the brute force");
}

CheckResult check_mot_route_properties(int instances, std::uint64_t seed) {
  const std::string name = "mot-routing";
  Rng rng(seed);
  std::vector<std::string> all = {"node", "edge", "khop", "walk", "dfs", "bfs"};
  for (int i = 0; i < instances; ++i) {
    int n = 1 + static_cast<int>(rng.uniform_int(20));
    int d = 1 + static_cast<int>(rng.uniform_int(6));
    int T = 2 + static_cast<int>(rng.uniform_int(5));
    std::vector<std::string> cands(all.begin(), all.begin() + T);
    std::vector<std::vector<double>> X(n, std::vector<double>(d));
    for (auto& row : X)
      for (auto& x : row) x = rng.normal();
    RouterWeights W;
    W.W_r.assign(d, std::vector<double>(T));
    for (auto& row : W.W_r)
      for (auto& w : row) w = rng.normal();

    MotRouting r = mot_route(X, W, cands);
    MotRouting r2 = mot_route(X, W, cands);
    if (r.scores != r2.scores || r.top2 != r2.top2 || r.one_hot != r2.one_hot)
      return fail(name, "routing is not deterministic");

    for (int v = 0; v < n; ++v) {
      // independent score recomputation + argsort oracle
      for (int j = 0; j < T; ++j) {
        double z = 0.0;
        for (int a = 0; a < d; ++a) z += X[v][a] * W.W_r[a][j];
        double s = 1.0 / (1.0 + std::exp(-z));
        if (s != r.scores[v][j]) return fail(name, "score mismatch");
        if (!(r.scores[v][j] > 0.0 && r.scores[v][j] < 1.0))
          return fail(name, "sigmoid out of (0,1)");
      }
      std::vector<int> idx(T);
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return r.scores[v][a] > r.scores[v][b];
      });
      if (r.top2[v][0] != idx[0] || r.top2[v][1] != idx[1])
        return fail(name, "top-2 disagrees with the sort oracle at node " +
                              std::to_string(v));
      double ones = 0;
      for (double x : r.one_hot[v]) ones += x;
      if (static_cast<int>(r.one_hot[v].size()) != 2 * T || ones != 2.0 ||
          r.one_hot[v][r.top2[v][0]] != 1.0 || r.one_hot[v][T + r.top2[v][1]] != 1.0)
        return fail(name, "one-hot encoding malformed");
    }

    // permuting the candidate axis permutes the routing consistently
    std::vector<int> p = random_permutation(rng, T);
    RouterWeights Wp;
    Wp.W_r.assign(d, std::vector<double>(T));
    std::vector<std::string> cp(T);
    for (int q = 0; q < T; ++q) {
      cp[q] = cands[p[q]];
      for (int a = 0; a < d; ++a) Wp.W_r[a][q] = W.W_r[a][p[q]];
    }
    MotRouting rp = mot_route(X, Wp, cp);
    for (int v = 0; v < n; ++v)
      if (p[rp.top2[v][0]] != r.top2[v][0] || p[rp.top2[v][1]] != r.top2[v][1])
        return fail(name, "top-2 not equivariant under candidate permutation");
  }
  return pass(name, std::to_string(instances) +
                        " routings: deterministic, sorted, permutation-consistent");
}

CheckResult check_walk_edges_valid(int instances, std::uint64_t seed) {
  const std::string name = "walk-edges-valid";
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    Graph g = random_mixed_graph(rng, 16, false);
    int len = 1 + static_cast<int>(rng.uniform_int(8));
    int per = 1 + static_cast<int>(rng.uniform_int(3));
    Tokenization t = random_walk_tokenize(g, len, per, rng.next_u64());
    if (static_cast<int>(t.sequences.size()) != g.n * per)
      return fail(name, "wrong walk count");
    auto adj = adjacency(g);
    for (int s = 0; s < static_cast<int>(t.sequences.size()); ++s) {
      const auto& seq = t.sequences[s];
      if (static_cast<int>(seq.size()) != len) return fail(name, "wrong walk length");
      if (seq[0].id != s / per) return fail(name, "walk does not start at its node");
      for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
        int a = seq[j].id, b = seq[j + 1].id;
        bool edge = std::binary_search(adj[a].begin(), adj[a].end(), b);
        bool stuck = (a == b && adj[a].empty());
        if (!edge && !stuck)
          return fail(name, "step " + std::to_string(j) + " of walk " + std::to_string(s) +
                                " is neither an edge nor a dead-end repeat");
      }
    }
  }
  return pass(name, std::to_string(instances) + " graphs: every walk step is a real edge");
}

CheckResult check_hac_depth_bound(int instances, std::uint64_t seed) {
  const std::string name = "hac-depth-bound";
  Rng rng(seed);
  int max_depth_seen = 0;
  for (int i = 0; i < instances; ++i) {
    Graph g = random_mixed_graph(rng, 64, false);
    std::vector<double> cost(g.edge_count());
    for (auto& c : cost) c = rng.uniform01();
    HacTree t = build_hac(g, cost);
    int bound = g.n <= 1 ? 0 : static_cast<int>(std::ceil(std::log2(g.n)));
    if (t.depth() > bound)
      return fail(name, "depth " + std::to_string(t.depth()) + " > ceil(log2 " +
                            std::to_string(g.n) + ") at instance " + std::to_string(i));
    max_depth_seen = std::max(max_depth_seen, t.depth());
    // structural sanity at every level
    std::vector<int> prev;
    for (int lvl = 0; lvl <= t.depth(); ++lvl) {
      std::vector<std::vector<int>> members;
      std::vector<int> part = partition_at(t, lvl, &members);
      std::vector<bool> covered(g.n, false);
      for (const auto& m : members)
        for (int v : m) {
          if (covered[v]) return fail(name, "overlapping clusters at level " +
                                                std::to_string(lvl));
          covered[v] = true;
        }
      for (int v = 0; v < g.n; ++v)
        if (!covered[v]) return fail(name, "node uncovered at level " + std::to_string(lvl));
      if (lvl == 0) {
        for (const auto& m : members)
          if (m.size() != 1) return fail(name, "level-0 cluster not a singleton");
      }
      if (!prev.empty()) {
        // coarsening: same cluster at lvl-1 implies same cluster at lvl
        std::map<int, int> image;
        for (int v = 0; v < g.n; ++v) {
          auto it = image.find(prev[v]);
          if (it == image.end())
            image[prev[v]] = part[v];
          else if (it->second != part[v])
            return fail(name, "partition at level " + std::to_string(lvl) +
                                  " does not coarsen the previous one");
        }
      }
      prev = part;
    }
    for (const auto& node : t.nodes)
      if (node.level > 0 && node.children.size() < 2)
        return fail(name, "internal cluster with fewer than 2 children");
    std::vector<int> lo = t.leaf_order;
    std::sort(lo.begin(), lo.end());
    for (int v = 0; v < g.n; ++v)
      if (lo[v] != v) return fail(name, "leaf order is not a permutation");
  }
  return pass(name, std::to_string(instances) +
                        " trees within ceil(log2 n); max depth seen " +
                        std::to_string(max_depth_seen));
}

CheckResult check_hac_mst_equivalence(int instances, std::uint64_t seed) {
  const std::string name = "hac-mst-equivalence";
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    int n = 2 + static_cast<int>(rng.uniform_int(31));
    Graph g = generate_erdos_renyi(n, 0.2 + 0.6 * rng.uniform01(), rng.next_u64());
    std::vector<double> cost(g.edge_count());
    std::set<double> used;
    for (auto& c : cost) {
      do c = rng.uniform01();
      while (!used.insert(c).second);
    }
    if (!hac_on_mst_equivalence(g, cost))
      return fail(name, "clustering differs on the spanning forest at instance " +
                            std::to_string(i) + " (n=" + std::to_string(n) + ")");
    // the forest has the right size: n - #components edges
    auto chosen = minimum_spanning_forest(g, cost);
    auto labels = component_labels(g);
    int comps = g.n == 0 ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    if (static_cast<int>(chosen.size()) != g.n - comps)
      return fail(name, "forest edge count wrong at instance " + std::to_string(i));
  }
  return pass(name, std::to_string(instances) +
                        " instances cluster identically on graph and spanning forest");
}

CheckResult check_hac_pe_last_coordinate(int graphs, std::uint64_t seed) {
  const std::string name = "hierarchical-pe-distances";
  Rng rng(seed);
  for (int i = 0; i < graphs; ++i) {
    int n = 2 + static_cast<int>(rng.uniform_int(31));
    Graph g = generate_connected_er(n, std::min(1.0, 2.0 / n + 0.15), rng.next_u64());
    std::vector<double> cost(g.edge_count());
    for (auto& c : cost) c = rng.uniform01();
    HacTree t = build_hac(g, cost);
    auto pe = hierarchical_pe_all(t, g);
    if (static_cast<int>(pe.size()) != t.depth() + 1)
      return fail(name, "entry count != depth+1");
    auto dist = oracle_all_pairs_distances(g);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (pe.back()[u][v] != dist[u][v])
          return fail(name, "finest entry is not the node distance at instance " +
                                std::to_string(i));
        if (pe.front()[u][v] != 0)
          return fail(name, "coarsest entry nonzero on a connected graph");
        for (const auto& level : pe) {
          if (level[u][v] != level[v][u]) return fail(name, "asymmetric entry");
          if (u == v && level[u][v] != 0) return fail(name, "nonzero diagonal");
        }
      }
    // the spot query agrees with the all-pairs table
    int u = static_cast<int>(rng.uniform_int(n));
    int v = static_cast<int>(rng.uniform_int(n));
    auto q = hierarchical_pe(t, g, u, v);
    for (std::size_t j = 0; j < pe.size(); ++j)
      if (q[j] != pe[j][u][v]) return fail(name, "spot query differs from table");
  }
  return pass(name, std::to_string(graphs) +
                        " connected graphs: coarsest entry 0, finest = BFS distance");
}

CheckResult check_hac_bfs_locality(int trials, int required_wins, std::uint64_t seed) {
  const std::string name = "cluster-order-locality";
  Rng rng(seed);
  int wins = 0;
  long long hac_total = 0, rand_total = 0;
  for (int i = 0; i < trials; ++i) {
    Graph g;
    if (i % 2 == 0) {
      g = generate_path(16 + static_cast<int>(rng.uniform_int(49)));
    } else {
      int r = 3 + static_cast<int>(rng.uniform_int(6));
      int c = 3 + static_cast<int>(rng.uniform_int(6));
      g = generate_grid(r, c);
    }
    auto cost = edge_costs_from_features(g, CostMetric::euclidean);
    HacTree t = build_hac(g, cost);
    auto hac_edges = edge_order_from_node_order(g, t.leaf_order);
    auto rand_edges = edge_order_from_node_order(g, random_permutation(rng, g.n));
    int l_hac = node_locality(g, hac_edges);
    int l_rand = node_locality(g, rand_edges);
    hac_total += l_hac;
    rand_total += l_rand;
    if (l_hac <= l_rand) ++wins;
  }
  std::string detail = "cluster order no worse in " + std::to_string(wins) + "/" +
                       std::to_string(trials) + " trials (needed " +
                       std::to_string(required_wins) + "); mean locality " +
                       fmt(double(hac_total) / trials) + " vs " +
                       fmt(double(rand_total) / trials);
  if (wins < required_wins) return fail(name, detail);
  return pass(name, detail);
}

CheckResult check_encoder_equivariance(int instances, std::uint64_t seed) {
  const std::string name = "encoder-permutation-equivariance";
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    int n = 2 + static_cast<int>(rng.uniform_int(15));
    Graph g = generate_erdos_renyi(n, 0.2 + 0.6 * rng.uniform01(), rng.next_u64());
    int d_in = 17;
    if (i % 2 == 0) {
      d_in = 2 + static_cast<int>(rng.uniform_int(4));
      g.features.emplace(n, std::vector<double>(d_in));
      for (auto& row : *g.features)
        for (auto& x : row) x = rng.normal();
    }
    int depth = static_cast<int>(rng.uniform_int(3));
    int d_local = depth >= 2 ? d_in : d_in + 1;
    EncoderParams params = make_encoder_params(d_in, d_local, depth, rng.next_u64());

    std::vector<int> sigma = random_permutation(rng, n);
    Graph h = relabel_graph(g, sigma);

    Tokenization tok_g, tok_h;
    tok_g.tokenizer = tok_h.tokenizer = "mixed";
    std::vector<Token> sg, sh;
    for (int v = 0; v < n; ++v) {
      sg.push_back(Token::node_tok(v));
      sh.push_back(Token::node_tok(sigma[v]));
    }
    for (int e = 0; e < g.edge_count(); ++e) {
      sg.push_back(Token::edge_tok(e));
      sh.push_back(Token::edge_tok(e));  // relabeling kept edge order
    }
    for (int v = 0; v < n; ++v) {
      auto b = ball(g, v, 1);
      std::vector<int> mapped;
      for (int u : b) mapped.push_back(sigma[u]);
      std::sort(mapped.begin(), mapped.end());
      sg.push_back(Token::subgraph_tok(b));
      sh.push_back(Token::subgraph_tok(mapped));
    }
    tok_g.sequences.push_back(std::move(sg));
    tok_h.sequences.push_back(std::move(sh));

    auto enc_g = encode_tokens(g, tok_g, params);
    auto enc_h = encode_tokens(h, tok_h, params);
    for (std::size_t j = 0; j < enc_g[0].vectors.size(); ++j)
      if (!vectors_equal_exact(enc_g[0].vectors[j], enc_h[0].vectors[j]))
        return fail(name, "token " + std::to_string(j) + " of instance " +
                              std::to_string(i) + " differs under relabeling (depth " +
                              std::to_string(depth) + ")");
  }
  return pass(name, std::to_string(instances) +
                        " relabelings reproduce node/edge/subgraph encodings bitwise");
}

CheckResult check_motif_counts(int instances, int max_n, std::uint64_t seed) {
  const std::string name = "motif-count-encodings";
  Rng rng(seed);
  const std::vector<std::pair<std::string, int>> patterns = {
      {"triangle", 1}, {"path3", 2}, {"cycle4", 2}};
  long long checked = 0;
  for (int i = 0; i < instances; ++i) {
    int n = 4 + static_cast<int>(rng.uniform_int(max_n - 3));
    Graph g = generate_erdos_renyi(n, 0.1 + 0.4 * rng.uniform01(), rng.next_u64());
    for (const auto& [pname, k] : patterns) {
      Graph H = pattern_graph(pname);
      auto s = subgraph_count_encoding(g, H, k);
      double total = count_via_attention_sum(s);
      long long want = oracle_induced_occurrences(g, H);
      if (std::llabs(std::llround(total) - want) != 0 ||
          std::abs(total - static_cast<double>(want)) > 1e-6)
        return fail(name, pname + " count " + fmt(total) + " != oracle " +
                              std::to_string(want) + " at instance " + std::to_string(i));
      ++checked;
    }
  }
  return pass(name, std::to_string(checked) +
                        " pattern counts recovered exactly through the attention sum");
}

CheckResult check_color_count_construction(int instances, int max_n, int max_C,
                                           std::uint64_t seed) {
  const std::string name = "color-count-exact";
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    int C = 1 + static_cast<int>(rng.uniform_int(max_C));
    int n = 1 + static_cast<int>(rng.uniform_int(max_n));
    std::vector<int> colors(n);
    for (auto& c : colors) c = static_cast<int>(rng.uniform_int(C));
    LinearSsmLayer layer = color_count_construction(C);
    auto ys = ssm_forward(layer, one_hot_colors(colors, C));
    // exact count at the end and after a random prefix
    for (int cut : {n - 1, static_cast<int>(rng.uniform_int(n))}) {
      std::vector<long long> want(C, 0);
      for (int t = 0; t <= cut; ++t) ++want[colors[t]];
      for (int c = 0; c < C; ++c)
        if (ys[cut](c) != static_cast<double>(want[c]))
          return fail(name, "count drifted at instance " + std::to_string(i) + " (n=" +
                                std::to_string(n) + ", C=" + std::to_string(C) + ")");
    }
  }
  return pass(name, std::to_string(instances) + " streams counted exactly");
}

CheckResult check_undercount_witness(int max_C, int max_len) {
  const std::string name = "truncated-state-undercounts";
  for (int C = 2; C <= max_C; ++C) {
    UndercountWitness w = undercount_witness(C, max_len);
    if (!w.found)
      return fail(name, "no witness for C=" + std::to_string(C) + " up to length " +
                            std::to_string(max_len));
    std::vector<long long> ca(C, 0), cb(C, 0);
    for (int c : w.coloring_a) ++ca[c];
    for (int c : w.coloring_b) ++cb[c];
    if (ca == cb) return fail(name, "witness colorings have identical counts");
    if ((w.out_a - w.out_b).lpNorm<Eigen::Infinity>() > 1e-12)
      return fail(name, "witness outputs not within 1e-12");
  }
  return pass(name, "for C in [2," + std::to_string(max_C) +
                        "]: m=C-1 collapses streams with different counts (gap <= 1e-12)");
}

CheckResult check_sensitivity_single_layer(const std::vector<int>& ns) {
  const std::string name = "single-layer-sensitivity";
  for (int n : ns) {
    auto stack = sensitivity_stack(1);
    auto rows = sensitivity_profile(stack, n);
    double lo = 1e300, hi = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].i > n - 1) continue;
      if (r + 1 < rows.size() && rows[r + 1].i <= n - 1 &&
          rows[r + 1].norm < rows[r].norm - 1e-9)
        return fail(name, "norm decreases at i=" + std::to_string(rows[r].i) + " (n=" +
                              std::to_string(n) + ")");
      lo = std::min(lo, rows[r].ratio);
      hi = std::max(hi, rows[r].ratio);
    }
    if (!(hi / lo < 100.0))
      return fail(name, "ratio band " + fmt(hi / lo) + " >= 100 at n=" + std::to_string(n));
    for (int i : {2, (2 + n) / 2, n}) {
      Eigen::MatrixXd J = ssm_jacobian(stack, n, i);
      Eigen::MatrixXd F = finite_difference_jacobian(stack, n, i);
      double rel = (J - F).norm() / std::max(J.norm(), 1e-300);
      if (!(rel < 1e-4))
        return fail(name, "finite-difference mismatch " + fmt(rel) + " at i=" +
                              std::to_string(i) + ", n=" + std::to_string(n));
    }
  }
  return pass(name, "monotone within 1e-9, band < 100, finite differences agree");
}

CheckResult check_sensitivity_band_two_layers(const std::vector<int>& ns) {
  const std::string name = "two-layer-ratio-band";
  double worst = 0.0;
  for (int n : ns) {
    for (int L : {1, 2}) {
      auto rows = sensitivity_profile(sensitivity_stack(L), n);
      double lo = 1e300, hi = 0.0;
      for (const auto& r : rows) {
        if (r.i > n - 1) continue;
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
      }
      worst = std::max(worst, hi / lo);
      if (!(hi / lo < 100.0))
        return fail(name, "band " + fmt(hi / lo) + " >= 100 at n=" + std::to_string(n) +
                              ", L=" + std::to_string(L));
    }
  }
  return pass(name, "max band " + fmt(worst) + " over L in {1,2}");
}

CheckResult check_sensitivity_depth(const std::vector<int>& ns, double fitted_c) {
  const std::string name = "depth-attenuation";
  double worst_scaled = 0.0;
  for (int n : ns) {
    double prev = 1e300;
    for (int L : {1, 2, 3}) {
      auto rows = sensitivity_profile(sensitivity_stack(L), n);
      int mid = n / 2;
      double norm = -1.0;
      for (const auto& r : rows)
        if (r.i == mid) norm = r.norm;
      if (norm < 0) return fail(name, "midpoint row missing");
      if (!(norm < prev))
        return fail(name, "norm did not strictly decrease at L=" + std::to_string(L) +
                              ", n=" + std::to_string(n));
      double bound = fitted_c * std::pow(static_cast<double>(n), -L);
      worst_scaled = std::max(worst_scaled, norm * std::pow(double(n), L));
      if (!(norm <= bound))
        return fail(name, "norm " + fmt(norm) + " exceeds " + fmt(bound) + " at L=" +
                              std::to_string(L) + ", n=" + std::to_string(n));
      prev = norm;
    }
  }
  return pass(name, "strict decrease in L; max n^L * norm = " + fmt(worst_scaled) +
                        " vs fitted constant " + fmt(fitted_c));
}

CheckResult check_jacobian_finite_difference(std::uint64_t seed) {
  const std::string name = "jacobian-vs-finite-difference";
  Rng rng(seed);
  // random constant-coefficient layer
  {
    int m = 3, d_in = 2, d_out = 2, n = 6;
    LinearSsmLayer layer;
    layer.mode = LinearSsmLayer::Mode::lti;
    layer.m = m;
    layer.A.resize(m, m);
    layer.B.resize(m, d_in);
    layer.C.resize(d_out, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) layer.A(r, c) = rng.normal() / (2.0 * m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < d_in; ++c) layer.B(r, c) = rng.normal();
    for (int r = 0; r < d_out; ++r)
      for (int c = 0; c < m; ++c) layer.C(r, c) = rng.normal();
    std::vector<LinearSsmLayer> stack = {layer};
    for (int i = 1; i <= n; ++i) {
      Eigen::MatrixXd J = ssm_jacobian(stack, n, i);
      Eigen::MatrixXd F = finite_difference_jacobian(stack, n, i);
      double rel = (J - F).norm() / std::max(J.norm(), 1e-300);
      if (!(rel < 1e-4))
        return fail(name, "constant-coefficient layer: rel err " + fmt(rel) + " at i=" +
                              std::to_string(i));
    }
  }
  // time-varying stacks with non-square readouts, depth 1..3
  for (int L = 1; L <= 3; ++L) {
    int m = 4, n = 8;
    std::vector<int> dims = {2};
    for (int l = 1; l < L; ++l) dims.push_back(3);
    dims.push_back(1);
    std::vector<LinearSsmLayer> stack;
    for (int l = 0; l < L; ++l) {
      LinearSsmLayer layer;
      layer.mode = LinearSsmLayer::Mode::hippo_legs_timevarying;
      layer.m = m;
      layer.A = hippo_legs_matrix(m);
      layer.B.resize(m, dims[l]);
      layer.C.resize(dims[l + 1], m);
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < dims[l]; ++c) layer.B(r, c) = rng.normal();
      for (int r = 0; r < dims[l + 1]; ++r)
        for (int c = 0; c < m; ++c) layer.C(r, c) = rng.normal();
      stack.push_back(std::move(layer));
    }
    double tol = L == 2 ? 1e-5 : 1e-4;
    for (int i = 1; i <= n; ++i) {
      Eigen::MatrixXd J = ssm_jacobian(stack, n, i);
      Eigen::MatrixXd F = finite_difference_jacobian(stack, n, i);
      double rel = (J - F).norm() / std::max(J.norm(), 1e-300);
      if (!(rel < tol))
        return fail(name, "depth-" + std::to_string(L) + " stack: rel err " + fmt(rel) +
                              " at i=" + std::to_string(i));
    }
  }
  return pass(name, "analytic Jacobians match central differences (depth 1-3)");
}

CheckResult check_attention_equivariance(int trials, std::uint64_t seed) {
  const std::string name = "attention-permutation-equivariance";
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    int d = 2 + static_cast<int>(rng.uniform_int(5));
    int d_k = 1 + static_cast<int>(rng.uniform_int(4));
    int n = 2 + static_cast<int>(rng.uniform_int(9));
    AttentionLayer layer = make_attention_layer(d, d_k, false, rng.next_u64());
    std::vector<Eigen::VectorXd> xs(n, Eigen::VectorXd(d));
    for (auto& x : xs)
      for (int c = 0; c < d; ++c) x(c) = rng.normal();
    std::vector<int> sigma = random_permutation(rng, n);
    std::vector<Eigen::VectorXd> permuted(n);
    for (int t = 0; t < n; ++t) permuted[t] = xs[sigma[t]];
    auto out = attention_forward(layer, xs);
    auto out_p = attention_forward(layer, permuted);
    for (int t = 0; t < n; ++t)
      if (!vectors_equal_exact(out_p[t], out[sigma[t]]))
        return fail(name, "output differs bitwise at position " + std::to_string(t) +
                              " of trial " + std::to_string(i));
  }
  return pass(name, std::to_string(trials) + " trials: permuted outputs bitwise equal");
}

CheckResult check_causal_future_invariance(int trials, std::uint64_t seed) {
  const std::string name = "causal-future-invariance";
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    int d = 2 + static_cast<int>(rng.uniform_int(4));
    int n = 3 + static_cast<int>(rng.uniform_int(8));
    int kind = i % 3;
    std::vector<Eigen::VectorXd> xs(n, Eigen::VectorXd(d));
    for (auto& x : xs)
      for (int c = 0; c < d; ++c) x(c) = rng.normal();
    int cut = 1 + static_cast<int>(rng.uniform_int(n - 2));  // prefix [0..cut] fixed
    std::vector<Eigen::VectorXd> ys(xs);
    for (int t = cut + 1; t < n; ++t)
      for (int c = 0; c < d; ++c) ys[t](c) = rng.normal();

    std::vector<Eigen::VectorXd> a, b;
    if (kind == 0) {
      AttentionLayer layer = make_attention_layer(d, 2, true, rng.next_u64());
      a = attention_forward(layer, xs);
      b = attention_forward(layer, ys);
    } else {
      LinearSsmLayer layer = make_hippo_layer(d);
      if (kind == 1) layer.mode = LinearSsmLayer::Mode::lti;
      a = ssm_forward(layer, xs);
      b = ssm_forward(layer, ys);
    }
    for (int t = 0; t <= cut; ++t)
      if (!vectors_equal_exact(a[t], b[t]))
        return fail(name, "future edit leaked into position " + std::to_string(t) +
                              " (model kind " + std::to_string(kind) + ")");
  }
  return pass(name, std::to_string(trials) + " future edits left prefixes bitwise intact");
}

namespace {

// certificate of one connected component up to renaming: lexicographically
// smallest sorted edge list over all degree-consistent vertex numberings
std::string component_certificate(const std::vector<int>& verts,
                                  const std::vector<std::pair<int, int>>& edges) {
  int c = static_cast<int>(verts.size());
  std::map<int, int> deg;
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  std::vector<int> perm = verts;
  std::sort(perm.begin(), perm.end());
  std::vector<int> target;
  for (int v : perm) target.push_back(deg[v]);
  std::sort(target.begin(), target.end());
  std::string best;
  do {
    bool ok = true;
    for (int i = 0; i < c && ok; ++i) ok = deg[perm[i]] == target[i];
    if (!ok) continue;
    std::map<int, int> newid;
    for (int i = 0; i < c; ++i) newid[perm[i]] = i;
    std::vector<std::pair<int, int>> re;
    for (auto [u, v] : edges)
      re.emplace_back(std::min(newid[u], newid[v]), std::max(newid[u], newid[v]));
    std::sort(re.begin(), re.end());
    std::string cert;
    for (auto [u, v] : re) {
      cert += static_cast<char>('a' + u);
      cert += static_cast<char>('a' + v);
    }
    if (best.empty() || cert < best) best = cert;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// whole-graph certificate: sorted multiset of component certificates
std::string graph_certificate(const std::vector<std::pair<int, int>>& edges) {
  std::map<int, int> idx;
  for (auto [u, v] : edges) {
    idx.emplace(u, 0);
    idx.emplace(v, 0);
  }
  int t = 0;
  for (auto& [v, i] : idx) i = t++;
  UnionFind uf(t);
  for (auto [u, v] : edges) uf.unite(idx[u], idx[v]);
  std::map<int, std::vector<int>> comp_verts;
  for (auto& [v, i] : idx) comp_verts[uf.find(i)].push_back(v);
  std::map<int, std::vector<std::pair<int, int>>> comp_edges;
  for (auto [u, v] : edges) comp_edges[uf.find(idx[u])].push_back({u, v});
  std::vector<std::string> certs;
  for (auto& [root, verts] : comp_verts)
    certs.push_back(component_certificate(verts, comp_edges[root]));
  std::sort(certs.begin(), certs.end());
  std::string out;
  for (const auto& s : certs) {
    out += s;
    out += '|';
  }
  return out;
}

}  // namespace

CheckResult check_stream_exhaustive(int max_edges) {
  const std::string name = "stream-exhaustive";
  // The automaton and the locality measure compare node ids only for equality,
  // so verdicts are invariant under vertex renaming: sweeping every graph up to
  // isomorphism covers every graph. Enumerate by adding one edge at a time
  // (between existing vertices, to one fresh vertex, or as a disjoint edge);
  // removing an edge and dropping isolated vertices inverts every case, so each
  // level is complete. The counts must match the known census of graphs with m
  // edges and no isolated vertices.
  static const long long expected[] = {1, 2, 5, 11, 26, 68, 177};
  std::vector<std::vector<std::vector<std::pair<int, int>>>> levels(max_edges + 1);
  std::set<std::string> seen;
  levels[1].push_back({{0, 1}});
  for (int m = 1; m < max_edges; ++m) {
    for (const auto& g : levels[m]) {
      int t = 0;
      for (auto [u, v] : g) t = std::max({t, u + 1, v + 1});
      std::set<std::pair<int, int>> present(g.begin(), g.end());
      std::vector<std::pair<int, int>> adds;
      for (int u = 0; u < t; ++u)
        for (int v = u + 1; v < t; ++v)
          if (!present.count({u, v})) adds.emplace_back(u, v);
      for (int u = 0; u < t; ++u) adds.emplace_back(u, t);
      adds.emplace_back(t, t + 1);
      for (auto e : adds) {
        auto h = g;
        h.push_back(e);
        if (seen.insert(graph_certificate(h)).second) levels[m + 1].push_back(std::move(h));
      }
    }
  }
  long long graphs = 0, orderings = 0;
  for (int m = 1; m <= max_edges; ++m) {
    if (m <= 7 && static_cast<long long>(levels[m].size()) != expected[m - 1])
      return fail(name, "enumerated " + std::to_string(levels[m].size()) +
                            " graphs with " + std::to_string(m) + " edges, census says " +
                            std::to_string(expected[m - 1]));
    for (const auto& edges : levels[m]) {
      ++graphs;
      int t = 0;
      for (auto [u, v] : edges) t = std::max({t, u + 1, v + 1});
      UnionFind uf(t);
      for (auto [u, v] : edges) uf.unite(u, v);
      bool truth = uf.count_roots() == 1;
      Graph g;
      g.n = t;
      g.edges = edges;
      std::vector<int> perm(m);
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<std::pair<int, int>> seq(m);
      do {
        for (int j = 0; j < m; ++j) seq[j] = edges[perm[j]];
        int k = node_locality(g, perm);
        StreamResult r = stream_connectivity_detail(seq, k, false);
        if (r.connected != truth)
          return fail(name, "wrong verdict on a " + std::to_string(t) + "-node, " +
                                std::to_string(m) + "-edge ordering (k=" +
                                std::to_string(k) + ")");
        if (r.max_window > k + 1) return fail(name, "window exceeded k+1 edges");
        if (m <= 5) {
          StreamResult r2 = stream_connectivity_detail(seq, k + 1, true, t);
          if (r2.connected != truth || !r2.violations.empty())
            return fail(name, "slack-window or strict-mode disagreement");
        }
        ++orderings;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return pass(name, "all " + std::to_string(orderings) + " orderings of all " +
                        std::to_string(graphs) + " graphs with <= " +
                        std::to_string(max_edges) +
                        " edges decided correctly at the measured locality");
}

CheckResult check_stream_random(int instances, int max_n, std::uint64_t seed) {
  const std::string name = "stream-random-cluster-orders";
  Rng rng(seed);
  int connected_seen = 0, window_max = 0;
  for (int i = 0; i < instances; ++i) {
    int n = 4 + static_cast<int>(rng.uniform_int(max_n - 3));
    double p = std::min(1.0, (0.8 + 1.4 * rng.uniform01()) * std::log(n) / n);
    Graph g = generate_erdos_renyi(n, p, rng.next_u64());
    if (g.edge_count() == 0) continue;
    std::vector<double> cost(g.edge_count());
    for (auto& c : cost) c = rng.uniform01();
    HacTree t = build_hac(g, cost);
    auto order = edge_order_from_node_order(g, t.leaf_order);
    int k = node_locality(g, order);
    std::vector<std::pair<int, int>> seq;
    for (int e : order) seq.push_back(g.edges[e]);
    StreamResult r = stream_connectivity_detail(seq, k, false);
    // ground truth over the streamed (non-isolated) nodes only
    UnionFind uf(n);
    std::vector<bool> touched(n, false);
    for (auto [u, v] : g.edges) {
      uf.unite(u, v);
      touched[u] = touched[v] = true;
    }
    int root = -1;
    bool truth = true;
    for (int v = 0; v < n; ++v) {
      if (!touched[v]) continue;
      int rv = uf.find(v);
      if (root < 0) root = rv;
      truth = truth && rv == root;
    }
    if (r.connected != truth)
      return fail(name, "verdict mismatch at instance " + std::to_string(i) + " (n=" +
                            std::to_string(n) + ", k=" + std::to_string(k) + ")");
    if (r.max_window > k + 1) return fail(name, "window exceeded k+1 edges");
    window_max = std::max(window_max, r.max_window);
    if (truth) ++connected_seen;
  }
  return pass(name, std::to_string(instances) + " cluster-order streams (" +
                        std::to_string(connected_seen) +
                        " connected); window never exceeded k+1");
}

CheckResult check_hybrid_vs_unionfind(int instances, std::uint64_t seed) {
  const std::string name = "hybrid-vs-unionfind";
  Rng rng(seed);
  int connected_seen = 0;
  for (int i = 0; i < instances; ++i) {
    int kn = 2 + static_cast<int>(rng.uniform_int(7));
    Graph kernel = generate_erdos_renyi(kn, 0.15 + 0.55 * rng.uniform01(), rng.next_u64());
    int k = 1 + static_cast<int>(rng.uniform_int(4));
    int lo = 2 * k + 2;
    int n_prime = lo + static_cast<int>(rng.uniform_int(std::max(1, 33 - lo)));
    FactoredInstance inst = generate_factored(kernel, n_prime, k, rng.next_u64());
    bool got = hybrid_connectivity(inst, k, n_prime);
    UnionFind uf(inst.graph.n);
    for (auto [u, v] : inst.graph.edges) uf.unite(u, v);
    bool truth = uf.count_roots() == 1;
    if (got != truth)
      return fail(name, "hybrid verdict differs from union-find at instance " +
                            std::to_string(i) + " (kernel n=" + std::to_string(kn) +
                            ", k=" + std::to_string(k) + ")");
    // each block really is a locality-k slice
    for (std::size_t b = 0; b < inst.blocks.size(); ++b) {
      Graph slice;
      slice.n = inst.graph.n;
      for (int e = 0; e < n_prime; ++e)
        slice.edges.push_back(inst.graph.edges[inst.blocks[b].edge_start + e]);
      std::vector<int> ident(n_prime);
      std::iota(ident.begin(), ident.end(), 0);
      if (node_locality(slice, ident) > k)
        return fail(name, "block " + std::to_string(b) + " exceeds locality k");
    }
    if (truth) ++connected_seen;
  }
  return pass(name, std::to_string(instances) + " factored instances (" +
                        std::to_string(connected_seen) +
                        " connected) decided exactly; all blocks within locality k");
}

std::vector<std::string> suite_names() {
  return {"graph-core", "tokenizers",          "hac",         "hac-mst",
          "encoder",    "seq-models",          "sensitivity", "streaming",
          "stream-vs-unionfind", "all"};
}

std::vector<CheckResult> run_suite(const std::string& suite) {
  std::vector<CheckResult> out;
  bool all = suite == "all";
  bool known = all;
  auto want = [&](const char* s) {
    if (suite == s) known = true;
    return all || suite == s;
  };
  if (want("graph-core")) {
    out.push_back(check_graph_roundtrip(200, 11));
    out.push_back(check_connectivity_oracles_agree(500, 64, 12));
    out.push_back(check_cycles_components(13));
    out.push_back(check_color_instance_quota(200, 14));
  }
  if (want("tokenizers")) {
    out.push_back(check_khop_zero_degenerates(200, 21));
    out.push_back(check_locality_bruteforce(300, 40, 22));
    out.push_back(check_mot_route_properties(200, 23));
    out.push_back(check_walk_edges_valid(200, 24));
  }
  if (want("hac")) {
    out.push_back(check_hac_depth_bound(300, 31));
    out.push_back(check_hac_pe_last_coordinate(30, 33));
    out.push_back(check_hac_bfs_locality(60, 55, 34));
  }
  if (want("hac") || want("hac-mst")) out.push_back(check_hac_mst_equivalence(60, 32));
  if (want("encoder")) {
    out.push_back(check_encoder_equivariance(60, 41));
    out.push_back(check_motif_counts(40, 14, 42));
  }
  if (want("seq-models")) {
    out.push_back(check_color_count_construction(300, 128, 8, 51));
    out.push_back(check_undercount_witness(3, 6));
    out.push_back(check_jacobian_finite_difference(52));
    out.push_back(check_attention_equivariance(60, 53));
    out.push_back(check_causal_future_invariance(60, 54));
  }
  if (want("seq-models") || want("sensitivity")) {
    out.push_back(check_sensitivity_single_layer({8, 16, 32}));
    out.push_back(check_sensitivity_band_two_layers({8, 16, 32}));
    out.push_back(check_sensitivity_depth({8, 16, 32}, 330.0));
  }
  if (want("streaming") || want("stream-vs-unionfind")) {
    out.push_back(check_stream_exhaustive(6));
    out.push_back(check_stream_random(300, 120, 61));
  }
  if (want("streaming")) out.push_back(check_hybrid_vs_unionfind(40, 62));
  if (!known) throw std::invalid_argument("unknown verification suite: " + suite);
  return out;
}

}  // namespace gsm
