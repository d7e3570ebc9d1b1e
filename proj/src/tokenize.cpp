#include "gsm/tokenize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gsm/graph_io.hpp"
#include "gsm/rng.hpp"
#include "json.hpp"

namespace gsm {

using ordered_json = nlohmann::ordered_json;

std::string tokenization_to_json(const Tokenization& t) {
  ordered_json j;
  j["tokenizer"] = t.tokenizer;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : t.params) params[k] = v;
  j["params"] = params;
  j["graph_fingerprint"] = t.graph_fingerprint;
  ordered_json seqs = ordered_json::array();
  for (const auto& seq : t.sequences) {
    ordered_json s = ordered_json::array();
    for (const auto& tok : seq) {
      ordered_json o = ordered_json::object();
      switch (tok.kind) {
        case Token::Kind::node: o["node"] = tok.id; break;
        case Token::Kind::edge: o["edge"] = tok.id; break;
        case Token::Kind::subgraph:
          o["subgraph"] = tok.members;
          o["empty"] = tok.empty_marker;
          break;
      }
      s.push_back(o);
    }
    seqs.push_back(s);
  }
  j["sequences"] = seqs;
  return j.dump();
}

Tokenization tokenization_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  Tokenization t;
  t.tokenizer = j.at("tokenizer").get<std::string>();
  for (const auto& [k, v] : j.at("params").items())
    t.params.emplace_back(k, v.get<std::int64_t>());
  t.graph_fingerprint = j.at("graph_fingerprint").get<std::string>();
  for (const auto& s : j.at("sequences")) {
    std::vector<Token> seq;
    for (const auto& o : s) {
      if (o.contains("node")) {
        seq.push_back(Token::node_tok(o.at("node").get<int>()));
      } else if (o.contains("edge")) {
        seq.push_back(Token::edge_tok(o.at("edge").get<int>()));
      } else {
        seq.push_back(Token::subgraph_tok(o.at("subgraph").get<std::vector<int>>(),
                                          o.at("empty").get<bool>()));
      }
    }
    t.sequences.push_back(std::move(seq));
  }
  return t;
}

Tokenization node_tokenize(const Graph& g) {
  Tokenization t;
  t.tokenizer = "node";
  t.graph_fingerprint = graph_fingerprint(g);
  for (int v = 0; v < g.n; ++v) t.sequences.push_back({Token::node_tok(v)});
  return t;
}

Tokenization edge_tokenize(const Graph& g, const std::vector<int>* order) {
  int m = g.edge_count();
  std::vector<int> perm;
  if (order) {
    perm = *order;
    std::vector<bool> seen(m, false);
    if (static_cast<int>(perm.size()) != m)
      throw std::invalid_argument("edge_tokenize: order size mismatch");
    for (int e : perm) {
      if (e < 0 || e >= m || seen[e])
        throw std::invalid_argument("edge_tokenize: order is not a permutation");
      seen[e] = true;
    }
  } else {
    perm.resize(m);
    for (int e = 0; e < m; ++e) perm[e] = e;
  }
  Tokenization t;
  t.tokenizer = "edge";
  t.graph_fingerprint = graph_fingerprint(g);
  std::vector<Token> seq;
  seq.reserve(perm.size());
  for (int e : perm) seq.push_back(Token::edge_tok(e));
  t.sequences.push_back(std::move(seq));
  return t;
}

Tokenization khop_tokenize(const Graph& g, int K) {
  if (K < 0) throw std::invalid_argument("khop_tokenize: K must be >= 0");
  Tokenization t;
  t.tokenizer = "khop";
  t.params.emplace_back("K", K);
  t.graph_fingerprint = graph_fingerprint(g);
  for (int v = 0; v < g.n; ++v) {
    auto dist = bfs_distances(g, v);
    std::vector<Token> seq;
    for (int hop = 0; hop <= K; ++hop) {
      std::vector<int> ring;
      for (int u = 0; u < g.n; ++u)
        if (dist[u] == hop) ring.push_back(u);
      if (ring.empty())
        seq.push_back(Token::subgraph_tok({v}, true));
      else
        seq.push_back(Token::subgraph_tok(std::move(ring)));
    }
    t.sequences.push_back(std::move(seq));
  }
  return t;
}

Tokenization random_walk_tokenize(const Graph& g, int walk_len, int walks_per_node,
                                  std::uint64_t seed) {
  if (walk_len < 1) throw std::invalid_argument("random_walk_tokenize: walk_len >= 1");
  if (walks_per_node < 1)
    throw std::invalid_argument("random_walk_tokenize: walks_per_node >= 1");
  Rng rng(seed);
  auto adj = adjacency(g);
  Tokenization t;
  t.tokenizer = "walk";
  t.params.emplace_back("walk_len", walk_len);
  t.params.emplace_back("walks_per_node", walks_per_node);
  t.params.emplace_back("seed", static_cast<std::int64_t>(seed));
  t.graph_fingerprint = graph_fingerprint(g);
  for (int v = 0; v < g.n; ++v)
    for (int w = 0; w < walks_per_node; ++w) {
      std::vector<Token> seq{Token::node_tok(v)};
      int cur = v;
      for (int step = 1; step < walk_len; ++step) {
        if (!adj[cur].empty()) cur = rng.pick(adj[cur]);
        seq.push_back(Token::node_tok(cur));
      }
      t.sequences.push_back(std::move(seq));
    }
  return t;
}

int node_locality(const Graph& g, const std::vector<int>& edge_order) {
  int m = g.edge_count();
  if (static_cast<int>(edge_order.size()) != m)
    throw std::invalid_argument("node_locality: order size mismatch");
  std::vector<int> first(g.n, -1), last(g.n, -1);
  std::vector<bool> seen(m, false);
  for (int pos = 0; pos < m; ++pos) {
    int e = edge_order[pos];
    if (e < 0 || e >= m || seen[e])
      throw std::invalid_argument("node_locality: order is not a permutation");
    seen[e] = true;
    for (int v : {g.edges[e].first, g.edges[e].second}) {
      if (first[v] < 0) first[v] = pos;
      last[v] = pos;
    }
  }
  int span = 0;
  for (int v = 0; v < g.n; ++v)
    if (first[v] >= 0) span = std::max(span, last[v] - first[v]);
  return span;
}

MotRouting mot_route(const std::vector<std::vector<double>>& features,
                     const RouterWeights& weights,
                     const std::vector<std::string>& candidates) {
  std::size_t T = candidates.size();
  if (T < 2) throw std::invalid_argument("mot_route: need at least 2 candidates");
  if (weights.W_r.empty() || weights.W_r.front().size() != T)
    throw std::invalid_argument("mot_route: weight columns != candidate count");
  MotRouting out;
  for (const auto& x : features) {
    if (x.size() != weights.W_r.size())
      throw std::invalid_argument("mot_route: feature dim != weight rows");
    std::vector<double> s(T, 0.0);
    for (std::size_t j = 0; j < T; ++j) {
      double z = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) z += x[i] * weights.W_r[i][j];
      s[j] = 1.0 / (1.0 + std::exp(-z));
    }
    int best = 0, second = -1;
    for (int j = 1; j < static_cast<int>(T); ++j)
      if (s[j] > s[best]) best = j;
    for (int j = 0; j < static_cast<int>(T); ++j) {
      if (j == best) continue;
      if (second < 0 || s[j] > s[second]) second = j;
    }
    std::vector<double> oh(2 * T, 0.0);
    oh[best] = 1.0;
    oh[T + second] = 1.0;
    out.scores.push_back(std::move(s));
    out.top2.push_back({best, second});
    out.one_hot.push_back(std::move(oh));
  }
  return out;
}

}  // namespace gsm
