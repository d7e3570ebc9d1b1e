#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gsm/graph.hpp"

namespace gsm {

struct Token {
  enum class Kind { node, edge, subgraph };
  Kind kind = Kind::node;
  int id = 0;                 // node id or edge index
  std::vector<int> members;   // subgraph only; sorted ascending
  bool empty_marker = false;  // subgraph only: stands for an empty hop ring

  static Token node_tok(int v) { return {Kind::node, v, {}, false}; }
  static Token edge_tok(int e) { return {Kind::edge, e, {}, false}; }
  static Token subgraph_tok(std::vector<int> m, bool empty = false) {
    return {Kind::subgraph, 0, std::move(m), empty};
  }
  bool operator==(const Token&) const = default;
};

struct Tokenization {
  std::string tokenizer;
  std::vector<std::pair<std::string, std::int64_t>> params;  // serialized in order
  std::string graph_fingerprint;
  std::vector<std::vector<Token>> sequences;

  bool operator==(const Tokenization&) const = default;
};

std::string tokenization_to_json(const Tokenization& t);
Tokenization tokenization_from_json(const std::string& text);

// |V| sequences, sequence i = [node(i)]
Tokenization node_tokenize(const Graph& g);

// one sequence of |E| edge tokens; default order = stored order
Tokenization edge_tokenize(const Graph& g, const std::vector<int>* order = nullptr);

// |V| sequences of K+1 subgraph tokens: exact-distance rings, hop 0 = {v};
// an empty ring becomes a flagged marker token {v} so length is always K+1
Tokenization khop_tokenize(const Graph& g, int K);

// |V|*walks_per_node sequences of walk_len node tokens; uniform neighbor steps
Tokenization random_walk_tokenize(const Graph& g, int walk_len, int walks_per_node,
                                  std::uint64_t seed);

// Definition of order-window cost: max over nodes of (max index - min index)
// of the edges containing the node, under the given edge order.
int node_locality(const Graph& g, const std::vector<int>& edge_order);

struct RouterWeights {
  std::vector<std::vector<double>> W_r;  // d_in rows x T columns
};

struct MotRouting {
  std::vector<std::vector<double>> scores;   // n x T, sigmoid(X W_r)
  std::vector<std::array<int, 2>> top2;      // per node, ties -> lower index
  std::vector<std::vector<double>> one_hot;  // per node, concat of two length-T one-hots
};

MotRouting mot_route(const std::vector<std::vector<double>>& features,
                     const RouterWeights& weights,
                     const std::vector<std::string>& candidates);

}  // namespace gsm
