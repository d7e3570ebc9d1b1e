#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gsm/generators.hpp"
#include "gsm/graph_io.hpp"
#include "gsm/tokenize.hpp"
#include "gsm/verify.hpp"

using namespace gsm;

namespace {
Graph k3() {
  Graph g;
  g.n = 3;
  g.edges = {{0, 1}, {1, 2}, {0, 2}};
  return g;
}
}  // namespace

TEST_CASE("node tokenization shape") {
  Tokenization t = node_tokenize(k3());
  REQUIRE(t.sequences.size() == 3);
  CHECK(t.sequences[1] == std::vector<Token>{Token::node_tok(1)});
  CHECK(t.tokenizer == "node");
  CHECK(t.graph_fingerprint == graph_fingerprint(k3()));
}

TEST_CASE("edge tokenization honors a custom order") {
  Graph g = k3();
  Tokenization def = edge_tokenize(g);
  REQUIRE(def.sequences.size() == 1);
  CHECK(def.sequences[0].size() == 3);
  CHECK(def.sequences[0][0] == Token::edge_tok(0));

  std::vector<int> order = {2, 0, 1};
  Tokenization t = edge_tokenize(g, &order);
  CHECK(t.sequences[0][0] == Token::edge_tok(2));

  std::vector<int> bad = {0, 0, 1};
  CHECK_THROWS_AS(edge_tokenize(g, &bad), std::invalid_argument);
}

TEST_CASE("khop rings are exact-distance with empty markers") {
  Tokenization t = khop_tokenize(k3(), 2);
  REQUIRE(t.sequences.size() == 3);
  for (int v = 0; v < 3; ++v) {
    REQUIRE(t.sequences[v].size() == 3);  // K+1 tokens
    CHECK(t.sequences[v][0].members == std::vector<int>{v});
    CHECK_FALSE(t.sequences[v][0].empty_marker);
    CHECK(t.sequences[v][1].members.size() == 2);
    CHECK(t.sequences[v][2].empty_marker);  // nothing at distance 2 in K3
    CHECK(t.sequences[v][2].members == std::vector<int>{v});
  }
  // disconnected pair: everything beyond hop 0 is empty
  Graph g;
  g.n = 2;
  Tokenization iso = khop_tokenize(g, 1);
  CHECK(iso.sequences[0][1].empty_marker);
}

TEST_CASE("k=0 hop rings relabel to the node tokenization") {
  auto r = check_khop_zero_degenerates(60, 11);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("tokenization JSON round-trips") {
  Tokenization t = khop_tokenize(generate_erdos_renyi(8, 0.4, 3), 2);
  Tokenization back = tokenization_from_json(tokenization_to_json(t));
  CHECK(back == t);
  Tokenization w = random_walk_tokenize(generate_path(5), 4, 2, 9);
  CHECK(tokenization_from_json(tokenization_to_json(w)) == w);
}

TEST_CASE("walks step along edges and are seed-deterministic") {
  Graph g = generate_connected_er(10, 0.3, 4);
  Tokenization a = random_walk_tokenize(g, 6, 2, 42);
  Tokenization b = random_walk_tokenize(g, 6, 2, 42);
  CHECK(a == b);
  CHECK(a.sequences.size() == 20);
  auto r = check_walk_edges_valid(80, 12);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("locality on a path under the stored order is 1") {
  Graph g = generate_path(6);
  std::vector<int> ident = {0, 1, 2, 3, 4};
  CHECK(node_locality(g, ident) == 1);
  std::vector<int> worst = {0, 4, 1, 3, 2};
  CHECK(node_locality(g, worst) > 1);
  Graph empty;
  empty.n = 3;
  CHECK(node_locality(empty, {}) == 0);
}

TEST_CASE("locality matches brute force on random orders") {
  auto r = check_locality_bruteforce(120, 24, 13);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("routing ties break toward the lower index") {
  // zero features give identical 0.5 scores everywhere
  RouterWeights w;
  w.W_r = {{0.3, -0.2, 0.5}};
  MotRouting r = mot_route({{0.0}}, w, {"node", "edge", "khop"});
  CHECK(r.scores[0] == std::vector<double>{0.5, 0.5, 0.5});
  CHECK(r.top2[0] == std::array<int, 2>{0, 1});
  CHECK(r.one_hot[0] == std::vector<double>{1, 0, 0, 0, 1, 0});
}

TEST_CASE("routing matches the sort oracle") {
  auto r = check_mot_route_properties(80, 14);
  INFO(r.detail);
  CHECK(r.passed);
}
