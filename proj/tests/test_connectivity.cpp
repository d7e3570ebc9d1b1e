#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gsm/connectivity.hpp"
#include "gsm/generators.hpp"
#include "gsm/tokenize.hpp"
#include "gsm/verify.hpp"

using namespace gsm;

TEST_CASE("a path streamed in order is connected at k=1") {
  std::vector<std::pair<int, int>> seq = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  StreamResult r = stream_connectivity_detail(seq, 1, false);
  CHECK(r.connected);
  CHECK(r.alive);
  CHECK(r.max_window <= 2);
}

TEST_CASE("two components orphan out and kill the verdict") {
  std::vector<std::pair<int, int>> seq = {{0, 1}, {2, 3}, {4, 5}};
  StreamResult r = stream_connectivity_detail(seq, 1, false);
  CHECK_FALSE(r.connected);
}

TEST_CASE("windows hold and recycle at most k+1 labels") {
  // star streamed center-first: every edge shares the center, k = locality
  Graph g;
  g.n = 5;
  g.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  std::vector<int> order = {0, 1, 2, 3};
  int k = node_locality(g, order);
  CHECK(k == 3);
  std::vector<std::pair<int, int>> seq;
  for (int e : order) seq.push_back(g.edges[e]);
  StreamResult r = stream_connectivity_detail(seq, k, false);
  CHECK(r.connected);
  CHECK(r.max_window <= k + 1);
}

TEST_CASE("strict mode reports retired nodes that reappear") {
  // node 0 exceeds its k-span in this ordering
  std::vector<std::pair<int, int>> seq = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  StreamResult strict = stream_connectivity_detail(seq, 1, true);
  CHECK_FALSE(strict.violations.empty());
  // with a wide-enough window the same stream is clean and connected
  StreamResult wide = stream_connectivity_detail(seq, 3, true);
  CHECK(wide.violations.empty());
  CHECK(wide.connected);
}

TEST_CASE("strict mode flags never-streamed nodes when told the node count") {
  std::vector<std::pair<int, int>> seq = {{0, 1}};
  CHECK(stream_connectivity(seq, 1, true, 2));
  CHECK_FALSE(stream_connectivity(seq, 1, true, 3));  // node 2 never appears
  CHECK(stream_connectivity({}, 1, true, 1));
  CHECK_FALSE(stream_connectivity({}, 1, true, 2));
}

TEST_CASE("terminal query works when terminals outlive their window") {
  // 0 and 4 connect through the middle; both leave the window early at k=1
  std::vector<std::pair<int, int>> seq = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  CHECK(stream_terminals_connected(seq, 1, 0, 4));
  CHECK(stream_terminals_connected(seq, 1, 0, 0));
  std::vector<std::pair<int, int>> split = {{0, 1}, {1, 2}, {3, 4}};
  CHECK_FALSE(stream_terminals_connected(split, 2, 0, 4));
}

TEST_CASE("edge order from node order groups early nodes first") {
  Graph g;
  g.n = 4;
  g.edges = {{0, 1}, {2, 3}, {1, 2}, {0, 3}};
  // visit order 3,2,1,0: edge position = (max visit pos, min visit pos, index)
  std::vector<int> node_order = {3, 2, 1, 0};
  auto order = edge_order_from_node_order(g, node_order);
  // positions: node3=0, node2=1, node1=2, node0=3
  // e0 (0,1) -> (3,2); e1 (2,3) -> (1,0); e2 (1,2) -> (2,1); e3 (0,3) -> (3,0)
  CHECK(order == std::vector<int>{1, 2, 3, 0});
}

TEST_CASE("result JSON exposes the external fields") {
  StreamResult r = stream_connectivity_detail({{0, 1}}, 0, false);
  auto js = stream_result_to_json(r);
  CHECK(js.find("\"connected\":true") != std::string::npos);
  CHECK(js.find("\"violations\"") != std::string::npos);
  CHECK(js.find("\"max_window\"") != std::string::npos);
}

TEST_CASE("factored instances satisfy the advertised block structure") {
  Graph kernel = generate_erdos_renyi(4, 0.5, 9);
  FactoredInstance inst = generate_factored(kernel, 8, 2, 1);
  CHECK(inst.n_prime == 8);
  CHECK(inst.blocks.size() == 4 * 3);  // ordered distinct pairs
  CHECK(inst.graph.edge_count() == 8 * 4 * 3);
  CHECK(hybrid_connectivity(inst, 2, 8) == is_connected(inst.graph));
}

TEST_CASE("property suites: streaming") {
  for (auto check : {check_stream_exhaustive(5), check_stream_random(120, 80, 61),
                     check_hybrid_vs_unionfind(25, 62)}) {
    INFO(check.name, ": ", check.detail);
    CHECK(check.passed);
  }
}
