#pragma once
#include <string>
#include <vector>

#include "gsm/generators.hpp"
#include "gsm/graph.hpp"

namespace gsm {

struct StreamResult {
  bool connected = false;
  bool alive = true;
  std::vector<int> violations;  // strict mode: positions where a retired node reappeared
  int max_window = 0;
};

// Single-pass windowed automaton. Holds the last <= k+1 edges with per-edge
// component labels; evicting an edge whose label no other window edge shares
// kills the alive flag (that component can never reconnect when the stream has
// node locality <= k). Non-strict mode is the O(k)-memory automaton; strict mode
// additionally tracks node last-use for violation reporting and, when
// total_nodes >= 0, detects isolated never-streamed nodes.
StreamResult stream_connectivity_detail(const std::vector<std::pair<int, int>>& edge_seq,
                                        int k, bool strict, int total_nodes = -1);

bool stream_connectivity(const std::vector<std::pair<int, int>>& edge_seq, int k,
                         bool strict = false, int total_nodes = -1);

// Same automaton with two pinned terminals: decides whether v1 and v2 end up in
// one component of the streamed edges. Used per block by hybrid_connectivity.
bool stream_terminals_connected(const std::vector<std::pair<int, int>>& edge_seq, int k,
                                int v1, int v2);

// Phase 1: windowed automaton per n_prime-edge block decides each kernel pair;
// phase 2: exact connectivity of the recovered kernel graph.
bool hybrid_connectivity(const FactoredInstance& inst, int k, int n_prime);

// edges sorted by (max endpoint position, min endpoint position, edge index)
std::vector<int> edge_order_from_node_order(const Graph& g,
                                            const std::vector<int>& node_order);

std::string stream_result_to_json(const StreamResult& r);

}  // namespace gsm
