#pragma once
#include <cstdint>
#include <vector>

#include "gsm/graph.hpp"

namespace gsm {

// Each pair kept independently with probability p; edge order lexicographic by (min,max).
Graph generate_erdos_renyi(int n, double p, std::uint64_t seed);

// Simple d-regular graph by pairing-model retry; throws after 100*n failed pairings.
Graph generate_regular(int n, int d, std::uint64_t seed);

// One n-cycle, or two disjoint n/2-cycles when split; edge order shuffled by seed.
Graph generate_cycles(int n, bool split, std::uint64_t seed);

// Path 0-1-...-n-1 with 1-D coordinate features.
Graph generate_path(int n);

// rows x cols grid with 2-D coordinate features; node (r,c) = r*cols + c.
Graph generate_grid(int rows, int cols);

// Connected ER graph: retries seeds derived from `seed` until connected.
Graph generate_connected_er(int n, double p, std::uint64_t seed);

// Copies g and colors floor(n/2) nodes red (color 1) by two interleaved random
// walks from two random starts; the rest blue (color 0). Requires g connected, n >= 4.
Graph color_connectivity_instance(const Graph& g, std::uint64_t seed);

struct FactoredBlock {
  int v1 = 0, v2 = 0;     // super-node (kernel) pair, as node ids of the big graph
  int edge_start = 0;     // index of the block's first edge in the big graph's edge list
};

struct FactoredInstance {
  Graph graph;                    // edges stored in blockwise stream order
  std::vector<int> edge_order;    // identity permutation over graph.edges
  Graph kernel;                   // the kernel graph (super-nodes 0..kn-1)
  int n_prime = 0;                // edges per block
  int k = 0;                      // locality budget each block satisfies
  std::vector<FactoredBlock> blocks;  // one per ordered distinct super-node pair
};

// Super-nodes are nodes 0..kernel.n-1 of the big graph. For every ordered distinct
// pair (v1,v2) a fresh n_prime-edge gadget is appended: a single v1->v2 path when
// (v1,v2) is a kernel edge, else two disjoint paths hanging off v1 and v2.
// Requires n_prime >= 2k+2 and k >= 1.
FactoredInstance generate_factored(const Graph& kernel, int n_prime, int k,
                                   std::uint64_t seed);

}  // namespace gsm
