#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gsm/graph.hpp"
#include "gsm/tokenize.hpp"

namespace gsm {

struct EncoderParams {
  Eigen::MatrixXd W1;      // d_local x d_in
  Eigen::MatrixXd W2;      // d_local x d_in
  Eigen::VectorXd gate_w;  // d_in
  double gate_b = 0.0;
  int depth = 1;  // message-passing rounds; 0 = plain linear projection
};

// deterministic random weights for the given dims
EncoderParams make_encoder_params(int d_in, int d_local, int depth, std::uint64_t seed);

// stored features, or one-hot of min(degree, 16) when absent (d_in = 17)
std::vector<std::vector<double>> node_features_or_fallback(const Graph& g);

struct EncodedSequence {
  std::vector<Eigen::VectorXd> vectors;  // one d_local vector per token
  std::string provenance;                // graph fingerprint of the tokenization
};

// node token -> the node's encoding after `depth` rounds of gated mean aggregation;
// edge token -> mean of endpoint encodings; subgraph token -> mean of member
// encodings recomputed on the induced subgraph; empty marker -> zero vector
std::vector<EncodedSequence> encode_tokens(const Graph& g, const Tokenization& tok,
                                           const EncoderParams& params);

// s_i = (#subsets V' of the k-ball around i with i in V' and induced(V') iso H) / |V(H)|;
// summing s_i over all nodes gives the exact occurrence count of H
std::vector<double> subgraph_count_encoding(const Graph& g, const Graph& H, int k);

// "triangle", "path3" (path on 3 nodes), "cycle4"
Graph pattern_graph(const std::string& name);

// JSON header line {token_count, d_local, provenance} + little-endian f64 rows
void write_encoded_sequence(const EncodedSequence& seq, const std::string& path);
EncodedSequence read_encoded_sequence(const std::string& path);

}  // namespace gsm
