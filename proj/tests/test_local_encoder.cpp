#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "gsm/generators.hpp"
#include "gsm/local_encoder.hpp"
#include "gsm/oracles.hpp"
#include "gsm/seq_models.hpp"
#include "gsm/verify.hpp"

using namespace gsm;

TEST_CASE("fallback features are degree one-hots") {
  Graph g = generate_path(4);
  g.features.reset();
  auto f = node_features_or_fallback(g);
  REQUIRE(f.size() == 4);
  REQUIRE(f[0].size() == 17);
  CHECK(f[0][1] == 1.0);  // degree 1
  CHECK(f[1][2] == 1.0);  // degree 2
  CHECK(f[0][2] == 0.0);
}

TEST_CASE("encoder params validate depth vs dims") {
  CHECK_NOTHROW(make_encoder_params(3, 5, 1, 1));
  CHECK_NOTHROW(make_encoder_params(4, 4, 3, 1));
  CHECK_THROWS_AS(make_encoder_params(3, 5, 2, 1), std::invalid_argument);
}

TEST_CASE("depth-0 encoding is the plain projection") {
  Graph g;
  g.n = 2;
  g.edges = {{0, 1}};
  g.features = std::vector<std::vector<double>>{{1.0, 0.0}, {0.0, 2.0}};
  EncoderParams p = make_encoder_params(2, 3, 0, 7);
  auto enc = encode_tokens(g, node_tokenize(g), p);
  REQUIRE(enc.size() == 2);
  Eigen::VectorXd x0(2);
  x0 << 1.0, 0.0;
  CHECK((enc[0].vectors[0] - p.W1 * x0).norm() == 0.0);

  // edge token = endpoint mean; empty marker = zero vector
  Tokenization mixed;
  mixed.sequences.push_back(
      {Token::edge_tok(0), Token::subgraph_tok({0}, true), Token::subgraph_tok({0, 1})});
  auto em = encode_tokens(g, mixed, p);
  Eigen::VectorXd x1(2);
  x1 << 0.0, 2.0;
  CHECK((em[0].vectors[0] - 0.5 * (p.W1 * x0 + p.W1 * x1)).norm() == 0.0);
  CHECK(em[0].vectors[1].norm() == 0.0);
}

TEST_CASE("subgraph tokens re-encode on the induced subgraph") {
  // in the full path, node 1 has two neighbors; induced on {0,1} only one,
  // so the subgraph encoding must differ from the full-graph mean
  Graph g = generate_path(3);
  EncoderParams p = make_encoder_params(1, 2, 1, 3);
  Tokenization tok;
  tok.sequences.push_back({Token::subgraph_tok({0, 1})});
  auto enc = encode_tokens(g, tok, p);
  auto nodes = encode_tokens(g, node_tokenize(g), p);
  Eigen::VectorXd full_mean = 0.5 * (nodes[0].vectors[0] + nodes[1].vectors[0]);
  CHECK((enc[0].vectors[0] - full_mean).norm() > 1e-12);
}

TEST_CASE("encodings are permutation-equivariant") {
  auto r = check_encoder_equivariance(40, 41);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("motif encodings on hand-checked graphs") {
  Graph k3 = pattern_graph("triangle");
  auto s = subgraph_count_encoding(k3, pattern_graph("triangle"), 1);
  CHECK(s == std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(count_via_attention_sum(s) == doctest::Approx(1.0));

  Graph p4 = generate_path(4);
  auto sp = subgraph_count_encoding(p4, pattern_graph("path3"), 2);
  CHECK(std::llround(count_via_attention_sum(sp)) == 2);
  auto st = subgraph_count_encoding(p4, pattern_graph("triangle"), 1);
  CHECK(count_via_attention_sum(st) == 0.0);

  Graph c4 = pattern_graph("cycle4");
  auto sc = subgraph_count_encoding(c4, pattern_graph("cycle4"), 2);
  CHECK(std::llround(count_via_attention_sum(sc)) == 1);
}

TEST_CASE("pattern preconditions are enforced") {
  Graph g = generate_path(6);
  CHECK_THROWS_AS(subgraph_count_encoding(g, pattern_graph("path3"), 1),
                  std::invalid_argument);  // diameter 2 > k=1
  Graph big = generate_path(6);
  CHECK_THROWS_AS(subgraph_count_encoding(g, big, 6), std::invalid_argument);
  Graph disc;
  disc.n = 2;
  CHECK_THROWS_AS(subgraph_count_encoding(g, disc, 3), std::invalid_argument);
}

TEST_CASE("motif counts match brute force on random graphs") {
  auto r = check_motif_counts(30, 12, 42);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("encoded sequences round-trip through the binary format") {
  Graph g = generate_erdos_renyi(6, 0.5, 5);
  EncoderParams p = make_encoder_params(17, 4, 1, 9);
  auto enc = encode_tokens(g, node_tokenize(g), p);
  auto path = (std::filesystem::temp_directory_path() / "gsm_enc_roundtrip.bin").string();
  write_encoded_sequence(enc[2], path);
  EncodedSequence back = read_encoded_sequence(path);
  CHECK(back.provenance == enc[2].provenance);
  REQUIRE(back.vectors.size() == enc[2].vectors.size());
  for (std::size_t i = 0; i < back.vectors.size(); ++i)
    CHECK((back.vectors[i] - enc[2].vectors[i]).norm() == 0.0);
  std::remove(path.c_str());
}
