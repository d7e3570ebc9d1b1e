#include "gsm/local_encoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "gsm/numeric.hpp"
#include "gsm/oracles.hpp"
#include "gsm/rng.hpp"
#include "json.hpp"

namespace gsm {

EncoderParams make_encoder_params(int d_in, int d_local, int depth, std::uint64_t seed) {
  if (depth >= 2 && d_in != d_local)
    throw std::invalid_argument("encoder params: depth >= 2 needs d_in == d_local");
  Rng rng(seed);
  EncoderParams p;
  p.depth = depth;
  p.W1.resize(d_local, d_in);
  p.W2.resize(d_local, d_in);
  p.gate_w.resize(d_in);
  for (int i = 0; i < d_local; ++i)
    for (int j = 0; j < d_in; ++j) p.W1(i, j) = rng.normal() / std::sqrt(d_in);
  for (int i = 0; i < d_local; ++i)
    for (int j = 0; j < d_in; ++j) p.W2(i, j) = rng.normal() / std::sqrt(d_in);
  for (int j = 0; j < d_in; ++j) p.gate_w(j) = rng.normal() / std::sqrt(d_in);
  p.gate_b = rng.normal();
  return p;
}

std::vector<std::vector<double>> node_features_or_fallback(const Graph& g) {
  if (g.features) return *g.features;
  auto deg = degrees(g);
  std::vector<std::vector<double>> f(g.n, std::vector<double>(17, 0.0));
  for (int v = 0; v < g.n; ++v) f[v][std::min(deg[v], 16)] = 1.0;
  return f;
}

namespace {

// per-node encodings after `depth` rounds over the whole graph
std::vector<Eigen::VectorXd> node_encodings(const Graph& g, const EncoderParams& p) {
  auto raw = node_features_or_fallback(g);
  int d_in = raw.empty() ? static_cast<int>(p.W1.cols()) : static_cast<int>(raw[0].size());
  if (d_in != p.W1.cols() || d_in != p.W2.cols() || d_in != p.gate_w.size())
    throw std::invalid_argument("encode: feature dim does not match weights");
  if (p.depth >= 2 && p.W1.rows() != p.W1.cols())
    throw std::invalid_argument("encode: depth >= 2 needs square weights");

  std::vector<Eigen::VectorXd> h(g.n);
  for (int v = 0; v < g.n; ++v)
    h[v] = Eigen::Map<const Eigen::VectorXd>(raw[v].data(), d_in);

  if (p.depth == 0) {
    for (int v = 0; v < g.n; ++v) h[v] = (p.W1 * h[v]).eval();
    return h;
  }

  auto adj = adjacency(g);
  // per-edge scalar gates from raw endpoint features
  std::vector<std::vector<double>> gate(g.n);
  for (int v = 0; v < g.n; ++v) gate[v].resize(adj[v].size());
  for (int v = 0; v < g.n; ++v)
    for (std::size_t i = 0; i < adj[v].size(); ++i) {
      int u = adj[v][i];
      double z = p.gate_b;
      for (int j = 0; j < d_in; ++j) z += p.gate_w(j) * (raw[v][j] + raw[u][j]);
      gate[v][i] = 1.0 / (1.0 + std::exp(-z));
    }

  for (int round = 0; round < p.depth; ++round) {
    std::vector<Eigen::VectorXd> next(g.n);
    for (int v = 0; v < g.n; ++v) {
      Eigen::VectorXd agg = Eigen::VectorXd::Zero(p.W2.rows());
      if (!adj[v].empty()) {
        std::vector<Eigen::VectorXd> terms(adj[v].size());
        for (std::size_t i = 0; i < adj[v].size(); ++i)
          terms[i] = gate[v][i] * (p.W2 * h[adj[v][i]]);
        agg = stable_vector_sum(terms) / static_cast<double>(adj[v].size());
      }
      next[v] = ((p.W1 * h[v] + agg).array().max(0.0)).matrix();
    }
    h = std::move(next);
  }
  return h;
}

}  // namespace

std::vector<EncodedSequence> encode_tokens(const Graph& g, const Tokenization& tok,
                                           const EncoderParams& params) {
  auto enc = node_encodings(g, params);
  int d_local = static_cast<int>(params.W1.rows());
  std::vector<EncodedSequence> out;
  for (const auto& seq : tok.sequences) {
    EncodedSequence es;
    es.provenance = tok.graph_fingerprint;
    for (const auto& t : seq) {
      switch (t.kind) {
        case Token::Kind::node: {
          if (t.id < 0 || t.id >= g.n) throw std::invalid_argument("encode: bad node token");
          es.vectors.push_back(enc[t.id]);
          break;
        }
        case Token::Kind::edge: {
          if (t.id < 0 || t.id >= g.edge_count())
            throw std::invalid_argument("encode: bad edge token");
          auto [u, v] = g.edges[t.id];
          es.vectors.push_back(0.5 * (enc[u] + enc[v]));
          break;
        }
        case Token::Kind::subgraph: {
          if (t.empty_marker) {
            es.vectors.push_back(Eigen::VectorXd::Zero(d_local));
            break;
          }
          if (t.members.empty()) throw std::invalid_argument("encode: empty subgraph token");
          Graph sub = induced_subgraph(g, t.members);
          auto sub_enc = node_encodings(sub, params);
          es.vectors.push_back(stable_vector_sum(sub_enc) /
                               static_cast<double>(sub_enc.size()));
          break;
        }
      }
    }
    out.push_back(std::move(es));
  }
  return out;
}

std::vector<double> subgraph_count_encoding(const Graph& g, const Graph& H, int k) {
  if (H.n < 1 || H.n > 5)
    throw std::invalid_argument("subgraph_count_encoding: pattern must have 1..5 nodes");
  int dH = diameter(H);
  if (dH < 0 || dH > k)
    throw std::invalid_argument("subgraph_count_encoding: pattern diameter exceeds k");
  std::vector<double> s(g.n, 0.0);
  for (int i = 0; i < g.n; ++i) {
    auto b = ball(g, i, k);
    std::vector<int> others;
    for (int v : b)
      if (v != i) others.push_back(v);
    int need = H.n - 1;
    if (static_cast<int>(others.size()) < need) continue;
    long long cnt = 0;
    std::vector<int> subset(need);
    std::vector<int> pick(need);
    // ascending (H.n-1)-subsets of `others`
    for (int j = 0; j < need; ++j) pick[j] = j;
    bool more = true;
    if (need == 0) {
      cnt = graphs_isomorphic(induced_subgraph(g, {i}), H) ? 1 : 0;
      more = false;
    }
    while (more) {
      std::vector<int> verts{i};
      for (int j = 0; j < need; ++j) verts.push_back(others[pick[j]]);
      if (graphs_isomorphic(induced_subgraph(g, verts), H)) ++cnt;
      int j = need - 1;
      while (j >= 0 && pick[j] == static_cast<int>(others.size()) - need + j) --j;
      if (j < 0) break;
      ++pick[j];
      for (int l = j + 1; l < need; ++l) pick[l] = pick[l - 1] + 1;
    }
    s[i] = static_cast<double>(cnt) / static_cast<double>(H.n);
  }
  return s;
}

Graph pattern_graph(const std::string& name) {
  Graph h;
  if (name == "triangle") {
    h.n = 3;
    h.edges = {{0, 1}, {1, 2}, {0, 2}};
  } else if (name == "path3") {
    h.n = 3;
    h.edges = {{0, 1}, {1, 2}};
  } else if (name == "cycle4") {
    h.n = 4;
    h.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  } else {
    throw std::invalid_argument("unknown pattern: " + name);
  }
  return h;
}

namespace {

void put_f64_le(std::string& out, double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, 8);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

double get_f64_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  double x;
  std::memcpy(&x, &bits, 8);
  return x;
}

}  // namespace

void write_encoded_sequence(const EncodedSequence& seq, const std::string& path) {
  nlohmann::ordered_json header;
  header["token_count"] = seq.vectors.size();
  header["d_local"] = seq.vectors.empty() ? 0 : seq.vectors.front().size();
  header["provenance"] = seq.provenance;
  std::string out = header.dump() + "\n";
  for (const auto& v : seq.vectors)
    for (int i = 0; i < v.size(); ++i) put_f64_le(out, v(i));
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

EncodedSequence read_encoded_sequence(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::string header_line;
  std::getline(f, header_line);
  auto header = nlohmann::ordered_json::parse(header_line);
  std::size_t count = header.at("token_count").get<std::size_t>();
  int d = header.at("d_local").get<int>();
  EncodedSequence seq;
  seq.provenance = header.at("provenance").get<std::string>();
  std::vector<unsigned char> buf(count * d * 8);
  f.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (static_cast<std::size_t>(f.gcount()) != buf.size())
    throw std::runtime_error("truncated encoded sequence: " + path);
  for (std::size_t t = 0; t < count; ++t) {
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v(i) = get_f64_le(buf.data() + (t * d + i) * 8);
    seq.vectors.push_back(std::move(v));
  }
  return seq;
}

}  // namespace gsm
