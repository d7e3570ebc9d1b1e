#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsm/connectivity.hpp"
#include "gsm/generators.hpp"
#include "gsm/graph_io.hpp"
#include "gsm/hac.hpp"
#include "gsm/local_encoder.hpp"
#include "gsm/oracles.hpp"
#include "gsm/rng.hpp"
#include "gsm/seq_models.hpp"
#include "gsm/tokenize.hpp"
#include "gsm/verify.hpp"
#include "json.hpp"

namespace {

using gsm::Graph;
using gsm::Rng;
using ordered_json = nlohmann::ordered_json;
using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

std::string fmt_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", ms);
  return buf;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

// per-edge uniform costs when the graph carries no features
std::vector<double> costs_for(const Graph& g, const std::string& metric,
                              std::uint64_t seed) {
  if (g.features)
    return gsm::edge_costs_from_features(
        g, metric == "neg_cosine" ? gsm::CostMetric::neg_cosine
                                  : gsm::CostMetric::euclidean);
  Rng rng(seed);
  std::vector<double> cost(g.edge_count());
  for (auto& c : cost) c = rng.uniform01();
  return cost;
}

struct GlobalOpts {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string format = "json";
};

int cmd_generate(const GlobalOpts& go, const std::string& kind, int n, double p, int d,
                 bool split, int rows, int cols, std::string task, int kernel_n,
                 double kernel_p, int n_prime, int k) {
  Graph g;
  if (kind == "er") {
    g = gsm::generate_erdos_renyi(n, p, go.seed);
  } else if (kind == "regular") {
    g = gsm::generate_regular(n, d, go.seed);
  } else if (kind == "cycles") {
    g = gsm::generate_cycles(n, split, go.seed);
  } else if (kind == "path") {
    g = gsm::generate_path(n);
  } else if (kind == "grid") {
    g = gsm::generate_grid(rows, cols);
  } else if (kind == "colored") {
    Graph base = gsm::generate_connected_er(n, p, go.seed);
    g = gsm::color_connectivity_instance(base, go.seed + 1);
    if (task.empty()) task = "color_counts";
  } else if (kind == "factored") {
    Graph kernel = gsm::generate_erdos_renyi(kernel_n, kernel_p, go.seed);
    gsm::FactoredInstance inst = gsm::generate_factored(kernel, n_prime, k, go.seed);
    gsm::write_graph(inst.graph, join_path(go.out_dir, "graph.json"));
    gsm::write_graph(inst.kernel, join_path(go.out_dir, "kernel.json"));
    ordered_json meta;
    meta["n_prime"] = inst.n_prime;
    meta["k"] = inst.k;
    ordered_json blocks = ordered_json::array();
    for (const auto& b : inst.blocks)
      blocks.push_back({{"v1", b.v1}, {"v2", b.v2}, {"edge_start", b.edge_start}});
    meta["blocks"] = blocks;
    gsm::write_text_file(join_path(go.out_dir, "factored.json"), meta.dump() + "\n");
    if (task.empty()) task = "connectivity";
    auto label = gsm::oracle(inst.graph, gsm::task_kind_from_name(task));
    gsm::write_text_file(join_path(go.out_dir, "labels.json"),
                         gsm::task_label_to_json(label) + "\n");
    return 0;
  }
  if (task.empty()) task = "connectivity";
  gsm::write_graph(g, join_path(go.out_dir, "graph.json"));
  auto label = gsm::oracle(g, gsm::task_kind_from_name(task));
  gsm::write_text_file(join_path(go.out_dir, "labels.json"),
                       gsm::task_label_to_json(label) + "\n");
  return 0;
}

int cmd_tokenize(const GlobalOpts& go, const std::string& graph_path,
                 const std::string& method, int k, int walk_len, int walks_per_node,
                 const std::string& metric, bool pe, const std::string& weights_path,
                 const std::string& candidates_csv) {
  Graph g = gsm::read_graph(graph_path);
  if (method == "mot") {
    std::vector<std::string> candidates;
    std::stringstream ss(candidates_csv);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) candidates.push_back(item);
    auto wj = ordered_json::parse(gsm::read_text_file(weights_path));
    gsm::RouterWeights w;
    w.W_r = wj.at("W_r").get<std::vector<std::vector<double>>>();
    auto routing = gsm::mot_route(gsm::node_features_or_fallback(g), w, candidates);
    ordered_json out;
    out["candidates"] = candidates;
    out["scores"] = routing.scores;
    ordered_json top2 = ordered_json::array();
    for (const auto& t : routing.top2) top2.push_back({t[0], t[1]});
    out["top2"] = top2;
    out["one_hot"] = routing.one_hot;
    gsm::write_text_file(join_path(go.out_dir, "routing.json"), out.dump() + "\n");
    return 0;
  }

  gsm::Tokenization tok;
  if (method == "node") {
    tok = gsm::node_tokenize(g);
  } else if (method == "edge") {
    tok = gsm::edge_tokenize(g);
  } else if (method == "khop") {
    tok = gsm::khop_tokenize(g, k);
  } else if (method == "walk") {
    tok = gsm::random_walk_tokenize(g, walk_len, walks_per_node, go.seed);
  } else {  // hac-dfs | hac-bfs
    auto cost = costs_for(g, metric, go.seed);
    gsm::HacTree tree = gsm::build_hac(g, cost);
    gsm::write_text_file(join_path(go.out_dir, "hac_tree.json"),
                         gsm::hac_tree_to_json(tree) + "\n");
    tok = method == "hac-dfs" ? gsm::dfs_tokenize(tree, g) : gsm::bfs_tokenize(tree, g);
    if (pe) {
      auto table = gsm::hierarchical_pe_all(tree, g);
      std::ostringstream csv;
      csv << "u,v";
      for (std::size_t j = 0; j < table.size(); ++j) csv << ",d" << j;
      csv << "\n";
      for (int u = 0; u < g.n; ++u)
        for (int v = 0; v < g.n; ++v) {
          csv << u << "," << v;
          for (const auto& level : table) csv << "," << level[u][v];
          csv << "\n";
        }
      gsm::write_text_file(join_path(go.out_dir, "pe.csv"), csv.str());
    }
  }
  gsm::write_text_file(join_path(go.out_dir, "tokens.json"),
                       gsm::tokenization_to_json(tok) + "\n");
  return 0;
}

int cmd_encode(const GlobalOpts& go, const std::string& graph_path,
               const std::string& tokens_path, int d_local, int depth) {
  Graph g = gsm::read_graph(graph_path);
  gsm::Tokenization tok = gsm::tokenization_from_json(gsm::read_text_file(tokens_path));
  if (tok.graph_fingerprint != gsm::graph_fingerprint(g))
    throw std::runtime_error("tokenization was produced from a different graph");
  int d_in = static_cast<int>(gsm::node_features_or_fallback(g).at(0).size());
  auto params = gsm::make_encoder_params(d_in, d_local, depth, go.seed);
  auto encoded = gsm::encode_tokens(g, tok, params);
  ordered_json index;
  index["d_local"] = d_local;
  index["depth"] = depth;
  ordered_json files = ordered_json::array();
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    char name[40];
    std::snprintf(name, sizeof(name), "encoded_%06zu.bin", i);
    gsm::write_encoded_sequence(encoded[i], join_path(go.out_dir, name));
    files.push_back({{"file", name},
                     {"tokens", encoded[i].vectors.size()}});
  }
  index["sequences"] = files;
  gsm::write_text_file(join_path(go.out_dir, "encoded_index.json"), index.dump() + "\n");
  return 0;
}

int cmd_run(const GlobalOpts& go, const std::string& task, int instances) {
  std::ostringstream csv;
  csv << "task,method,exact_match_rate,wall_time_ms,peak_window\n";
  Rng rng(go.seed);
  if (task == "color-count") {
    auto t0 = clock_type::now();
    int exact = 0;
    for (int i = 0; i < instances; ++i) {
      int n = 4 + static_cast<int>(rng.uniform_int(61));
      int C = 2 + static_cast<int>(rng.uniform_int(7));
      Graph g = gsm::generate_erdos_renyi(n, 0.2, rng.next_u64());
      g.colors.emplace(n);
      for (auto& c : *g.colors) c = static_cast<int>(rng.uniform_int(C));
      auto layer = gsm::color_count_construction(C);
      auto ys = gsm::ssm_forward(layer, gsm::one_hot_colors(*g.colors, C));
      auto truth = gsm::oracle_color_counts(g);
      bool ok = true;
      for (int c = 0; c < C; ++c) {
        double want = c < static_cast<int>(truth.size()) ? double(truth[c]) : 0.0;
        ok = ok && ys.back()(c) == want;
      }
      exact += ok;
    }
    csv << "color-count,ssm-identity-state," << double(exact) / instances << ","
        << fmt_ms(ms_since(t0)) << ",0\n";
  } else if (task == "motif-count") {
    const std::vector<std::pair<std::string, int>> patterns = {
        {"triangle", 1}, {"path3", 2}, {"cycle4", 2}};
    for (const auto& [pname, kk] : patterns) {
      auto t0 = clock_type::now();
      int exact = 0;
      Rng prng(go.seed + gsm::fnv1a(pname));
      for (int i = 0; i < instances; ++i) {
        int n = 4 + static_cast<int>(prng.uniform_int(17));
        Graph g = gsm::generate_erdos_renyi(n, 0.1 + 0.4 * prng.uniform01(),
                                            prng.next_u64());
        Graph H = gsm::pattern_graph(pname);
        auto enc = gsm::subgraph_count_encoding(g, H, kk);
        long long pred = std::llround(gsm::count_via_attention_sum(enc));
        exact += pred == gsm::oracle_induced_occurrences(g, H);
      }
      csv << "motif-count,attention-sum-" << pname << "," << double(exact) / instances
          << "," << fmt_ms(ms_since(t0)) << ",0\n";
    }
  } else {  // stream-connectivity
    auto t0 = clock_type::now();
    int exact = 0, peak = 0;
    for (int i = 0; i < instances; ++i) {
      int n = 8 + static_cast<int>(rng.uniform_int(57));
      double p = std::min(1.0, (0.8 + 1.4 * rng.uniform01()) * std::log(n) / n);
      Graph g = gsm::generate_erdos_renyi(n, p, rng.next_u64());
      std::vector<double> cost(g.edge_count());
      for (auto& c : cost) c = rng.uniform01();
      gsm::HacTree tree = gsm::build_hac(g, cost);
      auto order = gsm::edge_order_from_node_order(g, tree.leaf_order);
      int k = gsm::node_locality(g, order);
      std::vector<std::pair<int, int>> seq;
      for (int e : order) seq.push_back(g.edges[e]);
      auto res = gsm::stream_connectivity_detail(seq, k, true, n);
      bool truth = gsm::oracle(g, gsm::TaskKind::connectivity).flag;
      exact += res.connected == truth;
      peak = std::max(peak, res.max_window);
    }
    csv << "stream-connectivity,window-automaton-hac-order," << double(exact) / instances
        << "," << fmt_ms(ms_since(t0)) << "," << peak << "\n";
  }
  gsm::write_text_file(join_path(go.out_dir, "metrics.csv"), csv.str());
  return 0;
}

int cmd_verify(const GlobalOpts& go, const std::string& suite) {
  auto results = gsm::run_suite(suite);
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.passed;
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail
              << "\n";
  }
  if (go.format == "csv") {
    std::ostringstream csv;
    csv << "name,passed,detail\n";
    for (const auto& r : results) {
      std::string d = r.detail;
      for (auto& ch : d)
        if (ch == ',') ch = ';';
      csv << r.name << "," << (r.passed ? 1 : 0) << "," << d << "\n";
    }
    gsm::write_text_file(join_path(go.out_dir, "report.csv"), csv.str());
  } else {
    ordered_json j = ordered_json::array();
    for (const auto& r : results)
      j.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    gsm::write_text_file(join_path(go.out_dir, "report.json"), j.dump() + "\n");
  }
  if (suite == "sensitivity" || suite == "all") {
    std::ostringstream csv;
    csv << "L,n,i,norm,surrogate,ratio\n";
    for (int L = 1; L <= 3; ++L)
      for (int n : {8, 16, 32})
        for (const auto& row : gsm::sensitivity_profile(gsm::sensitivity_stack(L), n)) {
          char buf[128];
          std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.17g,%.17g,%.17g\n", L, n, row.i,
                        row.norm, row.surrogate, row.ratio);
          csv << buf;
        }
    gsm::write_text_file(join_path(go.out_dir, "sensitivity_profile.csv"), csv.str());
  }
  return all_pass ? 0 : 1;
}

int cmd_bench(const GlobalOpts& go, int n, int instances) {
  std::ostringstream csv;
  csv << "operation,n,edges,wall_ms\n";
  Rng rng(go.seed);
  for (int i = 0; i < instances; ++i) {
    Graph g = gsm::generate_erdos_renyi(n, 3.0 / n, rng.next_u64());
    std::vector<double> cost(g.edge_count());
    for (auto& c : cost) c = rng.uniform01();
    auto bench_one = [&](const char* op, auto&& fn) {
      auto t0 = clock_type::now();
      fn();
      csv << op << "," << g.n << "," << g.edge_count() << "," << fmt_ms(ms_since(t0))
          << "\n";
    };
    bench_one("node_tokenize", [&] { gsm::node_tokenize(g); });
    bench_one("khop_tokenize_k2", [&] { gsm::khop_tokenize(g, 2); });
    gsm::HacTree tree;
    bench_one("build_hac", [&] { tree = gsm::build_hac(g, cost); });
    bench_one("stream_connectivity", [&] {
      auto order = gsm::edge_order_from_node_order(g, tree.leaf_order);
      int k = gsm::node_locality(g, order);
      std::vector<std::pair<int, int>> seq;
      for (int e : order) seq.push_back(g.edges[e]);
      gsm::stream_connectivity_detail(seq, k, false);
    });
  }
  gsm::write_text_file(join_path(go.out_dir, "bench.csv"), csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-sequence toolkit"};
  app.require_subcommand(1);

  GlobalOpts go;
  app.add_option("--seed", go.seed, "master seed");
  app.add_option("--out-dir", go.out_dir, "output directory");
  app.add_option("--format", go.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));

  // generate
  auto* gen = app.add_subcommand("generate", "write a graph and its oracle labels");
  gen->fallthrough();
  std::string kind = "er", task;
  int n = 10, d = 3, rows = 3, cols = 3, kernel_n = 4, n_prime = 8, k_budget = 2;
  double p = 0.3, kernel_p = 0.5;
  bool split = false;
  gen->add_option("--kind", kind)
      ->check(CLI::IsMember({"er", "regular", "cycles", "path", "grid", "colored",
                             "factored"}));
  gen->add_option("--n", n);
  gen->add_option("--p", p);
  gen->add_option("--d", d);
  gen->add_flag("--split", split);
  gen->add_option("--rows", rows);
  gen->add_option("--cols", cols);
  gen->add_option("--task", task)
      ->check(CLI::IsMember({"node_degree", "cycle_check", "triangle_count",
                             "connectivity", "color_counts", "shortest_path"}));
  gen->add_option("--kernel-n", kernel_n);
  gen->add_option("--kernel-p", kernel_p);
  gen->add_option("--n-prime", n_prime);
  gen->add_option("--k", k_budget);

  // tokenize
  auto* tokc = app.add_subcommand("tokenize", "tokenize a graph file");
  tokc->fallthrough();
  std::string graph_path, tokens_path, method = "node", metric = "euclidean";
  std::string weights_path, candidates_csv = "node,khop,hac-dfs";
  int khop_k = 2, walk_len = 8, walks_per_node = 1;
  bool pe = false;
  tokc->add_option("--graph", graph_path);
  tokc->add_option("--method", method)
      ->check(CLI::IsMember({"node", "edge", "khop", "walk", "hac-dfs", "hac-bfs",
                             "mot"}));
  tokc->add_option("--k", khop_k);
  tokc->add_option("--walk-len", walk_len);
  tokc->add_option("--walks-per-node", walks_per_node);
  tokc->add_option("--metric", metric)
      ->check(CLI::IsMember({"euclidean", "neg_cosine"}));
  tokc->add_flag("--pe", pe, "also write the hierarchical position table");
  tokc->add_option("--weights", weights_path);
  tokc->add_option("--candidates", candidates_csv);

  // encode
  auto* enc = app.add_subcommand("encode", "encode a tokenization");
  enc->fallthrough();
  int d_local = 8, enc_depth = 1;
  enc->add_option("--graph", graph_path);
  enc->add_option("--tokens", tokens_path);
  enc->add_option("--d-local", d_local);
  enc->add_option("--depth", enc_depth);

  // run
  auto* run = app.add_subcommand("run", "end-to-end constructive pipelines");
  run->fallthrough();
  std::string run_task = "color-count";
  int instances = 100;
  run->add_option("--task", run_task)
      ->check(CLI::IsMember({"color-count", "motif-count", "stream-connectivity"}));
  run->add_option("--instances", instances);

  // verify
  auto* ver = app.add_subcommand("verify", "run a property suite");
  ver->fallthrough();
  std::string suite = "all";
  ver->add_option("--suite", suite)->check(CLI::IsMember(gsm::suite_names()));

  // bench
  auto* ben = app.add_subcommand("bench", "time the core operations");
  ben->fallthrough();
  int bench_n = 2000, bench_instances = 3;
  ben->add_option("--n", bench_n);
  ben->add_option("--instances", bench_instances);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::filesystem::create_directories(go.out_dir);
    if (gen->parsed())
      return cmd_generate(go, kind, n, p, d, split, rows, cols, task, kernel_n, kernel_p,
                          n_prime, k_budget);
    if (tokc->parsed()) {
      if (graph_path.empty()) graph_path = join_path(go.out_dir, "graph.json");
      return cmd_tokenize(go, graph_path, method, khop_k, walk_len, walks_per_node,
                          metric, pe, weights_path, candidates_csv);
    }
    if (enc->parsed()) {
      if (graph_path.empty()) graph_path = join_path(go.out_dir, "graph.json");
      if (tokens_path.empty()) tokens_path = join_path(go.out_dir, "tokens.json");
      return cmd_encode(go, graph_path, tokens_path, d_local, enc_depth);
    }
    if (run->parsed()) return cmd_run(go, run_task, instances);
    if (ver->parsed()) return cmd_verify(go, suite);
    if (ben->parsed()) return cmd_bench(go, bench_n, bench_instances);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
