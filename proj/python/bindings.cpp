#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gsm/connectivity.hpp"
#include "gsm/generators.hpp"
#include "gsm/graph.hpp"
#include "gsm/graph_io.hpp"
#include "gsm/hac.hpp"
#include "gsm/local_encoder.hpp"
#include "gsm/oracles.hpp"
#include "gsm/seq_models.hpp"
#include "gsm/tokenize.hpp"
#include "gsm/verify.hpp"

namespace py = pybind11;
using namespace gsm;

PYBIND11_MODULE(_core, m) {
  m.doc() = "graph-sequence toolkit core";

  // --- graphs ---
  py::class_<Graph>(m, "Graph")
      .def(py::init<>())
      .def_readwrite("n", &Graph::n)
      .def_readwrite("edges", &Graph::edges)
      .def_readwrite("colors", &Graph::colors)
      .def_readwrite("features", &Graph::features)
      .def("validate", &Graph::validate)
      .def("edge_count", &Graph::edge_count)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.n) +
               ", edges=" + std::to_string(g.edges.size()) + ")";
      });

  m.def("adjacency", &adjacency);
  m.def("degrees", &degrees);
  m.def("bfs_distances", &bfs_distances);
  m.def("is_connected", &is_connected);
  m.def("component_labels", &component_labels);
  m.def("ball", &ball);
  m.def("induced_subgraph", &induced_subgraph);
  m.def("graphs_isomorphic", &graphs_isomorphic);
  m.def("diameter", &diameter);

  m.def("graph_to_json", &graph_to_json);
  m.def("graph_from_json", &graph_from_json);
  m.def("graph_fingerprint", &graph_fingerprint);

  // --- generators ---
  m.def("generate_erdos_renyi", &generate_erdos_renyi, py::arg("n"), py::arg("p"),
        py::arg("seed"));
  m.def("generate_regular", &generate_regular, py::arg("n"), py::arg("d"),
        py::arg("seed"));
  m.def("generate_cycles", &generate_cycles, py::arg("n"), py::arg("split"),
        py::arg("seed"));
  m.def("generate_path", &generate_path, py::arg("n"));
  m.def("generate_grid", &generate_grid, py::arg("rows"), py::arg("cols"));
  m.def("generate_connected_er", &generate_connected_er, py::arg("n"), py::arg("p"),
        py::arg("seed"));
  m.def("color_connectivity_instance", &color_connectivity_instance, py::arg("g"),
        py::arg("seed"));

  py::class_<FactoredBlock>(m, "FactoredBlock")
      .def_readonly("v1", &FactoredBlock::v1)
      .def_readonly("v2", &FactoredBlock::v2)
      .def_readonly("edge_start", &FactoredBlock::edge_start);
  py::class_<FactoredInstance>(m, "FactoredInstance")
      .def_readonly("graph", &FactoredInstance::graph)
      .def_readonly("edge_order", &FactoredInstance::edge_order)
      .def_readonly("kernel", &FactoredInstance::kernel)
      .def_readonly("n_prime", &FactoredInstance::n_prime)
      .def_readonly("k", &FactoredInstance::k)
      .def_readonly("blocks", &FactoredInstance::blocks);
  m.def("generate_factored", &generate_factored, py::arg("kernel"), py::arg("n_prime"),
        py::arg("k"), py::arg("seed"));

  // --- oracles ---
  m.def("oracle_triangle_count", &oracle_triangle_count);
  m.def("oracle_has_cycle", &oracle_has_cycle);
  m.def("oracle_color_counts", &oracle_color_counts);
  m.def("oracle_all_pairs_distances", &oracle_all_pairs_distances);
  m.def("oracle_induced_occurrences", &oracle_induced_occurrences);

  // --- tokenization ---
  py::class_<Token> tok(m, "Token");
  py::enum_<Token::Kind>(tok, "Kind")
      .value("node", Token::Kind::node)
      .value("edge", Token::Kind::edge)
      .value("subgraph", Token::Kind::subgraph);
  tok.def_readonly("kind", &Token::kind)
      .def_readonly("id", &Token::id)
      .def_readonly("members", &Token::members)
      .def_readonly("empty_marker", &Token::empty_marker)
      .def("__eq__", [](const Token& a, const Token& b) { return a == b; });

  py::class_<Tokenization>(m, "Tokenization")
      .def_readonly("tokenizer", &Tokenization::tokenizer)
      .def_readonly("params", &Tokenization::params)
      .def_readonly("graph_fingerprint", &Tokenization::graph_fingerprint)
      .def_readonly("sequences", &Tokenization::sequences);

  m.def("tokenization_to_json", &tokenization_to_json);
  m.def("tokenization_from_json", &tokenization_from_json);
  m.def("node_tokenize", &node_tokenize);
  m.def(
      "edge_tokenize",
      [](const Graph& g, std::optional<std::vector<int>> order) {
        return edge_tokenize(g, order ? &*order : nullptr);
      },
      py::arg("g"), py::arg("order") = std::nullopt);
  m.def("khop_tokenize", &khop_tokenize, py::arg("g"), py::arg("K"));
  m.def("random_walk_tokenize", &random_walk_tokenize, py::arg("g"),
        py::arg("walk_len"), py::arg("walks_per_node"), py::arg("seed"));
  m.def("node_locality", &node_locality);

  py::class_<MotRouting>(m, "MotRouting")
      .def_readonly("scores", &MotRouting::scores)
      .def_readonly("top2", &MotRouting::top2)
      .def_readonly("one_hot", &MotRouting::one_hot);
  m.def(
      "mot_route",
      [](const std::vector<std::vector<double>>& features,
         const std::vector<std::vector<double>>& W_r,
         const std::vector<std::string>& candidates) {
        return mot_route(features, RouterWeights{W_r}, candidates);
      },
      py::arg("features"), py::arg("W_r"), py::arg("candidates"));

  // --- hierarchical clustering ---
  py::class_<HacNode>(m, "HacNode")
      .def_readonly("level", &HacNode::level)
      .def_readonly("members", &HacNode::members)
      .def_readonly("children", &HacNode::children);
  py::class_<HacTree>(m, "HacTree")
      .def_readonly("nodes", &HacTree::nodes)
      .def_readonly("root", &HacTree::root)
      .def_readonly("leaf_order", &HacTree::leaf_order)
      .def("depth", &HacTree::depth);
  py::enum_<CostMetric>(m, "CostMetric")
      .value("euclidean", CostMetric::euclidean)
      .value("neg_cosine", CostMetric::neg_cosine);
  m.def("hac_tree_to_json", &hac_tree_to_json);
  m.def("hac_tree_from_json", &hac_tree_from_json);
  m.def("build_hac", &build_hac, py::arg("g"), py::arg("cost"));
  m.def("edge_costs_from_features", &edge_costs_from_features, py::arg("g"),
        py::arg("metric") = CostMetric::euclidean);
  m.def("partition_at", &partition_at, py::arg("tree"), py::arg("level"),
        py::arg("n"));
  m.def("dfs_tokenize", &dfs_tokenize);
  m.def("bfs_tokenize", &bfs_tokenize);
  m.def("hierarchical_pe", &hierarchical_pe, py::arg("tree"), py::arg("g"),
        py::arg("u"), py::arg("v"));
  m.def("hierarchical_pe_all", &hierarchical_pe_all);
  m.def("minimum_spanning_forest", &minimum_spanning_forest);
  m.def("hac_on_mst_equivalence", &hac_on_mst_equivalence);

  // --- local encoder ---
  py::class_<EncoderParams>(m, "EncoderParams")
      .def_readwrite("W1", &EncoderParams::W1)
      .def_readwrite("W2", &EncoderParams::W2)
      .def_readwrite("gate_w", &EncoderParams::gate_w)
      .def_readwrite("gate_b", &EncoderParams::gate_b)
      .def_readwrite("depth", &EncoderParams::depth);
  py::class_<EncodedSequence>(m, "EncodedSequence")
      .def_readonly("vectors", &EncodedSequence::vectors)
      .def_readonly("provenance", &EncodedSequence::provenance);
  m.def("make_encoder_params", &make_encoder_params, py::arg("d_in"),
        py::arg("d_local"), py::arg("depth"), py::arg("seed"));
  m.def("node_features_or_fallback", &node_features_or_fallback);
  m.def("encode_tokens", &encode_tokens, py::arg("g"), py::arg("tok"),
        py::arg("params"));
  m.def("subgraph_count_encoding", &subgraph_count_encoding, py::arg("g"),
        py::arg("H"), py::arg("k"));
  m.def("pattern_graph", &pattern_graph);
  m.def("write_encoded_sequence", &write_encoded_sequence);
  m.def("read_encoded_sequence", &read_encoded_sequence);

  // --- sequence models ---
  py::class_<LinearSsmLayer> ssm(m, "LinearSsmLayer");
  py::enum_<LinearSsmLayer::Mode>(ssm, "Mode")
      .value("lti", LinearSsmLayer::Mode::lti)
      .value("hippo_legs_timevarying", LinearSsmLayer::Mode::hippo_legs_timevarying);
  ssm.def(py::init<>())
      .def_readwrite("mode", &LinearSsmLayer::mode)
      .def_readwrite("A", &LinearSsmLayer::A)
      .def_readwrite("B", &LinearSsmLayer::B)
      .def_readwrite("C", &LinearSsmLayer::C)
      .def_readwrite("m", &LinearSsmLayer::m);

  m.def("hippo_legs_matrix", &hippo_legs_matrix);
  m.def("make_hippo_layer", &make_hippo_layer);
  m.def("ssm_forward", &ssm_forward);
  m.def("ssm_stack_forward", &ssm_stack_forward);
  m.def("color_count_construction", &color_count_construction);
  m.def("color_count_truncated", &color_count_truncated);
  m.def("one_hot_colors", &one_hot_colors, py::arg("colors"), py::arg("C"));

  py::class_<UndercountWitness>(m, "UndercountWitness")
      .def_readonly("found", &UndercountWitness::found)
      .def_readonly("coloring_a", &UndercountWitness::coloring_a)
      .def_readonly("coloring_b", &UndercountWitness::coloring_b)
      .def_readonly("out_a", &UndercountWitness::out_a)
      .def_readonly("out_b", &UndercountWitness::out_b);
  m.def("undercount_witness", &undercount_witness, py::arg("C"), py::arg("max_len"));

  py::class_<AttentionLayer>(m, "AttentionLayer")
      .def_readwrite("W_Q", &AttentionLayer::W_Q)
      .def_readwrite("W_K", &AttentionLayer::W_K)
      .def_readwrite("W_V", &AttentionLayer::W_V)
      .def_readwrite("causal", &AttentionLayer::causal)
      .def_readwrite("pe", &AttentionLayer::pe);
  m.def("make_attention_layer", &make_attention_layer, py::arg("d"), py::arg("d_k"),
        py::arg("causal"), py::arg("seed"));
  m.def("attention_forward", &attention_forward);

  py::class_<HybridBlock>(m, "HybridBlock")
      .def(py::init<>())
      .def_readwrite("ssm_layers", &HybridBlock::ssm_layers)
      .def_readwrite("attn", &HybridBlock::attn);
  m.def("hybrid_forward", &hybrid_forward);

  m.def("layer_jacobian", &layer_jacobian, py::arg("layer"), py::arg("t"),
        py::arg("s"));
  m.def("ssm_jacobian", &ssm_jacobian, py::arg("stack"), py::arg("n"), py::arg("i"));
  m.def("finite_difference_jacobian", &finite_difference_jacobian, py::arg("stack"),
        py::arg("n"), py::arg("i"), py::arg("step") = 1e-5,
        py::arg("seed") = 12345);
  m.def("sensitivity_stack", &sensitivity_stack, py::arg("L"), py::arg("m") = 4);
  m.def("sensitivity_surrogate", &sensitivity_surrogate, py::arg("k"), py::arg("i"));

  py::class_<SensitivityRow>(m, "SensitivityRow")
      .def_readonly("i", &SensitivityRow::i)
      .def_readonly("norm", &SensitivityRow::norm)
      .def_readonly("surrogate", &SensitivityRow::surrogate)
      .def_readonly("ratio", &SensitivityRow::ratio);
  m.def("sensitivity_profile", &sensitivity_profile, py::arg("stack"), py::arg("n"));
  m.def("sensitivity_profile_csv", &sensitivity_profile_csv);
  m.def("count_via_attention_sum", &count_via_attention_sum);

  // --- streaming connectivity ---
  py::class_<StreamResult>(m, "StreamResult")
      .def_readonly("connected", &StreamResult::connected)
      .def_readonly("alive", &StreamResult::alive)
      .def_readonly("violations", &StreamResult::violations)
      .def_readonly("max_window", &StreamResult::max_window);
  m.def("stream_connectivity_detail", &stream_connectivity_detail,
        py::arg("edge_seq"), py::arg("k"), py::arg("strict") = false,
        py::arg("total_nodes") = -1);
  m.def("stream_connectivity", &stream_connectivity, py::arg("edge_seq"),
        py::arg("k"), py::arg("strict") = false, py::arg("total_nodes") = -1);
  m.def("stream_terminals_connected", &stream_terminals_connected,
        py::arg("edge_seq"), py::arg("k"), py::arg("v1"), py::arg("v2"));
  m.def("hybrid_connectivity", &hybrid_connectivity, py::arg("inst"), py::arg("k"),
        py::arg("n_prime"));
  m.def("edge_order_from_node_order", &edge_order_from_node_order);
  m.def("stream_result_to_json", &stream_result_to_json);

  // --- property suites ---
  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("passed", &CheckResult::passed)
      .def_readonly("detail", &CheckResult::detail);
  m.def("run_suite", &run_suite, py::arg("suite"));
  m.def("suite_names", &suite_names);
}
