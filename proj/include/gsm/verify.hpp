#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace gsm {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // counts, fitted constants, or the first counterexample
};

// Property-check functions shared by the `verify` subcommand and the acceptance
// runner. Each is pure given its parameters and seed.

CheckResult check_graph_roundtrip(int instances, std::uint64_t seed);
CheckResult check_connectivity_oracles_agree(int instances, int max_n, std::uint64_t seed);
CheckResult check_cycles_components(std::uint64_t seed);
CheckResult check_color_instance_quota(int instances, std::uint64_t seed);

CheckResult check_khop_zero_degenerates(int instances, std::uint64_t seed);
CheckResult check_locality_bruteforce(int instances, int max_n, std::uint64_t seed);
CheckResult check_mot_route_properties(int instances, std::uint64_t seed);
CheckResult check_walk_edges_valid(int instances, std::uint64_t seed);

CheckResult check_hac_depth_bound(int instances, std::uint64_t seed);
CheckResult check_hac_mst_equivalence(int instances, std::uint64_t seed);
CheckResult check_hac_pe_last_coordinate(int graphs, std::uint64_t seed);
CheckResult check_hac_bfs_locality(int trials, int required_wins, std::uint64_t seed);

CheckResult check_encoder_equivariance(int instances, std::uint64_t seed);
CheckResult check_motif_counts(int instances, int max_n, std::uint64_t seed);

CheckResult check_color_count_construction(int instances, int max_n, int max_C,
                                           std::uint64_t seed);
CheckResult check_undercount_witness(int max_C, int max_len);
CheckResult check_sensitivity_single_layer(const std::vector<int>& ns);
CheckResult check_sensitivity_band_two_layers(const std::vector<int>& ns);
CheckResult check_sensitivity_depth(const std::vector<int>& ns, double fitted_c);
CheckResult check_jacobian_finite_difference(std::uint64_t seed);
CheckResult check_attention_equivariance(int trials, std::uint64_t seed);
CheckResult check_causal_future_invariance(int trials, std::uint64_t seed);

CheckResult check_stream_exhaustive(int max_edges);
CheckResult check_stream_random(int instances, int max_n, std::uint64_t seed);
CheckResult check_hybrid_vs_unionfind(int instances, std::uint64_t seed);

// suite name -> list of results; throws std::invalid_argument on unknown name
std::vector<CheckResult> run_suite(const std::string& suite);
std::vector<std::string> suite_names();

}  // namespace gsm
