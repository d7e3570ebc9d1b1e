#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gsm {

struct LinearSsmLayer {
  enum class Mode { lti, hippo_legs_timevarying };
  Mode mode = Mode::lti;
  Eigen::MatrixXd A;  // m x m
  Eigen::MatrixXd B;  // m x d_in
  Eigen::MatrixXd C;  // d_out x m
  int m = 0;
};

// A[r][c] = sqrt((2r+1)(2c+1)) below the diagonal, r+1 on it, 0 above
Eigen::MatrixXd hippo_legs_matrix(int m);

// full-state layer: hippo A, B = C = identity
LinearSsmLayer make_hippo_layer(int m);

// h_0 = 0; lti: h_t = A h_{t-1} + B x_t; time-varying: h_t = (I - A/t) h_{t-1} + (B/t) x_t
// with t starting at 1; y_t = C h_t
std::vector<Eigen::VectorXd> ssm_forward(const LinearSsmLayer& layer,
                                         const std::vector<Eigen::VectorXd>& xs);

// feeds xs through each layer in turn
std::vector<Eigen::VectorXd> ssm_stack_forward(const std::vector<LinearSsmLayer>& stack,
                                               const std::vector<Eigen::VectorXd>& xs);

// lti layer with m = C and identity A, B, C: the final output on a one-hot color
// stream is the exact per-color count vector
LinearSsmLayer color_count_construction(int C);

// the same family one state short (m = C-1, B = truncated identity): provably
// collapses colorings that differ only in the last color's count
LinearSsmLayer color_count_truncated(int C);

std::vector<Eigen::VectorXd> one_hot_colors(const std::vector<int>& colors, int C);

struct UndercountWitness {
  bool found = false;
  std::vector<int> coloring_a, coloring_b;
  Eigen::VectorXd out_a, out_b;
};

// search over all colorings of length <= max_len for two inputs with different
// color counts but (near-)identical truncated-layer outputs
UndercountWitness undercount_witness(int C, int max_len);

struct AttentionLayer {
  Eigen::MatrixXd W_Q;  // d_k x d
  Eigen::MatrixXd W_K;  // d_k x d
  Eigen::MatrixXd W_V;  // d x d
  bool causal = false;
  std::optional<std::vector<Eigen::VectorXd>> pe;  // added to inputs when present
};

AttentionLayer make_attention_layer(int d, int d_k, bool causal, std::uint64_t seed);

// softmax((Q K^T)/sqrt(d_k)) V row-wise; causal masks j > i. Row reductions use
// order-insensitive (sorted) summation so permuting tokens permutes outputs exactly.
std::vector<Eigen::VectorXd> attention_forward(const AttentionLayer& layer,
                                               const std::vector<Eigen::VectorXd>& xs);

struct HybridBlock {
  std::vector<LinearSsmLayer> ssm_layers;
  AttentionLayer attn;
};

std::vector<Eigen::VectorXd> hybrid_forward(const HybridBlock& block,
                                            const std::vector<Eigen::VectorXd>& xs);

// analytic per-layer Jacobian d y_t / d x_s of one linear recurrent layer
Eigen::MatrixXd layer_jacobian(const LinearSsmLayer& layer, int t, int s);

// d y_n / d x_i of a stack, composed by the chain-rule sum over intermediate
// positions (the prediction read out after consuming n inputs)
Eigen::MatrixXd ssm_jacobian(const std::vector<LinearSsmLayer>& stack, int n, int i);

// central finite differences through the actual stacked forward pass
Eigen::MatrixXd finite_difference_jacobian(const std::vector<LinearSsmLayer>& stack, int n,
                                           int i, double step = 1e-5,
                                           std::uint64_t seed = 12345);

// canonical profile stack: hippo layers with identity B, identity inter-layer
// readouts, and a first-coordinate (running-average mode) final readout
std::vector<LinearSsmLayer> sensitivity_stack(int L, int m = 4);

// scalar surrogate (i-1)/(i*k) the Jacobian norms are compared against
double sensitivity_surrogate(int k, int i);

struct SensitivityRow {
  int i;
  double norm;       // Frobenius norm of d y_{n+1} / d x_i
  double surrogate;  // (i-1)/(i*(n-1))
  double ratio;      // norm / surrogate
};

// rows for i = 2..n (the surrogate vanishes at i = 1)
std::vector<SensitivityRow> sensitivity_profile(const std::vector<LinearSsmLayer>& stack,
                                                int n);

std::string sensitivity_profile_csv(const std::vector<SensitivityRow>& rows);

// uniform attention (zero Q,K) over the scalars with an n*mean readout: returns
// the exact sum of the per-node encodings
double count_via_attention_sum(const std::vector<double>& encodings);

}  // namespace gsm
