#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gsm/rng.hpp"
#include "gsm/seq_models.hpp"
#include "gsm/verify.hpp"

using namespace gsm;

TEST_CASE("legendre-style transition matrix entries") {
  Eigen::MatrixXd A = hippo_legs_matrix(3);
  CHECK(A(0, 0) == 1.0);
  CHECK(A(1, 1) == 2.0);
  CHECK(A(2, 2) == 3.0);
  CHECK(A(0, 1) == 0.0);
  CHECK(A(1, 0) == doctest::Approx(std::sqrt(3.0)));
  CHECK(A(2, 0) == doctest::Approx(std::sqrt(5.0)));
  CHECK(A(2, 1) == doctest::Approx(std::sqrt(15.0)));
}

TEST_CASE("constant-coefficient recurrence accumulates with identity A") {
  LinearSsmLayer layer = color_count_construction(2);
  std::vector<Eigen::VectorXd> xs(3, Eigen::VectorXd(2));
  xs[0] << 1, 0;
  xs[1] << 0, 1;
  xs[2] << 1, 0;
  auto ys = ssm_forward(layer, xs);
  CHECK(ys[2](0) == 2.0);
  CHECK(ys[2](1) == 1.0);
  CHECK(ys[1](0) == 1.0);
}

TEST_CASE("time-varying first step is B x1") {
  LinearSsmLayer layer = make_hippo_layer(3);
  std::vector<Eigen::VectorXd> xs(1, Eigen::VectorXd(3));
  xs[0] << 1, 2, 3;
  auto ys = ssm_forward(layer, xs);
  CHECK((ys[0] - xs[0]).norm() == 0.0);  // (I - A/1)*0 + (B/1)x = x
}

TEST_CASE("running-average mode: first state coordinate averages the input") {
  // first row of the update keeps h(0) tracking the mean of a scalar stream
  LinearSsmLayer layer = make_hippo_layer(4);
  int n = 12;
  std::vector<Eigen::VectorXd> xs;
  Rng rng(5);
  double sum = 0;
  for (int t = 0; t < n; ++t) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
    x(0) = rng.normal();
    sum += x(0);
    xs.push_back(x);
  }
  auto ys = ssm_forward(layer, xs);
  CHECK(ys.back()(0) == doctest::Approx(sum / n));
}

TEST_CASE("shape mismatches throw") {
  LinearSsmLayer layer = color_count_construction(3);
  std::vector<Eigen::VectorXd> xs(1, Eigen::VectorXd(2));
  xs[0] << 1, 0;
  CHECK_THROWS_AS(ssm_forward(layer, xs), std::invalid_argument);
}

TEST_CASE("one-hot stream encoding") {
  auto xs = one_hot_colors({2, 0}, 3);
  REQUIRE(xs.size() == 2);
  CHECK(xs[0](2) == 1.0);
  CHECK(xs[0](0) == 0.0);
  CHECK(xs[1](0) == 1.0);
  CHECK_THROWS_AS(one_hot_colors({3}, 3), std::invalid_argument);
}

TEST_CASE("counting layer is exact; one state fewer undercounts") {
  auto exact = check_color_count_construction(200, 64, 8, 51);
  INFO(exact.detail);
  CHECK(exact.passed);
  auto witness = check_undercount_witness(3, 6);
  INFO(witness.detail);
  CHECK(witness.passed);
}

TEST_CASE("truncated family drops exactly the last color") {
  LinearSsmLayer t = color_count_truncated(3);
  CHECK(t.m == 2);
  CHECK(t.B.rows() == 2);
  CHECK(t.B.cols() == 3);
  CHECK(t.B(0, 0) == 1.0);
  CHECK(t.B(1, 1) == 1.0);
  CHECK(t.B(0, 2) == 0.0);
  CHECK(t.B(1, 2) == 0.0);
}

TEST_CASE("per-position jacobian of a constant-coefficient layer") {
  LinearSsmLayer layer;
  layer.mode = LinearSsmLayer::Mode::lti;
  layer.m = 2;
  layer.A.resize(2, 2);
  layer.A << 0.5, 0.0, 0.25, 0.5;
  layer.B = Eigen::MatrixXd::Identity(2, 2);
  layer.C = Eigen::MatrixXd::Identity(2, 2);
  // d y_3 / d x_1 = A^2
  Eigen::MatrixXd J = layer_jacobian(layer, 3, 1);
  CHECK((J - layer.A * layer.A).norm() == 0.0);
  CHECK((layer_jacobian(layer, 3, 3) - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);
  CHECK_THROWS_AS(layer_jacobian(layer, 3, 0), std::invalid_argument);
}

TEST_CASE("stacked jacobians match finite differences") {
  auto r = check_jacobian_finite_difference(52);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("sensitivity profile rows and surrogate") {
  CHECK(sensitivity_surrogate(4, 2) == doctest::Approx(1.0 / 8));
  auto stack = sensitivity_stack(1);
  auto rows = sensitivity_profile(stack, 8);
  REQUIRE(rows.size() == 7);  // i = 2..8
  CHECK(rows.front().i == 2);
  CHECK(rows.back().i == 8);
  for (const auto& r : rows) {
    CHECK(r.surrogate == doctest::Approx(double(r.i - 1) / (r.i * 7.0)));
    CHECK(r.ratio == doctest::Approx(r.norm / r.surrogate));
  }
  auto csv = sensitivity_profile_csv(rows);
  CHECK(csv.rfind("i,norm,surrogate,ratio\n", 0) == 0);
}

TEST_CASE("sensitivity laws at desk scale") {
  for (auto check : {check_sensitivity_single_layer({8, 16}),
                     check_sensitivity_band_two_layers({8, 16}),
                     check_sensitivity_depth({8, 16}, 330.0)}) {
    INFO(check.name, ": ", check.detail);
    CHECK(check.passed);
  }
}

TEST_CASE("uniform attention over scalars returns their sum") {
  std::vector<double> vals = {1.5, -2.0, 0.25, 4.0};
  CHECK(count_via_attention_sum(vals) == doctest::Approx(3.75));
}

TEST_CASE("attention rows are convex combinations of values") {
  // with identity-like V and one-hot inputs, outputs stay in the simplex
  AttentionLayer layer = make_attention_layer(3, 2, false, 17);
  layer.W_V = Eigen::MatrixXd::Identity(3, 3);
  std::vector<Eigen::VectorXd> xs(4, Eigen::VectorXd::Zero(3));
  xs[0](0) = 1;
  xs[1](1) = 1;
  xs[2](2) = 1;
  xs[3](0) = 1;
  auto out = attention_forward(layer, xs);
  for (const auto& y : out) {
    CHECK(y.sum() == doctest::Approx(1.0));  // softmax weights sum to 1
    for (int c = 0; c < 3; ++c) CHECK(y(c) >= -1e-15);
  }
}

TEST_CASE("attention equivariance and causal invariance") {
  for (auto check : {check_attention_equivariance(40, 53),
                     check_causal_future_invariance(40, 54)}) {
    INFO(check.name, ": ", check.detail);
    CHECK(check.passed);
  }
}

TEST_CASE("hybrid block runs ssm layers then attention") {
  HybridBlock block;
  block.ssm_layers = {color_count_construction(3)};
  block.attn = make_attention_layer(3, 2, true, 23);
  auto xs = one_hot_colors({0, 1, 2, 1}, 3);
  auto out = hybrid_forward(block, xs);
  REQUIRE(out.size() == 4);
  CHECK(out[0].size() == 3);
}
