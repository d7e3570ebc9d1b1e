#include "gsm/seq_models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gsm/numeric.hpp"
#include "gsm/rng.hpp"

namespace gsm {

Eigen::MatrixXd hippo_legs_matrix(int m) {
  if (m < 1) throw std::invalid_argument("hippo matrix: m must be >= 1");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < r; ++c) A(r, c) = std::sqrt((2.0 * r + 1.0) * (2.0 * c + 1.0));
    A(r, r) = r + 1.0;
  }
  return A;
}

LinearSsmLayer make_hippo_layer(int m) {
  LinearSsmLayer layer;
  layer.mode = LinearSsmLayer::Mode::hippo_legs_timevarying;
  layer.m = m;
  layer.A = hippo_legs_matrix(m);
  layer.B = Eigen::MatrixXd::Identity(m, m);
  layer.C = Eigen::MatrixXd::Identity(m, m);
  return layer;
}

std::vector<Eigen::VectorXd> ssm_forward(const LinearSsmLayer& layer,
                                         const std::vector<Eigen::VectorXd>& xs) {
  if (xs.empty()) throw std::invalid_argument("ssm_forward: empty sequence");
  if (layer.A.rows() != layer.m || layer.A.cols() != layer.m ||
      layer.B.rows() != layer.m || layer.C.cols() != layer.m)
    throw std::invalid_argument("ssm_forward: inconsistent layer shapes");
  Eigen::VectorXd h = Eigen::VectorXd::Zero(layer.m);
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(layer.m, layer.m);
  std::vector<Eigen::VectorXd> ys;
  ys.reserve(xs.size());
  for (std::size_t idx = 0; idx < xs.size(); ++idx) {
    const auto& x = xs[idx];
    if (x.size() != layer.B.cols()) throw std::invalid_argument("ssm_forward: bad input dim");
    if (layer.mode == LinearSsmLayer::Mode::lti) {
      h = layer.A * h + layer.B * x;
    } else {
      double t = static_cast<double>(idx + 1);
      h = (I - layer.A / t) * h + (layer.B / t) * x;
    }
    ys.push_back(layer.C * h);
  }
  return ys;
}

std::vector<Eigen::VectorXd> ssm_stack_forward(const std::vector<LinearSsmLayer>& stack,
                                               const std::vector<Eigen::VectorXd>& xs) {
  std::vector<Eigen::VectorXd> cur = xs;
  for (const auto& layer : stack) cur = ssm_forward(layer, cur);
  return cur;
}

LinearSsmLayer color_count_construction(int C) {
  if (C < 1) throw std::invalid_argument("color_count_construction: C >= 1");
  LinearSsmLayer layer;
  layer.mode = LinearSsmLayer::Mode::lti;
  layer.m = C;
  layer.A = Eigen::MatrixXd::Identity(C, C);
  layer.B = Eigen::MatrixXd::Identity(C, C);
  layer.C = Eigen::MatrixXd::Identity(C, C);
  return layer;
}

LinearSsmLayer color_count_truncated(int C) {
  if (C < 2) throw std::invalid_argument("color_count_truncated: C >= 2");
  int m = C - 1;
  LinearSsmLayer layer;
  layer.mode = LinearSsmLayer::Mode::lti;
  layer.m = m;
  layer.A = Eigen::MatrixXd::Identity(m, m);
  layer.B = Eigen::MatrixXd::Zero(m, C);
  layer.B.leftCols(m) = Eigen::MatrixXd::Identity(m, m);
  layer.C = Eigen::MatrixXd::Identity(m, m);
  return layer;
}

std::vector<Eigen::VectorXd> one_hot_colors(const std::vector<int>& colors, int C) {
  std::vector<Eigen::VectorXd> xs;
  xs.reserve(colors.size());
  for (int c : colors) {
    if (c < 0 || c >= C) throw std::invalid_argument("one_hot_colors: color out of range");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(C);
    x(c) = 1.0;
    xs.push_back(std::move(x));
  }
  return xs;
}

UndercountWitness undercount_witness(int C, int max_len) {
  LinearSsmLayer layer = color_count_truncated(C);
  UndercountWitness w;
  // final outputs are integer count vectors, so exact map keys are safe
  std::map<std::vector<double>, std::vector<int>> seen;
  std::vector<int> coloring;
  auto counts_of = [&](const std::vector<int>& cs) {
    std::vector<int> counts(C, 0);
    for (int c : cs) ++counts[c];
    return counts;
  };
  // iterate colorings in length-then-lex order
  for (int len = 1; len <= max_len && !w.found; ++len) {
    coloring.assign(len, 0);
    while (true) {
      auto ys = ssm_forward(layer, one_hot_colors(coloring, C));
      std::vector<double> key(ys.back().data(), ys.back().data() + ys.back().size());
      auto [it, inserted] = seen.emplace(key, coloring);
      if (!inserted && counts_of(it->second) != counts_of(coloring)) {
        w.found = true;
        w.coloring_a = it->second;
        w.coloring_b = coloring;
        w.out_a = ssm_forward(layer, one_hot_colors(w.coloring_a, C)).back();
        w.out_b = ys.back();
        break;
      }
      int pos = len - 1;
      while (pos >= 0 && coloring[pos] == C - 1) coloring[pos--] = 0;
      if (pos < 0) break;
      ++coloring[pos];
    }
  }
  return w;
}

AttentionLayer make_attention_layer(int d, int d_k, bool causal, std::uint64_t seed) {
  Rng rng(seed);
  AttentionLayer layer;
  layer.causal = causal;
  layer.W_Q.resize(d_k, d);
  layer.W_K.resize(d_k, d);
  layer.W_V.resize(d, d);
  for (int i = 0; i < d_k; ++i)
    for (int j = 0; j < d; ++j) layer.W_Q(i, j) = rng.normal() / std::sqrt(d);
  for (int i = 0; i < d_k; ++i)
    for (int j = 0; j < d; ++j) layer.W_K(i, j) = rng.normal() / std::sqrt(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) layer.W_V(i, j) = rng.normal() / std::sqrt(d);
  return layer;
}

std::vector<Eigen::VectorXd> attention_forward(const AttentionLayer& layer,
                                               const std::vector<Eigen::VectorXd>& xs) {
  if (xs.empty()) throw std::invalid_argument("attention_forward: empty sequence");
  int n = static_cast<int>(xs.size());
  int d = static_cast<int>(layer.W_V.cols());
  if (layer.pe && static_cast<int>(layer.pe->size()) < n)
    throw std::invalid_argument("attention_forward: positional vectors shorter than input");
  std::vector<Eigen::VectorXd> in(n);
  for (int t = 0; t < n; ++t) {
    if (xs[t].size() != d) throw std::invalid_argument("attention_forward: bad input dim");
    in[t] = layer.pe ? Eigen::VectorXd(xs[t] + (*layer.pe)[t]) : xs[t];
  }
  double scale = 1.0 / std::sqrt(static_cast<double>(layer.W_Q.rows()));
  std::vector<Eigen::VectorXd> q(n), k(n), v(n);
  for (int t = 0; t < n; ++t) {
    q[t] = layer.W_Q * in[t];
    k[t] = layer.W_K * in[t];
    v[t] = layer.W_V * in[t];
  }
  std::vector<Eigen::VectorXd> out(n);
  std::vector<double> logits, weights, addends;
  for (int i = 0; i < n; ++i) {
    int limit = layer.causal ? i + 1 : n;
    logits.assign(limit, 0.0);
    for (int j = 0; j < limit; ++j) logits[j] = q[i].dot(k[j]) * scale;
    double mx = *std::max_element(logits.begin(), logits.end());
    weights.resize(limit);
    addends.resize(limit);
    for (int j = 0; j < limit; ++j) weights[j] = std::exp(logits[j] - mx);
    addends = weights;
    double denom = stable_sum(addends);
    Eigen::VectorXd y(d);
    for (int c = 0; c < d; ++c) {
      addends.resize(limit);
      for (int j = 0; j < limit; ++j) addends[j] = (weights[j] / denom) * v[j](c);
      y(c) = stable_sum(addends);
    }
    out[i] = std::move(y);
  }
  return out;
}

std::vector<Eigen::VectorXd> hybrid_forward(const HybridBlock& block,
                                            const std::vector<Eigen::VectorXd>& xs) {
  auto cur = ssm_stack_forward(block.ssm_layers, xs);
  return attention_forward(block.attn, cur);
}

Eigen::MatrixXd layer_jacobian(const LinearSsmLayer& layer, int t, int s) {
  if (s < 1 || s > t) throw std::invalid_argument("layer_jacobian: need 1 <= s <= t");
  if (layer.mode == LinearSsmLayer::Mode::lti) {
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(layer.m, layer.m);
    for (int j = s; j < t; ++j) P = layer.A * P;
    return layer.C * P * layer.B;
  }
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(layer.m, layer.m);
  Eigen::MatrixXd P = I;
  for (int j = t; j > s; --j) P = P * (I - layer.A / static_cast<double>(j));
  return layer.C * P * (layer.B / static_cast<double>(s));
}

Eigen::MatrixXd ssm_jacobian(const std::vector<LinearSsmLayer>& stack, int n, int i) {
  if (stack.empty()) throw std::invalid_argument("ssm_jacobian: empty stack");
  if (i < 1 || i > n) throw std::invalid_argument("ssm_jacobian: position out of range");
  // M[k] = d y^(layer)_k / d x_i, built layer by layer over positions k = i..n
  std::vector<Eigen::MatrixXd> M(n + 1);
  for (int k = i; k <= n; ++k) M[k] = layer_jacobian(stack[0], k, i);
  for (std::size_t l = 1; l < stack.size(); ++l) {
    std::vector<Eigen::MatrixXd> next(n + 1);
    for (int k = i; k <= n; ++k) {
      Eigen::MatrixXd acc = layer_jacobian(stack[l], k, i) * M[i];
      for (int s = i + 1; s <= k; ++s) acc += layer_jacobian(stack[l], k, s) * M[s];
      next[k] = std::move(acc);
    }
    M = std::move(next);
  }
  return M[n];
}

Eigen::MatrixXd finite_difference_jacobian(const std::vector<LinearSsmLayer>& stack, int n,
                                           int i, double step, std::uint64_t seed) {
  if (stack.empty()) throw std::invalid_argument("fd_jacobian: empty stack");
  if (i < 1 || i > n) throw std::invalid_argument("fd_jacobian: position out of range");
  int d_in = static_cast<int>(stack.front().B.cols());
  Rng rng(seed);
  std::vector<Eigen::VectorXd> base(n);
  for (int t = 0; t < n; ++t) {
    base[t].resize(d_in);
    for (int c = 0; c < d_in; ++c) base[t](c) = rng.normal();
  }
  auto run = [&](const std::vector<Eigen::VectorXd>& xs) {
    return ssm_stack_forward(stack, xs).back();
  };
  Eigen::VectorXd probe = run(base);
  Eigen::MatrixXd J(probe.size(), d_in);
  for (int c = 0; c < d_in; ++c) {
    auto plus = base, minus = base;
    plus[i - 1](c) += step;
    minus[i - 1](c) -= step;
    J.col(c) = (run(plus) - run(minus)) / (2.0 * step);
  }
  return J;
}

std::vector<LinearSsmLayer> sensitivity_stack(int L, int m) {
  if (L < 1) throw std::invalid_argument("sensitivity_stack: L >= 1");
  std::vector<LinearSsmLayer> stack;
  for (int l = 0; l < L; ++l) stack.push_back(make_hippo_layer(m));
  // final readout = first coordinate (the running-average mode of the state)
  stack.back().C = Eigen::MatrixXd::Zero(1, m);
  stack.back().C(0, 0) = 1.0;
  return stack;
}

double sensitivity_surrogate(int k, int i) {
  if (i < 1 || k < 1) throw std::invalid_argument("sensitivity_surrogate: bad indices");
  return (static_cast<double>(i) - 1.0) / (static_cast<double>(i) * static_cast<double>(k));
}

std::vector<SensitivityRow> sensitivity_profile(const std::vector<LinearSsmLayer>& stack,
                                                int n) {
  if (n < 3) throw std::invalid_argument("sensitivity_profile: n >= 3");
  std::vector<SensitivityRow> rows;
  for (int i = 2; i <= n; ++i) {
    SensitivityRow row;
    row.i = i;
    row.norm = ssm_jacobian(stack, n, i).norm();
    row.surrogate = sensitivity_surrogate(n - 1, i);
    row.ratio = row.norm / row.surrogate;
    rows.push_back(row);
  }
  return rows;
}

std::string sensitivity_profile_csv(const std::vector<SensitivityRow>& rows) {
  std::ostringstream out;
  out << "i,norm,surrogate,ratio\n";
  out.precision(17);
  for (const auto& r : rows)
    out << r.i << "," << r.norm << "," << r.surrogate << "," << r.ratio << "\n";
  return out.str();
}

double count_via_attention_sum(const std::vector<double>& encodings) {
  if (encodings.empty()) return 0.0;
  int n = static_cast<int>(encodings.size());
  AttentionLayer layer;
  layer.W_Q = Eigen::MatrixXd::Zero(1, 1);
  layer.W_K = Eigen::MatrixXd::Zero(1, 1);
  layer.W_V = Eigen::MatrixXd::Identity(1, 1);
  layer.causal = false;
  std::vector<Eigen::VectorXd> xs(n);
  for (int t = 0; t < n; ++t) {
    xs[t].resize(1);
    xs[t](0) = encodings[t];
  }
  auto ys = attention_forward(layer, xs);
  return static_cast<double>(n) * ys.front()(0);
}

}  // namespace gsm
