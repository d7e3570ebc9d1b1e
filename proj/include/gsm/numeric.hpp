#pragma once
#include <Eigen/Dense>
#include <algorithm>
#include <vector>

namespace gsm {

// left-fold after sorting: the result depends only on the multiset of addends,
// which keeps reductions exactly invariant under input permutations
inline double stable_sum(std::vector<double> addends) {
  std::sort(addends.begin(), addends.end());
  double s = 0.0;
  for (double a : addends) s += a;
  return s;
}

// componentwise stable_sum over equal-length vectors
inline Eigen::VectorXd stable_vector_sum(const std::vector<Eigen::VectorXd>& vs) {
  if (vs.empty()) return Eigen::VectorXd();
  Eigen::VectorXd out(vs.front().size());
  std::vector<double> addends(vs.size());
  for (int c = 0; c < out.size(); ++c) {
    for (std::size_t j = 0; j < vs.size(); ++j) addends[j] = vs[j](c);
    out(c) = stable_sum(addends);
  }
  return out;
}

}  // namespace gsm
