#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rungs/graph.hpp"

namespace testing_support {

/// Transfer-current matrix of the rungs z_m, m in `sites`, on the window
/// [-half, half]: Y(e, f) = w_e b_e^T L^+ b_f. Joint inclusion probability of a
/// set of rungs is det Y restricted to it.
inline Eigen::MatrixXd rung_currents(rungs::Family f, double c, double d, int half, const std::vector<int>& sites) {
  const rungs::Segment s = rungs::build_segment(rungs::GraphFamily::numeric(f, c, d), -half, half);
  const int n = static_cast<int>(s.vertex_count());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : s.edges) {
    const double w = e.weight({c, d});
    L(e.u, e.u) += w;
    L(e.v, e.v) += w;
    L(e.u, e.v) -= w;
    L(e.v, e.u) -= w;
  }
  // ground the last vertex
  const Eigen::MatrixXd G = L.topLeftCorner(n - 1, n - 1).inverse();
  auto pot = [&](int a, int b) { return (a < n - 1 && b < n - 1) ? G(a, b) : 0.0; };
  std::vector<const rungs::Edge*> es;
  for (int m : sites) es.push_back(&s.edges[static_cast<std::size_t>(s.find_edge("z_" + std::to_string(m)))]);
  const int k = static_cast<int>(es.size());
  Eigen::MatrixXd Y(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const auto& a = *es[i];
      const auto& b = *es[j];
      Y(i, j) = a.weight({c, d}) * (pot(a.u, b.u) - pot(a.u, b.v) - pot(a.v, b.u) + pot(a.v, b.v));
    }
  return Y;
}

inline double finite_joint(rungs::Family f, double c, double d, const std::vector<int>& sites, int half = 40) {
  return rung_currents(f, c, d, half, sites).determinant();
}

}  // namespace testing_support
