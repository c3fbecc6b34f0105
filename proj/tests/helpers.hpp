#pragma once

#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/QR>

#include "netpair/network.hpp"

namespace netpair::testing {

// o - a (c = 1), a - b (c = 2), origin o.
inline Network p3() {
  NetworkBuilder b;
  b.add_edge("o", "a", 1.0);
  b.add_edge("a", "b", 2.0);
  b.set_origin(b.vertex("o"));
  return std::move(b).build();
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = g(rng);
  return m;
}

// Symmetric with eigenvalues drawn uniformly from [lo, hi].
inline Eigen::MatrixXd random_spd(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(rng, n, n));
  const Eigen::MatrixXd q = qr.householderQ();
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd d(n);
  for (auto& x : d) x = u(rng);
  Eigen::MatrixXd s = q * d.asDiagonal() * q.transpose();
  return 0.5 * (s + s.transpose());
}

inline VertexId vid(std::size_t i) { return VertexId{static_cast<std::int32_t>(i)}; }

}  // namespace netpair::testing
