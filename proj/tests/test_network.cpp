#include <random>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "helpers.hpp"
#include "netpair/error.hpp"
#include "netpair/generators.hpp"
#include "netpair/network.hpp"

using namespace netpair;
using netpair::testing::p3;
using netpair::testing::vid;

TEST(Network, NetConductance) {
  const Network net = p3();
  EXPECT_DOUBLE_EQ(net_conductance(net, net.at("o")), 1.0);
  EXPECT_DOUBLE_EQ(net_conductance(net, net.at("a")), 3.0);
  EXPECT_DOUBLE_EQ(net_conductance(net, net.at("b")), 2.0);
  EXPECT_THROW(net_conductance(net, VertexId{7}), InputError);
}

TEST(Network, LaplacianOfP3) {
  const Network net = p3();
  VertexFunction u(3);
  u << 0, 1, 3;  // o, a, b in insertion order
  const VertexFunction lap = laplacian_apply(net, u);
  EXPECT_DOUBLE_EQ(lap[net.at("o").value], -1.0);
  EXPECT_DOUBLE_EQ(lap[net.at("a").value], -3.0);
  EXPECT_DOUBLE_EQ(lap[net.at("b").value], 4.0);

  VertexFunction v(3);
  v << 0, 1, 1;
  const VertexFunction lv = laplacian_apply(net, v);
  EXPECT_DOUBLE_EQ(lv[0], -1.0);
  EXPECT_DOUBLE_EQ(lv[1], 1.0);
  EXPECT_DOUBLE_EQ(lv[2], 0.0);
}

TEST(Network, HarmonicTest) {
  const Network net = p3();
  EXPECT_TRUE(is_harmonic(net, VertexFunction::Ones(3), 1e-12));
  VertexFunction u(3);
  u << 0, 1, 3;
  EXPECT_FALSE(is_harmonic(net, u, 1e-12));
  EXPECT_THROW(is_harmonic(net, u, 0.0), InputError);
}

TEST(Network, RejectsInvalidInput) {
  {
    NetworkBuilder b;
    b.add_vertex("x");
    EXPECT_THROW(b.add_vertex("x"), InputError);
  }
  {
    NetworkBuilder b;
    EXPECT_THROW(b.add_edge("x", "x", 1.0), InputError);
    EXPECT_THROW(b.add_edge("x", "y", 0.0), InputError);
    EXPECT_THROW(b.add_edge("x", "y", -1.0), InputError);
  }
  {
    NetworkBuilder b;
    b.add_edge("x", "y", 1.0);
    b.add_vertex("isolated");
    EXPECT_THROW(std::move(b).build(), InputError);
  }
}

TEST(Network, ParallelEdgesMerge) {
  NetworkBuilder b;
  b.add_edge("x", "y", 1.0);
  b.add_edge("y", "x", 2.5);
  const Network net = std::move(b).build();
  EXPECT_EQ(net.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(net.conductance(net.at("x"), net.at("y")), 3.5);
  EXPECT_DOUBLE_EQ(net.conductance(net.at("y"), net.at("x")), 3.5);
}

TEST(Network, CopyKeepsLabelLookup) {
  Network copy = p3();
  {
    const Network original = p3();
    copy = original;
  }
  EXPECT_EQ(copy.at("b").value, 2);
  EXPECT_FALSE(copy.find("zzz").has_value());
}

TEST(NetworkProperty, LaplacianSumsToZeroAndIgnoresConstants) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const Network net = generators::random_connected(5 + t, 10.0, rng);
    const auto n = static_cast<Eigen::Index>(net.size());
    const VertexFunction u = netpair::testing::random_vector(rng, n);
    const VertexFunction lap = laplacian_apply(net, u);
    EXPECT_NEAR(lap.sum(), 0.0, 1e-10 * (1.0 + lap.cwiseAbs().sum()));
    const VertexFunction shifted = laplacian_apply(net, (u.array() + 3.25).matrix());
    EXPECT_LE((shifted - lap).cwiseAbs().maxCoeff(), 1e-12 * (1.0 + lap.cwiseAbs().maxCoeff()));
  }
}

TEST(NetworkProperty, RandomNetworksSatisfyInvariants) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    const Network net = generators::random_connected(2 + t, 5.0, rng);
    const Eigen::MatrixXd l = laplacian_matrix(net);
    EXPECT_LE((l - l.transpose()).cwiseAbs().maxCoeff(), 0.0);
    for (std::size_t i = 0; i < net.size(); ++i) {
      EXPECT_EQ(net.conductance(vid(i), vid(i)), 0.0);
      EXPECT_NEAR(l.row(static_cast<Eigen::Index>(i)).sum(), 0.0, 1e-12);
    }
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      const Edge edge = net.edge(e);
      EXPECT_LT(edge.tail, edge.head);
      EXPECT_GT(edge.conductance, 0.0);
      EXPECT_LE(edge.conductance, 5.0);
    }
    // Connectivity: the grounded Laplacian is nonsingular.
    const Eigen::MatrixXd reduced = l.bottomRightCorner(l.rows() - 1, l.cols() - 1);
    if (reduced.size()) EXPECT_GT(reduced.determinant(), 0.0);
  }
}
