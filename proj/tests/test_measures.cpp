#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "netpair/error.hpp"
#include "netpair/measures.hpp"

using namespace netpair;

TEST(DiscreteMeasure, Validation) {
  const DiscreteMeasure mu({"p", "q"}, {0.25, 0.75});
  EXPECT_DOUBLE_EQ(mu.total_mass(), 1.0);
  EXPECT_DOUBLE_EQ(mu.weight("q"), 0.75);
  EXPECT_DOUBLE_EQ(mu.weight("r"), 0.0);
  EXPECT_THROW(DiscreteMeasure({"p", "p"}, {1, 1}), InputError);
  EXPECT_THROW(DiscreteMeasure({"p"}, {0.0}), InputError);
  EXPECT_THROW(DiscreteMeasure({"p"}, {-1.0}), InputError);
  EXPECT_THROW(DiscreteMeasure({"p"}, {NAN}), InputError);
  EXPECT_THROW(DiscreteMeasure({"p", "q"}, {1.0}), InputError);
}

TEST(RadonNikodym, Examples) {
  const DiscreteMeasure uniform({"1", "2"}, {1, 1});
  const LinOp lambda = rn_lambda(uniform, DiscreteMeasure({"1", "2"}, {4, 9}));
  EXPECT_DOUBLE_EQ(lambda.matrix()(0, 0), 4.0);
  EXPECT_DOUBLE_EQ(lambda.matrix()(1, 1), 9.0);
  EXPECT_DOUBLE_EQ(lambda.matrix()(0, 1), 0.0);

  const DiscreteMeasure mu1({"a", "b", "c"}, {2, 0.5, 1});
  const DiscreteMeasure mu2({"c", "a"}, {3, 1});
  const LinOp density = rn_lambda(mu1, mu2);
  EXPECT_NEAR(density.matrix()(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(density.matrix()(1, 1), 0.0, 1e-15);
  EXPECT_NEAR(density.matrix()(2, 2), 3.0, 1e-15);

  try {
    rn_lambda(DiscreteMeasure({"a"}, {1}), DiscreteMeasure({"a", "z"}, {1, 1}));
    FAIL() << "singular measure accepted";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("absolutely continuous"), std::string::npos);
  }
}

TEST(RadonNikodymProperty, KreinIdentityAndDensity) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> w(0.05, 5.0);
  std::normal_distribution<double> g;
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + t % 12;
    std::vector<std::string> pts;
    std::vector<double> w1, w2;
    for (int i = 0; i < n; ++i) {
      pts.push_back("x" + std::to_string(i));
      w1.push_back(w(rng));
      w2.push_back(w(rng));
    }
    const LinOp lambda = rn_lambda(DiscreteMeasure(pts, w1), DiscreteMeasure(pts, w2));
    for (int i = 0; i < n; ++i) EXPECT_NEAR(lambda.matrix()(i, i), w2[i] / w1[i], 1e-14 * (1 + w2[i] / w1[i]));
    for (int s = 0; s < 20; ++s) {
      Eigen::VectorXd phi(n);
      double norm2 = 0;
      for (int i = 0; i < n; ++i) {
        phi[i] = g(rng);
        norm2 += w2[i] * phi[i] * phi[i];
      }
      EXPECT_LE(std::abs(lambda.domain().inner(phi, lambda.apply(phi)) - norm2), 1e-12 * norm2);
    }
  }
}

TEST(Cantor, Levels) {
  const CantorLevel c0 = cantor_witness(0);
  EXPECT_NEAR(c0.constant, 1.0, 1e-14);
  const CantorLevel c1 = cantor_witness(1);
  EXPECT_NEAR(c1.constant, std::sqrt(1.5), 1e-13);
  EXPECT_NEAR(c1.predicted, std::sqrt(1.5), 1e-15);
  const CantorLevel c10 = cantor_witness(10);
  EXPECT_NEAR(c10.constant, std::pow(1.5, 5), 1e-9 * std::pow(1.5, 5));
  EXPECT_THROW(cantor_witness(-1), InputError);
  EXPECT_THROW(cantor_witness(15), InputError);
}

TEST(Cantor, SweepGrowth) {
  const auto levels = cantor_sweep(0, 10);
  ASSERT_EQ(levels.size(), 11u);
  for (std::size_t i = 1; i < levels.size(); ++i) {
    EXPECT_GT(levels[i].constant, levels[i - 1].constant);
    EXPECT_NEAR(levels[i].constant, levels[i].predicted, 1e-9 * levels[i].predicted);
  }
  EXPECT_NEAR(cantor_log_slope(levels), 0.5 * std::log(1.5), 1e-10);
  EXPECT_THROW(cantor_sweep(5, 2), InputError);
}
