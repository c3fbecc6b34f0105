#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "helpers.hpp"
#include "netpair/error.hpp"
#include "netpair/generators.hpp"
#include "netpair/solvers.hpp"
#include "netpair/sympair.hpp"

using namespace netpair;
using netpair::testing::p3;
using netpair::testing::random_matrix;
using netpair::testing::random_spd;
using netpair::testing::random_vector;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

InnerSpace diag_space(std::initializer_list<double> d) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v[i++] = x;
  return InnerSpace({}, v.asDiagonal().toDenseMatrix());
}

}  // namespace

TEST(Adjoint, Examples) {
  std::mt19937_64 rng(41);
  const Eigen::MatrixXd m = random_matrix(rng, 3, 4);
  const LinOp a(InnerSpace::euclidean(4), InnerSpace::euclidean(3), m);
  EXPECT_LE(max_abs(adjoint(a).matrix() - m.transpose()), 1e-15);

  const LinOp id(InnerSpace::euclidean(2), diag_space({4, 9}), Eigen::Matrix2d::Identity());
  Eigen::Matrix2d expect;
  expect << 4, 0, 0, 9;
  EXPECT_LE(max_abs(adjoint(id).matrix() - expect), 1e-15);
}

TEST(AdjointProperty, CharacterizationAndInvolution) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index n1 = 1 + t % 7, n2 = 1 + (3 * t) % 5;
    const InnerSpace h1({}, random_spd(rng, n1, 0.5, 3.0));
    const InnerSpace h2({}, random_spd(rng, n2, 0.5, 3.0));
    const LinOp a(h1, h2, random_matrix(rng, n2, n1));
    const LinOp as = adjoint(a);
    for (Eigen::Index i = 0; i < n1; ++i)
      for (Eigen::Index j = 0; j < n2; ++j) {
        const Eigen::VectorXd phi = Eigen::VectorXd::Unit(n1, i), psi = Eigen::VectorXd::Unit(n2, j);
        EXPECT_NEAR(h2.inner(a.apply(phi), psi), h1.inner(phi, as.apply(psi)), 1e-12);
      }
    EXPECT_LE(max_abs(adjoint(as).matrix() - a.matrix()), 1e-12 * (1 + max_abs(a.matrix())));
  }
}

TEST(Pair, VerifyPair) {
  std::mt19937_64 rng(43);
  const InnerSpace h1({}, random_spd(rng, 4, 0.5, 2.0));
  const InnerSpace h2({}, random_spd(rng, 3, 0.5, 2.0));
  const LinOp a(h1, h2, random_matrix(rng, 3, 4));
  EXPECT_TRUE(verify_pair(a, adjoint(a), 1e-12).is_pair);
  const LinOp neg(h2, h1, -adjoint(a).matrix());
  const SymmetricPairReport bad = verify_pair(a, neg, 1e-12);
  EXPECT_FALSE(bad.is_pair);
  EXPECT_GT(bad.residual, 1e-3);
  EXPECT_THROW(verify_pair(a, a, 1e-12), InputError);
}

TEST(Pair, SpectrumCheck) {
  std::mt19937_64 rng(44);
  const Eigen::MatrixXd m = random_matrix(rng, 5, 3);
  const LinOp a(InnerSpace::euclidean(3), InnerSpace::euclidean(5), m);
  const SpectrumComparison cmp = compare_pair_spectra(a, adjoint(a));
  ASSERT_TRUE(cmp.match);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  std::vector<double> sq;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) sq.push_back(std::pow(svd.singularValues()[i], 2));
  std::sort(sq.begin(), sq.end());
  ASSERT_EQ(cmp.left.size(), sq.size());
  for (std::size_t i = 0; i < sq.size(); ++i) EXPECT_NEAR(cmp.left[i], sq[i], 1e-10 * (1 + sq[i]));

  const LinOp zero(InnerSpace::euclidean(3), InnerSpace::euclidean(2), Eigen::MatrixXd::Zero(2, 3));
  const SpectrumComparison z = compare_pair_spectra(zero, adjoint(zero));
  EXPECT_TRUE(z.match);
  EXPECT_TRUE(z.left.empty());

  for (int t = 0; t < 20; ++t) {
    const InnerSpace h1({}, random_spd(rng, 1 + t % 6, 0.3, 3.0));
    const InnerSpace h2({}, random_spd(rng, 1 + t % 4, 0.3, 3.0));
    const LinOp b(h1, h2, random_matrix(rng, h2.dim(), h1.dim()));
    EXPECT_TRUE(pair_spectrum_check(b, adjoint(b), 1e-8));
  }
}

TEST(Friedrichs, RandomCoerciveEqualsInput) {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = 1 + t;
    const InnerSpace h = InnerSpace::euclidean(n);
    const Eigen::MatrixXd m = random_spd(rng, n, 1.0, 20.0);
    const LinOp a(h, h, m);
    const FriedrichsResult r = friedrichs_construction(h, a);
    EXPECT_LE(max_abs(r.extension.matrix() - m), 1e-8 * max_abs(m));
    // With the standard Gram, J* = A^-1.
    EXPECT_LE(max_abs(r.inclusion_adjoint.matrix() * m - Eigen::MatrixXd::Identity(n, n)), 1e-9);
    EXPECT_LE(r.identity_residual, 1e-8);
    EXPECT_LE(r.inclusion_norm, 1.0 + 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    EXPECT_NEAR(r.min_eigenvalue, es.eigenvalues().minCoeff(), 1e-9 * es.eigenvalues().maxCoeff());
    EXPECT_NEAR(r.inclusion_norm, 1.0 / std::sqrt(es.eigenvalues().minCoeff()), 1e-9);
  }
}

TEST(Friedrichs, IdentityAndErrors) {
  const InnerSpace h = InnerSpace::euclidean(3);
  const LinOp id(h, h, Eigen::Matrix3d::Identity());
  const FriedrichsResult r = friedrichs_construction(h, id);
  EXPECT_LE(max_abs(r.extension.matrix() - Eigen::Matrix3d::Identity()), 1e-15);
  EXPECT_LE(max_abs(r.inclusion_adjoint.matrix() - Eigen::Matrix3d::Identity()), 1e-15);

  Eigen::Matrix2d weak;
  weak << 0.5, 0, 0, 2;
  const InnerSpace h2 = InnerSpace::euclidean(2);
  try {
    friedrichs(h2, LinOp(h2, h2, weak));
    FAIL() << "coercivity violation accepted";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("0.5"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(friedrichs(h2, LinOp(h2, h2, weak), false));
  Eigen::Matrix2d skew;
  skew << 2, 1, 0, 2;
  EXPECT_THROW(friedrichs(h2, LinOp(h2, h2, skew)), NumericalError);
}

TEST(Friedrichs, NetworkMonopoleSpan) {
  // H = span{w_x} on a truncation with the energy Gram; the energy
  // Laplacian acts there as the reduced Laplacian matrix.
  const Network net = Exhaustion(binary_tree_generator()).truncate(3);
  const auto xs = net.interior_vertices();
  const auto ws = solve_monopoles(net, xs);
  const InnerSpace h(gram(net, InnerKind::energy, ws));
  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd lap(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) lap(i, j) = net.conductance(xs[i], xs[j]);
  lap = -lap;
  for (Eigen::Index i = 0; i < n; ++i) lap(i, i) = net.net_conductance(xs[i]);
  // Columns of lap are the w-coordinates of Delta w_y = delta_y.
  for (Eigen::Index j = 0; j < n; ++j) {
    VertexFunction image = VertexFunction::Zero(static_cast<Eigen::Index>(net.size()));
    for (Eigen::Index i = 0; i < n; ++i) image += lap(i, j) * ws[i];
    VertexFunction expect = dirac(net, xs[j]);
    EXPECT_LE((image - expect).cwiseAbs().maxCoeff(), 1e-10);
  }
  const LinOp a(h, h, lap);
  const LinOp f = semibounded_friedrichs(h, a, 0.0);
  EXPECT_LE(max_abs(f.matrix() - lap), 1e-8);
  EXPECT_GE(lower_bound(friedrichs(h, shifted(a, 1.0))), 1.0 - 1e-8);
}

TEST(Semibounded, Examples) {
  const InnerSpace h = InnerSpace::euclidean(2);
  Eigen::Matrix2d m;
  m << -2, 0, 0, 5;
  const LinOp a(h, h, m);
  EXPECT_LE(max_abs(semibounded_friedrichs(h, a, -2.0).matrix() - m), 1e-12);
  EXPECT_LE(max_abs(semibounded_friedrichs(h, a, -10.0).matrix() - m), 1e-12);
  EXPECT_THROW(semibounded_friedrichs(h, a, 0.0), NumericalError);

  std::mt19937_64 rng(46);
  const InnerSpace h4 = InnerSpace::euclidean(4);
  const Eigen::MatrixXd s = random_spd(rng, 4, 1.0, 6.0);
  const LinOp b(h4, h4, s);
  EXPECT_LE(max_abs(semibounded_friedrichs(h4, b, 0.0).matrix() - s), 1e-10);
  EXPECT_LE(max_abs((friedrichs(h4, shifted(b, 1.0)).matrix() - Eigen::MatrixXd::Identity(4, 4)) - s), 1e-10);
}

TEST(FormOperator, Examples) {
  std::mt19937_64 rng(47);
  const InnerSpace g({}, random_spd(rng, 4, 0.5, 3.0));
  EXPECT_LE(max_abs(operator_from_form(g, g.gram()).matrix() - Eigen::MatrixXd::Identity(4, 4)), 1e-12);

  const InnerSpace h = InnerSpace::euclidean(2);
  Eigen::Matrix2d d;
  d << 4, 0, 0, 9;
  const Eigen::MatrixXd q = form_from_operator(h, LinOp(h, h, d));
  EXPECT_LE(max_abs(q - d), 1e-13);
  EXPECT_LE(max_abs(operator_from_form(h, q).matrix() - d), 1e-13);

  Eigen::Matrix2d small;
  small << 0.5, 0, 0, 2;
  EXPECT_THROW(operator_from_form(h, small), NumericalError);
  EXPECT_THROW(form_from_operator(h, LinOp(h, h, small)), NumericalError);
}

TEST(FormOperatorProperty, RoundTrips) {
  std::mt19937_64 rng(48);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index n = 1 + t % 9;
    const InnerSpace h({}, random_spd(rng, n, 0.5, 3.0));
    const Eigen::MatrixXd q = h.gram() + random_spd(rng, n, 0.0, 5.0);
    EXPECT_LE(form_roundtrip_residual(h, q), 1e-8);
    const LinOp a = operator_from_form(h, q);
    EXPECT_LE(max_abs(a.matrix() - h.solve(q)), 1e-9 * (1 + max_abs(a.matrix())));
    // Oracle: the form of A is G A.
    EXPECT_LE(max_abs(form_from_operator(h, a) - h.gram() * a.matrix()), 1e-8 * (1 + max_abs(q)));
    EXPECT_LE(operator_roundtrip_residual(h, a), 1e-8);
  }
}

TEST(Krein, Examples) {
  const InnerSpace h = InnerSpace::euclidean(2);
  Eigen::Matrix2d g2;
  g2 << 4, 0, 0, 9;
  EXPECT_LE(max_abs(krein_lambda(h, g2).matrix() - g2), 1e-15);

  std::mt19937_64 rng(49);
  const InnerSpace g1({}, random_spd(rng, 5, 0.5, 3.0));
  EXPECT_LE(max_abs(krein_lambda(g1, g1.gram()).matrix() - Eigen::MatrixXd::Identity(5, 5)), 1e-12);

  const Network net = p3();
  std::vector<VertexFunction> ds;
  for (std::size_t i = 0; i < 3; ++i) ds.push_back(dirac(net, netpair::testing::vid(i)));
  const LinOp lambda = krein_lambda(InnerSpace(gram(net, InnerKind::l2, ds)), gram(net, InnerKind::energy, ds).entries);
  EXPECT_LE(max_abs(lambda.matrix() - laplacian_matrix(net)), 1e-14);

  Eigen::Matrix2d indefinite;
  indefinite << 1, 0, 0, -1;
  EXPECT_THROW(krein_lambda(h, indefinite), NumericalError);
  Eigen::Matrix2d semidefinite;
  semidefinite << 1, 1, 1, 1;
  EXPECT_NO_THROW(krein_lambda(h, semidefinite));
}

TEST(KreinProperty, IdentityOnRandomVectors) {
  std::mt19937_64 rng(50);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = 1 + t % 8;
    const InnerSpace h1({}, random_spd(rng, n, 0.2, 4.0));
    const Eigen::MatrixXd b = random_matrix(rng, n, n);
    const Eigen::MatrixXd g2 = b * b.transpose();
    const LinOp lambda = krein_lambda(h1, g2);
    for (int s = 0; s < 100; ++s) {
      const Eigen::VectorXd phi = random_vector(rng, n);
      const double norm2 = phi.dot(g2 * phi);
      EXPECT_LE(std::abs(h1.inner(phi, lambda.apply(phi)) - norm2), 1e-8 * norm2);
    }
  }
}

TEST(DStar, Examples) {
  const InnerSpace h = InnerSpace::euclidean(2);
  Eigen::Matrix2d g2;
  g2 << 4, 0, 0, 9;
  EXPECT_EQ(dstar_constant(h, g2, Eigen::Vector2d::Zero()), 0.0);
  EXPECT_NEAR(dstar_constant(h, g2, Eigen::Vector2d(1, 0)), 4.0, 1e-15);
}

TEST(DStarProperty, RepresenterIsTheSupremum) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = 1 + t % 6;
    const InnerSpace h1({}, random_spd(rng, n, 0.2, 4.0));
    const Eigen::VectorXd g = random_vector(rng, n);
    const double c = dstar_constant_from_pairings(h1, g);
    for (int s = 0; s < 200; ++s) {
      const Eigen::VectorXd phi = random_vector(rng, n);
      EXPECT_LE(std::abs(g.dot(phi)), c * h1.norm(phi) * (1 + 1e-12));
    }
    const Eigen::VectorXd best = h1.solve(g);
    EXPECT_NEAR(std::abs(g.dot(best)) / h1.norm(best), c, 1e-10 * (1 + c));

    Eigen::VectorXd w(n);
    for (auto& x : w) x = 0.1 + std::abs(random_vector(rng, 1)[0]);
    const InnerSpace diag({}, w.asDiagonal().toDenseMatrix());
    EXPECT_NEAR(dstar_constant_diagonal({w.data(), static_cast<std::size_t>(n)}, {g.data(), static_cast<std::size_t>(n)}),
                dstar_constant_from_pairings(diag, g), 1e-12 * (1 + c));
  }
  const double w[] = {1.0, 0.0};
  const double g[] = {1.0, 1.0};
  EXPECT_THROW(dstar_constant_diagonal(w, g), NumericalError);
}

TEST(DStar, KernelBoundOnNetworks) {
  std::vector<Network> nets{p3(), generators::cycle(6), generators::binary_tree(4)};
  for (int k = 1; k <= 5; ++k) nets.push_back(Exhaustion(lattice_generator(2)).truncate(k));
  for (const Network& net : nets) {
    const auto ds = net.interior_vertices();
    const InnerSpace l2 = InnerSpace::euclidean(static_cast<Eigen::Index>(ds.size()));
    for (VertexId x : ds) {
      if (x == net.origin()) continue;
      const EnergyVector v = solve_dipole(net, x);
      Eigen::VectorXd g(static_cast<Eigen::Index>(ds.size()));
      for (std::size_t i = 0; i < ds.size(); ++i) g[static_cast<Eigen::Index>(i)] = energy_form(net, dirac(net, ds[i]), v.rep());
      EXPECT_LE(dstar_constant_from_pairings(l2, g), std::sqrt(2.0) + 1e-8);
    }
  }
}

TEST(Spectral, Examples) {
  const InnerSpace h = InnerSpace::euclidean(2);
  Eigen::Matrix2d d;
  d << 4, 0, 0, 9;
  const SpectralMeasure mu = spectral_measure(LinOp(h, h, d), Eigen::Vector2d(1, 1));
  ASSERT_EQ(mu.atoms.size(), 2u);
  EXPECT_NEAR(mu.atoms[0].value, 4.0, 1e-14);
  EXPECT_NEAR(mu.atoms[0].weight, 1.0, 1e-14);
  EXPECT_NEAR(mu.atoms[1].value, 9.0, 1e-14);
  EXPECT_NEAR(mu.atoms[1].weight, 1.0, 1e-14);
  EXPECT_NEAR(mu.mass(), 2.0, 1e-14);
  EXPECT_NEAR(mu.moment(), 13.0, 1e-13);

  const SpectralMeasure single = spectral_measure(LinOp(h, h, d), Eigen::Vector2d(0, 3));
  ASSERT_EQ(single.atoms.size(), 1u);
  EXPECT_NEAR(single.atoms[0].value, 9.0, 1e-14);
  EXPECT_NEAR(single.atoms[0].weight, 9.0, 1e-13);

  const InnerSpace h3 = InnerSpace::euclidean(3);
  const SpectralMeasure flat = spectral_measure(LinOp(h3, h3, Eigen::Matrix3d::Identity()), Eigen::Vector3d(1, 2, 2));
  ASSERT_EQ(flat.atoms.size(), 1u);
  EXPECT_NEAR(flat.atoms[0].weight, 9.0, 1e-13);

  const Network net = p3();
  std::vector<VertexFunction> ds;
  for (std::size_t i = 0; i < 3; ++i) ds.push_back(dirac(net, netpair::testing::vid(i)));
  const LinOp lambda = krein_lambda(InnerSpace(gram(net, InnerKind::l2, ds)), gram(net, InnerKind::energy, ds).entries);
  const SpectralMeasure pa = spectral_measure(lambda, Eigen::Vector3d(0, 1, 0));
  EXPECT_NEAR(pa.mass(), 1.0, 1e-13);
  EXPECT_NEAR(pa.moment(), 3.0, 1e-13);
  for (const auto& atom : pa.atoms) EXPECT_GE(atom.value, 0.0);

  Eigen::Matrix2d skew;
  skew << 1, 2, 0, 1;
  EXPECT_THROW(spectral_measure(LinOp(h, h, skew), Eigen::Vector2d(1, 1)), NumericalError);
}

TEST(SpectralProperty, MassAndMoment) {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index n = 1 + t % 10;
    const InnerSpace h1({}, random_spd(rng, n, 0.2, 4.0));
    const Eigen::MatrixXd b = random_matrix(rng, n, n);
    const Eigen::MatrixXd g2 = b * b.transpose();
    const Eigen::VectorXd phi = random_vector(rng, n);
    const SpectralMeasure mu = spectral_measure(krein_lambda(h1, g2), phi);
    const double m = h1.inner(phi, phi), mom = phi.dot(g2 * phi);
    EXPECT_LE(std::abs(mu.mass() - m), 1e-8 * m);
    EXPECT_LE(std::abs(mu.moment() - mom), 1e-8 * mom);
    for (std::size_t i = 1; i < mu.atoms.size(); ++i) EXPECT_LT(mu.atoms[i - 1].value, mu.atoms[i].value);
    for (const auto& atom : mu.atoms) {
      EXPECT_GE(atom.value, 0.0);
      EXPECT_GT(atom.weight, 0.0);
    }
  }
}

TEST(NetworkKL, P3Pairings) {
  const Network net = p3();
  const NetworkPair pair = network_kl(net);
  ASSERT_EQ(pair.diracs.size(), 3u);
  ASSERT_EQ(pair.kernels.size(), 2u);
  // <K delta_a, v_a>_E and <K delta_a, v_b>_E via the energy Gram.
  const Eigen::MatrixXd pairings = pair.k.codomain().gram() * pair.k.matrix();  // rows: v_y, cols: delta_x
  const Eigen::Index a = 1;
  EXPECT_NEAR(pairings(0, a), 1.0, 1e-14);
  EXPECT_NEAR(pairings(1, a), 0.0, 1e-14);
  EXPECT_LE(verify_pair(pair.k, pair.l).residual, 1e-10);

  const NetworkExtension ext = krein_network_extension(pair);
  Eigen::Matrix3d lap;
  lap << 1, -1, 0, -1, 3, -2, 0, -2, 2;
  EXPECT_LE(max_abs(ext.kk.matrix() - lap), 1e-12);
  const Eigen::MatrixXd ll = pair.l.domain().gram() * ext.ll.matrix();
  EXPECT_NEAR(ll(0, 0), 2.0, 1e-13);
  EXPECT_NEAR(ll(0, 1), 1.0, 1e-13);
  EXPECT_LE(asymmetry(ll), 1e-12);
  EXPECT_LE(asymmetry(pair.k.domain().gram() * ext.kk.matrix()), 1e-12);
  EXPECT_TRUE(pair_spectrum_check(pair.k, adjoint(pair.k), 1e-8));
}

TEST(NetworkKL, LargerNetworksAndTruncations) {
  std::vector<Network> nets{generators::cycle(6), generators::binary_tree(4), generators::lattice(2, 2)};
  for (const Network& net : nets) {
    const NetworkPair pair = network_kl(net);
    EXPECT_LE(verify_pair(pair.k, pair.l).residual, 1e-10);
    const NetworkExtension ext = krein_network_extension(pair);
    const auto& ds = pair.diracs;
    for (std::size_t i = 0; i < ds.size(); ++i)
      for (std::size_t j = 0; j < ds.size(); ++j) {
        const double expect = i == j ? net.net_conductance(ds[i]) : -net.conductance(ds[i], ds[j]);
        EXPECT_NEAR(ext.kk.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), expect, 1e-10);
      }
    const Eigen::MatrixXd ll = pair.l.domain().gram() * ext.ll.matrix();
    for (Eigen::Index i = 0; i < ll.rows(); ++i)
      for (Eigen::Index j = 0; j < ll.cols(); ++j) EXPECT_NEAR(ll(i, j), i == j ? 2.0 : 1.0, 1e-8);
    EXPECT_TRUE(pair_spectrum_check(pair.k, adjoint(pair.k), 1e-8));
  }
}

TEST(NetworkKL, WiredTruncation) {
  const Network net = Exhaustion(binary_tree_generator()).truncate(3);
  const NetworkPair pair = network_kl(net);
  EXPECT_EQ(pair.diracs.size(), net.size() - 1);
  EXPECT_LE(verify_pair(pair.k, pair.l).residual, 1e-10);
  const Eigen::MatrixXd ll = pair.l.domain().gram() * krein_network_extension(pair).ll.matrix();
  for (Eigen::Index i = 0; i < ll.rows(); ++i)
    for (Eigen::Index j = 0; j < ll.cols(); ++j) EXPECT_NEAR(ll(i, j), i == j ? 2.0 : 1.0, 1e-8);
}

TEST(NetworkKL, Preconditions) {
  const Network net = p3();
  const VertexId o = net.at("o"), a = net.at("a"), b = net.at("b");
  const VertexId no_origin[] = {a, b};
  const VertexId kernel_a[] = {a};
  EXPECT_THROW(network_kl(net, no_origin, kernel_a), InputError);
  const VertexId all[] = {o, a, b};
  const VertexId with_origin[] = {o, a};
  EXPECT_THROW(network_kl(net, all, with_origin), InputError);
  const VertexId partial[] = {o, a};
  const VertexId kernel_b[] = {b};
  EXPECT_THROW(network_kl(net, partial, kernel_b), InputError);
  const NetworkPair sub = network_kl(net, partial, kernel_a);
  EXPECT_LE(verify_pair(sub.k, sub.l).residual, 1e-12);
}
