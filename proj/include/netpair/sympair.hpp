#pragma once

// Operator calculus between finite-dimensional inner-product spaces:
// Gram-weighted adjoints, symmetric pairs, the Friedrichs extension built
// as (JJ*)^-1, the Krein-type operator J*J, D* constants and spectral
// measures, plus the network operators K and L.

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "netpair/energy.hpp"
#include "netpair/gram.hpp"
#include "netpair/network.hpp"

namespace netpair {

/// Linear map between two inner-product spaces. Column j of the matrix
/// holds the codomain coordinates of the image of domain basis vector j.
class LinOp {
 public:
  LinOp(InnerSpace domain, InnerSpace codomain, Eigen::MatrixXd matrix);

  const InnerSpace& domain() const { return domain_; }
  const InnerSpace& codomain() const { return codomain_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

 private:
  InnerSpace domain_;
  InnerSpace codomain_;
  Eigen::MatrixXd matrix_;
};

/// Identity map of the common basis from `domain` into `codomain`.
LinOp inclusion(const InnerSpace& domain, const InnerSpace& codomain);

/// A* with matrix G1^-1 M^T G2, so that <A phi, psi>_2 = <phi, A* psi>_1.
LinOp adjoint(const LinOp& a);

/// outer o inner; requires inner.codomain == outer.domain.
LinOp compose(const LinOp& outer, const LinOp& inner);

/// a + shift * identity for an operator on one space.
LinOp shifted(const LinOp& a, double shift);

/// max |<A phi_i, psi_j>_2 - <phi_i, B psi_j>_1| over basis pairs.
double pairing_residual(const LinOp& a, const LinOp& b);

struct SymmetricPairReport {
  double residual = 0.0;
  double tol = 0.0;
  bool is_pair = false;
};

/// A: H1 -> H2 and B: H2 -> H1 form a symmetric pair when every basis
/// pairing agrees within tol.
SymmetricPairReport verify_pair(const LinOp& a, const LinOp& b, double tol = 1e-10);

struct SpectrumComparison {
  std::vector<double> left;   ///< nonzero eigenvalues of B A on H1
  std::vector<double> right;  ///< nonzero eigenvalues of A B on H2
  double max_deviation = 0.0;
  bool match = false;
};

/// Nonzero spectra of BA and AB. Eigenvalues below 1e-10 * max(1, |lambda|max)
/// count as zero.
SpectrumComparison compare_pair_spectra(const LinOp& a, const LinOp& b, double tol = 1e-8);
bool pair_spectrum_check(const LinOp& a, const LinOp& b, double tol = 1e-8);

/// Generalized eigenvalues of a self-adjoint operator, ascending.
Eigen::VectorXd self_adjoint_spectrum(const LinOp& a);

/// Minimum of <phi, A phi> / <phi, phi> over the space.
double lower_bound(const LinOp& a);

struct FriedrichsResult {
  LinOp extension;           ///< (JJ*)^-1 on H
  LinOp inclusion;           ///< J: H_A -> H
  LinOp inclusion_adjoint;   ///< J*: H -> H_A
  double identity_residual;  ///< max over basis phi of ||JJ* A phi - phi|| / ||phi||
  double inclusion_norm;     ///< operator norm of J
  double min_eigenvalue;     ///< lower bound of the extension
  double condition;          ///< condition estimate of JJ* (Gram-weighted)
};

/// Friedrichs extension of a symmetric operator with <phi, A phi> >= ||phi||^2.
/// The form <psi, A phi> defines H_A, J is the inclusion H_A -> H and the
/// result is (JJ*)^-1, obtained by a solve. Throws NumericalError when A is
/// not symmetric or (when check_coercive) not bounded below by 1.
FriedrichsResult friedrichs_construction(const InnerSpace& h, const LinOp& a,
                                         bool check_coercive = true);
LinOp friedrichs(const InnerSpace& h, const LinOp& a, bool check_coercive = true);

/// Extension of an operator bounded below by `bound`: the operator is
/// shifted to be bounded below by 1, extended, and shifted back.
LinOp semibounded_friedrichs(const InnerSpace& h, const LinOp& a, double bound);

/// Operator of a closed form q >= <.,.>_H given on H's basis: (JJ*)^-1 for
/// the inclusion J of (dom q, q) into H, i.e. G^-1 q.
LinOp operator_from_form(const InnerSpace& h, const Eigen::MatrixXd& q);

/// Form of a self-adjoint A >= 1: q(phi, psi) = <A^1/2 phi, A^1/2 psi>_H.
Eigen::MatrixXd form_from_operator(const InnerSpace& h, const LinOp& a);

/// Relative max-entry residual of form -> operator -> form.
double form_roundtrip_residual(const InnerSpace& h, const Eigen::MatrixXd& q);
/// Relative max-entry residual of operator -> form -> operator.
double operator_roundtrip_residual(const InnerSpace& h, const LinOp& a);

/// Lambda = J*J for the identity-on-D map from H1 into a second structure
/// with (possibly only semidefinite) Gram g2 on the same basis:
/// Lambda = G1^-1 G2, so <phi, Lambda phi>_1 = ||phi||_2^2.
LinOp krein_lambda(const InnerSpace& h1, const Eigen::MatrixXd& g2);

/// Relative deviation |<phi, Lambda phi>_1 - ||phi||_2^2| / max(||phi||_2^2, tiny).
double krein_identity_residual(const LinOp& lambda, const Eigen::MatrixXd& g2,
                               const Eigen::VectorXd& phi);

/// Smallest C with |<phi, h>_2| <= C ||phi||_1 on span D, given the pairings
/// <d_i, h>_2: C = sqrt(g^T G1^-1 g).
double dstar_constant_from_pairings(const InnerSpace& h1, const Eigen::VectorXd& pairings);

/// As above with h given by coordinates in the D basis: pairings = G2 h.
double dstar_constant(const InnerSpace& h1, const Eigen::MatrixXd& g2,
                      const Eigen::VectorXd& h_coords);

/// Diagonal G1 = diag(weights): C = sqrt(sum g_i^2 / w_i).
double dstar_constant_diagonal(std::span<const double> weights, std::span<const double> pairings);

struct SpectralAtom {
  double value;
  double weight;
};

struct SpectralMeasure {
  std::vector<SpectralAtom> atoms;  ///< ascending values, positive weights

  double mass() const;
  double moment() const;
};

/// Atoms (lambda_i, <u_i, phi>_1^2) of the generalized eigendecomposition
/// Lambda u_i = lambda_i u_i with <u_i, u_j>_1 = delta_ij. Repeated
/// eigenvalues are merged and zero-weight atoms dropped.
SpectralMeasure spectral_measure(const LinOp& lambda, const Eigen::VectorXd& phi);

/// K: span{delta_x} in l2 -> energy space and L: span{v_y} -> l2 on a finite
/// network or truncation.
struct NetworkPair {
  std::vector<VertexId> diracs;
  std::vector<VertexId> kernels;
  std::vector<EnergyVector> kernel_vectors;  ///< v_y in kernel order
  LinOp k;
  LinOp l;
};

/// K delta_x = delta_x (energy-orthogonally projected onto span{v_y}) and
/// L v_y = delta_y - delta_o. The origin and every kernel vertex must be in
/// the Dirac set; the Dirac set excludes the ground; the kernel set
/// excludes the origin.
NetworkPair network_kl(const Network& net, std::span<const VertexId> dirac_set,
                       std::span<const VertexId> kernel_set);

/// Dirac set = all non-ground vertices, kernel set = those minus the origin.
NetworkPair network_kl(const Network& net);

struct NetworkExtension {
  LinOp kk;  ///< K*K on l2
  LinOp ll;  ///< L*L on the energy space
};

NetworkExtension krein_network_extension(const NetworkPair& pair);

}  // namespace netpair
