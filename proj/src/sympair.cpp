#include "netpair/sympair.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "netpair/error.hpp"
#include "netpair/simd/kernels.hpp"
#include "netpair/solvers.hpp"

namespace netpair {
namespace {

constexpr double kSymmetryTol = 1e-10;

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

void require_same(const InnerSpace& a, const InnerSpace& b, const char* what) {
  if (!a.same_as(b)) throw InputError(std::string(what) + ": inner-product spaces do not match");
}

void require_endomorphism(const LinOp& a, const char* what) {
  require_same(a.domain(), a.codomain(), what);
}

// G A for an operator on one space, after checking it is symmetric.
Eigen::MatrixXd symmetric_form(const LinOp& a, const char* what) {
  require_endomorphism(a, what);
  const Eigen::MatrixXd s = a.domain().gram() * a.matrix();
  const double asym = asymmetry(s);
  if (asym > kSymmetryTol) {
    std::ostringstream msg;
    msg << what << ": operator is not self-adjoint (relative asymmetry " << asym << ")";
    throw NumericalError(msg.str());
  }
  return 0.5 * (s + s.transpose());
}

Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> pencil(const Eigen::MatrixXd& s,
                                                                  const Eigen::MatrixXd& g,
                                                                  bool vectors) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      s, g, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("generalized eigensolve failed");
  return es;
}

FriedrichsResult from_form(const InnerSpace& h, const Eigen::MatrixXd& form, const LinOp* a) {
  InnerSpace form_space(h.labels(), form);
  LinOp j = inclusion(form_space, h);
  LinOp j_star = adjoint(j);
  const LinOp jj_star = compose(j, j_star);

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(jj_star.matrix());
  const auto n = h.dim();
  Eigen::MatrixXd ext = lu.solve(Eigen::MatrixXd::Identity(n, n));
  if (!ext.allFinite()) throw NumericalError("JJ* is singular");

  const auto ratios = pencil(form_space.gram(), h.gram(), false).eigenvalues();
  const double condition = n ? ratios.maxCoeff() / ratios.minCoeff() : 1.0;
  const double j_norm =
      n ? std::sqrt(std::max(0.0, pencil(h.gram(), form_space.gram(), false).eigenvalues().maxCoeff()))
        : 0.0;

  LinOp extension(h, h, std::move(ext));
  double residual = 0.0;
  if (a) {
    const Eigen::MatrixXd r = jj_star.matrix() * a->matrix() - Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index col = 0; col < n; ++col)
      residual = std::max(residual, h.norm(r.col(col)) / std::sqrt(h.gram()(col, col)));
    if (!(residual <= 1e-6)) {
      std::ostringstream msg;
      msg << "JJ*A differs from the identity (residual " << residual << ")";
      throw NumericalError(msg.str());
    }
  }
  const double min_eig = n ? lower_bound(extension) : 0.0;
  return {std::move(extension), std::move(j), std::move(j_star), residual, j_norm, min_eig, condition};
}

void require_bounded_below(const Eigen::MatrixXd& s, const Eigen::MatrixXd& g, double bound,
                           const char* what) {
  if (s.rows() == 0) return;
  const double lo = pencil(s, g, false).eigenvalues().minCoeff();
  if (lo < bound - kSymmetryTol * std::max(1.0, max_abs(s))) {
    std::ostringstream msg;
    msg << what << ": eigenvalue " << lo << " is below the required bound " << bound;
    throw NumericalError(msg.str());
  }
}

}  // namespace

LinOp::LinOp(InnerSpace domain, InnerSpace codomain, Eigen::MatrixXd matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_.dim() || matrix_.cols() != domain_.dim())
    throw InputError("operator matrix is " + std::to_string(matrix_.rows()) + "x" +
                     std::to_string(matrix_.cols()) + " but the spaces have dimensions " +
                     std::to_string(codomain_.dim()) + " and " + std::to_string(domain_.dim()));
}

Eigen::VectorXd LinOp::apply(const Eigen::VectorXd& x) const {
  if (x.size() != domain_.dim()) throw InputError("vector does not match the operator domain");
  return matrix_ * x;
}

LinOp inclusion(const InnerSpace& domain, const InnerSpace& codomain) {
  if (domain.dim() != codomain.dim())
    throw InputError("inclusion between spaces of different dimension");
  return LinOp(domain, codomain, Eigen::MatrixXd::Identity(codomain.dim(), domain.dim()));
}

LinOp adjoint(const LinOp& a) {
  Eigen::MatrixXd m = a.domain().solve(a.matrix().transpose() * a.codomain().gram());
  return LinOp(a.codomain(), a.domain(), std::move(m));
}

LinOp compose(const LinOp& outer, const LinOp& inner) {
  require_same(outer.domain(), inner.codomain(), "compose");
  return LinOp(inner.domain(), outer.codomain(), outer.matrix() * inner.matrix());
}

LinOp shifted(const LinOp& a, double shift) {
  require_endomorphism(a, "shift");
  const auto n = a.domain().dim();
  return LinOp(a.domain(), a.codomain(), a.matrix() + shift * Eigen::MatrixXd::Identity(n, n));
}

double pairing_residual(const LinOp& a, const LinOp& b) {
  require_same(b.domain(), a.codomain(), "symmetric pair");
  require_same(b.codomain(), a.domain(), "symmetric pair");
  const Eigen::MatrixXd lhs = a.matrix().transpose() * a.codomain().gram();
  const Eigen::MatrixXd rhs = a.domain().gram() * b.matrix();
  return max_abs(lhs - rhs);
}

SymmetricPairReport verify_pair(const LinOp& a, const LinOp& b, double tol) {
  if (!(tol >= 0.0)) throw InputError("tolerance must be nonnegative");
  SymmetricPairReport report;
  report.residual = pairing_residual(a, b);
  report.tol = tol;
  report.is_pair = report.residual <= tol;
  return report;
}

namespace {

std::vector<double> nonzero_spectrum(const InnerSpace& space, const Eigen::MatrixXd& product) {
  std::vector<double> values;
  if (product.rows() == 0) return values;
  const Eigen::MatrixXd s = space.gram() * product;
  if (asymmetry(s) <= kSymmetryTol) {
    const auto ev = pencil(0.5 * (s + s.transpose()), space.gram(), false).eigenvalues();
    values.assign(ev.data(), ev.data() + ev.size());
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(product, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      values.push_back(es.eigenvalues()[i].real());
  }
  double scale = 1.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  std::erase_if(values, [&](double v) { return std::abs(v) <= 1e-10 * scale; });
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace

SpectrumComparison compare_pair_spectra(const LinOp& a, const LinOp& b, double tol) {
  require_same(b.domain(), a.codomain(), "spectrum check");
  require_same(b.codomain(), a.domain(), "spectrum check");
  SpectrumComparison out;
  out.left = nonzero_spectrum(a.domain(), b.matrix() * a.matrix());
  out.right = nonzero_spectrum(a.codomain(), a.matrix() * b.matrix());
  if (out.left.size() != out.right.size()) {
    out.max_deviation = std::numeric_limits<double>::infinity();
    out.match = false;
    return out;
  }
  for (std::size_t i = 0; i < out.left.size(); ++i) {
    const double scale = std::max(1.0, std::abs(out.left[i]));
    out.max_deviation = std::max(out.max_deviation, std::abs(out.left[i] - out.right[i]) / scale);
  }
  out.match = out.max_deviation <= tol;
  return out;
}

bool pair_spectrum_check(const LinOp& a, const LinOp& b, double tol) {
  return compare_pair_spectra(a, b, tol).match;
}

Eigen::VectorXd self_adjoint_spectrum(const LinOp& a) {
  const Eigen::MatrixXd s = symmetric_form(a, "spectrum");
  if (s.rows() == 0) return {};
  return pencil(s, a.domain().gram(), false).eigenvalues();
}

double lower_bound(const LinOp& a) {
  const Eigen::VectorXd ev = self_adjoint_spectrum(a);
  return ev.size() ? ev.minCoeff() : std::numeric_limits<double>::infinity();
}

FriedrichsResult friedrichs_construction(const InnerSpace& h, const LinOp& a,
                                         bool check_coercive) {
  require_same(a.domain(), h, "friedrichs");
  const Eigen::MatrixXd form = symmetric_form(a, "friedrichs");
  if (check_coercive) require_bounded_below(form, h.gram(), 1.0, "friedrichs: not coercive");
  return from_form(h, form, &a);
}

LinOp friedrichs(const InnerSpace& h, const LinOp& a, bool check_coercive) {
  return friedrichs_construction(h, a, check_coercive).extension;
}

LinOp semibounded_friedrichs(const InnerSpace& h, const LinOp& a, double bound) {
  if (!std::isfinite(bound)) throw InputError("lower bound must be finite");
  require_same(a.domain(), h, "semibounded friedrichs");
  require_bounded_below(symmetric_form(a, "semibounded friedrichs"), h.gram(), bound,
                        "semibounded friedrichs: bound violated");
  const double shift = 1.0 - bound;
  return shifted(friedrichs(h, shifted(a, shift)), -shift);
}

LinOp operator_from_form(const InnerSpace& h, const Eigen::MatrixXd& q) {
  if (q.rows() != h.dim() || q.cols() != h.dim())
    throw InputError("form matrix does not match the space dimension");
  require_symmetric(q, kSymmetryTol, "form");
  const Eigen::MatrixXd form = 0.5 * (q + q.transpose());
  require_bounded_below(form, h.gram(), 1.0, "form is not bounded below by the inner product");
  return from_form(h, form, nullptr).extension;
}

Eigen::MatrixXd form_from_operator(const InnerSpace& h, const LinOp& a) {
  require_same(a.domain(), h, "form_from_operator");
  const Eigen::MatrixXd s = symmetric_form(a, "form_from_operator");
  if (s.rows() == 0) return s;
  const auto es = pencil(s, h.gram(), true);
  const Eigen::VectorXd lambda = es.eigenvalues();
  if (lambda.minCoeff() < 1.0 - kSymmetryTol * std::max(1.0, max_abs(s))) {
    std::ostringstream msg;
    msg << "form_from_operator: operator has eigenvalue " << lambda.minCoeff() << " < 1";
    throw NumericalError(msg.str());
  }
  const Eigen::MatrixXd& u = es.eigenvectors();  // u^T G u = I
  const Eigen::MatrixXd root =
      u * lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal() * u.transpose() * h.gram();
  const Eigen::MatrixXd q = root.transpose() * h.gram() * root;
  return 0.5 * (q + q.transpose());
}

double form_roundtrip_residual(const InnerSpace& h, const Eigen::MatrixXd& q) {
  const Eigen::MatrixXd back = form_from_operator(h, operator_from_form(h, q));
  return max_abs(back - q) / std::max(1.0, max_abs(q));
}

double operator_roundtrip_residual(const InnerSpace& h, const LinOp& a) {
  const LinOp back = operator_from_form(h, form_from_operator(h, a));
  return max_abs(back.matrix() - a.matrix()) / std::max(1.0, max_abs(a.matrix()));
}

LinOp krein_lambda(const InnerSpace& h1, const Eigen::MatrixXd& g2) {
  if (g2.rows() != h1.dim() || g2.cols() != h1.dim())
    throw InputError("second Gram matrix does not match the basis size");
  require_symmetric(g2, kSymmetryTol, "second Gram matrix");
  const Eigen::MatrixXd sym = 0.5 * (g2 + g2.transpose());
  if (sym.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -kSymmetryTol * std::max(1.0, max_abs(sym))) {
      std::ostringstream msg;
      msg << "second Gram matrix is not positive semidefinite (eigenvalue " << lo << ")";
      throw NumericalError(msg.str());
    }
  }
  return LinOp(h1, h1, h1.solve(sym));
}

double krein_identity_residual(const LinOp& lambda, const Eigen::MatrixXd& g2,
                               const Eigen::VectorXd& phi) {
  const double lhs = lambda.domain().inner(phi, lambda.apply(phi));
  const double rhs = phi.dot(g2 * phi);
  const double scale = rhs != 0.0 ? std::abs(rhs) : 1.0;
  return std::abs(lhs - rhs) / scale;
}

double dstar_constant_from_pairings(const InnerSpace& h1, const Eigen::VectorXd& pairings) {
  if (pairings.size() != h1.dim()) throw InputError("pairing vector does not match the basis");
  const Eigen::VectorXd representer = h1.solve(pairings);
  return std::sqrt(std::max(0.0, pairings.dot(representer)));
}

double dstar_constant(const InnerSpace& h1, const Eigen::MatrixXd& g2,
                      const Eigen::VectorXd& h_coords) {
  if (g2.rows() != h1.dim() || g2.cols() != h1.dim() || h_coords.size() != h1.dim())
    throw InputError("dstar_constant: dimension mismatch");
  return dstar_constant_from_pairings(h1, g2 * h_coords);
}

double dstar_constant_diagonal(std::span<const double> weights, std::span<const double> pairings) {
  if (weights.size() != pairings.size())
    throw InputError("dstar_constant: weight and pairing counts differ");
  std::vector<double> inverse(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw NumericalError("diagonal Gram has a non-positive entry");
    inverse[i] = 1.0 / weights[i];
  }
  return std::sqrt(std::max(0.0, simd::weighted_dot(inverse, pairings, pairings)));
}

double SpectralMeasure::mass() const {
  double total = 0.0;
  for (const auto& a : atoms) total += a.weight;
  return total;
}

double SpectralMeasure::moment() const {
  double total = 0.0;
  for (const auto& a : atoms) total += a.value * a.weight;
  return total;
}

SpectralMeasure spectral_measure(const LinOp& lambda, const Eigen::VectorXd& phi) {
  const Eigen::MatrixXd s = symmetric_form(lambda, "spectral_measure");
  const InnerSpace& h = lambda.domain();
  if (phi.size() != h.dim()) throw InputError("vector does not match the operator domain");
  SpectralMeasure measure;
  if (s.rows() == 0) return measure;

  const auto es = pencil(s, h.gram(), true);
  const Eigen::VectorXd& values = es.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  if (values.minCoeff() < -kSymmetryTol * scale) {
    std::ostringstream msg;
    msg << "spectral_measure: operator is not nonnegative (eigenvalue " << values.minCoeff() << ")";
    throw NumericalError(msg.str());
  }
  const Eigen::VectorXd coeffs = es.eigenvectors().transpose() * (h.gram() * phi);
  double total = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double value = values[i] <= kSymmetryTol * scale ? 0.0 : values[i];
    const double weight = coeffs[i] * coeffs[i];
    total += weight;
    if (!measure.atoms.empty() && value - measure.atoms.back().value <= kSymmetryTol * scale)
      measure.atoms.back().weight += weight;
    else
      measure.atoms.push_back({value, weight});
  }
  std::erase_if(measure.atoms, [&](const SpectralAtom& a) {
    return !(a.weight > 1e-15 * total);
  });
  return measure;
}

namespace {

void require_unique(const Network& net, std::span<const VertexId> xs, const char* what) {
  std::vector<char> seen(net.size(), 0);
  for (VertexId x : xs) {
    if (!net.contains(x)) throw InputError(std::string(what) + ": unknown vertex");
    if (net.is_ground(x))
      throw InputError(std::string(what) + ": the ground vertex is not allowed");
    if (seen[x.value]++) throw InputError(std::string(what) + ": vertex '" + net.label(x) + "' repeated");
  }
}

}  // namespace

NetworkPair network_kl(const Network& net, std::span<const VertexId> dirac_set,
                       std::span<const VertexId> kernel_set) {
  require_unique(net, dirac_set, "dirac set");
  require_unique(net, kernel_set, "kernel set");
  std::vector<Eigen::Index> position(net.size(), -1);
  for (std::size_t i = 0; i < dirac_set.size(); ++i)
    position[dirac_set[i].value] = static_cast<Eigen::Index>(i);
  const VertexId o = net.origin();
  if (position[o.value] < 0) throw InputError("the origin must belong to the dirac set");
  for (VertexId y : kernel_set) {
    if (y == o) throw InputError("v_o is the zero class; drop the origin from the kernel set");
    if (position[y.value] < 0)
      throw InputError("kernel vertex '" + net.label(y) + "' is missing from the dirac set");
  }

  NetworkPair pair{{dirac_set.begin(), dirac_set.end()},
                   {kernel_set.begin(), kernel_set.end()},
                   solve_dipoles(net, kernel_set),
                   LinOp(InnerSpace::euclidean(0), InnerSpace::euclidean(0), {}),
                   LinOp(InnerSpace::euclidean(0), InnerSpace::euclidean(0), {})};

  std::vector<VertexFunction> deltas;
  std::vector<std::string> dirac_labels;
  for (VertexId x : dirac_set) {
    deltas.push_back(dirac(net, x));
    dirac_labels.push_back("delta_" + net.label(x));
  }
  std::vector<VertexFunction> kernels;
  std::vector<std::string> kernel_labels;
  for (std::size_t j = 0; j < kernel_set.size(); ++j) {
    kernels.push_back(pair.kernel_vectors[j].rep());
    kernel_labels.push_back("v_" + net.label(kernel_set[j]));
  }
  InnerSpace l2(gram(net, InnerKind::l2, deltas, std::move(dirac_labels)));
  InnerSpace energy_space(gram(net, InnerKind::energy, kernels, std::move(kernel_labels)));

  const auto nd = static_cast<Eigen::Index>(deltas.size());
  const auto nk = static_cast<Eigen::Index>(kernels.size());
  Eigen::MatrixXd pairings(nk, nd);
  for (Eigen::Index j = 0; j < nk; ++j)
    for (Eigen::Index i = 0; i < nd; ++i) pairings(j, i) = energy_form(net, kernels[j], deltas[i]);
  Eigen::MatrixXd k = nk ? energy_space.solve(pairings) : Eigen::MatrixXd(0, nd);

  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(nd, nk);
  for (Eigen::Index j = 0; j < nk; ++j) {
    l(position[kernel_set[j].value], j) += 1.0;
    l(position[o.value], j) -= 1.0;
  }
  pair.k = LinOp(l2, energy_space, std::move(k));
  pair.l = LinOp(energy_space, l2, std::move(l));
  return pair;
}

NetworkPair network_kl(const Network& net) {
  std::vector<VertexId> diracs;
  std::vector<VertexId> kernels;
  for (std::size_t v = 0; v < net.size(); ++v) {
    const VertexId x{static_cast<std::int32_t>(v)};
    if (net.is_ground(x)) continue;
    diracs.push_back(x);
    if (x != net.origin()) kernels.push_back(x);
  }
  return network_kl(net, diracs, kernels);
}

NetworkExtension krein_network_extension(const NetworkPair& pair) {
  return {compose(adjoint(pair.k), pair.k), compose(adjoint(pair.l), pair.l)};
}

}  // namespace netpair
