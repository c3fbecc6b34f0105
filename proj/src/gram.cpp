#include "netpair/gram.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "netpair/error.hpp"

namespace netpair {

InnerSpace::InnerSpace(std::vector<std::string> labels, Eigen::MatrixXd gram)
    : labels_(std::move(labels)), gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols())
    throw InputError("Gram matrix must be square");
  if (labels_.empty()) {
    for (Eigen::Index i = 0; i < gram_.rows(); ++i) labels_.push_back(std::to_string(i));
  }
  if (static_cast<Eigen::Index>(labels_.size()) != gram_.rows())
    throw InputError("Gram matrix size does not match the number of basis labels");
  require_symmetric(gram_, 1e-10, "Gram matrix");
  gram_ = 0.5 * (gram_ + gram_.transpose()).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(gram_);
  if (llt.info() != Eigen::Success)
    throw NumericalError("Gram matrix is not positive definite (Cholesky failed)");
  cholesky_l_ = llt.matrixL();
  for (Eigen::Index i = 0; i < cholesky_l_.rows(); ++i)
    if (!(cholesky_l_(i, i) > 0.0))
      throw NumericalError("Gram matrix is singular");
}

InnerSpace::InnerSpace(GramMatrix gram)
    : InnerSpace(std::move(gram.labels), std::move(gram.entries)) {}

InnerSpace InnerSpace::euclidean(Eigen::Index n) {
  return InnerSpace({}, Eigen::MatrixXd::Identity(n, n));
}

double InnerSpace::inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw InputError("coordinate vector has the wrong dimension");
  return x.dot(gram_ * y);
}

double InnerSpace::norm(const Eigen::VectorXd& x) const {
  return std::sqrt(std::max(0.0, inner(x, x)));
}

Eigen::MatrixXd InnerSpace::solve(const Eigen::MatrixXd& rhs) const {
  if (rhs.rows() != dim()) throw InputError("right-hand side has the wrong dimension");
  const auto l = cholesky_l_.triangularView<Eigen::Lower>();
  Eigen::MatrixXd y = l.solve(rhs);
  return l.transpose().solve(y);
}

bool InnerSpace::same_as(const InnerSpace& other, double rel_tol) const {
  if (this == &other) return true;
  if (dim() != other.dim() || labels_ != other.labels_) return false;
  const double scale = std::max(1.0, gram_.cwiseAbs().maxCoeff());
  return (gram_ - other.gram_).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

double asymmetry(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

void require_symmetric(const Eigen::MatrixXd& m, double rel_tol, const char* what) {
  if (m.rows() != m.cols()) throw InputError(std::string(what) + " must be square");
  const double a = asymmetry(m);
  if (a > rel_tol)
    throw NumericalError(std::string(what) + " is not symmetric (relative asymmetry " +
                         std::to_string(a) + ")");
}

double min_generalized_eigenvalue(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.size() == 0) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, b, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("generalized eigensolve failed");
  return es.eigenvalues().minCoeff();
}

double condition_number(const Eigen::MatrixXd& spd) {
  if (spd.size() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (spd + spd.transpose()),
                                                    Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace netpair
