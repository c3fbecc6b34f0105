#pragma once

// Finite-dimensional inner-product spaces described by a basis and its Gram
// matrix.

#include <string>
#include <vector>

#include <Eigen/Core>

namespace netpair {

/// Pairwise inner products of a labelled list of vectors.
struct GramMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd entries;

  Eigen::Index size() const { return entries.rows(); }
};

/// Inner-product space spanned by a labelled basis. The Gram matrix must be
/// symmetric positive definite; construction verifies this by Cholesky.
class InnerSpace {
 public:
  InnerSpace(std::vector<std::string> labels, Eigen::MatrixXd gram);
  explicit InnerSpace(GramMatrix gram);

  /// R^n with the standard inner product and labels "0".."n-1".
  static InnerSpace euclidean(Eigen::Index n);

  Eigen::Index dim() const { return gram_.rows(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::MatrixXd& gram() const { return gram_; }

  /// <x, y> for coordinate vectors x, y.
  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double norm(const Eigen::VectorXd& x) const;

  /// Solves gram * X = rhs.
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;

  /// Same labels and Gram entries within rel_tol (relative to max |entry|).
  bool same_as(const InnerSpace& other, double rel_tol = 1e-12) const;

 private:
  std::vector<std::string> labels_;
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd cholesky_l_;
};

/// Throws NumericalError when m is not symmetric within rel_tol * max|m|.
void require_symmetric(const Eigen::MatrixXd& m, double rel_tol, const char* what);

/// max |m - m^T| / max(1, max |m|).
double asymmetry(const Eigen::MatrixXd& m);

/// Minimal eigenvalue of the symmetric pencil (a, b) with b positive definite.
double min_generalized_eigenvalue(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Ratio of extreme eigenvalues of a symmetric positive semidefinite matrix
/// (infinity when singular).
double condition_number(const Eigen::MatrixXd& spd);

}  // namespace netpair
