#pragma once

// Finite atomic measures: the Radon-Nikodym operator between two L2 spaces
// on a common point set, and the Cantor/Lebesgue divergence witness.

#include <string>
#include <vector>

#include "netpair/sympair.hpp"

namespace netpair {

/// Positive weights on a finite labelled point set.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  /// Throws InputError on duplicate points or weights that are not
  /// positive and finite.
  DiscreteMeasure(std::vector<std::string> support, std::vector<double> weights);

  const std::vector<std::string>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }
  double total_mass() const;
  /// Weight at a point, 0 off the support.
  double weight(const std::string& point) const;

 private:
  std::vector<std::string> support_;
  std::vector<double> weights_;
};

/// Lambda for L2(mu1) and L2(mu2) over the support of mu1: the diagonal
/// operator of the density mu2 / mu1. Throws InputError when mu2 charges a
/// point outside the support of mu1.
LinOp rn_lambda(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2);

struct CantorLevel {
  int n;
  double constant;   ///< C_n from the representer solve
  double predicted;  ///< (3/2)^(n/2)
};

/// Splits [0,1] into 3^n cells; lambda weighs each cell 3^-n, mu weighs
/// each of the 2^n Cantor cells 2^-n. Returns the smallest C with
/// |<phi, 1>_mu| <= C ||phi||_lambda over cell functions phi. 0 <= n <= 14.
CantorLevel cantor_witness(int n);

/// cantor_witness(n) for n = first..last.
std::vector<CantorLevel> cantor_sweep(int first, int last);

/// Least-squares slope of log C_n against n.
double cantor_log_slope(const std::vector<CantorLevel>& levels);

}  // namespace netpair
