#include "netpair/measures.hpp"

#include <cmath>
#include <unordered_map>

#include "netpair/error.hpp"

namespace netpair {

DiscreteMeasure::DiscreteMeasure(std::vector<std::string> support, std::vector<double> weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  if (support_.size() != weights_.size())
    throw InputError("measure: support and weight counts differ");
  std::unordered_map<std::string, int> seen;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (seen[support_[i]]++) throw InputError("measure: point '" + support_[i] + "' repeated");
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw InputError("measure: weight at '" + support_[i] + "' must be positive and finite");
  }
}

double DiscreteMeasure::total_mass() const {
  double total = 0.0;
  for (double w : weights_) total += w;
  return total;
}

double DiscreteMeasure::weight(const std::string& point) const {
  for (std::size_t i = 0; i < support_.size(); ++i)
    if (support_[i] == point) return weights_[i];
  return 0.0;
}

LinOp rn_lambda(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2) {
  std::unordered_map<std::string, Eigen::Index> index;
  for (std::size_t i = 0; i < mu1.size(); ++i)
    index.emplace(mu1.support()[i], static_cast<Eigen::Index>(i));
  const auto n = static_cast<Eigen::Index>(mu1.size());
  Eigen::VectorXd second = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < mu2.size(); ++i) {
    const auto it = index.find(mu2.support()[i]);
    if (it == index.end())
      throw InputError("not absolutely continuous: mu2 charges '" + mu2.support()[i] +
                       "', a mu1-null point");
    second[it->second] = mu2.weights()[i];
  }
  const Eigen::Map<const Eigen::VectorXd> first(mu1.weights().data(), n);
  InnerSpace l2_first(mu1.support(), first.asDiagonal().toDenseMatrix());
  return krein_lambda(l2_first, second.asDiagonal().toDenseMatrix());
}

CantorLevel cantor_witness(int n) {
  if (n < 0 || n > 14) throw InputError("cantor level must be in 0..14");
  std::size_t cells = 1;
  for (int i = 0; i < n; ++i) cells *= 3;
  const double lebesgue = std::pow(3.0, -n);
  const double cantor = std::pow(2.0, -n);
  std::vector<double> weights(cells, lebesgue);
  std::vector<double> pairings(cells, 0.0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    bool in_cantor = true;
    for (std::size_t rest = cell; rest > 0 && in_cantor; rest /= 3)
      in_cantor = rest % 3 != 1;
    if (in_cantor) pairings[cell] = cantor;
  }
  return {n, dstar_constant_diagonal(weights, pairings), std::pow(1.5, 0.5 * n)};
}

std::vector<CantorLevel> cantor_sweep(int first, int last) {
  if (first > last) throw InputError("cantor sweep: first level exceeds last");
  std::vector<CantorLevel> out;
  for (int n = first; n <= last; ++n) out.push_back(cantor_witness(n));
  return out;
}

double cantor_log_slope(const std::vector<CantorLevel>& levels) {
  if (levels.size() < 2) throw InputError("slope fit needs at least two levels");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& l : levels) {
    const double x = l.n, y = std::log(l.constant);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(levels.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace netpair
