#include "netpair/energy.hpp"

#include <cmath>

#include "netpair/error.hpp"
#include "netpair/simd/kernels.hpp"

namespace netpair {
namespace {

std::span<const double> as_span(const VertexFunction& u) { return {u.data(), static_cast<std::size_t>(u.size())}; }

}  // namespace

double energy_form(const Network& net, const VertexFunction& u, const VertexFunction& v) {
  require_function_on(net, u, "energy_form");
  require_function_on(net, v, "energy_form");
  return simd::edge_energy(net.edge_tails(), net.edge_heads(), net.edge_conductances(),
                           as_span(u), as_span(v));
}

double energy(const Network& net, const VertexFunction& u) { return energy_form(net, u, u); }

double EnergyVector::norm() const { return std::sqrt(std::max(0.0, energy_)); }

EnergyVector to_energy_vector(const Network& net, const VertexFunction& u) {
  require_function_on(net, u, "to_energy_vector");
  EnergyVector out;
  out.rep_ = u.array() - u[net.origin().value];
  out.energy_ = energy(net, out.rep_);
  return out;
}

double energy_inner(const Network& net, const EnergyVector& u, const EnergyVector& v) {
  return energy_form(net, u.rep(), v.rep());
}

double l2_inner(const VertexFunction& u, const VertexFunction& v) {
  if (u.size() != v.size())
    throw InputError("l2_inner: functions live on different vertex sets");
  return simd::dot(as_span(u), as_span(v));
}

VertexFunction dirac(const Network& net, VertexId x) {
  if (!net.contains(x)) throw InputError("dirac: unknown vertex");
  VertexFunction d = VertexFunction::Zero(static_cast<Eigen::Index>(net.size()));
  d[x.value] = 1.0;
  return d;
}

GramMatrix gram(const Network& net, InnerKind kind, std::span<const VertexFunction> vectors,
                std::vector<std::string> labels) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  if (labels.empty())
    for (Eigen::Index i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  if (static_cast<Eigen::Index>(labels.size()) != n)
    throw InputError("gram: label count does not match vector count");

  std::vector<VertexFunction> reps;
  reps.reserve(vectors.size());
  for (const auto& v : vectors) {
    require_function_on(net, v, "gram");
    reps.push_back(kind == InnerKind::energy ? to_energy_vector(net, v).rep() : v);
  }
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const double value = kind == InnerKind::energy ? energy_form(net, reps[i], reps[j])
                                                     : l2_inner(reps[i], reps[j]);
      g(i, j) = g(j, i) = value;
    }
  return {std::move(labels), std::move(g)};
}

}  // namespace netpair
