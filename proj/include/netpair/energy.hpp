#pragma once

// The energy form, the energy Hilbert space (functions modulo constants) and
// the unweighted l2 inner product on vertex functions.

#include <span>
#include <string>
#include <vector>

#include "netpair/gram.hpp"
#include "netpair/network.hpp"

namespace netpair {

/// E(u, v) = 1/2 sum_{x,y} c_xy (u(x)-u(y)) (v(x)-v(y)), evaluated as one
/// pass over undirected edges.
double energy_form(const Network& net, const VertexFunction& u, const VertexFunction& v);

/// E(u) = E(u, u).
double energy(const Network& net, const VertexFunction& u);

/// Element of the energy space, stored as the representative vanishing at
/// the origin together with its energy.
class EnergyVector {
 public:
  EnergyVector() = default;

  const VertexFunction& rep() const { return rep_; }
  double energy() const { return energy_; }
  double norm() const;
  double operator()(VertexId x) const { return rep_[x.value]; }

  friend EnergyVector to_energy_vector(const Network& net, const VertexFunction& u);

 private:
  VertexFunction rep_;
  double energy_ = 0.0;
};

/// Canonical representative u - u(o) with its cached energy.
EnergyVector to_energy_vector(const Network& net, const VertexFunction& u);

/// <u, v>_E for two energy vectors on the same network.
double energy_inner(const Network& net, const EnergyVector& u, const EnergyVector& v);

/// <u, v>_2 = sum_x u(x) v(x).
double l2_inner(const VertexFunction& u, const VertexFunction& v);

/// Indicator of the single vertex x.
VertexFunction dirac(const Network& net, VertexId x);

enum class InnerKind { energy, l2 };

/// Pairwise inner products under the selected form. Energy Grams are
/// computed on canonical representatives. Labels default to "0".."n-1".
GramMatrix gram(const Network& net, InnerKind kind, std::span<const VertexFunction> vectors,
                std::vector<std::string> labels = {});

}  // namespace netpair
