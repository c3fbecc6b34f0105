#pragma once

// Linear solvers for the network Laplacian: the energy kernel (dipoles),
// monopoles via wired exhaustion, harmonic subspaces, the Royden
// decomposition, effective resistance and a transience probe.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "netpair/energy.hpp"
#include "netpair/generators.hpp"
#include "netpair/network.hpp"

namespace netpair {

struct SolverOptions {
  /// Reduced systems with more unknowns than this use Jacobi-preconditioned
  /// conjugate gradients instead of sparse Cholesky.
  std::size_t direct_limit = 10000;
  double cg_relative_tolerance = 1e-13;
  /// 0 selects 10 * unknowns + 100.
  std::size_t cg_max_iterations = 0;
};

/// Network Laplacian with Dirichlet conditions on a set of pinned vertices.
/// The reduced operator on the free vertices is symmetric positive definite
/// whenever the pinned set is nonempty; it is factorized (or prepared for
/// CG) once and reused for every solve.
class PinnedLaplacian {
 public:
  PinnedLaplacian(const Network& net, std::span<const VertexId> pinned,
                  SolverOptions options = {});

  /// u with (Delta u)(x) = rhs(x) at every free x and u = boundary on the
  /// pinned vertices. Entries of rhs at pinned vertices are ignored; a null
  /// boundary means zero.
  VertexFunction solve(const VertexFunction& rhs,
                       const VertexFunction* boundary = nullptr) const;

  std::size_t free_count() const { return free_.size(); }
  bool direct() const { return static_cast<bool>(direct_); }
  /// Iterations used by the most recent CG solve (0 for direct solves).
  std::size_t last_iterations() const { return last_iterations_; }

 private:
  struct Direct;
  Eigen::VectorXd solve_reduced(const Eigen::VectorXd& b) const;

  std::size_t n_ = 0;
  SolverOptions options_;
  std::vector<std::int32_t> free_;        // reduced index -> vertex
  std::vector<std::int32_t> reduced_of_;  // vertex -> reduced index or -1
  std::vector<std::int32_t> pinned_;
  // Reduced CSR (off-diagonal conductances among free vertices) and diagonal.
  std::vector<std::int32_t> offsets_;
  std::vector<std::int32_t> cols_;
  std::vector<double> weights_;
  std::vector<double> diag_;
  // Couplings free -> pinned: (reduced row, pinned vertex, conductance).
  struct Coupling {
    std::int32_t row;
    std::int32_t vertex;
    double conductance;
  };
  std::vector<Coupling> couplings_;
  std::shared_ptr<const Direct> direct_;
  mutable std::size_t last_iterations_ = 0;
};

enum class Gauge {
  origin,  ///< representative vanishing at the origin
  ground,  ///< representative vanishing at the ground vertex
};

/// Solves Delta u = f with one pinned vertex: the ground vertex when present,
/// otherwise the origin. Without a ground vertex f must sum to zero.
class GroundedSolver {
 public:
  explicit GroundedSolver(const Network& net, SolverOptions options = {});

  VertexFunction solve(const VertexFunction& rhs, Gauge gauge = Gauge::origin) const;

  const PinnedLaplacian& pinned() const { return laplacian_; }

 private:
  const Network* net_;
  PinnedLaplacian laplacian_;
};

VertexFunction solve_grounded(const Network& net, const VertexFunction& rhs,
                              Gauge gauge = Gauge::origin, SolverOptions options = {});

/// Energy kernel element v_x: Delta v_x = delta_x - delta_o, v_x(o) = 0.
/// v_o is the zero class.
EnergyVector solve_dipole(const Network& net, VertexId x, SolverOptions options = {});

/// v_x for every listed vertex with a single factorization.
std::vector<EnergyVector> solve_dipoles(const Network& net, std::span<const VertexId> xs,
                                        SolverOptions options = {});

/// Monopoles on a wired truncation: Delta w_x = delta_x at every non-ground
/// vertex, w_x(ground) = 0. In this gauge <w_x, w_y>_E = w_y(x).
std::vector<VertexFunction> solve_monopoles(const Network& truncation,
                                            std::span<const VertexId> xs,
                                            SolverOptions options = {});

/// Laplacian restricted to the non-ground vertices: the ground entry of
/// Delta u is replaced by 0. Delta w_x = delta_x exactly in this sense.
VertexFunction interior_laplacian(const Network& net, const VertexFunction& u);

struct ConvergenceLevel {
  int k;
  double value;
  double energy;
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> levels;
  double extrapolated_limit = 0.0;
  bool converged = false;
  double tol = 0.0;
};

/// Aitken delta-squared estimate from the last three values, or the last
/// value when the tail is not geometrically convergent.
double aitken_limit(std::span<const ConvergenceLevel> levels);

struct MonopoleOptions {
  double tol = 1e-6;
  int k_max = 30;
  SolverOptions solver{};
};

struct MonopoleResult {
  Network truncation;
  VertexId vertex;
  /// Potential with the ground pinned to 0; potential(vertex) is the
  /// wired resistance from the vertex to the ground.
  VertexFunction potential;
  EnergyVector monopole;
  ConvergenceReport report;
};

/// Sweeps wired truncations k = 1 .. k_max, solving Delta w = delta_x with
/// the ground pinned to 0. Stops once successive energies differ by <= tol.
/// Non-convergence (recurrent networks) is reported, not thrown.
MonopoleResult solve_monopole(const Exhaustion& ex, const std::string& vertex_label,
                              MonopoleOptions options = {});

/// Harmonic extension of boundary data: u = values on the boundary,
/// Delta u = 0 on every other vertex.
VertexFunction harmonic_extension(const Network& net, std::span<const VertexId> boundary,
                                  const VertexFunction& values, SolverOptions options = {});

/// Basis of functions harmonic off the boundary, normalized to vanish at
/// the origin; dimension |boundary| - 1. Empty for an empty boundary.
std::vector<VertexFunction> harmonic_space(const Network& net,
                                           std::span<const VertexId> boundary,
                                           SolverOptions options = {});

struct RoydenParts {
  EnergyVector fin;
  EnergyVector harm;
  double gram_condition = 1.0;
};

/// u = fin + harm with harm the energy-orthogonal projection of u onto the
/// harmonic space of the boundary (solved through its Gram matrix). Throws
/// NumericalError when that Gram matrix has condition number above 1e12.
RoydenParts royden_project(const Network& net, std::span<const VertexId> boundary,
                           const EnergyVector& u, SolverOptions options = {});

/// R(x, y) = v(x) - v(y) where Delta v = delta_x - delta_y.
double effective_resistance(const Network& net, VertexId x, VertexId y,
                            SolverOptions options = {});

enum class Verdict { transient, recurrent, inconclusive };
std::string to_string(Verdict verdict);

struct TransienceOptions {
  int k_max = 30;
  double tol = 1e-6;
  /// Recurrent once R_k > divergence_factor * R_1 with non-shrinking
  /// increments.
  double divergence_factor = 1e3;
  SolverOptions solver{};
};

struct TransienceResult {
  Verdict verdict = Verdict::inconclusive;
  ConvergenceReport report;
};

/// Wired resistance R_k from the origin to the ground per level.
TransienceResult transience_probe(const Exhaustion& ex, TransienceOptions options = {});

}  // namespace netpair
