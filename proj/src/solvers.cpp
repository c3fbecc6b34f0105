#include "netpair/solvers.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "netpair/error.hpp"
#include "netpair/simd/kernels.hpp"

namespace netpair {
namespace {

std::span<const double> view(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}
std::span<double> view(Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

struct PinnedLaplacian::Direct {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

PinnedLaplacian::PinnedLaplacian(const Network& net, std::span<const VertexId> pinned,
                                 SolverOptions options)
    : n_(net.size()), options_(options) {
  if (pinned.empty())
    throw InputError("pinned Laplacian needs at least one pinned vertex");
  reduced_of_.assign(n_, 0);
  for (VertexId p : pinned) {
    if (!net.contains(p)) throw InputError("pinned vertex is not in the network");
    if (reduced_of_[p.value] < 0)
      throw InputError("vertex '" + net.label(p) + "' pinned twice");
    reduced_of_[p.value] = -1;
    pinned_.push_back(p.value);
  }
  for (std::size_t v = 0; v < n_; ++v) {
    if (reduced_of_[v] < 0) continue;
    reduced_of_[v] = static_cast<std::int32_t>(free_.size());
    free_.push_back(static_cast<std::int32_t>(v));
  }

  const auto offsets = net.adjacency_offsets();
  const auto targets = net.adjacency_targets();
  const auto weights = net.adjacency_weights();
  const auto degree = net.net_conductances();
  offsets_.reserve(free_.size() + 1);
  offsets_.push_back(0);
  diag_.reserve(free_.size());
  for (std::size_t r = 0; r < free_.size(); ++r) {
    const auto v = free_[r];
    for (auto j = offsets[v]; j < offsets[v + 1]; ++j) {
      const auto w = targets[j];
      if (reduced_of_[w] >= 0) {
        cols_.push_back(reduced_of_[w]);
        weights_.push_back(weights[j]);
      } else {
        couplings_.push_back({static_cast<std::int32_t>(r), w, weights[j]});
      }
    }
    offsets_.push_back(static_cast<std::int32_t>(cols_.size()));
    diag_.push_back(degree[v]);
  }

  if (!free_.empty() && free_.size() <= options_.direct_limit) {
    const auto m = static_cast<Eigen::Index>(free_.size());
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(cols_.size() + free_.size());
    for (Eigen::Index r = 0; r < m; ++r) {
      triplets.emplace_back(r, r, diag_[r]);
      for (auto j = offsets_[r]; j < offsets_[r + 1]; ++j)
        triplets.emplace_back(r, cols_[j], -weights_[j]);
    }
    Eigen::SparseMatrix<double> a(m, m);
    a.setFromTriplets(triplets.begin(), triplets.end());
    auto direct = std::make_shared<Direct>();
    direct->ldlt.compute(a);
    if (direct->ldlt.info() != Eigen::Success || !(direct->ldlt.vectorD().minCoeff() > 0.0))
      throw NumericalError("reduced Laplacian is singular (is every component pinned?)");
    direct_ = std::move(direct);
  }
}

Eigen::VectorXd PinnedLaplacian::solve_reduced(const Eigen::VectorXd& b) const {
  last_iterations_ = 0;
  if (direct_) return direct_->ldlt.solve(b);

  const auto m = b.size();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  const double bnorm = std::sqrt(simd::dot(view(b), view(b)));
  if (bnorm == 0.0) return x;

  Eigen::VectorXd inv_diag(m);
  for (Eigen::Index i = 0; i < m; ++i) inv_diag[i] = 1.0 / diag_[i];
  Eigen::VectorXd r = b;
  Eigen::VectorXd z = r.cwiseProduct(inv_diag);
  Eigen::VectorXd p = z;
  Eigen::VectorXd q(m);
  double rz = simd::dot(view(r), view(z));
  const std::size_t max_iter = options_.cg_max_iterations
                                   ? options_.cg_max_iterations
                                   : 10 * static_cast<std::size_t>(m) + 100;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    simd::laplacian_spmv(offsets_, cols_, weights_, diag_, view(p), view(q));
    const double pq = simd::dot(view(p), view(q));
    if (!(pq > 0.0)) throw NumericalError("conjugate gradients broke down (p.Ap <= 0)");
    const double alpha = rz / pq;
    simd::axpy(alpha, view(p), view(x));
    simd::axpy(-alpha, view(q), view(r));
    if (std::sqrt(simd::dot(view(r), view(r))) <= options_.cg_relative_tolerance * bnorm) {
      last_iterations_ = it;
      return x;
    }
    z = r.cwiseProduct(inv_diag);
    const double rz_next = simd::dot(view(r), view(z));
    simd::xpby(view(z), rz_next / rz, view(p));
    rz = rz_next;
  }
  std::ostringstream msg;
  msg << "conjugate gradients did not converge in " << max_iter << " iterations";
  throw NumericalError(msg.str());
}

VertexFunction PinnedLaplacian::solve(const VertexFunction& rhs,
                                      const VertexFunction* boundary) const {
  if (static_cast<std::size_t>(rhs.size()) != n_)
    throw InputError("right-hand side does not match the network size");
  if (boundary && static_cast<std::size_t>(boundary->size()) != n_)
    throw InputError("boundary values do not match the network size");

  const auto m = static_cast<Eigen::Index>(free_.size());
  Eigen::VectorXd b(m);
  for (Eigen::Index r = 0; r < m; ++r) b[r] = rhs[free_[r]];
  if (boundary)
    for (const auto& c : couplings_) b[c.row] += c.conductance * (*boundary)[c.vertex];

  VertexFunction u = VertexFunction::Zero(static_cast<Eigen::Index>(n_));
  if (boundary)
    for (auto p : pinned_) u[p] = (*boundary)[p];
  if (m == 0) return u;
  const Eigen::VectorXd x = solve_reduced(b);
  for (Eigen::Index r = 0; r < m; ++r) u[free_[r]] = x[r];
  return u;
}

namespace {

std::vector<VertexId> grounding_vertex(const Network& net) {
  return {net.ground().value_or(net.origin())};
}

}  // namespace

GroundedSolver::GroundedSolver(const Network& net, SolverOptions options)
    : net_(&net), laplacian_(net, grounding_vertex(net), options) {}

VertexFunction GroundedSolver::solve(const VertexFunction& rhs, Gauge gauge) const {
  require_function_on(*net_, rhs, "solve_grounded");
  if (!net_->ground()) {
    const double total = rhs.sum();
    const double scale = std::max(1.0, rhs.cwiseAbs().sum());
    if (std::abs(total) > 1e-10 * scale)
      throw InputError("inconsistent right-hand side: sums to " + std::to_string(total) +
                       " on a network without a ground vertex");
  }
  VertexFunction u = laplacian_.solve(rhs);
  switch (gauge) {
    case Gauge::origin:
      u.array() -= u[net_->origin().value];
      break;
    case Gauge::ground:
      if (!net_->ground()) throw InputError("ground gauge requested but the network has no ground");
      break;
  }
  return u;
}

VertexFunction solve_grounded(const Network& net, const VertexFunction& rhs, Gauge gauge,
                              SolverOptions options) {
  return GroundedSolver(net, options).solve(rhs, gauge);
}

std::vector<EnergyVector> solve_dipoles(const Network& net, std::span<const VertexId> xs,
                                        SolverOptions options) {
  for (VertexId x : xs)
    if (!net.contains(x)) throw InputError("solve_dipole: unknown vertex");
  GroundedSolver solver(net, options);
  std::vector<EnergyVector> out;
  out.reserve(xs.size());
  const VertexFunction origin = dirac(net, net.origin());
  for (VertexId x : xs) {
    if (x == net.origin()) {
      out.push_back(to_energy_vector(net, VertexFunction::Zero(origin.size())));
      continue;
    }
    out.push_back(to_energy_vector(net, solver.solve(dirac(net, x) - origin)));
  }
  return out;
}

EnergyVector solve_dipole(const Network& net, VertexId x, SolverOptions options) {
  const VertexId xs[] = {x};
  return std::move(solve_dipoles(net, xs, options).front());
}

std::vector<VertexFunction> solve_monopoles(const Network& truncation,
                                            std::span<const VertexId> xs,
                                            SolverOptions options) {
  if (!truncation.ground())
    throw InputError("monopoles need a ground vertex (finite networks carry none)");
  GroundedSolver solver(truncation, options);
  std::vector<VertexFunction> out;
  out.reserve(xs.size());
  for (VertexId x : xs) {
    if (!truncation.contains(x) || truncation.is_ground(x))
      throw InputError("monopole vertex must be a non-ground vertex of the truncation");
    out.push_back(solver.solve(dirac(truncation, x), Gauge::ground));
  }
  return out;
}

VertexFunction interior_laplacian(const Network& net, const VertexFunction& u) {
  VertexFunction lap = laplacian_apply(net, u);
  if (auto g = net.ground()) lap[g->value] = 0.0;
  return lap;
}

double aitken_limit(std::span<const ConvergenceLevel> levels) {
  if (levels.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double c = levels.back().value;
  if (levels.size() < 3) return c;
  const double b = levels[levels.size() - 2].value;
  const double a = levels[levels.size() - 3].value;
  const double d1 = b - a, d2 = c - b;
  const double denom = d2 - d1;
  if (d1 == 0.0 || denom == 0.0) return c;
  const double ratio = d2 / d1;
  if (!(ratio > 0.0 && ratio < 1.0)) return c;
  return c - d2 * d2 / denom;
}

MonopoleResult solve_monopole(const Exhaustion& ex, const std::string& vertex_label,
                              MonopoleOptions options) {
  if (options.k_max < 1) throw InputError("k_max must be >= 1");
  if (!(options.tol > 0.0)) throw InputError("tolerance must be positive");
  ex.generator().parse_label(vertex_label);

  BallGrowth growth(ex.generator_ptr());
  std::optional<MonopoleResult> result;
  ConvergenceReport report;
  report.tol = options.tol;
  for (int k = 1; k <= options.k_max; ++k) {
    growth.grow_to(k);
    Network net = growth.wired(k);
    const auto x = net.find(vertex_label);
    if (!x) continue;
    if (!net.ground())
      throw NumericalError("level " + std::to_string(k) +
                           " covers the whole network; finite networks have no monopoles");
    GroundedSolver solver(net, options.solver);
    VertexFunction w = solver.solve(dirac(net, *x), Gauge::ground);
    const double value = w[x->value] - w[net.ground()->value];
    const double e = energy(net, w);
    report.levels.push_back({k, value, e});
    EnergyVector ev = to_energy_vector(net, w);
    result.emplace(MonopoleResult{std::move(net), *x, std::move(w), std::move(ev), {}});
    const auto& lv = report.levels;
    if (lv.size() >= 2 && std::abs(lv.back().energy - lv[lv.size() - 2].energy) <= options.tol) {
      report.converged = true;
      break;
    }
  }
  if (!result)
    throw InputError("vertex '" + vertex_label + "' is not reached by level " +
                     std::to_string(options.k_max));
  report.extrapolated_limit = report.converged ? aitken_limit(report.levels)
                                               : report.levels.back().value;
  result->report = std::move(report);
  return std::move(*result);
}

VertexFunction harmonic_extension(const Network& net, std::span<const VertexId> boundary,
                                  const VertexFunction& values, SolverOptions options) {
  require_function_on(net, values, "harmonic_extension");
  PinnedLaplacian lap(net, boundary, options);
  return lap.solve(VertexFunction::Zero(values.size()), &values);
}

std::vector<VertexFunction> harmonic_space(const Network& net,
                                           std::span<const VertexId> boundary,
                                           SolverOptions options) {
  if (boundary.size() < 2) {
    if (boundary.size() == 1 && !net.contains(boundary.front()))
      throw InputError("boundary vertex is not in the network");
    return {};
  }
  PinnedLaplacian lap(net, boundary, options);
  const auto n = static_cast<Eigen::Index>(net.size());
  const VertexFunction zero = VertexFunction::Zero(n);
  std::vector<VertexFunction> basis;
  basis.reserve(boundary.size() - 1);
  for (std::size_t i = 1; i < boundary.size(); ++i) {
    VertexFunction data = VertexFunction::Zero(n);
    data[boundary[i].value] = 1.0;
    VertexFunction h = lap.solve(zero, &data);
    h.array() -= h[net.origin().value];
    basis.push_back(std::move(h));
  }
  return basis;
}

RoydenParts royden_project(const Network& net, std::span<const VertexId> boundary,
                           const EnergyVector& u, SolverOptions options) {
  require_function_on(net, u.rep(), "royden_project");
  const auto basis = harmonic_space(net, boundary, options);
  RoydenParts parts;
  if (basis.empty()) {
    parts.fin = u;
    parts.harm = to_energy_vector(net, VertexFunction::Zero(u.rep().size()));
    return parts;
  }
  const GramMatrix g = gram(net, InnerKind::energy, basis);
  parts.gram_condition = condition_number(g.entries);
  if (!(parts.gram_condition <= 1e12)) {
    std::ostringstream msg;
    msg << "harmonic Gram matrix is ill-conditioned (condition estimate "
        << parts.gram_condition << ")";
    throw NumericalError(msg.str());
  }
  Eigen::VectorXd b(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) b[i] = energy_form(net, basis[i], u.rep());
  const Eigen::VectorXd alpha = g.entries.llt().solve(b);
  VertexFunction harm = VertexFunction::Zero(u.rep().size());
  for (Eigen::Index i = 0; i < g.size(); ++i) harm += alpha[i] * basis[i];
  parts.harm = to_energy_vector(net, harm);
  parts.fin = to_energy_vector(net, u.rep() - harm);
  return parts;
}

double effective_resistance(const Network& net, VertexId x, VertexId y, SolverOptions options) {
  if (!net.contains(x) || !net.contains(y))
    throw InputError("effective_resistance: unknown vertex");
  if (x == y) return 0.0;
  const VertexFunction v = solve_grounded(net, dirac(net, x) - dirac(net, y), Gauge::origin, options);
  return v[x.value] - v[y.value];
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::transient: return "transient";
    case Verdict::recurrent: return "recurrent";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

TransienceResult transience_probe(const Exhaustion& ex, TransienceOptions options) {
  if (options.k_max < 1) throw InputError("k_max must be >= 1");
  if (!(options.tol > 0.0)) throw InputError("tolerance must be positive");
  TransienceResult result;
  auto& report = result.report;
  report.tol = options.tol;

  BallGrowth growth(ex.generator_ptr());
  for (int k = 1; k <= options.k_max; ++k) {
    growth.grow_to(k);
    const Network net = growth.wired(k);
    if (!net.ground())
      throw InputError("generator '" + ex.generator().name() + "' is finite (level " +
                       std::to_string(k) + " has no exterior)");
    GroundedSolver solver(net, options.solver);
    const VertexFunction w = solver.solve(dirac(net, net.origin()), Gauge::ground);
    report.levels.push_back({k, w[net.origin().value], energy(net, w)});

    const auto& lv = report.levels;
    const std::size_t m = lv.size();
    if (m >= 2 && std::abs(lv[m - 1].value - lv[m - 2].value) <= options.tol) {
      result.verdict = Verdict::transient;
      report.converged = true;
      break;
    }
    if (m >= 3 && lv[m - 1].value > options.divergence_factor * lv.front().value) {
      const double inc1 = lv[m - 1].value - lv[m - 2].value;
      const double inc0 = lv[m - 2].value - lv[m - 3].value;
      if (inc0 > 0.0 && inc1 >= inc0 * (1.0 - 1e-9)) {
        result.verdict = Verdict::recurrent;
        break;
      }
    }
  }
  report.extrapolated_limit = report.converged ? aitken_limit(report.levels)
                                               : report.levels.back().value;
  return result;
}

}  // namespace netpair
