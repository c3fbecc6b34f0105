// netpair: command-line front end.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>

#include "netpair/energy.hpp"
#include "netpair/error.hpp"
#include "netpair/generators.hpp"
#include "netpair/io.hpp"
#include "netpair/measures.hpp"
#include "netpair/solvers.hpp"
#include "netpair/sympair.hpp"
#include "netpair/verify.hpp"

namespace {

using namespace netpair;
using io::json;
using Params = std::unordered_map<std::string, std::string>;

struct Options {
  std::string graph;
  std::string generator;
  std::vector<std::string> params;
  int kmax = 30;
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "json";

  std::string vertex;
  std::string from;
  std::string to;
  std::string boundary;
  std::string function;
  std::string input;
  std::string suite = "all";
  std::optional<double> lower_bound;
  bool tol_given = false;
};

Params parse_params(const std::vector<std::string>& raw) {
  Params out;
  for (const auto& p : raw) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InputError("--param expects key=value, got '" + p + "'");
    out[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

int parse_level(const Params& params, const char* key) {
  const auto it = params.find(key);
  if (it == params.end()) throw InputError(std::string("missing parameter '") + key + "'");
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("invalid parameter ") + key + " '" + it->second + "'");
  }
}

std::shared_ptr<const Generator> infinite_generator(const Options& o) {
  if (o.generator.empty()) throw InputError("--generator is required");
  return make_generator(o.generator, parse_params(o.params));
}

// A finite network from --graph, a finite generator, or a truncation of an
// infinite generator when --param k=K is given.
Network finite_network(const Options& o) {
  if (!o.graph.empty()) {
    if (!o.generator.empty()) throw InputError("give either --graph or --generator, not both");
    return io::load_graph(o.graph);
  }
  if (o.generator.empty()) throw InputError("--graph or --generator is required");
  const Params params = parse_params(o.params);
  if (params.count("k")) return Exhaustion(make_generator(o.generator, params)).truncate(parse_level(params, "k"));
  if (o.generator == "random") {
    std::mt19937_64 rng(o.seed);
    const double cmax = params.count("cmax") ? std::stod(params.at("cmax")) : 10.0;
    return generators::random_connected(parse_level(params, "n"), cmax, rng);
  }
  return generators::make_finite(o.generator, params);
}

void emit(const Options& o, const std::string& name, const json& doc,
          const std::function<void(std::ostream&)>& csv = {}) {
  if (o.format != "json" && o.format != "csv") throw InputError("--format must be json or csv");
  const bool as_csv = o.format == "csv" && csv;
  auto write = [&](std::ostream& out) {
    if (as_csv)
      csv(out);
    else
      out << doc.dump(2) << '\n';
  };
  if (o.out.empty()) {
    write(std::cout);
    return;
  }
  std::filesystem::create_directories(o.out);
  const auto path = std::filesystem::path(o.out) / (name + (as_csv ? ".csv" : ".json"));
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path.string());
  write(file);
  std::cout << "wrote " << path.string() << '\n';
}

VertexId vertex_or_origin(const Network& net, const std::string& label) {
  return label.empty() ? net.origin() : net.at(label);
}

void run_kernel(const Options& o) {
  const Network net = finite_network(o);
  if (o.vertex.empty()) throw InputError("--vertex is required");
  const VertexId x = net.at(o.vertex);
  const EnergyVector v = solve_dipole(net, x);
  const json doc = {{"vertex", o.vertex},
                    {"values", io::vertex_function_to_json(net, v.rep())},
                    {"energy", v.energy()}};
  emit(o, "kernel", doc, [&](std::ostream& out) {
    out.precision(17);
    out << "vertex,value\n";
    for (std::size_t i = 0; i < net.size(); ++i) out << net.labels()[i] << ',' << v.rep()[static_cast<Eigen::Index>(i)] << '\n';
  });
}

void run_monopole(const Options& o) {
  MonopoleOptions opt;
  opt.k_max = o.kmax;
  if (o.tol_given) opt.tol = o.tol;
  const Exhaustion ex(infinite_generator(o));
  const std::string label = o.vertex.empty() ? ex.generator().label(ex.generator().origin()) : o.vertex;
  const MonopoleResult r = solve_monopole(ex, label, opt);
  json doc = io::convergence_to_json(r.report);
  doc["vertex"] = label;
  doc["final_level"] = r.report.levels.back().k;
  doc["final_energy"] = r.report.levels.back().energy;
  emit(o, "monopole", doc, [&](std::ostream& out) { io::write_convergence_csv(out, r.report); });
}

void run_royden(const Options& o) {
  const Network net = finite_network(o);
  std::vector<VertexId> boundary;
  for (const auto& label : split_list(o.boundary)) boundary.push_back(net.at(label));
  VertexFunction u;
  if (!o.function.empty())
    u = io::vertex_function_from_json(net, io::load_json(o.function));
  else if (!o.vertex.empty())
    u = dirac(net, net.at(o.vertex));
  else
    throw InputError("--function or --vertex is required");
  const RoydenParts parts = royden_project(net, boundary, to_energy_vector(net, u));
  const json doc = {{"fin", io::vertex_function_to_json(net, parts.fin.rep())},
                    {"harm", io::vertex_function_to_json(net, parts.harm.rep())},
                    {"fin_energy", parts.fin.energy()},
                    {"harm_energy", parts.harm.energy()},
                    {"cross_inner", energy_inner(net, parts.fin, parts.harm)},
                    {"harmonic_dimension", boundary.size() > 1 ? boundary.size() - 1 : 0},
                    {"gram_condition", parts.gram_condition}};
  emit(o, "royden", doc, [&](std::ostream& out) {
    out.precision(17);
    out << "vertex,fin,harm\n";
    for (std::size_t i = 0; i < net.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      out << net.labels()[i] << ',' << parts.fin.rep()[k] << ',' << parts.harm.rep()[k] << '\n';
    }
  });
}

void run_resistance(const Options& o) {
  const Network net = finite_network(o);
  const VertexId x = vertex_or_origin(net, o.from.empty() ? o.vertex : o.from);
  const VertexId y = vertex_or_origin(net, o.to);
  const double r = effective_resistance(net, x, y);
  emit(o, "resistance", {{"from", net.label(x)}, {"to", net.label(y)}, {"resistance", r}});
}

void run_transience(const Options& o) {
  TransienceOptions opt;
  opt.k_max = o.kmax;
  if (o.tol_given) opt.tol = o.tol;
  const TransienceResult r = transience_probe(Exhaustion(infinite_generator(o)), opt);
  emit(o, "transience", io::verdict_to_json(r), [&](std::ostream& out) { io::write_convergence_csv(out, r.report); });
  std::cerr << "verdict: " << to_string(r.verdict) << '\n';
}

InnerSpace space_from(const json& doc, const char* key, Eigen::Index n) {
  if (!doc.contains(key)) return InnerSpace::euclidean(n);
  return InnerSpace({}, io::matrix_from_json(doc[key]));
}

void run_friedrichs(const Options& o) {
  if (o.input.empty()) throw InputError("--input is required");
  const json doc = io::load_json(o.input);
  if (!doc.contains("matrix")) throw InputError("operator file needs \"matrix\"");
  const Eigen::MatrixXd m = io::matrix_from_json(doc["matrix"]);
  const InnerSpace h = space_from(doc, "gram", m.rows());
  const LinOp a(h, h, m);
  json out;
  if (o.lower_bound) {
    out["extension"] = io::linop_to_json(semibounded_friedrichs(h, a, *o.lower_bound));
    out["lower_bound"] = *o.lower_bound;
  } else {
    const FriedrichsResult r = friedrichs_construction(h, a);
    out["extension"] = io::linop_to_json(r.extension);
    out["identity_residual"] = r.identity_residual;
    out["inclusion_norm"] = r.inclusion_norm;
    out["min_eigenvalue"] = r.min_eigenvalue;
    out["condition"] = r.condition;
    if (r.condition > 1e12) std::cerr << "warning: JJ* condition estimate " << r.condition << '\n';
  }
  emit(o, "friedrichs", out);
}

struct KreinInput {
  LinOp lambda;
  Eigen::MatrixXd g2;
  Eigen::VectorXd phi;
};

KreinInput krein_input(const Options& o) {
  if (!o.input.empty()) {
    const json doc = io::load_json(o.input);
    if (!doc.contains("gram2")) throw InputError("krein file needs \"gram2\"");
    const Eigen::MatrixXd g2 = io::matrix_from_json(doc["gram2"]);
    const InnerSpace h1 = space_from(doc, "gram1", g2.rows());
    Eigen::VectorXd phi = doc.contains("phi") ? io::vector_from_json(doc["phi"]) : Eigen::VectorXd();
    return {krein_lambda(h1, g2), g2, std::move(phi)};
  }
  const Network net = finite_network(o);
  const auto xs = net.interior_vertices();
  std::vector<VertexFunction> deltas;
  std::vector<std::string> labels;
  for (VertexId x : xs) {
    deltas.push_back(dirac(net, x));
    labels.push_back("delta_" + net.label(x));
  }
  const GramMatrix g1 = gram(net, InnerKind::l2, deltas, labels);
  const GramMatrix g2 = gram(net, InnerKind::energy, deltas, labels);
  Eigen::VectorXd phi;
  if (!o.vertex.empty()) {
    phi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(xs.size()));
    const VertexId x = net.at(o.vertex);
    const auto it = std::find(xs.begin(), xs.end(), x);
    if (it == xs.end()) throw InputError("--vertex must not be the ground vertex");
    phi[it - xs.begin()] = 1.0;
  }
  return {krein_lambda(InnerSpace(g1), g2.entries), g2.entries, std::move(phi)};
}

void run_krein(const Options& o) {
  const KreinInput k = krein_input(o);
  json doc = {{"lambda", io::linop_to_json(k.lambda)}};
  if (k.phi.size()) {
    doc["identity_lhs"] = k.lambda.domain().inner(k.phi, k.lambda.apply(k.phi));
    doc["identity_rhs"] = k.phi.dot(k.g2 * k.phi);
    doc["dstar_constant"] = dstar_constant(k.lambda.domain(), k.g2, k.phi);
  }
  emit(o, "krein", doc, [&](std::ostream& out) { io::write_linop_csv(out, k.lambda); });
}

void run_spectral(const Options& o) {
  const KreinInput k = krein_input(o);
  if (!k.phi.size()) throw InputError("a vector is required (\"phi\" in --input, or --vertex)");
  const SpectralMeasure mu = spectral_measure(k.lambda, k.phi);
  const json doc = {{"atoms", io::spectral_measure_to_json(mu)},
                    {"mass", mu.mass()},
                    {"moment", mu.moment()},
                    {"norm1_squared", k.lambda.domain().inner(k.phi, k.phi)},
                    {"norm2_squared", k.phi.dot(k.g2 * k.phi)}};
  emit(o, "spectral", doc, [&](std::ostream& out) {
    out.precision(17);
    out << "value,weight\n";
    for (const auto& a : mu.atoms) out << a.value << ',' << a.weight << '\n';
  });
}

void run_kl(const Options& o) {
  const Network net = finite_network(o);
  const NetworkPair pair = network_kl(net);
  const NetworkExtension ext = krein_network_extension(pair);
  const SymmetricPairReport report = verify_pair(pair.k, pair.l, std::max(o.tol, 1e-10));
  const SpectrumComparison spectra = compare_pair_spectra(pair.k, adjoint(pair.k));
  const json doc = {{"K", io::linop_to_json(pair.k)},
                    {"L", io::linop_to_json(pair.l)},
                    {"KK", io::linop_to_json(ext.kk)},
                    {"LL", io::linop_to_json(ext.ll)},
                    {"pair_residual", report.residual},
                    {"is_pair", report.is_pair},
                    {"kk_laplacian_deviation",
                     net.ground() ? json(nullptr)
                                  : json((ext.kk.matrix() - laplacian_matrix(net)).cwiseAbs().maxCoeff())},
                    {"spectra_match", spectra.match},
                    {"spectra_deviation", spectra.max_deviation}};
  emit(o, "kl", doc, [&](std::ostream& out) { io::write_linop_csv(out, ext.kk); });
  if (!report.is_pair) throw NumericalError("K and L do not form a symmetric pair");
}

void run_cantor(const Options& o) {
  const Params params = parse_params(o.params);
  const int last = params.count("n") ? parse_level(params, "n") : 12;
  const int first = params.count("from") ? parse_level(params, "from") : 0;
  const auto levels = cantor_sweep(first, last);
  json rows = json::array();
  for (const auto& l : levels) rows.push_back({{"n", l.n}, {"C_n", l.constant}, {"predicted", l.predicted}});
  json doc = {{"levels", rows}};
  if (levels.size() >= 2) doc["log_slope"] = cantor_log_slope(levels);
  doc["predicted_slope"] = 0.5 * std::log(1.5);
  emit(o, "cantor", doc, [&](std::ostream& out) {
    out.precision(17);
    out << "n,C_n,predicted\n";
    for (const auto& l : levels) out << l.n << ',' << l.constant << ',' << l.predicted << '\n';
  });
}

DiscreteMeasure measure_from(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_object())
    throw InputError(std::string("measure file needs an object \"") + key + "\"");
  std::vector<std::string> pts;
  std::vector<double> w;
  for (const auto& [k, v] : doc[key].items()) {
    if (!v.is_number()) throw InputError("measure weights must be numbers");
    pts.push_back(k);
    w.push_back(v.get<double>());
  }
  return DiscreteMeasure(std::move(pts), std::move(w));
}

void run_rn(const Options& o) {
  if (o.input.empty()) throw InputError("--input is required");
  const json doc = io::load_json(o.input);
  const DiscreteMeasure mu1 = measure_from(doc, "mu1");
  const LinOp lambda = rn_lambda(mu1, measure_from(doc, "mu2"));
  json density = json::object();
  for (std::size_t i = 0; i < mu1.size(); ++i)
    density[mu1.support()[i]] = lambda.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
  emit(o, "rn", {{"lambda", io::linop_to_json(lambda)}, {"density", density}},
       [&](std::ostream& out) { io::write_linop_csv(out, lambda); });
}

int run_verify(const Options& o) {
  VerifyOptions opt;
  opt.suite = o.suite;
  opt.seed = o.seed;
  const auto results = run_verification(opt);
  json checks = json::array();
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << "  residual=" << r.residual
              << " tol=" << r.tolerance << "  [" << r.anchor << "]";
    if (!r.detail.empty()) std::cout << "  " << r.detail;
    std::cout << '\n';
    failed += !r.passed;
    checks.push_back({{"id", r.id},
                      {"suite", r.suite},
                      {"anchor", r.anchor},
                      {"residual", std::isfinite(r.residual) ? json(r.residual) : json(nullptr)},
                      {"tolerance", r.tolerance},
                      {"passed", r.passed},
                      {"detail", r.detail}});
  }
  std::cout << results.size() - failed << '/' << results.size() << " checks passed\n";
  if (!o.out.empty()) {
    Options quiet = o;
    quiet.format = "json";
    emit(quiet, "verify", {{"seed", o.seed}, {"suite", o.suite}, {"checks", checks}});
  }
  return failed ? 1 : 0;
}

void run_generate(const Options& o) {
  const Network net = finite_network(o);
  emit(o, "graph", io::graph_to_json(net));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resistance networks, energy kernels and symmetric operator pairs"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--graph", o.graph, "graph JSON file");
  app.add_option("--generator", o.generator, "generator name");
  app.add_option("--param", o.params, "generator parameter key=value (repeatable)");
  app.add_option("--kmax", o.kmax, "maximum exhaustion level")->check(CLI::PositiveNumber);
  auto* tol = app.add_option("--tol", o.tol, "tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::function<int()> action;
  auto verb = [&](const char* name, const char* help, auto fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&, fn] { action = [&, fn] { fn(o); return 0; }; });
    return sub;
  };
  auto* kernel = verb("kernel", "energy kernel element v_x", run_kernel);
  kernel->add_option("--vertex", o.vertex, "vertex label")->required();
  verb("monopole", "monopole by wired exhaustion", run_monopole)->add_option("--vertex", o.vertex, "vertex label");
  auto* royden = verb("royden", "Royden decomposition on a finite network", run_royden);
  royden->add_option("--boundary", o.boundary, "comma-separated boundary labels");
  royden->add_option("--function", o.function, "vertex function JSON file");
  royden->add_option("--vertex", o.vertex, "decompose the Dirac function of this vertex");
  auto* resistance = verb("resistance", "effective resistance", run_resistance);
  resistance->add_option("--from", o.from, "first vertex (default origin)");
  resistance->add_option("--to", o.to, "second vertex (default origin)");
  verb("transience", "transience probe", run_transience);
  verb("friedrichs", "Friedrichs extension of an operator file", run_friedrichs)
      ->add_option("--input", o.input, "operator JSON {gram, matrix}");
  app.get_subcommand("friedrichs")->add_option("--lower-bound", o.lower_bound, "semibounded lower bound");
  auto* krein = verb("krein", "Krein-type operator of two Gram matrices", run_krein);
  krein->add_option("--input", o.input, "JSON {gram1, gram2, phi}");
  krein->add_option("--vertex", o.vertex, "phi = delta_x on a network");
  auto* spectral = verb("spectral", "spectral measure of phi", run_spectral);
  spectral->add_option("--input", o.input, "JSON {gram1, gram2, phi}");
  spectral->add_option("--vertex", o.vertex, "phi = delta_x on a network");
  verb("kl", "network operators K and L", run_kl);
  verb("cantor", "Cantor divergence witness", run_cantor);
  verb("rn", "Radon-Nikodym operator", run_rn)->add_option("--input", o.input, "JSON {mu1, mu2}");
  auto* verify = app.add_subcommand("verify", "run the identity suite");
  verify->add_option("--suite", o.suite, "suite name")->check(CLI::IsMember(verify_suites()));
  verify->callback([&] { action = [&] { return run_verify(o); }; });
  verb("generate", "write a generated network as graph JSON", run_generate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  o.tol_given = tol->count() > 0;
  try {
    return action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
