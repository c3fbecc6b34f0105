#include "netpair/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <utility>

#include "netpair/error.hpp"

namespace netpair::io {
namespace {

std::string vertex_id(const json& v, const char* where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InputError(std::string(where) + ": vertex ids must be strings or integers");
}

void csv_field(std::ostream& out, const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char ch : s) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

void write_labelled_matrix(std::ostream& out, const std::vector<std::string>& rows,
                           const std::vector<std::string>& cols, const Eigen::MatrixXd& m) {
  const auto precision = out.precision(17);
  out << "label";
  for (const auto& c : cols) {
    out << ',';
    csv_field(out, c);
  }
  out << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    csv_field(out, rows[i]);
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << ',' << m(i, j);
    out << '\n';
  }
  out.precision(precision);
}

}  // namespace

Network graph_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("graph: document must be a JSON object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw InputError("graph: missing \"vertices\" array");
  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw InputError("graph: missing \"edges\" array");

  NetworkBuilder builder;
  std::set<std::string> listed;
  for (const auto& v : doc["vertices"]) {
    std::string id = vertex_id(v, "graph");
    listed.insert(id);
    builder.add_vertex(std::move(id));
  }
  if (builder.size() == 0) throw InputError("graph: no vertices");
  const auto known = [&](const json& v, const char* where) {
    std::string id = vertex_id(v, where);
    if (!listed.count(id)) throw InputError(std::string(where) + ": unknown vertex '" + id + "'");
    return builder.vertex(id);
  };

  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& e : doc["edges"]) {
    if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("c"))
      throw InputError("graph: every edge needs \"u\", \"v\" and \"c\"");
    std::string u = vertex_id(e["u"], "graph edge");
    std::string v = vertex_id(e["v"], "graph edge");
    if (!e["c"].is_number()) throw InputError("graph: conductance must be a number");
    const double c = e["c"].get<double>();
    auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    if (!seen.insert(key).second)
      throw InputError("graph: duplicate edge " + key.first + "-" + key.second);
    builder.add_edge(known(e["u"], "graph edge"), known(e["v"], "graph edge"), c);
  }
  if (doc.contains("origin")) builder.set_origin(known(doc["origin"], "graph origin"));
  if (doc.contains("ground") && !doc["ground"].is_null())
    builder.set_ground(known(doc["ground"], "graph ground"));
  return std::move(builder).build();
}

json graph_to_json(const Network& net) {
  json doc;
  doc["vertices"] = net.labels();
  doc["origin"] = net.label(net.origin());
  if (auto g = net.ground()) doc["ground"] = net.label(*g);
  json edges = json::array();
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const Edge edge = net.edge(e);
    edges.push_back({{"u", net.label(VertexId{edge.tail})},
                     {"v", net.label(VertexId{edge.head})},
                     {"c", edge.conductance}});
  }
  doc["edges"] = std::move(edges);
  return doc;
}

json read_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_json(in);
}

Network read_graph(std::istream& in) {
  const json doc = read_json(in);
  try {
    return graph_from_json(doc);
  } catch (const json::exception& e) {
    throw InputError(std::string("graph: ") + e.what());
  }
}

Network load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_graph(in);
}

void write_graph(std::ostream& out, const Network& net) { out << graph_to_json(net).dump(2) << '\n'; }

json vertex_function_to_json(const Network& net, const VertexFunction& u) {
  require_function_on(net, u, "vertex function");
  json doc = json::object();
  for (std::size_t i = 0; i < net.size(); ++i) doc[net.labels()[i]] = u[static_cast<Eigen::Index>(i)];
  return doc;
}

VertexFunction vertex_function_from_json(const Network& net, const json& doc) {
  if (!doc.is_object()) throw InputError("vertex function: expected a JSON object");
  VertexFunction u(static_cast<Eigen::Index>(net.size()));
  std::vector<char> set(net.size(), 0);
  for (const auto& [label, value] : doc.items()) {
    if (!value.is_number()) throw InputError("vertex function: value at '" + label + "' is not a number");
    const VertexId x = net.at(label);
    u[x.value] = value.get<double>();
    set[x.value] = 1;
  }
  for (std::size_t i = 0; i < net.size(); ++i)
    if (!set[i]) throw InputError("vertex function: no value for vertex '" + net.labels()[i] + "'");
  return u;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& doc) {
  if (!doc.is_array()) throw InputError("matrix: expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(doc.size());
  if (rows == 0) return Eigen::MatrixXd(0, 0);
  if (!doc[0].is_array()) throw InputError("matrix: expected an array of rows");
  const auto cols = static_cast<Eigen::Index>(doc[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = doc[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InputError("matrix: rows have different lengths");
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) throw InputError("matrix: entries must be numbers");
      m(i, j) = v.get<double>();
    }
  }
  return m;
}

Eigen::VectorXd vector_from_json(const json& doc) {
  if (!doc.is_array()) throw InputError("vector: expected an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(doc.size()));
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_number()) throw InputError("vector: entries must be numbers");
    v[static_cast<Eigen::Index>(i)] = doc[i].get<double>();
  }
  return v;
}

void write_gram_csv(std::ostream& out, const GramMatrix& g) {
  write_labelled_matrix(out, g.labels, g.labels, g.entries);
}

json gram_to_json(const GramMatrix& g) {
  return {{"labels", g.labels}, {"entries", matrix_to_json(g.entries)}};
}

void write_linop_csv(std::ostream& out, const LinOp& a) {
  write_labelled_matrix(out, a.codomain().labels(), a.domain().labels(), a.matrix());
}

json linop_to_json(const LinOp& a) {
  return {{"domain", {{"labels", a.domain().labels()}, {"gram", matrix_to_json(a.domain().gram())}}},
          {"codomain",
           {{"labels", a.codomain().labels()}, {"gram", matrix_to_json(a.codomain().gram())}}},
          {"matrix", matrix_to_json(a.matrix())}};
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report) {
  const auto precision = out.precision(17);
  out << "k,value,energy\n";
  for (const auto& l : report.levels) out << l.k << ',' << l.value << ',' << l.energy << '\n';
  out.precision(precision);
}

json convergence_to_json(const ConvergenceReport& report) {
  json levels = json::array();
  for (const auto& l : report.levels)
    levels.push_back({{"k", l.k}, {"value", l.value}, {"energy", l.energy}});
  return {{"levels", std::move(levels)},
          {"extrapolated_limit", report.extrapolated_limit},
          {"converged", report.converged},
          {"tol", report.tol}};
}

json verdict_to_json(const TransienceResult& result) {
  json doc = convergence_to_json(result.report);
  doc["verdict"] = to_string(result.verdict);
  return doc;
}

json spectral_measure_to_json(const SpectralMeasure& measure) {
  json atoms = json::array();
  for (const auto& a : measure.atoms) atoms.push_back({{"value", a.value}, {"weight", a.weight}});
  return atoms;
}

}  // namespace netpair::io
