#pragma once

// JSON and CSV serialization of networks, vertex functions, Gram matrices,
// operators, convergence reports and spectral measures.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "netpair/gram.hpp"
#include "netpair/network.hpp"
#include "netpair/solvers.hpp"
#include "netpair/sympair.hpp"

namespace netpair::io {

using json = nlohmann::json;

/// Graph document: {"vertices": [...], "origin": v, "edges": [{"u", "v", "c"}]}
/// with vertex ids given as strings or integers. An optional "ground" names
/// the grounded vertex of a wired truncation. Repeated edges are rejected.
Network graph_from_json(const json& doc);
json graph_to_json(const Network& net);

Network read_graph(std::istream& in);
Network load_graph(const std::filesystem::path& path);
void write_graph(std::ostream& out, const Network& net);

/// {"label": value, ...}; reading requires a value for every vertex.
json vertex_function_to_json(const Network& net, const VertexFunction& u);
VertexFunction vertex_function_from_json(const Network& net, const json& doc);

/// Row-major nested arrays.
json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const json& doc);
Eigen::VectorXd vector_from_json(const json& doc);

/// Header "label,<labels...>" then one labelled row per basis element.
void write_gram_csv(std::ostream& out, const GramMatrix& g);
json gram_to_json(const GramMatrix& g);

/// Rows are codomain labels, columns domain labels.
void write_linop_csv(std::ostream& out, const LinOp& a);
json linop_to_json(const LinOp& a);

/// Header "k,value,energy".
void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);
json convergence_to_json(const ConvergenceReport& report);

json verdict_to_json(const TransienceResult& result);

/// [{"value": lambda, "weight": w}, ...]
json spectral_measure_to_json(const SpectralMeasure& measure);

json read_json(std::istream& in);
json load_json(const std::filesystem::path& path);

}  // namespace netpair::io
