#pragma once

// Resistance networks: connected, locally finite, weighted undirected graphs
// with a distinguished origin vertex, plus the pointwise network Laplacian.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace netpair {

/// Index into a Network's vertex table.
struct VertexId {
  std::int32_t value = 0;
  constexpr auto operator<=>(const VertexId&) const = default;
};

/// Real-valued function on the vertices of one network, indexed by VertexId.
using VertexFunction = Eigen::VectorXd;

/// One undirected edge. Stored once with tail < head.
struct Edge {
  std::int32_t tail;
  std::int32_t head;
  double conductance;
};

class Network {
 public:
  Network(const Network& other);
  Network& operator=(const Network& other);
  Network(Network&&) noexcept = default;
  Network& operator=(Network&&) noexcept = default;

  std::size_t size() const { return labels_.size(); }
  std::size_t edge_count() const { return conductance_.size(); }

  VertexId origin() const { return origin_; }

  /// Grounded vertex of a wired truncation, if any.
  std::optional<VertexId> ground() const { return ground_; }
  bool is_ground(VertexId x) const { return ground_ && *ground_ == x; }

  const std::string& label(VertexId x) const;
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<VertexId> find(std::string_view label) const;
  /// Like find() but throws InputError for unknown labels.
  VertexId at(std::string_view label) const;

  bool contains(VertexId x) const {
    return x.value >= 0 && static_cast<std::size_t>(x.value) < size();
  }

  /// c(x) = sum of c_xy over neighbors y. Throws InputError for unknown x.
  double net_conductance(VertexId x) const;

  /// Conductance between x and y (0 when not adjacent).
  double conductance(VertexId x, VertexId y) const;

  Edge edge(std::size_t e) const {
    return {tail_[e], head_[e], conductance_[e]};
  }

  // Structure-of-arrays edge list (tail < head).
  std::span<const std::int32_t> edge_tails() const { return tail_; }
  std::span<const std::int32_t> edge_heads() const { return head_; }
  std::span<const double> edge_conductances() const { return conductance_; }

  // Symmetric CSR adjacency; row x lists every neighbor of x.
  std::span<const std::int32_t> adjacency_offsets() const { return offsets_; }
  std::span<const std::int32_t> adjacency_targets() const { return targets_; }
  std::span<const double> adjacency_weights() const { return weights_; }
  std::span<const double> net_conductances() const { return degree_; }

  /// Vertex ids in increasing order, excluding the ground vertex.
  std::vector<VertexId> interior_vertices() const;

 private:
  friend class NetworkBuilder;
  Network() = default;

  struct LabelIndex;

  std::vector<std::string> labels_;
  VertexId origin_{};
  std::optional<VertexId> ground_;
  std::vector<std::int32_t> tail_;
  std::vector<std::int32_t> head_;
  std::vector<double> conductance_;
  std::vector<std::int32_t> offsets_;
  std::vector<std::int32_t> targets_;
  std::vector<double> weights_;
  std::vector<double> degree_;
  std::shared_ptr<LabelIndex> index_;
};

/// Accumulates vertices and edges, then validates them into a Network.
///
/// Repeated edges between the same pair are merged by summing conductances
/// (parallel resistors). build() rejects self-loops, non-positive or
/// non-finite conductances, and disconnected graphs.
class NetworkBuilder {
 public:
  NetworkBuilder() = default;

  /// With index_labels == false the builder keeps no label table: add_vertex
  /// does not check for duplicates and vertex(label) is unavailable. Used by
  /// generators that produce unique labels by construction.
  explicit NetworkBuilder(bool index_labels) : index_labels_(index_labels) {}

  /// Throws InputError if the label is already present.
  VertexId add_vertex(std::string label);
  /// Returns the existing vertex with this label or adds a new one.
  VertexId vertex(std::string_view label);

  void add_edge(VertexId x, VertexId y, double conductance);
  void add_edge(std::string_view x, std::string_view y, double conductance);

  void set_origin(VertexId x);
  void set_ground(VertexId x);

  std::size_t size() const { return labels_.size(); }

  void reserve(std::size_t vertices, std::size_t edges);

  /// Consumes the builder. Origin defaults to the first vertex.
  Network build() &&;

 private:
  bool index_labels_ = true;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::optional<VertexId> origin_;
  std::optional<VertexId> ground_;
  std::unordered_map<std::string, std::int32_t> lookup_;
};

double net_conductance(const Network& net, VertexId x);

/// (Delta u)(x) = sum_{y ~ x} c_xy (u(x) - u(y)).
VertexFunction laplacian_apply(const Network& net, const VertexFunction& u);

/// max |Delta u(x)| <= tol over every vertex that is not the ground vertex.
bool is_harmonic(const Network& net, const VertexFunction& u, double tol);

/// Same test restricted to an explicit set of vertices.
bool is_harmonic_on(const Network& net, const VertexFunction& u,
                    std::span<const VertexId> vertices, double tol);

/// Dense graph Laplacian matrix in vertex-id order.
Eigen::MatrixXd laplacian_matrix(const Network& net);

/// Throws InputError unless u has one value per vertex of net.
void require_function_on(const Network& net, const VertexFunction& u,
                         std::string_view what);

}  // namespace netpair
