#include "netpair/network.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "netpair/error.hpp"
#include "netpair/simd/kernels.hpp"

namespace netpair {

struct Network::LabelIndex {
  std::once_flag once;
  std::unordered_map<std::string_view, std::int32_t> map;
};

// The label index holds views into labels_, so copies rebuild their own.
Network::Network(const Network& other)
    : labels_(other.labels_),
      origin_(other.origin_),
      ground_(other.ground_),
      tail_(other.tail_),
      head_(other.head_),
      conductance_(other.conductance_),
      offsets_(other.offsets_),
      targets_(other.targets_),
      weights_(other.weights_),
      degree_(other.degree_),
      index_(std::make_shared<LabelIndex>()) {}

Network& Network::operator=(const Network& other) {
  if (this != &other) *this = Network(other);
  return *this;
}

const std::string& Network::label(VertexId x) const {
  if (!contains(x))
    throw InputError("unknown vertex id " + std::to_string(x.value));
  return labels_[x.value];
}

std::optional<VertexId> Network::find(std::string_view label) const {
  std::call_once(index_->once, [this] {
    index_->map.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i)
      index_->map.emplace(labels_[i], static_cast<std::int32_t>(i));
  });
  auto it = index_->map.find(label);
  if (it == index_->map.end()) return std::nullopt;
  return VertexId{it->second};
}

VertexId Network::at(std::string_view label) const {
  if (auto x = find(label)) return *x;
  throw InputError("unknown vertex '" + std::string(label) + "'");
}

double Network::net_conductance(VertexId x) const {
  if (!contains(x))
    throw InputError("unknown vertex id " + std::to_string(x.value));
  return degree_[x.value];
}

double Network::conductance(VertexId x, VertexId y) const {
  if (!contains(x) || !contains(y))
    throw InputError("unknown vertex id in conductance lookup");
  for (std::int32_t j = offsets_[x.value]; j < offsets_[x.value + 1]; ++j)
    if (targets_[j] == y.value) return weights_[j];
  return 0.0;
}

std::vector<VertexId> Network::interior_vertices() const {
  std::vector<VertexId> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    VertexId x{static_cast<std::int32_t>(i)};
    if (!is_ground(x)) out.push_back(x);
  }
  return out;
}

VertexId NetworkBuilder::add_vertex(std::string label) {
  const auto id = static_cast<std::int32_t>(labels_.size());
  if (index_labels_) {
    auto [it, inserted] = lookup_.emplace(label, id);
    if (!inserted) throw InputError("duplicate vertex label '" + label + "'");
  }
  labels_.push_back(std::move(label));
  return VertexId{id};
}

VertexId NetworkBuilder::vertex(std::string_view label) {
  if (!index_labels_)
    throw std::logic_error("NetworkBuilder::vertex needs a label index");
  if (auto it = lookup_.find(std::string(label)); it != lookup_.end())
    return VertexId{it->second};
  return add_vertex(std::string(label));
}

void NetworkBuilder::add_edge(VertexId x, VertexId y, double conductance) {
  const auto n = static_cast<std::int32_t>(labels_.size());
  if (x.value < 0 || x.value >= n || y.value < 0 || y.value >= n)
    throw InputError("edge refers to an unknown vertex");
  if (x == y)
    throw InputError("self-loop at vertex '" + labels_[x.value] +
                     "' (c_xx must be 0)");
  if (!std::isfinite(conductance) || conductance <= 0.0)
    throw InputError("conductance between '" + labels_[x.value] + "' and '" +
                     labels_[y.value] + "' must be positive and finite");
  edges_.push_back({std::min(x.value, y.value), std::max(x.value, y.value),
                    conductance});
}

void NetworkBuilder::add_edge(std::string_view x, std::string_view y,
                              double conductance) {
  // Sequenced so that new vertices are numbered in reading order.
  const VertexId vx = vertex(x);
  const VertexId vy = vertex(y);
  add_edge(vx, vy, conductance);
}

void NetworkBuilder::set_origin(VertexId x) {
  if (x.value < 0 || static_cast<std::size_t>(x.value) >= labels_.size())
    throw InputError("origin is not a vertex of the network");
  origin_ = x;
}

void NetworkBuilder::set_ground(VertexId x) {
  if (x.value < 0 || static_cast<std::size_t>(x.value) >= labels_.size())
    throw InputError("ground is not a vertex of the network");
  ground_ = x;
}

void NetworkBuilder::reserve(std::size_t vertices, std::size_t edges) {
  labels_.reserve(vertices);
  edges_.reserve(edges);
  if (index_labels_) lookup_.reserve(vertices);
}

Network NetworkBuilder::build() && {
  if (labels_.empty()) throw InputError("network has no vertices");
  if (labels_.size() > static_cast<std::size_t>(INT32_MAX / 2))
    throw InputError("network too large");

  Network net;
  const std::size_t n = labels_.size();
  net.labels_ = std::move(labels_);
  net.origin_ = origin_.value_or(VertexId{0});
  net.ground_ = ground_;
  if (net.ground_ && *net.ground_ == net.origin_)
    throw InputError("the ground vertex cannot be the origin");

  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
  });
  for (const Edge& e : edges_) {
    if (!net.tail_.empty() && net.tail_.back() == e.tail &&
        net.head_.back() == e.head) {
      net.conductance_.back() += e.conductance;
      continue;
    }
    net.tail_.push_back(e.tail);
    net.head_.push_back(e.head);
    net.conductance_.push_back(e.conductance);
  }
  edges_.clear();
  edges_.shrink_to_fit();

  std::vector<std::int32_t> count(n + 1, 0);
  for (std::size_t e = 0; e < net.tail_.size(); ++e) {
    ++count[net.tail_[e] + 1];
    ++count[net.head_[e] + 1];
  }
  for (std::size_t i = 0; i < n; ++i) count[i + 1] += count[i];
  net.offsets_ = count;
  net.targets_.resize(count[n]);
  net.weights_.resize(count[n]);
  net.degree_.assign(n, 0.0);
  for (std::size_t e = 0; e < net.tail_.size(); ++e) {
    const auto a = net.tail_[e], b = net.head_[e];
    const double c = net.conductance_[e];
    net.targets_[count[a]] = b;
    net.weights_[count[a]++] = c;
    net.targets_[count[b]] = a;
    net.weights_[count[b]++] = c;
    net.degree_[a] += c;
    net.degree_[b] += c;
  }

  // Connectivity by breadth-first search from the origin.
  std::vector<char> seen(n, 0);
  std::vector<std::int32_t> queue{net.origin_.value};
  seen[net.origin_.value] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto x = queue[head];
    for (auto j = net.offsets_[x]; j < net.offsets_[x + 1]; ++j) {
      const auto y = net.targets_[j];
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  if (queue.size() != n) {
    const auto it = std::find(seen.begin(), seen.end(), 0);
    throw InputError("network is not connected: vertex '" +
                     net.labels_[it - seen.begin()] +
                     "' is unreachable from the origin");
  }

  net.index_ = std::make_shared<Network::LabelIndex>();
  lookup_.clear();
  return net;
}

double net_conductance(const Network& net, VertexId x) {
  return net.net_conductance(x);
}

void require_function_on(const Network& net, const VertexFunction& u,
                         std::string_view what) {
  if (static_cast<std::size_t>(u.size()) != net.size())
    throw InputError(std::string(what) + ": function has " +
                     std::to_string(u.size()) + " values but the network has " +
                     std::to_string(net.size()) + " vertices");
}

VertexFunction laplacian_apply(const Network& net, const VertexFunction& u) {
  require_function_on(net, u, "laplacian_apply");
  VertexFunction out(u.size());
  simd::laplacian_spmv(net.adjacency_offsets(), net.adjacency_targets(),
                       net.adjacency_weights(), net.net_conductances(),
                       std::span<const double>(u.data(), u.size()),
                       std::span<double>(out.data(), out.size()));
  return out;
}

bool is_harmonic(const Network& net, const VertexFunction& u, double tol) {
  const auto interior = net.interior_vertices();
  return is_harmonic_on(net, u, interior, tol);
}

bool is_harmonic_on(const Network& net, const VertexFunction& u,
                    std::span<const VertexId> vertices, double tol) {
  if (!(tol > 0.0)) throw InputError("is_harmonic: tolerance must be positive");
  const VertexFunction lap = laplacian_apply(net, u);
  for (VertexId x : vertices) {
    if (!net.contains(x)) throw InputError("is_harmonic: unknown vertex");
    if (std::abs(lap[x.value]) > tol) return false;
  }
  return true;
}

Eigen::MatrixXd laplacian_matrix(const Network& net) {
  const auto n = static_cast<Eigen::Index>(net.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const Edge edge = net.edge(e);
    m(edge.tail, edge.tail) += edge.conductance;
    m(edge.head, edge.head) += edge.conductance;
    m(edge.tail, edge.head) -= edge.conductance;
    m(edge.head, edge.tail) -= edge.conductance;
  }
  return m;
}

}  // namespace netpair
