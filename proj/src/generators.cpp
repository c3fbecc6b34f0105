#include "netpair/generators.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "netpair/error.hpp"

namespace netpair {
namespace {

std::int32_t parse_int(const std::string& text, const std::string& what) {
  std::int32_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw InputError("invalid " + what + " '" + text + "'");
  return value;
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError("invalid " + what + " '" + text + "'");
  }
  if (used != text.size()) throw InputError("invalid " + what + " '" + text + "'");
  return value;
}

using Params = std::unordered_map<std::string, std::string>;

int int_param(const Params& params, const std::string& key,
              std::optional<int> fallback = std::nullopt) {
  if (auto it = params.find(key); it != params.end())
    return parse_int(it->second, "parameter " + key);
  if (fallback) return *fallback;
  throw InputError("missing parameter '" + key + "'");
}

double double_param(const Params& params, const std::string& key,
                    std::optional<double> fallback = std::nullopt) {
  if (auto it = params.find(key); it != params.end())
    return parse_double(it->second, "parameter " + key);
  if (fallback) return *fallback;
  throw InputError("missing parameter '" + key + "'");
}

class IntegerLine final : public Generator {
 public:
  std::string name() const override { return "integer_line"; }
  VertexKey origin() const override { return {0, 0, 0, 0}; }
  void neighbors(const VertexKey& k, std::vector<KeyedNeighbor>& out) const override {
    out.clear();
    out.push_back({{k[0] - 1, 0, 0, 0}, 1.0});
    out.push_back({{k[0] + 1, 0, 0, 0}, 1.0});
  }
  std::string label(const VertexKey& k) const override { return std::to_string(k[0]); }
  VertexKey parse_label(const std::string& label) const override {
    return {parse_int(label, "integer-line vertex"), 0, 0, 0};
  }
  int max_level() const override { return std::numeric_limits<std::int32_t>::max() / 2; }
};

class BinaryTree final : public Generator {
 public:
  std::string name() const override { return "binary_tree"; }
  VertexKey origin() const override { return {1, 0, 0, 0}; }
  void neighbors(const VertexKey& k, std::vector<KeyedNeighbor>& out) const override {
    out.clear();
    if (k[0] > 1) out.push_back({{k[0] / 2, 0, 0, 0}, 1.0});
    out.push_back({{2 * k[0], 0, 0, 0}, 1.0});
    out.push_back({{2 * k[0] + 1, 0, 0, 0}, 1.0});
  }
  std::string label(const VertexKey& k) const override { return std::to_string(k[0]); }
  VertexKey parse_label(const std::string& label) const override {
    const auto v = parse_int(label, "binary-tree vertex");
    if (v < 1) throw InputError("binary-tree vertices are heap indices >= 1");
    return {v, 0, 0, 0};
  }
  // Children of depth-k vertices have heap index < 2^(k+2).
  int max_level() const override { return 29; }
};

class Lattice final : public Generator {
 public:
  explicit Lattice(int d) : d_(d) {
    if (d < 1 || d > 4) throw InputError("lattice dimension must be in 1..4");
  }
  std::string name() const override { return "lattice"; }
  VertexKey origin() const override { return {0, 0, 0, 0}; }
  void neighbors(const VertexKey& k, std::vector<KeyedNeighbor>& out) const override {
    out.clear();
    for (int i = 0; i < d_; ++i) {
      VertexKey lo = k, hi = k;
      --lo[i];
      ++hi[i];
      out.push_back({lo, 1.0});
      out.push_back({hi, 1.0});
    }
  }
  std::string label(const VertexKey& k) const override {
    std::string s = std::to_string(k[0]);
    for (int i = 1; i < d_; ++i) s += "," + std::to_string(k[i]);
    return s;
  }
  VertexKey parse_label(const std::string& label) const override {
    VertexKey k{0, 0, 0, 0};
    std::stringstream in(label);
    std::string part;
    int i = 0;
    while (std::getline(in, part, ',')) {
      if (i >= d_) throw InputError("too many coordinates in '" + label + "'");
      k[i++] = parse_int(part, "lattice coordinate");
    }
    if (i != d_) throw InputError("expected " + std::to_string(d_) + " coordinates in '" + label + "'");
    return k;
  }
  int max_level() const override { return std::numeric_limits<std::int32_t>::max() / 2; }

 private:
  int d_;
};

class GeometricLine final : public Generator {
 public:
  explicit GeometricLine(double r) : r_(r) {
    if (!(r > 0.0) || !std::isfinite(r))
      throw InputError("geometric_line ratio must be positive and finite");
  }
  std::string name() const override { return "geometric_line"; }
  VertexKey origin() const override { return {0, 0, 0, 0}; }
  void neighbors(const VertexKey& k, std::vector<KeyedNeighbor>& out) const override {
    out.clear();
    if (k[0] > 0) out.push_back({{k[0] - 1, 0, 0, 0}, std::pow(r_, k[0] - 1)});
    out.push_back({{k[0] + 1, 0, 0, 0}, std::pow(r_, k[0])});
  }
  std::string label(const VertexKey& k) const override { return std::to_string(k[0]); }
  VertexKey parse_label(const std::string& label) const override {
    const auto v = parse_int(label, "geometric-line vertex");
    if (v < 0) throw InputError("geometric-line vertices are >= 0");
    return {v, 0, 0, 0};
  }
  // Keep r^k inside [1e-300, 1e300].
  int max_level() const override {
    if (r_ == 1.0) return std::numeric_limits<std::int32_t>::max() / 2;
    return static_cast<int>(std::floor(300.0 * std::log(10.0) / std::abs(std::log(r_))));
  }

 private:
  double r_;
};

class FiniteGenerator final : public Generator {
 public:
  explicit FiniteGenerator(std::shared_ptr<const Network> net) : net_(std::move(net)) {
    if (!net_) throw InputError("finite generator needs a network");
  }
  std::string name() const override { return "finite"; }
  VertexKey origin() const override { return {net_->origin().value, 0, 0, 0}; }
  void neighbors(const VertexKey& k, std::vector<KeyedNeighbor>& out) const override {
    out.clear();
    const auto offsets = net_->adjacency_offsets();
    const auto targets = net_->adjacency_targets();
    const auto weights = net_->adjacency_weights();
    for (auto j = offsets[k[0]]; j < offsets[k[0] + 1]; ++j)
      out.push_back({{targets[j], 0, 0, 0}, weights[j]});
  }
  std::string label(const VertexKey& k) const override {
    return net_->label(VertexId{k[0]});
  }
  VertexKey parse_label(const std::string& label) const override {
    return {net_->at(label).value, 0, 0, 0};
  }

 private:
  std::shared_ptr<const Network> net_;
};

}  // namespace

std::size_t VertexKeyHash::operator()(const VertexKey& k) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto c : k) {
    h ^= static_cast<std::uint32_t>(c);
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

std::shared_ptr<const Generator> integer_line_generator() {
  return std::make_shared<IntegerLine>();
}
std::shared_ptr<const Generator> binary_tree_generator() {
  return std::make_shared<BinaryTree>();
}
std::shared_ptr<const Generator> lattice_generator(int dimension) {
  return std::make_shared<Lattice>(dimension);
}
std::shared_ptr<const Generator> geometric_line_generator(double ratio) {
  return std::make_shared<GeometricLine>(ratio);
}
std::shared_ptr<const Generator> finite_generator(std::shared_ptr<const Network> net) {
  return std::make_shared<FiniteGenerator>(std::move(net));
}

std::shared_ptr<const Generator> make_generator(const std::string& name,
                                                const Params& params) {
  if (name == "integer_line" || name == "z") return integer_line_generator();
  if (name == "binary_tree") return binary_tree_generator();
  if (name == "lattice") return lattice_generator(int_param(params, "d", 2));
  if (name == "geometric_line")
    return geometric_line_generator(double_param(params, "r", 2.0));
  throw InputError("unknown generator '" + name +
                   "' (expected integer_line, binary_tree, lattice, geometric_line)");
}

BallGrowth::BallGrowth(std::shared_ptr<const Generator> generator)
    : generator_(std::move(generator)) {
  if (!generator_) throw InputError("ball growth needs a generator");
  keys_.push_back(generator_->origin());
  index_.emplace(keys_.front(), 0);
  shell_end_.push_back(1);
  radius_ = 0;
}

void BallGrowth::grow_to(int radius) {
  if (radius < 0) throw InputError("truncation level must be >= 0");
  if (radius > generator_->max_level())
    throw InputError("level " + std::to_string(radius) + " exceeds what generator '" +
                     generator_->name() + "' supports (max " +
                     std::to_string(generator_->max_level()) + ")");
  std::vector<KeyedNeighbor> nbrs;
  while (radius_ < radius) {
    const std::size_t begin = radius_ == 0 ? 0 : shell_end_[radius_ - 1];
    const std::size_t end = shell_end_[radius_];
    for (std::size_t i = begin; i < end; ++i) {
      generator_->neighbors(keys_[i], nbrs);
      for (const auto& nb : nbrs) {
        if (index_.count(nb.key)) continue;
        if (keys_.size() >= kMaxVertices)
          throw NumericalError("ball of radius " + std::to_string(radius_ + 1) + " in '" +
                               generator_->name() + "' exceeds " + std::to_string(kMaxVertices) +
                               " vertices; lower --kmax or loosen --tol");
        index_.emplace(nb.key, static_cast<std::int32_t>(keys_.size()));
        keys_.push_back(nb.key);
      }
    }
    shell_end_.push_back(keys_.size());
    ++radius_;
  }
}

Network BallGrowth::wired(int radius) const {
  if (radius < 0 || radius > radius_)
    throw std::logic_error("BallGrowth::wired called before grow_to");
  const std::size_t count = shell_end_[radius];
  NetworkBuilder builder(false);
  builder.reserve(count + 1, 2 * count);
  for (std::size_t i = 0; i < count; ++i) builder.add_vertex(generator_->label(keys_[i]));

  std::vector<double> to_ground(count, 0.0);
  bool exterior = false;
  for (std::size_t i = 0; i < count; ++i) {
    generator_->neighbors(keys_[i], scratch_);
    for (const auto& nb : scratch_) {
      auto it = index_.find(nb.key);
      if (it != index_.end() && static_cast<std::size_t>(it->second) < count) {
        if (static_cast<std::size_t>(it->second) > i)
          builder.add_edge(VertexId{static_cast<std::int32_t>(i)}, VertexId{it->second},
                           nb.conductance);
      } else {
        to_ground[i] += nb.conductance;
        exterior = true;
      }
    }
  }
  if (exterior) {
    const VertexId ground = builder.add_vertex(kGroundLabel);
    for (std::size_t i = 0; i < count; ++i)
      if (to_ground[i] > 0.0)
        builder.add_edge(VertexId{static_cast<std::int32_t>(i)}, ground, to_ground[i]);
    builder.set_ground(ground);
  }
  builder.set_origin(VertexId{0});
  return std::move(builder).build();
}

Exhaustion::Exhaustion(std::shared_ptr<const Generator> generator)
    : generator_(std::move(generator)) {
  if (!generator_) throw InputError("exhaustion needs a generator");
}

Network Exhaustion::truncate(int k) const {
  BallGrowth growth(generator_);
  growth.grow_to(k);
  return growth.wired(k);
}

namespace generators {

Network path(int n) {
  if (n < 1) throw InputError("path needs n >= 1");
  NetworkBuilder b(false);
  b.reserve(n, n);
  for (int i = 0; i < n; ++i) b.add_vertex(std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) b.add_edge(VertexId{i}, VertexId{i + 1}, 1.0);
  return std::move(b).build();
}

Network cycle(int n) {
  if (n < 3) throw InputError("cycle needs n >= 3");
  NetworkBuilder b(false);
  b.reserve(n, n);
  for (int i = 0; i < n; ++i) b.add_vertex(std::to_string(i));
  for (int i = 0; i < n; ++i) b.add_edge(VertexId{i}, VertexId{(i + 1) % n}, 1.0);
  return std::move(b).build();
}

Network binary_tree(int depth) {
  if (depth < 0 || depth > 24) throw InputError("binary_tree depth must be in 0..24");
  const int n = (1 << (depth + 1)) - 1;
  NetworkBuilder b(false);
  b.reserve(n, n);
  for (int i = 1; i <= n; ++i) b.add_vertex(std::to_string(i));
  for (int i = 2; i <= n; ++i) b.add_edge(VertexId{i / 2 - 1}, VertexId{i - 1}, 1.0);
  return std::move(b).build();
}

Network lattice(int dimension, int radius) {
  if (dimension < 1 || dimension > 4) throw InputError("lattice dimension must be in 1..4");
  if (radius < 0) throw InputError("lattice radius must be >= 0");
  const int side = 2 * radius + 1;
  std::int64_t total = 1;
  for (int i = 0; i < dimension; ++i) total *= side;
  if (total > 5'000'000) throw InputError("lattice box too large");
  NetworkBuilder b(false);
  b.reserve(total, total * dimension);
  auto coords = [&](std::int64_t idx) {
    std::array<int, 4> c{0, 0, 0, 0};
    for (int i = 0; i < dimension; ++i) {
      c[i] = static_cast<int>(idx % side) - radius;
      idx /= side;
    }
    return c;
  };
  std::int32_t origin = 0;
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const auto c = coords(idx);
    std::string s = std::to_string(c[0]);
    bool zero = c[0] == 0;
    for (int i = 1; i < dimension; ++i) {
      s += "," + std::to_string(c[i]);
      zero = zero && c[i] == 0;
    }
    if (zero) origin = static_cast<std::int32_t>(idx);
    b.add_vertex(std::move(s));
  }
  std::int64_t stride = 1;
  for (int i = 0; i < dimension; ++i) {
    for (std::int64_t idx = 0; idx < total; ++idx)
      if ((idx / stride) % side != side - 1)
        b.add_edge(VertexId{static_cast<std::int32_t>(idx)},
                   VertexId{static_cast<std::int32_t>(idx + stride)}, 1.0);
    stride *= side;
  }
  b.set_origin(VertexId{origin});
  return std::move(b).build();
}

Network geometric_line(double ratio, int n) {
  if (!(ratio > 0.0) || !std::isfinite(ratio))
    throw InputError("geometric_line ratio must be positive and finite");
  if (n < 1) throw InputError("geometric_line needs n >= 1");
  NetworkBuilder b(false);
  b.reserve(n, n);
  for (int i = 0; i < n; ++i) b.add_vertex(std::to_string(i));
  for (int i = 0; i + 1 < n; ++i)
    b.add_edge(VertexId{i}, VertexId{i + 1}, std::pow(ratio, i));
  return std::move(b).build();
}

Network random_connected(int n, double max_conductance, std::mt19937_64& rng,
                         double extra_edge_probability) {
  if (n < 1) throw InputError("random network needs n >= 1");
  if (!(max_conductance > 0.0)) throw InputError("max conductance must be positive");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw_c = [&] { return max_conductance * (1.0 - unit(rng)); };  // (0, cmax]
  NetworkBuilder b(false);
  for (int i = 0; i < n; ++i) b.add_vertex(std::to_string(i));
  std::set<std::pair<int, int>> used;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    const int j = parent(rng);
    used.emplace(j, i);
    b.add_edge(VertexId{j}, VertexId{i}, draw_c());
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!used.count({i, j}) && unit(rng) < extra_edge_probability)
        b.add_edge(VertexId{i}, VertexId{j}, draw_c());
  return std::move(b).build();
}

Network make_finite(const std::string& name, const Params& params) {
  if (name == "path") return path(int_param(params, "n"));
  if (name == "cycle") return cycle(int_param(params, "n"));
  if (name == "binary_tree") return binary_tree(int_param(params, "depth"));
  if (name == "lattice") return lattice(int_param(params, "d", 2), int_param(params, "radius"));
  if (name == "geometric_line")
    return geometric_line(double_param(params, "r", 2.0), int_param(params, "n"));
  throw InputError("unknown finite generator '" + name +
                   "' (expected path, cycle, binary_tree, lattice, geometric_line)");
}

}  // namespace generators

}  // namespace netpair
