#pragma once

// Built-in networks and wired exhaustions of infinite networks.
//
// An infinite network is never materialized. It is described by a Generator
// (a neighbor rule over canonical integer coordinates) and all numerics run
// on finite truncations produced by an Exhaustion.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "netpair/network.hpp"

namespace netpair {

/// Canonical integer coordinates of a generator vertex. Unused trailing
/// coordinates are zero.
using VertexKey = std::array<std::int32_t, 4>;

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const noexcept;
};

struct KeyedNeighbor {
  VertexKey key;
  double conductance;
};

/// Locally finite neighbor rule for a (possibly infinite) network.
class Generator {
 public:
  virtual ~Generator() = default;

  virtual std::string name() const = 0;
  virtual VertexKey origin() const = 0;

  /// Replaces `out` with the neighbors of `key` and their conductances.
  virtual void neighbors(const VertexKey& key,
                         std::vector<KeyedNeighbor>& out) const = 0;

  virtual std::string label(const VertexKey& key) const = 0;
  /// Inverse of label(); throws InputError for labels the generator does not
  /// produce.
  virtual VertexKey parse_label(const std::string& label) const = 0;

  /// Largest ball radius the generator can produce without overflowing its
  /// coordinates or conductances.
  virtual int max_level() const { return 1 << 30; }
};

/// The integer line Z with unit conductances.
std::shared_ptr<const Generator> integer_line_generator();
/// Rooted binary tree (root degree 2) with unit conductances; vertices are
/// heap indices, root 1.
std::shared_ptr<const Generator> binary_tree_generator();
/// Nearest-neighbor lattice Z^d (1 <= d <= 4) with unit conductances.
std::shared_ptr<const Generator> lattice_generator(int dimension);
/// Half-line {0, 1, 2, ...} with c_{n,n+1} = ratio^n.
std::shared_ptr<const Generator> geometric_line_generator(double ratio);
/// Wraps a finite network; balls eventually cover it.
std::shared_ptr<const Generator> finite_generator(std::shared_ptr<const Network> net);

/// Looks up a generator by name. Recognized names: integer_line (alias z),
/// binary_tree, lattice (param d), geometric_line (param r).
std::shared_ptr<const Generator> make_generator(
    const std::string& name, const std::unordered_map<std::string, std::string>& params);

/// Incrementally grows graph-distance balls around the generator origin.
class BallGrowth {
 public:
  explicit BallGrowth(std::shared_ptr<const Generator> generator);

  /// Balls larger than this are refused rather than exhausting memory.
  static constexpr std::size_t kMaxVertices = std::size_t{1} << 22;

  /// Discovers every vertex at distance <= radius. Throws NumericalError
  /// once the ball would exceed kMaxVertices.
  void grow_to(int radius);
  int radius() const { return radius_; }
  std::size_t discovered() const { return keys_.size(); }

  /// Wired truncation: the ball of the given radius plus, when any edge
  /// leaves the ball, one ground vertex (label "ground") that absorbs those
  /// edges with their conductances summed per ball vertex. Requires
  /// grow_to(radius) first.
  Network wired(int radius) const;

 private:
  std::shared_ptr<const Generator> generator_;
  std::vector<VertexKey> keys_;
  std::vector<std::size_t> shell_end_;  // keys_[0 .. shell_end_[r]) has dist <= r
  std::unordered_map<VertexKey, std::int32_t, VertexKeyHash> index_;
  int radius_ = -1;
  mutable std::vector<KeyedNeighbor> scratch_;
};

/// Exhaustion by balls of graph radius k around the origin with wired
/// (grounded) boundary.
class Exhaustion {
 public:
  explicit Exhaustion(std::shared_ptr<const Generator> generator);

  const Generator& generator() const { return *generator_; }
  std::shared_ptr<const Generator> generator_ptr() const { return generator_; }

  /// Finite network on G_k plus ground. Throws InputError when k < 0 or k
  /// exceeds the generator's max_level().
  Network truncate(int k) const;

 private:
  std::shared_ptr<const Generator> generator_;
};

inline constexpr const char* kGroundLabel = "ground";

namespace generators {

/// Path 0 - 1 - ... - (n-1), unit conductances, origin 0.
Network path(int n);
/// Cycle on n >= 3 vertices, unit conductances, origin 0.
Network cycle(int n);
/// Finite rooted binary tree of the given depth (2^(depth+1) - 1 vertices),
/// heap-index labels, origin at the root.
Network binary_tree(int depth);
/// Box [-radius, radius]^d in Z^d, unit conductances, origin at 0.
Network lattice(int dimension, int radius);
/// Path 0 .. n-1 with c_{k,k+1} = ratio^k.
Network geometric_line(double ratio, int n);

/// Random connected network on n vertices: a random spanning tree plus
/// extra edges, conductances uniform in (0, max_conductance]. Test fixture.
Network random_connected(int n, double max_conductance, std::mt19937_64& rng,
                         double extra_edge_probability = 0.15);

/// Finite generator by name with parameters (n, depth, d, radius, r).
Network make_finite(const std::string& name,
                    const std::unordered_map<std::string, std::string>& params);

}  // namespace generators

}  // namespace netpair
