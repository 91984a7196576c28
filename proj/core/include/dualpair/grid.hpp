#pragma once

// Discretized source manifold S (k = 2) and the fields living on it.
//
// Nodes are indexed row-major with s1 as the slow index:
//   node(i1, i2) = i1 * nodes_per_side + i2,   s = (i1 / N, i2 / N).
// Cell (i1, i2) has corners node(i1, i2), node(i1+1, i2), node(i1, i2+1),
// node(i1+1, i2+1), wrapped on the periodic topology.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace dualpair::grid {

enum class Topology { Periodic, Patch };

const char* topology_name(Topology t);
Topology parse_topology(std::string_view name);

/// The square source (S, mu): flat unit torus or closed unit patch with N cells per side.
class GridSource {
 public:
  /// Uniform weights on the torus, trapezoidal weights on the patch, scaled to `mass`.
  GridSource(Topology topology, std::size_t cells_per_side, double mass = 1.0);
  /// Custom positive node weights summing to `mass` (relative tolerance 1e-12).
  GridSource(Topology topology, std::size_t cells_per_side, std::vector<double> weights,
             double mass);

  Topology topology() const noexcept { return topology_; }
  bool periodic() const noexcept { return topology_ == Topology::Periodic; }
  std::size_t cells_per_side() const noexcept { return n_; }
  std::size_t nodes_per_side() const noexcept { return periodic() ? n_ : n_ + 1; }
  std::size_t node_count() const noexcept { return nodes_per_side() * nodes_per_side(); }
  std::size_t cell_count() const noexcept { return n_ * n_; }
  double spacing() const noexcept { return 1.0 / static_cast<double>(n_); }
  double cell_area() const noexcept { return spacing() * spacing(); }
  double mass() const noexcept { return mass_; }
  std::span<const double> weights() const noexcept { return weights_; }
  /// True for the default uniform torus weights, the setting of exact grid symmetries.
  bool uniform() const noexcept { return uniform_; }

  std::size_t node(std::size_t i1, std::size_t i2) const { return i1 * nodes_per_side() + i2; }
  /// Node index with periodic wrapping of signed offsets (torus only).
  std::size_t wrapped_node(long i1, long i2) const;
  std::array<double, 2> node_coords(std::size_t node) const;
  std::array<double, 2> cell_center(std::size_t cell) const;
  /// Corners in the order (00, 10, 01, 11).
  std::array<std::size_t, 4> cell_corners(std::size_t cell) const;

  friend bool operator==(const GridSource& a, const GridSource& b);

 private:
  Topology topology_;
  std::size_t n_;
  double mass_;
  std::vector<double> weights_;
  bool uniform_ = false;
};

/// Per-node vectors of fixed dimension over a grid.
template <class Tag>
class NodeVectorField {
 public:
  NodeVectorField(GridSource grid, std::size_t dim);
  NodeVectorField(GridSource grid, std::size_t dim, std::vector<double> values);

  const GridSource& grid() const noexcept { return grid_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t node_count() const noexcept { return grid_.node_count(); }
  std::span<const double> at(std::size_t node) const { return {values_.data() + node * dim_, dim_}; }
  std::span<double> at(std::size_t node) { return {values_.data() + node * dim_, dim_}; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  /// Component `c` of every node, as a contiguous copy.
  std::vector<double> component(std::size_t c) const;

  friend bool operator==(const NodeVectorField&, const NodeVectorField&) = default;

 private:
  GridSource grid_;
  std::size_t dim_;
  std::vector<double> values_;
};

struct MapTag {};
struct TangentTag {};

/// f : S -> M = R^{2n} sampled on nodes.
using MapField = NodeVectorField<MapTag>;
/// Tangent vector U_f: a vector of R^{2n} attached to every node.
using TangentField = NodeVectorField<TangentTag>;

/// Scalar 0-form on S; for k = 2 the potential of an exact divergence-free field.
class StreamFunction {
 public:
  StreamFunction(GridSource grid, std::vector<double> values);
  static StreamFunction constant(GridSource grid, double c);

  const GridSource& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t node) const { return values_[node]; }
  /// mu-weighted mean.
  double mean() const;
  /// The representative with vanishing mu-integral.
  StreamFunction zero_mean() const;

  friend bool operator==(const StreamFunction&, const StreamFunction&) = default;

 private:
  GridSource grid_;
  std::vector<double> values_;
};

/// Per-cell density of a 2-form on S (its value on the coordinate bivector).
class CellTwoForm {
 public:
  CellTwoForm(GridSource grid, std::vector<double> values);

  const GridSource& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t cell) const { return values_[cell]; }
  /// sum_cells c * spacing^2.
  double integral() const;
  CellTwoForm operator-() const;

  friend bool operator==(const CellTwoForm&, const CellTwoForm&) = default;

 private:
  GridSource grid_;
  std::vector<double> values_;
};

/// Exact volume-preserving grid symmetry of the uniform torus:
/// s -> R^{quarter_turns} s + shift, acting on node indices modulo N.
struct GridSymmetry {
  long shift1 = 0;
  long shift2 = 0;
  int quarter_turns = 0;

  static GridSymmetry identity() { return {}; }
  GridSymmetry inverse() const;
  /// Image node of `node` under the symmetry.
  std::size_t apply(const GridSource& grid, std::size_t node) const;
  /// Throws ArgumentError unless the grid is a uniform torus.
  void require_declared(const GridSource& grid) const;
};

/// Cell value of a node scalar: ((a00 + a11) + (a10 + a01)) / 4.
/// Pairing the diagonals keeps the result bitwise invariant under grid symmetries.
std::vector<double> cell_average(const GridSource& grid, std::span<const double> node_values);

/// Difference along s1 / s2: centered on the torus; centered in the interior and
/// second-order one-sided on the boundary of the patch.
std::vector<double> diff_s1(const GridSource& grid, std::span<const double> node_values);
std::vector<double> diff_s2(const GridSource& grid, std::span<const double> node_values);

/// Corner differences (D1, D2) of a node scalar at cell centres.
std::array<std::vector<double>, 2> cell_differences(const GridSource& grid,
                                                    std::span<const double> node_values);

}  // namespace dualpair::grid
