#include "dualpair/grid.hpp"

#include <cmath>
#include <string>

#include "dualpair/error.hpp"
#include "dualpair/summation.hpp"

namespace dualpair::grid {

const char* topology_name(Topology t) {
  return t == Topology::Periodic ? "periodic" : "patch";
}

Topology parse_topology(std::string_view name) {
  if (name == "periodic") return Topology::Periodic;
  if (name == "patch") return Topology::Patch;
  throw ArgumentError("unknown topology '" + std::string(name) + "'");
}

GridSource::GridSource(Topology topology, std::size_t cells_per_side, double mass)
    : topology_(topology), n_(cells_per_side), mass_(mass) {
  if (n_ < 2) throw ArgumentError("GridSource: need at least 2 cells per side");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ArgumentError("GridSource: mass must be > 0");
  const std::size_t m = nodes_per_side();
  weights_.assign(m * m, 0.0);
  if (periodic()) {
    const double w = mass / static_cast<double>(n_ * n_);
    std::fill(weights_.begin(), weights_.end(), w);
    uniform_ = true;
  } else {
    const double base = mass / static_cast<double>(n_ * n_);
    for (std::size_t i1 = 0; i1 < m; ++i1) {
      const double a = (i1 == 0 || i1 == n_) ? 0.5 : 1.0;
      for (std::size_t i2 = 0; i2 < m; ++i2) {
        const double b = (i2 == 0 || i2 == n_) ? 0.5 : 1.0;
        weights_[node(i1, i2)] = base * a * b;
      }
    }
  }
}

GridSource::GridSource(Topology topology, std::size_t cells_per_side, std::vector<double> weights,
                       double mass)
    : GridSource(topology, cells_per_side, mass) {
  if (weights.size() != node_count()) throw ArgumentError("GridSource: weight count mismatch");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ArgumentError("GridSource: weights must be > 0");
  }
  const double total = exact_sum(weights);
  if (std::fabs(total - mass) > 1e-12 * mass) {
    throw ArgumentError("GridSource: weights do not sum to the declared mass");
  }
  uniform_ = uniform_ && weights == weights_;
  weights_ = std::move(weights);
}

std::size_t GridSource::wrapped_node(long i1, long i2) const {
  const long n = static_cast<long>(n_);
  const long a = ((i1 % n) + n) % n;
  const long b = ((i2 % n) + n) % n;
  return node(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
}

std::array<double, 2> GridSource::node_coords(std::size_t node) const {
  const std::size_t m = nodes_per_side();
  return {static_cast<double>(node / m) * spacing(), static_cast<double>(node % m) * spacing()};
}

std::array<double, 2> GridSource::cell_center(std::size_t cell) const {
  return {(static_cast<double>(cell / n_) + 0.5) * spacing(),
          (static_cast<double>(cell % n_) + 0.5) * spacing()};
}

std::array<std::size_t, 4> GridSource::cell_corners(std::size_t cell) const {
  const std::size_t i1 = cell / n_;
  const std::size_t i2 = cell % n_;
  if (periodic()) {
    const long a = static_cast<long>(i1), b = static_cast<long>(i2);
    return {wrapped_node(a, b), wrapped_node(a + 1, b), wrapped_node(a, b + 1),
            wrapped_node(a + 1, b + 1)};
  }
  return {node(i1, i2), node(i1 + 1, i2), node(i1, i2 + 1), node(i1 + 1, i2 + 1)};
}

bool operator==(const GridSource& a, const GridSource& b) {
  return a.topology_ == b.topology_ && a.n_ == b.n_ && a.mass_ == b.mass_ &&
         a.weights_ == b.weights_;
}

template <class Tag>
NodeVectorField<Tag>::NodeVectorField(GridSource grid, std::size_t dim)
    : grid_(std::move(grid)), dim_(dim), values_(grid_.node_count() * dim, 0.0) {
  if (dim_ == 0) throw ArgumentError("NodeVectorField: dimension must be positive");
}

template <class Tag>
NodeVectorField<Tag>::NodeVectorField(GridSource grid, std::size_t dim, std::vector<double> values)
    : grid_(std::move(grid)), dim_(dim), values_(std::move(values)) {
  if (dim_ == 0) throw ArgumentError("NodeVectorField: dimension must be positive");
  if (values_.size() != grid_.node_count() * dim_) {
    throw ArgumentError("NodeVectorField: value array does not match grid shape");
  }
}

template <class Tag>
std::vector<double> NodeVectorField<Tag>::component(std::size_t c) const {
  if (c >= dim_) throw ArgumentError("NodeVectorField: component out of range");
  std::vector<double> out(node_count());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = values_[k * dim_ + c];
  return out;
}

template class NodeVectorField<MapTag>;
template class NodeVectorField<TangentTag>;

StreamFunction::StreamFunction(GridSource grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.node_count()) {
    throw ArgumentError("StreamFunction: value array does not match grid shape");
  }
}

StreamFunction StreamFunction::constant(GridSource grid, double c) {
  std::vector<double> v(grid.node_count(), c);
  return StreamFunction(std::move(grid), std::move(v));
}

double StreamFunction::mean() const {
  ExactAccumulator acc;
  const auto w = grid_.weights();
  for (std::size_t i = 0; i < values_.size(); ++i) acc.add(values_[i] * w[i]);
  return acc.result() / grid_.mass();
}

StreamFunction StreamFunction::zero_mean() const {
  const double m = mean();
  std::vector<double> v(values_);
  for (double& x : v) x -= m;
  return StreamFunction(grid_, std::move(v));
}

CellTwoForm::CellTwoForm(GridSource grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.cell_count()) {
    throw ArgumentError("CellTwoForm: value array does not match cell count");
  }
}

double CellTwoForm::integral() const { return exact_sum(values_) * grid_.cell_area(); }

CellTwoForm CellTwoForm::operator-() const {
  std::vector<double> v(values_);
  for (double& x : v) x = -x;
  return CellTwoForm(grid_, std::move(v));
}

namespace {

std::array<long, 2> rotate(long a, long b, int quarter_turns) {
  const int k = ((quarter_turns % 4) + 4) % 4;
  for (int i = 0; i < k; ++i) {
    const long t = a;
    a = -b;
    b = t;
  }
  return {a, b};
}

}  // namespace

GridSymmetry GridSymmetry::inverse() const {
  // psi(x) = R^k x + t  =>  psi^{-1}(y) = R^{-k} y - R^{-k} t.
  const auto t = rotate(shift1, shift2, -quarter_turns);
  return GridSymmetry{-t[0], -t[1], ((-quarter_turns % 4) + 4) % 4};
}

void GridSymmetry::require_declared(const GridSource& grid) const {
  if (!grid.periodic() || !grid.uniform()) {
    throw ArgumentError("grid symmetry requires a uniform periodic grid");
  }
}

std::size_t GridSymmetry::apply(const GridSource& grid, std::size_t node) const {
  require_declared(grid);
  const std::size_t m = grid.nodes_per_side();
  const auto r = rotate(static_cast<long>(node / m), static_cast<long>(node % m), quarter_turns);
  return grid.wrapped_node(r[0] + shift1, r[1] + shift2);
}

std::vector<double> cell_average(const GridSource& grid, std::span<const double> a) {
  if (a.size() != grid.node_count()) throw ArgumentError("cell_average: shape mismatch");
  std::vector<double> out(grid.cell_count());
  for (std::size_t c = 0; c < out.size(); ++c) {
    const auto k = grid.cell_corners(c);
    out[c] = ((a[k[0]] + a[k[3]]) + (a[k[1]] + a[k[2]])) * 0.25;
  }
  return out;
}

namespace {

std::vector<double> diff_along(const GridSource& grid, std::span<const double> a, int axis) {
  if (a.size() != grid.node_count()) throw ArgumentError("difference: shape mismatch");
  const std::size_t m = grid.nodes_per_side();
  const double inv_2h = 0.5 / grid.spacing();
  std::vector<double> out(a.size());
  for (std::size_t i1 = 0; i1 < m; ++i1) {
    for (std::size_t i2 = 0; i2 < m; ++i2) {
      const std::size_t idx = grid.node(i1, i2);
      const std::size_t i = axis == 0 ? i1 : i2;
      auto at = [&](long offset) {
        const long j = static_cast<long>(i) + offset;
        if (grid.periodic()) {
          return axis == 0 ? a[grid.wrapped_node(j, static_cast<long>(i2))]
                           : a[grid.wrapped_node(static_cast<long>(i1), j)];
        }
        const auto ju = static_cast<std::size_t>(j);
        return axis == 0 ? a[grid.node(ju, i2)] : a[grid.node(i1, ju)];
      };
      if (grid.periodic() || (i > 0 && i + 1 < m)) {
        out[idx] = (at(1) - at(-1)) * inv_2h;
      } else if (i == 0) {
        out[idx] = (-3.0 * at(0) + 4.0 * at(1) - at(2)) * inv_2h;
      } else {
        out[idx] = (3.0 * at(0) - 4.0 * at(-1) + at(-2)) * inv_2h;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<double> diff_s1(const GridSource& grid, std::span<const double> a) {
  return diff_along(grid, a, 0);
}

std::vector<double> diff_s2(const GridSource& grid, std::span<const double> a) {
  return diff_along(grid, a, 1);
}

std::array<std::vector<double>, 2> cell_differences(const GridSource& grid,
                                                    std::span<const double> a) {
  if (a.size() != grid.node_count()) throw ArgumentError("cell_differences: shape mismatch");
  const double inv_2h = 0.5 / grid.spacing();
  std::array<std::vector<double>, 2> out{std::vector<double>(grid.cell_count()),
                                         std::vector<double>(grid.cell_count())};
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const auto k = grid.cell_corners(c);
    out[0][c] = ((a[k[1]] - a[k[0]]) + (a[k[3]] - a[k[2]])) * inv_2h;
    out[1][c] = ((a[k[2]] - a[k[0]]) + (a[k[3]] - a[k[1]])) * inv_2h;
  }
  return out;
}

}  // namespace dualpair::grid
