#pragma once

// Canonical symplectic linear algebra on M = R^{2n} and Hamiltonian flows.
//
// Sign conventions, fixed once for the whole library:
//   omega = sum_i dq^i ^ dp_i,   i_{X_h} omega = dh,
//   X_h = (dh/dp, -dh/dq),       {g, h} = omega(X_g, X_h).
// Coordinates are ordered (q^1..q^n, p_1..p_n).

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace dualpair::symplectic {

/// A point of M = R^{2n}, coordinates (q^1..q^n, p_1..p_n).
class PhasePoint {
 public:
  explicit PhasePoint(std::vector<double> coords);
  PhasePoint(std::initializer_list<double> coords);

  std::size_t dimension() const noexcept { return coords_.size(); }
  std::size_t dof() const noexcept { return coords_.size() / 2; }
  double q(std::size_t i) const { return coords_[i]; }
  double p(std::size_t i) const { return coords_[dof() + i]; }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;

 private:
  std::vector<double> coords_;
};

/// Throws ArgumentError unless `dim` is even and >= 2.
void require_phase_dimension(std::size_t dim);

/// omega(u, v) = sum_i (u_{q^i} v_{p_i} - u_{p_i} v_{q^i}).
double canonical_omega(std::span<const double> u, std::span<const double> v);

/// A scalar function on R^{2n} paired with its gradient.
///
/// Polynomial observables supply exact analytic gradients; arbitrary callables
/// built with `from_value` use a fourth-order central difference.
class ObservableFn {
 public:
  using Value = std::function<double(std::span<const double>)>;
  using Gradient = std::function<void(std::span<const double>, std::span<double>)>;

  ObservableFn(std::size_t dimension, Value value, Gradient gradient, bool separable = false);

  /// Gradient by 4th-order central differences, step cbrt(eps) * (1 + |m_i|).
  static ObservableFn from_value(std::size_t dimension, Value value, bool separable = false);

  /// The zero-dimensional-gradient constant observable m -> c.
  static ObservableFn constant(std::size_t dimension, double c);
  /// h(q, p) = 1/2 (|q|^2 + |p|^2), the harmonic oscillator.
  static ObservableFn harmonic_oscillator(std::size_t dof);
  /// h(q, p) = 1/2 |p|^2, the free particle (generates a linear shear).
  static ObservableFn free_particle(std::size_t dof);

  std::size_t dimension() const noexcept { return dimension_; }
  /// True when h = T(p) + V(q); required by the Stormer-Verlet integrator.
  bool separable() const noexcept { return separable_; }

  double operator()(std::span<const double> m) const;
  std::vector<double> gradient(std::span<const double> m) const;
  void gradient(std::span<const double> m, std::span<double> out) const;

 private:
  std::size_t dimension_;
  Value value_;
  Gradient gradient_;
  bool separable_;
};

/// X_h(m) = (dh/dp, -dh/dq).
std::vector<double> hamiltonian_vector_field(const ObservableFn& h, std::span<const double> m);

/// {g, h}(m) = omega(X_g(m), X_h(m)).
double poisson_bracket_value(const ObservableFn& g, const ObservableFn& h,
                             std::span<const double> m);

enum class Method { ImplicitMidpoint, StormerVerlet, RK4 };

const char* method_name(Method method);
/// Parses "implicit-midpoint", "stormer-verlet" or "rk4".
Method parse_method(std::string_view name);
/// RK4 is kept for cross-checks only.
constexpr bool is_symplectic(Method m) { return m != Method::RK4; }

struct FlowSpec {
  Method method = Method::ImplicitMidpoint;
  double dt = 1e-3;
  std::size_t steps = 0;
};

/// Fixed-point tolerance and iteration cap of the implicit midpoint solve.
inline constexpr double kImplicitTolerance = 1e-13;
inline constexpr int kImplicitMaxIterations = 50;

void validate(const FlowSpec& spec, const ObservableFn& h);

/// One step of the chosen integrator. `step_index` is reported on failure.
std::vector<double> step(const ObservableFn& h, std::span<const double> m, Method method, double dt,
                         std::size_t step_index = 0);

/// The update z1 - z0 of one step, before it is added to z0.
std::vector<double> increment(const ObservableFn& h, std::span<const double> m, Method method,
                              double dt, std::size_t step_index = 0);

/// z += delta with Kahan compensation; `carry` holds the running rounding error.
void compensated_add(std::span<double> z, std::span<double> carry, std::span<const double> delta);

/// Trajectory of spec.steps + 1 points starting at m0; increments are summed with compensation.
std::vector<PhasePoint> flow(const ObservableFn& h, const PhasePoint& m0, const FlowSpec& spec);

/// Endpoint of the flow without storing the trajectory.
std::vector<double> flow_endpoint(const ObservableFn& h, std::span<const double> m0,
                                  const FlowSpec& spec);

}  // namespace dualpair::symplectic
