#pragma once

// Singular solutions of EPDiff on M = R^d: point (peakon) and closed-chain
// (filament) supports carried by momentum densities P w, evolved by the
// collective Hamiltonian H = 1/2 <J_L(P), G * J_L(P)>.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "dualpair/symplectic.hpp"
#include "dualpair/vector_field.hpp"

namespace dualpair::epdiff {

enum class KernelFamily { Exp1d, Gaussian };

const char* kernel_name(KernelFamily family);
KernelFamily parse_kernel(std::string_view name);

struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double alpha = 1.0;

  /// Throws ArgumentError on alpha <= 0 or exp1d with d != 1.
  void validate(std::size_t dim) const;
};

/// exp1d: e^{-|x|/alpha} / (2 alpha); gaussian: e^{-|x|^2 / (2 alpha^2)}.
double kernel_eval(const KernelSpec& k, std::span<const double> x);
/// Gradient of the kernel; exp1d uses G'(0) = 0.
std::vector<double> kernel_grad(const KernelSpec& k, std::span<const double> x);

/// A points Q_a in R^d with covector densities P_a and weights w_a.
class SingularState {
 public:
  /// Q and P are flat, point-major (A * d values each).
  SingularState(std::size_t dim, std::vector<double> q, std::vector<double> p,
                std::vector<double> w, KernelSpec kernel);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return w_.size(); }
  const KernelSpec& kernel() const noexcept { return kernel_; }

  std::span<const double> q() const noexcept { return q_; }
  std::span<const double> p() const noexcept { return p_; }
  std::span<const double> w() const noexcept { return w_; }
  std::span<const double> q(std::size_t a) const { return {q_.data() + a * dim_, dim_}; }
  std::span<const double> p(std::size_t a) const { return {p_.data() + a * dim_, dim_}; }

  /// Same weights and kernel, new phase data.
  SingularState with_phase(std::vector<double> q, std::vector<double> p) const;

  friend bool operator==(const SingularState&, const SingularState&);

 private:
  std::size_t dim_;
  std::vector<double> q_;
  std::vector<double> p_;
  std::vector<double> w_;
  KernelSpec kernel_;
};

/// Support points ordered on the periodic chain s = a / A.
class FilamentState {
 public:
  explicit FilamentState(SingularState state);

  const SingularState& state() const noexcept { return state_; }
  std::size_t size() const noexcept { return state_.size(); }
  double spacing() const noexcept { return 1.0 / static_cast<double>(state_.size()); }

  /// Throws ArgumentError if some |P_a| = 0 (the everywhere non-zero surrogate).
  void require_nonvanishing() const;

  friend bool operator==(const FilamentState&, const FilamentState&) = default;

 private:
  SingularState state_;
};

double collective_hamiltonian(const SingularState& st);

struct Rates {
  std::vector<double> q;
  std::vector<double> p;
};

/// Qdot_a = sum_b P_b G(Q_a - Q_b) w_b,  Pdot_a = -sum_b (P_a . P_b) grad G(Q_a - Q_b) w_b.
Rates rhs(const SingularState& st);

/// Sum_a P_a w_a.
std::vector<double> total_momentum(const SingularState& st);

/// One time step; stormer-verlet is rejected since H is not separable.
SingularState step(const SingularState& st, symplectic::Method method, double dt,
                   std::size_t step_index);

struct Trajectory {
  std::vector<double> t;
  std::vector<SingularState> states;
};

/// spec.steps steps, recording the initial state and every `record_every`-th state
/// (the final state is always recorded).
Trajectory integrate(const SingularState& st, const symplectic::FlowSpec& spec,
                     std::size_t record_every = 1);

/// Final state only.
SingularState integrate_endpoint(const SingularState& st, const symplectic::FlowSpec& spec);

/// <J_L(P), X> = sum_a <P_a, X(Q_a)> w_a.
double j_L_pair(const SingularState& st, const SmoothVectorField& x);

/// m_a = <P_a, (Q_{a+1} - Q_{a-1}) / (2 / A)>.
std::vector<double> j_R_filament(const FilamentState& st);

/// max_a |m_a - m0_a| / max_a |m0_a|.
double j_R_drift(std::span<const double> m0, std::span<const double> m);

/// Rotates the chain: entry a of the result is entry (a + shift) mod A.
FilamentState reparametrize(const FilamentState& st, long shift);

}  // namespace dualpair::epdiff
