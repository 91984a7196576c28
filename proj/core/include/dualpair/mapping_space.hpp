#pragma once

// The ideal-fluid dual pair on F(S, M) with S a square grid (k = 2):
// the symplectic form omega_bar, the left momentum map h -> h_bar (the
// pushforward f_* mu), the right momentum map J_R(f) = -f^* omega, the hat
// pairing and both commuting actions.

#include <span>

#include "dualpair/grid.hpp"
#include "dualpair/symplectic.hpp"

namespace dualpair::mapping {

using grid::CellTwoForm;
using grid::GridSource;
using grid::GridSymmetry;
using grid::MapField;
using grid::StreamFunction;
using grid::TangentField;
using symplectic::FlowSpec;
using symplectic::ObservableFn;

/// Throws ArgumentError unless f has even dimension >= 2.
void require_phase_valued(const MapField& f);

/// omega_bar_f(U, V) = sum_s omega(U_s, V_s) mu_s.
double omega_bar(const MapField& f, const TangentField& u, const TangentField& v);

/// h_bar(f) = sum_s h(f(s)) mu_s, equal to <J_L(f), h>.
double h_bar(const MapField& f, const ObservableFn& h);

/// X_h o f.
TangentField left_generator(const MapField& f, const ObservableFn& h);

/// Divergence-free field X_alpha = (d alpha/ds2, -d alpha/ds1), from i_X mu = d alpha.
std::array<std::vector<double>, 2> stream_velocity(const StreamFunction& alpha);

/// Tf o X_alpha = (D1 f) X^1 + (D2 f) X^2.
TangentField right_generator(const MapField& f, const StreamFunction& alpha);

/// Per-cell omega(D1 f, D2 f) from corner differences.
CellTwoForm pullback_omega(const MapField& f);

/// J_R(f) = -f^* omega.
CellTwoForm j_R(const MapField& f);

/// <J_R(f), [alpha]> = -sum_cells c_cell alpha_cell spacing^2 (alpha_cell: 4-corner average).
double j_R_pair(const MapField& f, const StreamFunction& alpha);

/// (omega . alpha)^ (f) = sum_cells c_cell alpha_cell spacing^2.
double omega_alpha_hat(const MapField& f, const StreamFunction& alpha);

/// A differential form on S used as the right argument of the hat pairing.
///  degree 0: one node scalar (a function alpha)
///  degree 1: two node scalars (a1 ds1 + a2 ds2)
///  degree 2: one node scalar a, meaning a mu
struct SourceForm {
  int degree = 0;
  std::vector<std::vector<double>> components;

  static SourceForm function(const StreamFunction& alpha);
  static SourceForm one_form(std::vector<double> a1, std::vector<double> a2);
  static SourceForm density(std::vector<double> a);
};

/// Hat pairing of the symplectic form omega on M with a form on S, evaluated at f
/// on (degree of alpha) tangent vectors:
///  degree 0: sum_cells (f^* omega) alpha_cell dA
///  degree 1: sum_s (f^*(i_U omega) ^ alpha) dA with centred differences
///  degree 2: sum_s omega(U, V) a mu_s (the bar map of omega when a = 1)
/// Throws ArgumentError when the tangent argument count does not match.
double hat_pairing(const MapField& f, const SourceForm& alpha, std::span<const TangentField> args);

/// omega_bar(X_h o f, Tf o X_alpha); vanishes in the continuum limit.
double orthogonality_residual(const MapField& f, const ObservableFn& h,
                              const StreamFunction& alpha);

/// Nonequivariance residual of J_R for the zero-mean normalization:
///   sum_cells c_cell mu(X, Y)^0_cell dA  -  omega_bar(X_hat, Y_hat)
/// where mu(X, Y) = X^1 Y^2 - X^2 Y^1 from corner differences of the potentials.
double sigma_R_residual(const StreamFunction& alpha_x, const StreamFunction& alpha_y,
                        const MapField& f);

/// |d/d eps [-(omega . alpha)^](f + eps V) - omega_bar(X_hat_alpha(f), V)| with
/// a central difference in eps.
double hamiltonian_derivative_residual(const MapField& f, const StreamFunction& alpha,
                                       const TangentField& v, double eps);

/// Directional derivative of (omega . alpha)^ along V by central differences.
double omega_alpha_hat_derivative(const MapField& f, const StreamFunction& alpha,
                                  const TangentField& v, double eps);

/// Applies the flow of h for spec.steps steps at every node.
MapField left_act(const MapField& f, const ObservableFn& h, const FlowSpec& spec);

/// Nodewise flow of h advanced one step at a time, with compensated summation
/// carried across steps. After k steps current() equals left_act with k steps.
class LeftFlow {
 public:
  LeftFlow(MapField f, ObservableFn h, symplectic::Method method, double dt);

  const MapField& current() const noexcept { return f_; }
  std::size_t steps_taken() const noexcept { return steps_; }
  void advance();

 private:
  MapField f_;
  ObservableFn h_;
  symplectic::Method method_;
  double dt_;
  std::vector<double> carry_;
  std::size_t steps_ = 0;
};

/// Applies the linear map m -> A m at every node (A row-major, dim x dim).
MapField left_act_linear(const MapField& f, std::span<const double> matrix);

/// Throws ArgumentError unless A^T J A = J to `tol`.
void require_symplectic_matrix(std::span<const double> matrix, std::size_t dim, double tol = 1e-12);

/// (f o psi)(s) = f(psi(s)).
MapField right_act(const MapField& f, const GridSymmetry& psi);
StreamFunction right_act(const StreamFunction& alpha, const GridSymmetry& psi);
CellTwoForm right_act(const CellTwoForm& c, const GridSymmetry& psi);

/// Pushforward psi_* alpha = alpha o psi^{-1}.
StreamFunction push_forward(const StreamFunction& alpha, const GridSymmetry& psi);

}  // namespace dualpair::mapping
