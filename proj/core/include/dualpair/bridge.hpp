#pragma once

// The map Phi(P) = P mu from F(S, T*M) to T*F(S, M) and the identities that
// tie the ideal-fluid pair to the EPDiff pair.

#include <cstddef>
#include <span>
#include <vector>

#include "dualpair/grid.hpp"
#include "dualpair/rational_poly.hpp"
#include "dualpair/symplectic.hpp"
#include "dualpair/vector_field.hpp"

namespace dualpair::bridge {

using grid::GridSource;
using grid::MapField;
using grid::StreamFunction;
using grid::TangentField;

/// Per node a base point Q_s in R^d and a covector P_s in R^d.
class CovectorField {
 public:
  CovectorField(GridSource grid, std::size_t dim, std::vector<double> base,
                std::vector<double> covector);

  const GridSource& grid() const noexcept { return grid_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t node_count() const noexcept { return grid_.node_count(); }
  std::span<const double> base(std::size_t s) const { return {base_.data() + s * dim_, dim_}; }
  std::span<const double> covector(std::size_t s) const {
    return {covector_.data() + s * dim_, dim_};
  }

  /// Q = pi o P as a map S -> M.
  MapField base_map() const;
  /// s -> (Q_s, P_s) as a map S -> T*M = R^{2d}.
  MapField phase_map() const;

 private:
  GridSource grid_;
  std::size_t dim_;
  std::vector<double> base_;
  std::vector<double> covector_;
};

struct Residual {
  double residual = 0.0;
  /// Sum of absolute terms of the left side.
  double scale = 0.0;

  bool within(double relative_tol) const { return residual <= relative_tol * scale; }
};

/// <P mu, V> = sum_s <P_s, V_s> mu_s.
double phi_pair(const CovectorField& p, const TangentField& v);

/// The observable (x, p) -> <p, X(x)> on T*M = R^{2d}.
symplectic::ObservableFn calP(const SmoothVectorField& x);

/// Exact version for polynomial fields on M: the X_i are polynomials in the
/// q-variables of a dof-d ring; the result is sum_i p_i X_i.
poly::RationalPoly calP_exact(std::span<const poly::RationalPoly> x);

/// Bracket of polynomial vector fields on M matching the left-action convention:
/// [X, Y]^i = Y^j d_j X^i - X^j d_j Y^i, so that calP([X, Y]) = {calP X, calP Y}.
std::vector<poly::RationalPoly> base_bracket(std::span<const poly::RationalPoly> x,
                                             std::span<const poly::RationalPoly> y);

/// |sum <P_s, X(Q_s)> mu_s - sum calP(X)(Q_s, P_s) mu_s|.
Residual left_square_residual(const CovectorField& p, const SmoothVectorField& x);

/// |sum <P_s, (DQ) X_alpha> mu_s + sum_cells (P^* omega) alpha_cell dA|.
Residual right_square_residual(const CovectorField& p, const StreamFunction& alpha);

/// |omega_bar_{T*M}(V1, V2) - sum_s [<dP2, dQ1> - <dP1, dQ2>] mu_s| for
/// perturbations V = (dQ, dP) of the phase map.
Residual phi_symplecticity_residual(const CovectorField& p, const TangentField& v1,
                                    const TangentField& v2);

}  // namespace dualpair::bridge
