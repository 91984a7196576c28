#pragma once

// Exact Poisson algebra on polynomial observables of M = R^{2n}, the
// nonequivariance cocycle of the left momentum map and the central
// extension of the Hamiltonian vector fields by H^0(M) = R.
//
// Bracket conventions (see symplectic.hpp for omega and X_h):
//   {g, h}             = sum_i (dg/dq^i dh/dp_i - dg/dp_i dh/dq^i)
//   jacobi_lie(X, Y)   = (X . grad) Y - (Y . grad) X
//   jacobi_lie(X, Y)   = -X_{omega(X, Y)}
// The Lie algebra acting on the left carries the opposite bracket
// left_bracket(X, Y) = -jacobi_lie(X, Y) = X_{omega(X, Y)}, for which h -> X_h
// is a homomorphism.

#include <vector>

#include "dualpair/rational_poly.hpp"
#include "dualpair/symplectic.hpp"

namespace dualpair::poly {

/// Fixed base point m0 of the single connected component of R^{2n}.
class BasePoint {
 public:
  explicit BasePoint(std::vector<Rational> coords);
  static BasePoint origin(std::size_t dof);

  std::size_t dof() const noexcept { return coords_.size() / 2; }
  std::span<const Rational> coords() const noexcept { return coords_; }

 private:
  std::vector<Rational> coords_;
};

/// A polynomial vector field on R^{2n}, components ordered like coordinates.
class PolyVectorField {
 public:
  explicit PolyVectorField(std::vector<RationalPoly> components);
  static PolyVectorField zero(std::size_t dof);
  /// X_h = (dh/dp, -dh/dq).
  static PolyVectorField hamiltonian(const RationalPoly& h);

  std::size_t dof() const noexcept { return components_.size() / 2; }
  const std::vector<RationalPoly>& components() const noexcept { return components_; }
  const RationalPoly& operator[](std::size_t i) const { return components_[i]; }

  /// True when i_X omega is closed (symmetric mixed partials); on R^{2n} this
  /// is equivalent to X being Hamiltonian.
  bool is_hamiltonian() const;
  /// The Hamiltonian vanishing at the origin, for a Hamiltonian field.
  RationalPoly hamiltonian_function() const;
  std::vector<Rational> evaluate(std::span<const Rational> point) const;

  PolyVectorField operator-() const;
  friend PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b);
  friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) = default;

 private:
  std::vector<RationalPoly> components_;
};

/// Field part of an extended element.
using HamiltonianField = PolyVectorField;

/// Standard Jacobi-Lie bracket (X.grad)Y - (Y.grad)X.
PolyVectorField jacobi_lie_bracket(const PolyVectorField& x, const PolyVectorField& y);
/// Bracket of the left-acting Lie algebra: -jacobi_lie_bracket(x, y).
PolyVectorField left_bracket(const PolyVectorField& x, const PolyVectorField& y);
/// The function omega(X, Y) = sum_i X^{q_i} Y^{p_i} - X^{p_i} Y^{q_i}.
RationalPoly omega_of(const PolyVectorField& x, const PolyVectorField& y);

RationalPoly poisson_bracket_exact(const RationalPoly& g, const RationalPoly& h);

/// h - h(m0): the Hamiltonian of X_h vanishing at m0.
RationalPoly normalize_h0(const RationalPoly& h, const BasePoint& m0);

/// sigma_T(X, Y) = -omega(X, Y)(m0), computed from the fields alone.
Rational sigma_T(const PolyVectorField& x, const PolyVectorField& y, const BasePoint& m0);
/// sigma_T(X_g, X_h) = -{g, h}(m0).
Rational sigma_T_left(const RationalPoly& g, const RationalPoly& h, const BasePoint& m0);

/// Element (X, c) of the central extension of X_ham(M) by H^0(M) = R.
struct ExtendedElement {
  PolyVectorField field_part;
  Rational central_part;

  friend bool operator==(const ExtendedElement& a, const ExtendedElement& b) = default;
};

/// ([X_a, X_b], sigma_T(X_a, X_b)) with the left-action bracket.
/// Throws ArgumentError if a field part is not Hamiltonian.
ExtendedElement extended_bracket(const ExtendedElement& a, const ExtendedElement& b,
                                 const BasePoint& m0);

/// h -> (X_h, h0 - h) = (X_h, -h(m0)).
ExtendedElement iso_to_extension(const RationalPoly& h, const BasePoint& m0);

/// sigma_T([X_g, X_h], X_k) + cyclic; identically zero for a 2-cocycle.
Rational two_cocycle_residual(const RationalPoly& g, const RationalPoly& h, const RationalPoly& k,
                              const BasePoint& m0);

/// Jacobi expression {{g,h},k} + {{h,k},g} + {{k,g},h}.
RationalPoly jacobi_residual(const RationalPoly& g, const RationalPoly& h, const RationalPoly& k);

/// Floating-point observable with analytic gradient from exact derivatives.
symplectic::ObservableFn to_observable(const RationalPoly& h);

}  // namespace dualpair::poly
