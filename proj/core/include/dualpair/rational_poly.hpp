#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dualpair::poly {

using Rational = mpq_class;

/// Exponent multi-index over the variables (q1..qn, p1..pn).
using Monomial = std::vector<std::uint32_t>;

/// Graded lexicographic order: lower total degree first, ties broken by
/// lexicographic comparison of the exponent vectors.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Multivariate polynomial in 2n variables with exact rational coefficients.
/// Zero coefficients are never stored.
class RationalPoly {
 public:
  using Terms = std::map<Monomial, Rational, GradedLex>;

  explicit RationalPoly(std::size_t dof);

  static RationalPoly constant(std::size_t dof, const Rational& c);
  /// The coordinate function x_index, index in [0, 2n).
  static RationalPoly variable(std::size_t dof, std::size_t index);
  static RationalPoly q(std::size_t dof, std::size_t i) { return variable(dof, i); }
  static RationalPoly p(std::size_t dof, std::size_t i) { return variable(dof, dof + i); }
  static RationalPoly monomial(std::size_t dof, Monomial exps, const Rational& c);

  /// Parses the canonical text form, e.g. "3/2*q1^2*p1 - q2 + 7".
  static RationalPoly parse(std::string_view text, std::size_t dof);

  std::size_t dof() const noexcept { return dof_; }
  std::size_t num_vars() const noexcept { return 2 * dof_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Coefficient of the constant monomial.
  Rational constant_term() const;

  RationalPoly derivative(std::size_t var) const;
  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Canonical text form in descending graded-lex order; "0" for zero.
  std::string to_string() const;

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const Rational& c);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const Rational& c) { return a *= c; }
  friend RationalPoly operator*(const Rational& c, RationalPoly a) { return a *= c; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  RationalPoly operator-() const;

  friend bool operator==(const RationalPoly& a, const RationalPoly& b);

 private:
  void add_term(const Monomial& m, const Rational& c);
  void require_same(const RationalPoly& o) const;

  std::size_t dof_;
  Terms terms_;
};

/// Random polynomial with up to `max_terms` terms of total degree <= max_degree
/// and small rational coefficients (numerators in [-9, 9], denominators in [1, 5]).
RationalPoly random_poly(std::mt19937_64& rng, std::size_t dof, int max_degree, int max_terms);

}  // namespace dualpair::poly
