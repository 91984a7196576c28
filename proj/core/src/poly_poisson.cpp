#include "dualpair/poly_poisson.hpp"

#include "dualpair/error.hpp"

namespace dualpair::poly {

BasePoint::BasePoint(std::vector<Rational> coords) : coords_(std::move(coords)) {
  symplectic::require_phase_dimension(coords_.size());
}

BasePoint BasePoint::origin(std::size_t dof) {
  return BasePoint(std::vector<Rational>(2 * dof, Rational(0)));
}

PolyVectorField::PolyVectorField(std::vector<RationalPoly> components)
    : components_(std::move(components)) {
  symplectic::require_phase_dimension(components_.size());
  const std::size_t dof = components_.size() / 2;
  for (const auto& c : components_) {
    if (c.dof() != dof) throw ArgumentError("PolyVectorField: component variable-count mismatch");
  }
}

PolyVectorField PolyVectorField::zero(std::size_t dof) {
  return PolyVectorField(std::vector<RationalPoly>(2 * dof, RationalPoly(dof)));
}

PolyVectorField PolyVectorField::hamiltonian(const RationalPoly& h) {
  const std::size_t n = h.dof();
  std::vector<RationalPoly> comps;
  comps.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) comps.push_back(h.derivative(n + i));
  for (std::size_t i = 0; i < n; ++i) comps.push_back(-h.derivative(i));
  return PolyVectorField(std::move(comps));
}

namespace {

// Components of the 1-form i_X omega: coefficient of dq^i is -X^{p_i},
// coefficient of dp_i is X^{q^i}.
std::vector<RationalPoly> contraction(const PolyVectorField& x) {
  const std::size_t n = x.dof();
  std::vector<RationalPoly> beta;
  beta.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) beta.push_back(-x[n + i]);
  for (std::size_t i = 0; i < n; ++i) beta.push_back(x[i]);
  return beta;
}

}  // namespace

bool PolyVectorField::is_hamiltonian() const {
  const auto beta = contraction(*this);
  for (std::size_t a = 0; a < beta.size(); ++a) {
    for (std::size_t b = a + 1; b < beta.size(); ++b) {
      if (!(beta[b].derivative(a) == beta[a].derivative(b))) return false;
    }
  }
  return true;
}

RationalPoly PolyVectorField::hamiltonian_function() const {
  if (!is_hamiltonian()) throw ArgumentError("hamiltonian_function: field is not Hamiltonian");
  // Integrate the closed polynomial 1-form beta along rays from the origin:
  // h = sum over terms c * x^m in beta_a of c * x_a * x^m / (deg(m) + 1).
  const auto beta = contraction(*this);
  RationalPoly h(dof());
  for (std::size_t a = 0; a < beta.size(); ++a) {
    for (const auto& [m, c] : beta[a].terms()) {
      Monomial lifted = m;
      lifted[a] += 1;
      std::uint64_t deg = 0;
      for (auto e : m) deg += e;
      h += RationalPoly::monomial(dof(), std::move(lifted), c / Rational(deg + 1));
    }
  }
  return h;
}

std::vector<Rational> PolyVectorField::evaluate(std::span<const Rational> point) const {
  std::vector<Rational> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.evaluate(point));
  return out;
}

PolyVectorField PolyVectorField::operator-() const {
  std::vector<RationalPoly> comps;
  comps.reserve(components_.size());
  for (const auto& c : components_) comps.push_back(-c);
  return PolyVectorField(std::move(comps));
}

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
  if (a.components_.size() != b.components_.size()) {
    throw ArgumentError("PolyVectorField: dimension mismatch");
  }
  std::vector<RationalPoly> comps;
  comps.reserve(a.components_.size());
  for (std::size_t i = 0; i < a.components_.size(); ++i) {
    comps.push_back(a.components_[i] + b.components_[i]);
  }
  return PolyVectorField(std::move(comps));
}

PolyVectorField jacobi_lie_bracket(const PolyVectorField& x, const PolyVectorField& y) {
  if (x.dof() != y.dof()) throw ArgumentError("jacobi_lie_bracket: dimension mismatch");
  const std::size_t dim = 2 * x.dof();
  std::vector<RationalPoly> comps;
  comps.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    RationalPoly acc(x.dof());
    for (std::size_t j = 0; j < dim; ++j) {
      acc += x[j] * y[i].derivative(j);
      acc -= y[j] * x[i].derivative(j);
    }
    comps.push_back(std::move(acc));
  }
  return PolyVectorField(std::move(comps));
}

PolyVectorField left_bracket(const PolyVectorField& x, const PolyVectorField& y) {
  return -jacobi_lie_bracket(x, y);
}

RationalPoly omega_of(const PolyVectorField& x, const PolyVectorField& y) {
  if (x.dof() != y.dof()) throw ArgumentError("omega_of: dimension mismatch");
  const std::size_t n = x.dof();
  RationalPoly acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i] * y[n + i];
    acc -= x[n + i] * y[i];
  }
  return acc;
}

RationalPoly poisson_bracket_exact(const RationalPoly& g, const RationalPoly& h) {
  if (g.dof() != h.dof()) throw ArgumentError("poisson_bracket_exact: variable-count mismatch");
  const std::size_t n = g.dof();
  RationalPoly acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    acc += g.derivative(i) * h.derivative(n + i);
    acc -= g.derivative(n + i) * h.derivative(i);
  }
  return acc;
}

RationalPoly normalize_h0(const RationalPoly& h, const BasePoint& m0) {
  if (h.dof() != m0.dof()) throw ArgumentError("normalize_h0: dimension mismatch");
  return h - RationalPoly::constant(h.dof(), h.evaluate(m0.coords()));
}

Rational sigma_T(const PolyVectorField& x, const PolyVectorField& y, const BasePoint& m0) {
  if (x.dof() != m0.dof()) throw ArgumentError("sigma_T: dimension mismatch");
  return -omega_of(x, y).evaluate(m0.coords());
}

Rational sigma_T_left(const RationalPoly& g, const RationalPoly& h, const BasePoint& m0) {
  return sigma_T(PolyVectorField::hamiltonian(g), PolyVectorField::hamiltonian(h), m0);
}

ExtendedElement extended_bracket(const ExtendedElement& a, const ExtendedElement& b,
                                 const BasePoint& m0) {
  if (!a.field_part.is_hamiltonian() || !b.field_part.is_hamiltonian()) {
    throw ArgumentError("extended_bracket: field part is not Hamiltonian");
  }
  return ExtendedElement{left_bracket(a.field_part, b.field_part),
                         sigma_T(a.field_part, b.field_part, m0)};
}

ExtendedElement iso_to_extension(const RationalPoly& h, const BasePoint& m0) {
  if (h.dof() != m0.dof()) throw ArgumentError("iso_to_extension: dimension mismatch");
  return ExtendedElement{PolyVectorField::hamiltonian(h), -h.evaluate(m0.coords())};
}

Rational two_cocycle_residual(const RationalPoly& g, const RationalPoly& h, const RationalPoly& k,
                              const BasePoint& m0) {
  const auto xg = PolyVectorField::hamiltonian(g);
  const auto xh = PolyVectorField::hamiltonian(h);
  const auto xk = PolyVectorField::hamiltonian(k);
  return sigma_T(left_bracket(xg, xh), xk, m0) + sigma_T(left_bracket(xh, xk), xg, m0) +
         sigma_T(left_bracket(xk, xg), xh, m0);
}

RationalPoly jacobi_residual(const RationalPoly& g, const RationalPoly& h, const RationalPoly& k) {
  return poisson_bracket_exact(poisson_bracket_exact(g, h), k) +
         poisson_bracket_exact(poisson_bracket_exact(h, k), g) +
         poisson_bracket_exact(poisson_bracket_exact(k, g), h);
}

symplectic::ObservableFn to_observable(const RationalPoly& h) {
  const std::size_t dim = h.num_vars();
  std::vector<RationalPoly> grads;
  grads.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) grads.push_back(h.derivative(i));
  // Separable when no monomial mixes q and p variables.
  bool separable = true;
  for (const auto& [m, c] : h.terms()) {
    bool has_q = false, has_p = false;
    for (std::size_t i = 0; i < h.dof(); ++i) {
      has_q = has_q || m[i] > 0;
      has_p = has_p || m[h.dof() + i] > 0;
    }
    if (has_q && has_p) separable = false;
  }
  return symplectic::ObservableFn(
      dim, [h](std::span<const double> m) { return h.evaluate(m); },
      [grads = std::move(grads)](std::span<const double> m, std::span<double> out) {
        for (std::size_t i = 0; i < grads.size(); ++i) out[i] = grads[i].evaluate(m);
      },
      separable);
}

}  // namespace dualpair::poly
