#include "dualpair/bridge.hpp"

#include <cmath>

#include "dualpair/error.hpp"
#include "dualpair/mapping_space.hpp"
#include "dualpair/summation.hpp"

namespace dualpair::bridge {

CovectorField::CovectorField(GridSource grid, std::size_t dim, std::vector<double> base,
                             std::vector<double> covector)
    : grid_(std::move(grid)), dim_(dim), base_(std::move(base)), covector_(std::move(covector)) {
  if (dim_ == 0) throw ArgumentError("covector field: dimension must be >= 1");
  if (base_.size() != grid_.node_count() * dim_ || covector_.size() != base_.size()) {
    throw ArgumentError("covector field: shape mismatch");
  }
}

MapField CovectorField::base_map() const { return MapField(grid_, dim_, base_); }

MapField CovectorField::phase_map() const {
  MapField out(grid_, 2 * dim_);
  for (std::size_t s = 0; s < node_count(); ++s) {
    auto dst = out.at(s);
    std::copy(base(s).begin(), base(s).end(), dst.begin());
    std::copy(covector(s).begin(), covector(s).end(), dst.begin() + static_cast<long>(dim_));
  }
  return out;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// exact_sum of terms * mu and of |terms| * mu.
struct WeightedSum {
  ExactAccumulator value;
  ExactAccumulator magnitude;
  void add(double term, double mu) {
    value.add(term * mu);
    magnitude.add(std::fabs(term * mu));
  }
};

}  // namespace

double phi_pair(const CovectorField& p, const TangentField& v) {
  if (!(p.grid() == v.grid()) || v.dim() != p.dim()) throw ArgumentError("phi_pair: shape mismatch");
  ExactAccumulator acc;
  const auto w = p.grid().weights();
  for (std::size_t s = 0; s < p.node_count(); ++s) acc.add(dot(p.covector(s), v.at(s)) * w[s]);
  return acc.result();
}

symplectic::ObservableFn calP(const SmoothVectorField& x) {
  const std::size_t d = x.dim;
  if (d == 0) throw ArgumentError("calP: vector field dimension must be >= 1");
  auto value = [x, d](std::span<const double> m) {
    std::vector<double> v(d);
    x.value(m.first(d), v);
    return dot(m.subspan(d, d), v);
  };
  auto gradient = [x, d](std::span<const double> m, std::span<double> out) {
    std::vector<double> v(d), jac(d * d);
    x.value(m.first(d), v);
    x.jacobian(m.first(d), jac);
    const auto p = m.subspan(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < d; ++i) acc += p[i] * jac[i * d + j];
      out[j] = acc;
      out[d + j] = v[j];
    }
  };
  return symplectic::ObservableFn(2 * d, value, gradient);
}

namespace {

void require_base_field(std::span<const poly::RationalPoly> x) {
  const std::size_t d = x.size();
  if (d == 0) throw ArgumentError("polynomial vector field must have >= 1 component");
  for (const auto& c : x) {
    if (c.dof() != d) throw ArgumentError("polynomial vector field: ring dof must equal d");
    for (const auto& [mono, coeff] : c.terms()) {
      for (std::size_t i = d; i < 2 * d; ++i) {
        if (mono[i] != 0) throw ArgumentError("vector field on M must not depend on p");
      }
    }
  }
}

}  // namespace

poly::RationalPoly calP_exact(std::span<const poly::RationalPoly> x) {
  require_base_field(x);
  const std::size_t d = x.size();
  poly::RationalPoly out(d);
  for (std::size_t i = 0; i < d; ++i) out += poly::RationalPoly::p(d, i) * x[i];
  return out;
}

std::vector<poly::RationalPoly> base_bracket(std::span<const poly::RationalPoly> x,
                                             std::span<const poly::RationalPoly> y) {
  require_base_field(x);
  require_base_field(y);
  const std::size_t d = x.size();
  if (y.size() != d) throw ArgumentError("base_bracket: dimension mismatch");
  std::vector<poly::RationalPoly> out(d, poly::RationalPoly(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      out[i] += y[j] * x[i].derivative(j) - x[j] * y[i].derivative(j);
    }
  }
  return out;
}

Residual left_square_residual(const CovectorField& p, const SmoothVectorField& x) {
  if (x.dim != p.dim()) throw ArgumentError("left_square_residual: dimension mismatch");
  const auto obs = calP(x);
  const auto phase = p.phase_map();
  const auto w = p.grid().weights();
  WeightedSum lhs;
  ExactAccumulator rhs;
  std::vector<double> v(p.dim());
  for (std::size_t s = 0; s < p.node_count(); ++s) {
    x.value(p.base(s), v);
    lhs.add(dot(p.covector(s), v), w[s]);
    rhs.add(obs(phase.at(s)) * w[s]);
  }
  return {std::fabs(lhs.value.result() - rhs.result()), lhs.magnitude.result()};
}

Residual right_square_residual(const CovectorField& p, const StreamFunction& alpha) {
  if (!(p.grid() == alpha.grid())) throw ArgumentError("right_square_residual: grid mismatch");
  const auto q = p.base_map();
  const auto gen = mapping::right_generator(q, alpha);
  const auto w = p.grid().weights();
  WeightedSum lhs;
  for (std::size_t s = 0; s < p.node_count(); ++s) lhs.add(dot(p.covector(s), gen.at(s)), w[s]);
  const double rhs = -mapping::omega_alpha_hat(p.phase_map(), alpha);
  return {std::fabs(lhs.value.result() - rhs), lhs.magnitude.result()};
}

Residual phi_symplecticity_residual(const CovectorField& p, const TangentField& v1,
                                    const TangentField& v2) {
  const std::size_t d = p.dim();
  for (const TangentField* v : {&v1, &v2}) {
    if (!(v->grid() == p.grid()) || v->dim() != 2 * d) {
      throw ArgumentError("phi_symplecticity_residual: perturbation shape mismatch");
    }
  }
  const auto w = p.grid().weights();
  ExactAccumulator magnitude;
  ExactAccumulator rhs;
  for (std::size_t s = 0; s < p.node_count(); ++s) {
    const auto a = v1.at(s);
    const auto b = v2.at(s);
    magnitude.add(std::fabs(symplectic::canonical_omega(a, b) * w[s]));
    const double pair = dot(b.subspan(d, d), a.first(d)) - dot(a.subspan(d, d), b.first(d));
    rhs.add(pair * w[s]);
  }
  const double lhs = mapping::omega_bar(p.phase_map(), v1, v2);
  return {std::fabs(lhs - rhs.result()), magnitude.result()};
}

}  // namespace dualpair::bridge
