#include "dualpair/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dualpair/error.hpp"

namespace dualpair::symplectic {

void require_phase_dimension(std::size_t dim) {
  if (dim < 2 || dim % 2 != 0) {
    throw ArgumentError("phase space dimension must be even and >= 2, got " + std::to_string(dim));
  }
}

PhasePoint::PhasePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  require_phase_dimension(coords_.size());
}

PhasePoint::PhasePoint(std::initializer_list<double> coords)
    : PhasePoint(std::vector<double>(coords)) {}

double canonical_omega(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw ArgumentError("canonical_omega: dimension mismatch");
  }
  require_phase_dimension(u.size());
  const std::size_t n = u.size() / 2;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += u[i] * v[n + i] - u[n + i] * v[i];
  }
  return acc;
}

ObservableFn::ObservableFn(std::size_t dimension, Value value, Gradient gradient, bool separable)
    : dimension_(dimension),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      separable_(separable) {
  require_phase_dimension(dimension_);
  if (!value_ || !gradient_) throw ArgumentError("ObservableFn: empty callable");
}

ObservableFn ObservableFn::from_value(std::size_t dimension, Value value, bool separable) {
  auto grad = [value](std::span<const double> m, std::span<double> out) {
    static const double kStep = std::cbrt(std::numeric_limits<double>::epsilon());
    std::vector<double> x(m.begin(), m.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double h = kStep * (1.0 + std::fabs(m[i]));
      auto at = [&](double offset) {
        x[i] = m[i] + offset;
        return value(x);
      };
      const double d = (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
      x[i] = m[i];
      out[i] = d;
    }
  };
  return ObservableFn(dimension, std::move(value), std::move(grad), separable);
}

ObservableFn ObservableFn::constant(std::size_t dimension, double c) {
  return ObservableFn(
      dimension, [c](std::span<const double>) { return c; },
      [](std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); },
      true);
}

ObservableFn ObservableFn::harmonic_oscillator(std::size_t dof) {
  return ObservableFn(
      2 * dof,
      [](std::span<const double> m) {
        double s = 0.0;
        for (double x : m) s += x * x;
        return 0.5 * s;
      },
      [](std::span<const double> m, std::span<double> out) {
        std::copy(m.begin(), m.end(), out.begin());
      },
      true);
}

ObservableFn ObservableFn::free_particle(std::size_t dof) {
  return ObservableFn(
      2 * dof,
      [dof](std::span<const double> m) {
        double s = 0.0;
        for (std::size_t i = 0; i < dof; ++i) s += m[dof + i] * m[dof + i];
        return 0.5 * s;
      },
      [dof](std::span<const double> m, std::span<double> out) {
        for (std::size_t i = 0; i < dof; ++i) {
          out[i] = 0.0;
          out[dof + i] = m[dof + i];
        }
      },
      true);
}

double ObservableFn::operator()(std::span<const double> m) const {
  if (m.size() != dimension_) throw ArgumentError("ObservableFn: dimension mismatch");
  return value_(m);
}

std::vector<double> ObservableFn::gradient(std::span<const double> m) const {
  std::vector<double> out(dimension_);
  gradient(m, out);
  return out;
}

void ObservableFn::gradient(std::span<const double> m, std::span<double> out) const {
  if (m.size() != dimension_ || out.size() != dimension_) {
    throw ArgumentError("ObservableFn: dimension mismatch");
  }
  gradient_(m, out);
}

namespace {

void field_into(const ObservableFn& h, std::span<const double> m, std::span<double> out,
                std::span<double> scratch) {
  h.gradient(m, scratch);
  const std::size_t n = m.size() / 2;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = scratch[n + i];
    out[n + i] = -scratch[i];
  }
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

std::vector<double> hamiltonian_vector_field(const ObservableFn& h, std::span<const double> m) {
  std::vector<double> out(m.size()), scratch(m.size());
  field_into(h, m, out, scratch);
  return out;
}

double poisson_bracket_value(const ObservableFn& g, const ObservableFn& h,
                             std::span<const double> m) {
  return canonical_omega(hamiltonian_vector_field(g, m), hamiltonian_vector_field(h, m));
}

const char* method_name(Method method) {
  switch (method) {
    case Method::ImplicitMidpoint: return "implicit-midpoint";
    case Method::StormerVerlet: return "stormer-verlet";
    case Method::RK4: return "rk4";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "implicit-midpoint") return Method::ImplicitMidpoint;
  if (name == "stormer-verlet") return Method::StormerVerlet;
  if (name == "rk4") return Method::RK4;
  throw ArgumentError("unknown integration method '" + std::string(name) + "'");
}

void validate(const FlowSpec& spec, const ObservableFn& h) {
  if (!(spec.dt > 0.0) || !std::isfinite(spec.dt)) throw ArgumentError("FlowSpec: dt must be > 0");
  if (spec.method == Method::StormerVerlet && !h.separable()) {
    throw ArgumentError("FlowSpec: stormer-verlet requires a separable observable");
  }
}

std::vector<double> increment(const ObservableFn& h, std::span<const double> m, Method method,
                              double dt, std::size_t step_index) {
  const std::size_t dim = m.size();
  const std::size_t n = dim / 2;
  std::vector<double> delta(dim, 0.0);
  std::vector<double> scratch(dim), k(dim);

  switch (method) {
    case Method::ImplicitMidpoint: {
      // z1 = z0 + dt X_h((z0 + z1) / 2), fixed-point iteration from an Euler guess.
      field_into(h, m, k, scratch);
      std::vector<double> out(dim), mid(dim), next(dim);
      for (std::size_t i = 0; i < dim; ++i) out[i] = m[i] + dt * k[i];
      bool converged = false;
      for (int it = 0; it < kImplicitMaxIterations; ++it) {
        for (std::size_t i = 0; i < dim; ++i) mid[i] = 0.5 * (m[i] + out[i]);
        field_into(h, mid, k, scratch);
        double change = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
          delta[i] = dt * k[i];
          next[i] = m[i] + delta[i];
          change = std::max(change, std::fabs(next[i] - out[i]));
        }
        out.swap(next);
        if (!std::isfinite(change)) break;
        if (change <= kImplicitTolerance * std::max(1.0, max_abs(out))) {
          converged = true;
          break;
        }
      }
      if (!converged) throw NumericError("implicit midpoint solve did not converge", step_index);
      break;
    }
    case Method::StormerVerlet: {
      // Kick-drift-kick; dh/dq depends only on q and dh/dp only on p.
      std::vector<double> out(m.begin(), m.end());
      h.gradient(out, scratch);
      for (std::size_t i = 0; i < n; ++i) {
        delta[n + i] = -0.5 * dt * scratch[i];
        out[n + i] = m[n + i] + delta[n + i];
      }
      h.gradient(out, scratch);
      for (std::size_t i = 0; i < n; ++i) {
        delta[i] = dt * scratch[n + i];
        out[i] = m[i] + delta[i];
      }
      h.gradient(out, scratch);
      for (std::size_t i = 0; i < n; ++i) delta[n + i] -= 0.5 * dt * scratch[i];
      break;
    }
    case Method::RK4: {
      std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
      field_into(h, m, k1, scratch);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = m[i] + 0.5 * dt * k1[i];
      field_into(h, tmp, k2, scratch);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = m[i] + 0.5 * dt * k2[i];
      field_into(h, tmp, k3, scratch);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = m[i] + dt * k3[i];
      field_into(h, tmp, k4, scratch);
      for (std::size_t i = 0; i < dim; ++i) {
        delta[i] = dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
      break;
    }
  }
  for (double x : delta) {
    if (!std::isfinite(x)) throw NumericError("non-finite state", step_index);
  }
  return delta;
}

std::vector<double> step(const ObservableFn& h, std::span<const double> m, Method method, double dt,
                         std::size_t step_index) {
  const auto delta = increment(h, m, method, dt, step_index);
  std::vector<double> out(m.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = m[i] + delta[i];
  for (double x : out) {
    if (!std::isfinite(x)) throw NumericError("non-finite state", step_index);
  }
  return out;
}

void compensated_add(std::span<double> z, std::span<double> carry, std::span<const double> delta) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double y = delta[i] - carry[i];
    const double t = z[i] + y;
    carry[i] = (t - z[i]) - y;
    z[i] = t;
  }
}

std::vector<PhasePoint> flow(const ObservableFn& h, const PhasePoint& m0, const FlowSpec& spec) {
  validate(spec, h);
  if (m0.dimension() != h.dimension()) throw ArgumentError("flow: dimension mismatch");
  std::vector<PhasePoint> traj;
  traj.reserve(spec.steps + 1);
  traj.push_back(m0);
  std::vector<double> z(m0.coords().begin(), m0.coords().end()), carry(z.size(), 0.0);
  for (std::size_t s = 0; s < spec.steps; ++s) {
    compensated_add(z, carry, increment(h, z, spec.method, spec.dt, s + 1));
    traj.emplace_back(z);
  }
  return traj;
}

std::vector<double> flow_endpoint(const ObservableFn& h, std::span<const double> m0,
                                  const FlowSpec& spec) {
  validate(spec, h);
  if (m0.size() != h.dimension()) throw ArgumentError("flow: dimension mismatch");
  std::vector<double> m(m0.begin(), m0.end()), carry(m.size(), 0.0);
  for (std::size_t s = 0; s < spec.steps; ++s) {
    compensated_add(m, carry, increment(h, m, spec.method, spec.dt, s + 1));
  }
  return m;
}

}  // namespace dualpair::symplectic
