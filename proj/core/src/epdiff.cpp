#include "dualpair/epdiff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dualpair/error.hpp"
#include "dualpair/summation.hpp"

namespace dualpair::epdiff {

const char* kernel_name(KernelFamily family) {
  return family == KernelFamily::Exp1d ? "exp1d" : "gaussian";
}

KernelFamily parse_kernel(std::string_view name) {
  if (name == "exp1d") return KernelFamily::Exp1d;
  if (name == "gaussian") return KernelFamily::Gaussian;
  throw ArgumentError("unknown kernel '" + std::string(name) + "'");
}

void KernelSpec::validate(std::size_t dim) const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ArgumentError("kernel alpha must be > 0");
  if (dim == 0) throw ArgumentError("kernel dimension must be >= 1");
  if (family == KernelFamily::Exp1d && dim != 1) {
    throw ArgumentError("exp1d kernel requires d = 1, got d = " + std::to_string(dim));
  }
}

namespace {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// G and grad G at x without allocation.
double kernel_with_grad(const KernelSpec& k, const double* x, std::size_t d, double* grad) {
  if (k.family == KernelFamily::Exp1d) {
    const double g = std::exp(-std::fabs(x[0]) / k.alpha) / (2.0 * k.alpha);
    grad[0] = x[0] > 0.0 ? -g / k.alpha : (x[0] < 0.0 ? g / k.alpha : 0.0);
    return g;
  }
  double r2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) r2 += x[i] * x[i];
  const double a2 = k.alpha * k.alpha;
  const double g = std::exp(-r2 / (2.0 * a2));
  for (std::size_t i = 0; i < d; ++i) grad[i] = -x[i] / a2 * g;
  return g;
}

double kernel_only(const KernelSpec& k, const double* x, std::size_t d) {
  if (k.family == KernelFamily::Exp1d) return std::exp(-std::fabs(x[0]) / k.alpha) / (2.0 * k.alpha);
  double r2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) r2 += x[i] * x[i];
  return std::exp(-r2 / (2.0 * k.alpha * k.alpha));
}

}  // namespace

double kernel_eval(const KernelSpec& k, std::span<const double> x) {
  k.validate(x.size());
  return kernel_only(k, x.data(), x.size());
}

std::vector<double> kernel_grad(const KernelSpec& k, std::span<const double> x) {
  k.validate(x.size());
  std::vector<double> g(x.size());
  kernel_with_grad(k, x.data(), x.size(), g.data());
  return g;
}

SingularState::SingularState(std::size_t dim, std::vector<double> q, std::vector<double> p,
                             std::vector<double> w, KernelSpec kernel)
    : dim_(dim), q_(std::move(q)), p_(std::move(p)), w_(std::move(w)), kernel_(kernel) {
  kernel_.validate(dim_);
  if (w_.empty()) throw ArgumentError("singular state needs at least one point");
  if (q_.size() != w_.size() * dim_ || p_.size() != w_.size() * dim_) {
    throw ArgumentError("singular state: Q, P, w lengths differ");
  }
  for (double x : w_) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ArgumentError("singular state weights must be > 0");
  }
  for (double x : q_) {
    if (!std::isfinite(x)) throw ArgumentError("singular state: non-finite Q");
  }
  for (double x : p_) {
    if (!std::isfinite(x)) throw ArgumentError("singular state: non-finite P");
  }
}

SingularState SingularState::with_phase(std::vector<double> q, std::vector<double> p) const {
  return SingularState(dim_, std::move(q), std::move(p), w_, kernel_);
}

bool operator==(const SingularState& a, const SingularState& b) {
  return a.dim_ == b.dim_ && a.q_ == b.q_ && a.p_ == b.p_ && a.w_ == b.w_ &&
         a.kernel_.family == b.kernel_.family && a.kernel_.alpha == b.kernel_.alpha;
}

FilamentState::FilamentState(SingularState state) : state_(std::move(state)) {
  const std::size_t n = state_.size();
  if (n < 3) throw ArgumentError("filament needs at least 3 chain points");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      double r2 = 0.0;
      for (std::size_t i = 0; i < state_.dim(); ++i) {
        const double d = state_.q(a)[i] - state_.q(b)[i];
        r2 += d * d;
      }
      if (!(r2 > 0.0)) {
        throw ArgumentError("filament points " + std::to_string(a) + " and " + std::to_string(b) +
                            " coincide");
      }
    }
  }
}

void FilamentState::require_nonvanishing() const {
  for (std::size_t a = 0; a < size(); ++a) {
    if (norm2(state_.p(a)) == 0.0) {
      throw ArgumentError("filament covector vanishes at node " + std::to_string(a));
    }
  }
}

double collective_hamiltonian(const SingularState& st) {
  const std::size_t n = st.size();
  const std::size_t d = st.dim();
  std::vector<double> diff(d);
  ExactAccumulator acc;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < d; ++i) diff[i] = st.q(a)[i] - st.q(b)[i];
      acc.add(0.5 * dot(st.p(a), st.p(b)) * kernel_only(st.kernel(), diff.data(), d) * st.w()[a] *
              st.w()[b]);
    }
  }
  return acc.result();
}

namespace {

// Rates for flat phase data, reusing the state's kernel and weights.
void rates_into(const SingularState& st, std::span<const double> q, std::span<const double> p,
                std::span<double> qdot, std::span<double> pdot) {
  const std::size_t n = st.size();
  const std::size_t d = st.dim();
  const auto w = st.w();
  std::vector<double> diff(d), grad(d);
  std::fill(qdot.begin(), qdot.end(), 0.0);
  std::fill(pdot.begin(), pdot.end(), 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    const double* qa = q.data() + a * d;
    const double* pa = p.data() + a * d;
    for (std::size_t b = 0; b < n; ++b) {
      const double* qb = q.data() + b * d;
      const double* pb = p.data() + b * d;
      for (std::size_t i = 0; i < d; ++i) diff[i] = qa[i] - qb[i];
      const double g = kernel_with_grad(st.kernel(), diff.data(), d, grad.data());
      double pp = 0.0;
      for (std::size_t i = 0; i < d; ++i) pp += pa[i] * pb[i];
      for (std::size_t i = 0; i < d; ++i) {
        qdot[a * d + i] += pb[i] * g * w[b];
        pdot[a * d + i] -= pp * grad[i] * w[b];
      }
    }
  }
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace

Rates rhs(const SingularState& st) {
  Rates r{std::vector<double>(st.q().size()), std::vector<double>(st.p().size())};
  rates_into(st, st.q(), st.p(), r.q, r.p);
  return r;
}

std::vector<double> total_momentum(const SingularState& st) {
  std::vector<double> out(st.dim());
  for (std::size_t i = 0; i < st.dim(); ++i) {
    ExactAccumulator acc;
    for (std::size_t a = 0; a < st.size(); ++a) acc.add(st.p(a)[i] * st.w()[a]);
    out[i] = acc.result();
  }
  return out;
}

SingularState step(const SingularState& st, symplectic::Method method, double dt,
                   std::size_t step_index) {
  using symplectic::Method;
  const std::size_t m = st.q().size();
  const auto q0 = st.q();
  const auto p0 = st.p();
  std::vector<double> q(q0.begin(), q0.end()), p(p0.begin(), p0.end());
  std::vector<double> qd(m), pd(m);

  switch (method) {
    case Method::ImplicitMidpoint: {
      rates_into(st, q0, p0, qd, pd);
      for (std::size_t i = 0; i < m; ++i) {
        q[i] = q0[i] + dt * qd[i];
        p[i] = p0[i] + dt * pd[i];
      }
      std::vector<double> qm(m), pm(m);
      bool converged = false;
      for (int it = 0; it < symplectic::kImplicitMaxIterations; ++it) {
        for (std::size_t i = 0; i < m; ++i) {
          qm[i] = 0.5 * (q0[i] + q[i]);
          pm[i] = 0.5 * (p0[i] + p[i]);
        }
        rates_into(st, qm, pm, qd, pd);
        double change = 0.0;
        double scale = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double qn = q0[i] + dt * qd[i];
          const double pn = p0[i] + dt * pd[i];
          change = std::max({change, std::fabs(qn - q[i]), std::fabs(pn - p[i])});
          scale = std::max({scale, std::fabs(qn), std::fabs(pn)});
          q[i] = qn;
          p[i] = pn;
        }
        if (!std::isfinite(change)) break;
        if (change <= symplectic::kImplicitTolerance * scale) {
          converged = true;
          break;
        }
      }
      if (!converged) throw NumericError("implicit midpoint solve did not converge", step_index);
      break;
    }
    case Method::RK4: {
      std::vector<double> kq[4], kp[4];
      std::vector<double> tq(q0.begin(), q0.end()), tp(p0.begin(), p0.end());
      const double c[4] = {0.0, 0.5, 0.5, 1.0};
      for (int s = 0; s < 4; ++s) {
        kq[s].resize(m);
        kp[s].resize(m);
        if (s > 0) {
          for (std::size_t i = 0; i < m; ++i) {
            tq[i] = q0[i] + c[s] * dt * kq[s - 1][i];
            tp[i] = p0[i] + c[s] * dt * kp[s - 1][i];
          }
        }
        rates_into(st, tq, tp, kq[s], kp[s]);
      }
      for (std::size_t i = 0; i < m; ++i) {
        q[i] = q0[i] + dt / 6.0 * (kq[0][i] + 2.0 * kq[1][i] + 2.0 * kq[2][i] + kq[3][i]);
        p[i] = p0[i] + dt / 6.0 * (kp[0][i] + 2.0 * kp[1][i] + 2.0 * kp[2][i] + kp[3][i]);
      }
      break;
    }
    case Method::StormerVerlet:
      throw ArgumentError("stormer-verlet requires a separable Hamiltonian");
  }
  for (const auto* v : {&q, &p}) {
    for (double x : *v) {
      if (!std::isfinite(x)) throw NumericError("non-finite state", step_index);
    }
  }
  return st.with_phase(std::move(q), std::move(p));
}

namespace {

void check_spec(const symplectic::FlowSpec& spec) {
  if (!(spec.dt > 0.0) || !std::isfinite(spec.dt)) throw ArgumentError("dt must be > 0");
  if (spec.method == symplectic::Method::StormerVerlet) {
    throw ArgumentError("stormer-verlet requires a separable Hamiltonian");
  }
}

}  // namespace

Trajectory integrate(const SingularState& st, const symplectic::FlowSpec& spec,
                     std::size_t record_every) {
  check_spec(spec);
  if (record_every == 0) throw ArgumentError("record_every must be >= 1");
  Trajectory traj;
  traj.t.push_back(0.0);
  traj.states.push_back(st);
  SingularState cur = st;
  for (std::size_t s = 1; s <= spec.steps; ++s) {
    cur = step(cur, spec.method, spec.dt, s);
    if (s % record_every == 0 || s == spec.steps) {
      traj.t.push_back(static_cast<double>(s) * spec.dt);
      traj.states.push_back(cur);
    }
  }
  return traj;
}

SingularState integrate_endpoint(const SingularState& st, const symplectic::FlowSpec& spec) {
  check_spec(spec);
  SingularState cur = st;
  for (std::size_t s = 1; s <= spec.steps; ++s) cur = step(cur, spec.method, spec.dt, s);
  return cur;
}

double j_L_pair(const SingularState& st, const SmoothVectorField& x) {
  if (x.dim != st.dim()) throw ArgumentError("j_L_pair: vector field dimension mismatch");
  ExactAccumulator acc;
  std::vector<double> v(st.dim());
  for (std::size_t a = 0; a < st.size(); ++a) {
    x.value(st.q(a), v);
    for (std::size_t i = 0; i < st.dim(); ++i) acc.add(st.p(a)[i] * v[i] * st.w()[a]);
  }
  return acc.result();
}

std::vector<double> j_R_filament(const FilamentState& fs) {
  const auto& st = fs.state();
  const std::size_t n = st.size();
  const std::size_t d = st.dim();
  const double inv = static_cast<double>(n) / 2.0;
  std::vector<double> m(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto qn = st.q((a + 1) % n);
    const auto qp = st.q((a + n - 1) % n);
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) acc += st.p(a)[i] * ((qn[i] - qp[i]) * inv);
    m[a] = acc;
  }
  return m;
}

double j_R_drift(std::span<const double> m0, std::span<const double> m) {
  if (m0.size() != m.size()) throw ArgumentError("j_R_drift: length mismatch");
  double num = 0.0;
  for (std::size_t a = 0; a < m.size(); ++a) num = std::max(num, std::fabs(m[a] - m0[a]));
  const double den = max_abs(m0);
  return den > 0.0 ? num / den : num;
}

FilamentState reparametrize(const FilamentState& fs, long shift) {
  const auto& st = fs.state();
  const long n = static_cast<long>(st.size());
  const std::size_t d = st.dim();
  const std::size_t s = static_cast<std::size_t>(((shift % n) + n) % n);
  std::vector<double> q(st.q().size()), p(st.p().size()), w(st.size());
  for (std::size_t a = 0; a < st.size(); ++a) {
    const std::size_t src = (a + s) % st.size();
    std::copy_n(st.q(src).begin(), d, q.begin() + static_cast<long>(a * d));
    std::copy_n(st.p(src).begin(), d, p.begin() + static_cast<long>(a * d));
    w[a] = st.w()[src];
  }
  return FilamentState(SingularState(d, std::move(q), std::move(p), std::move(w), st.kernel()));
}

}  // namespace dualpair::epdiff
