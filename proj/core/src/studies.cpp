#include "dualpair/studies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dualpair/bridge.hpp"
#include "dualpair/error.hpp"
#include "dualpair/mapping_space.hpp"

namespace dualpair::studies {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TrigField TrigField::random(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Mode> modes;
  for (auto [k1, k2] : {std::pair{1, 0}, {0, 1}, {1, 1}, {1, -1}}) {
    const double a = u(rng);
    const double b = u(rng);
    modes.push_back({k1, k2, a, b});
  }
  for (auto [k1, k2] : {std::pair{2, 0}, {0, 2}}) {
    const double a = 0.25 * u(rng);
    const double b = 0.25 * u(rng);
    modes.push_back({k1, k2, a, b});
  }
  return TrigField(std::move(modes));
}

double TrigField::operator()(double s1, double s2) const {
  double out = 0.0;
  for (const auto& m : modes_) {
    const double ph = kTwoPi * (m.k1 * s1 + m.k2 * s2);
    out += m.cos_amp * std::cos(ph) + m.sin_amp * std::sin(ph);
  }
  return out;
}

std::vector<double> TrigField::sample(const grid::GridSource& g) const {
  std::vector<double> v(g.node_count());
  for (std::size_t s = 0; s < v.size(); ++s) {
    const auto x = g.node_coords(s);
    v[s] = (*this)(x[0], x[1]);
  }
  return v;
}

std::vector<TrigField> random_fields(std::mt19937_64& rng, std::size_t count) {
  std::vector<TrigField> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(TrigField::random(rng));
  return out;
}

namespace {

std::vector<double> interleave(const grid::GridSource& g, std::span<const TrigField> comps) {
  const std::size_t dim = comps.size();
  std::vector<double> v(g.node_count() * dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const auto col = comps[c].sample(g);
    for (std::size_t s = 0; s < col.size(); ++s) v[s * dim + c] = col[s];
  }
  return v;
}

}  // namespace

grid::MapField sample_map(const grid::GridSource& g, std::span<const TrigField> comps) {
  return grid::MapField(g, comps.size(), interleave(g, comps));
}

grid::TangentField sample_tangent(const grid::GridSource& g, std::span<const TrigField> comps) {
  return grid::TangentField(g, comps.size(), interleave(g, comps));
}

grid::StreamFunction sample_stream(const grid::GridSource& g, const TrigField& f) {
  return grid::StreamFunction(g, f.sample(g));
}

symplectic::ObservableFn study_hamiltonian(std::size_t dof) {
  symplectic::require_phase_dimension(2 * dof);
  auto value = [dof](std::span<const double> m) {
    double h = 0.0;
    for (std::size_t i = 0; i < dof; ++i) {
      h += std::sin(m[i]) * m[dof + (i + 1) % dof] + std::cos(m[i]) + 0.5 * m[dof + i] * m[dof + i];
    }
    return h;
  };
  auto gradient = [dof](std::span<const double> m, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < dof; ++i) {
      const std::size_t j = dof + (i + 1) % dof;
      out[i] += std::cos(m[i]) * m[j] - std::sin(m[i]);
      out[j] += std::sin(m[i]);
      out[dof + i] += m[dof + i];
    }
  };
  return symplectic::ObservableFn(2 * dof, value, gradient);
}

epdiff::FilamentState random_filament(std::uint64_t seed, std::size_t points, double kernel_alpha) {
  if (points < 3) throw ArgumentError("filament needs at least 3 points");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double rc[2][2], tc[2][2], nc[2][2];
  for (auto* arr : {rc, tc, nc}) {
    for (int k = 0; k < 2; ++k) {
      arr[k][0] = u(rng);
      arr[k][1] = u(rng);
    }
  }
  auto series = [](double (*c)[2], double s, double amp) {
    double v = 0.0;
    for (int k = 0; k < 2; ++k) {
      const double ph = kTwoPi * (k + 2) * s;
      v += amp * (c[k][0] * std::cos(ph) + c[k][1] * std::sin(ph));
    }
    return v;
  };
  std::vector<double> q(2 * points), p(2 * points), w(points, 1.0 / static_cast<double>(points));
  for (std::size_t a = 0; a < points; ++a) {
    const double s = static_cast<double>(a) / static_cast<double>(points);
    const double r = 1.0 + series(rc, s, 0.08);
    const double th = kTwoPi * s;
    q[2 * a] = r * std::cos(th);
    q[2 * a + 1] = r * std::sin(th);
    const double tangential = 1.0 + series(tc, s, 0.3);
    const double normal = series(nc, s, 0.3);
    p[2 * a] = -tangential * std::sin(th) + normal * std::cos(th);
    p[2 * a + 1] = tangential * std::cos(th) + normal * std::sin(th);
  }
  return epdiff::FilamentState(epdiff::SingularState(
      2, std::move(q), std::move(p), std::move(w),
      epdiff::KernelSpec{epdiff::KernelFamily::Gaussian, kernel_alpha}));
}

const char* study_name(StudyOp op) {
  switch (op) {
    case StudyOp::Ooo: return "ooo";
    case StudyOp::SigmaR: return "sigma-r";
    case StudyOp::RightSquare: return "right-square";
    case StudyOp::HatDerivative: return "hat-derivative";
    case StudyOp::FilamentDt: return "filament-dt";
    case StudyOp::FilamentChain: return "filament-chain";
  }
  return "?";
}

StudyOp parse_study(std::string_view name) {
  for (StudyOp op : {StudyOp::Ooo, StudyOp::SigmaR, StudyOp::RightSquare, StudyOp::HatDerivative,
                     StudyOp::FilamentDt, StudyOp::FilamentChain}) {
    if (name == study_name(op)) return op;
  }
  throw ArgumentError("unknown study '" + std::string(name) + "'");
}

double observed_order(std::span<const double> n, std::span<const double> residual) {
  if (n.size() != residual.size() || n.size() < 2) {
    throw ArgumentError("observed_order needs at least two matching samples");
  }
  std::size_t zeros = 0;
  for (double r : residual) {
    if (!(r >= 0.0)) return std::numeric_limits<double>::quiet_NaN();
    if (r == 0.0) ++zeros;
  }
  if (zeros == residual.size()) return std::numeric_limits<double>::infinity();
  if (zeros > 0) return std::numeric_limits<double>::quiet_NaN();
  const double k = static_cast<double>(n.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    sx += std::log(n[i]);
    sy += std::log(residual[i]);
  }
  const double mx = sx / k, my = sy / k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double dx = std::log(n[i]) - mx;
    sxy += dx * (std::log(residual[i]) - my);
    sxx += dx * dx;
  }
  return -sxy / sxx;
}

namespace {

void require_sizes(std::span<const std::size_t> sizes) {
  if (sizes.size() < 2) throw ArgumentError("a convergence study needs at least two sizes");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 2) throw ArgumentError("study sizes must be >= 2");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw ArgumentError("study sizes must be ascending");
  }
}

double grid_residual(StudyOp op, std::size_t n, std::uint64_t seed) {
  // The draw order is fixed so each op sees the same continuum data at every N.
  std::mt19937_64 rng(seed);
  const auto f_c = random_fields(rng, 4);
  const auto alpha_c = TrigField::random(rng);
  const auto v_c = random_fields(rng, 4);

  const grid::GridSource g(grid::Topology::Periodic, n);
  const auto f = sample_map(g, f_c);
  const auto alpha = sample_stream(g, alpha_c);
  switch (op) {
    case StudyOp::Ooo:
      return std::fabs(mapping::orthogonality_residual(f, study_hamiltonian(2), alpha));
    case StudyOp::SigmaR: {
      const TrigField ax({{1, 0, 0.0, 1.0}});
      const TrigField ay({{0, 1, 0.0, 1.0}});
      return std::fabs(mapping::sigma_R_residual(sample_stream(g, ax), sample_stream(g, ay), f));
    }
    case StudyOp::RightSquare: {
      const auto vals = f.values();
      std::vector<double> q(2 * g.node_count()), p(2 * g.node_count());
      for (std::size_t s = 0; s < g.node_count(); ++s) {
        q[2 * s] = vals[4 * s];
        q[2 * s + 1] = vals[4 * s + 1];
        p[2 * s] = vals[4 * s + 2];
        p[2 * s + 1] = vals[4 * s + 3];
      }
      const bridge::CovectorField cov(g, 2, std::move(q), std::move(p));
      return bridge::right_square_residual(cov, alpha).residual;
    }
    case StudyOp::HatDerivative:
      return mapping::hamiltonian_derivative_residual(f, alpha, sample_tangent(g, v_c), 1e-2);
    default:
      break;
  }
  throw ArgumentError("not a grid study");
}

}  // namespace

StudyResult run_study(StudyOp op, std::span<const std::size_t> sizes, std::uint64_t seed,
                      const FilamentStudy& fil) {
  require_sizes(sizes);
  StudyResult out{op, {}, 0.0};
  std::vector<double> ns, rs;

  if (op == StudyOp::FilamentDt) {
    if (!(fil.t_final > 0.0) || fil.reference_factor < 2) throw ArgumentError("bad filament study");
    const auto st = random_filament(seed, fil.points);
    const auto m0 = epdiff::j_R_filament(st);
    auto run = [&](std::size_t steps) {
      symplectic::FlowSpec spec{symplectic::Method::ImplicitMidpoint,
                                fil.t_final / static_cast<double>(steps), steps};
      return epdiff::j_R_filament(
          epdiff::FilamentState(epdiff::integrate_endpoint(st.state(), spec)));
    };
    const auto ref = run(sizes.back() * fil.reference_factor);
    for (std::size_t steps : sizes) {
      const auto m = run(steps);
      double err = 0.0, den = 0.0;
      for (std::size_t a = 0; a < m.size(); ++a) {
        err = std::max(err, std::fabs(m[a] - ref[a]));
        den = std::max(den, std::fabs(m0[a]));
      }
      out.rows.push_back({study_name(op), steps, err / den});
    }
  } else if (op == StudyOp::FilamentChain) {
    if (!(fil.t_final > 0.0) || fil.steps == 0) throw ArgumentError("bad filament study");
    for (std::size_t a : sizes) {
      const auto st = random_filament(seed, a);
      symplectic::FlowSpec spec{symplectic::Method::ImplicitMidpoint,
                                fil.t_final / static_cast<double>(fil.steps), fil.steps};
      const auto end = epdiff::FilamentState(epdiff::integrate_endpoint(st.state(), spec));
      out.rows.push_back(
          {study_name(op), a, epdiff::j_R_drift(epdiff::j_R_filament(st), epdiff::j_R_filament(end))});
    }
  } else {
    for (std::size_t n : sizes) out.rows.push_back({study_name(op), n, grid_residual(op, n, seed)});
  }

  for (const auto& r : out.rows) {
    ns.push_back(static_cast<double>(r.n));
    rs.push_back(r.residual);
  }
  out.observed_order = observed_order(ns, rs);
  return out;
}

}  // namespace dualpair::studies
