#include "dualpair/mapping_space.hpp"

#include <cmath>
#include <string>

#include "dualpair/error.hpp"
#include "dualpair/summation.hpp"

namespace dualpair::mapping {

namespace {

void require_same_grid(const GridSource& a, const GridSource& b, const char* where) {
  if (!(a == b)) throw ArgumentError(std::string(where) + ": grid mismatch");
}

template <class A, class B>
void require_same_shape(const A& a, const B& b, const char* where) {
  require_same_grid(a.grid(), b.grid(), where);
  if (a.dim() != b.dim()) throw ArgumentError(std::string(where) + ": dimension mismatch");
}

// Weighted nodal sum sum_s term(s) mu_s, rounded once.
template <class Fn>
double nodal_integral(const GridSource& g, Fn&& term) {
  ExactAccumulator acc;
  const auto w = g.weights();
  for (std::size_t s = 0; s < g.node_count(); ++s) acc.add(term(s) * w[s]);
  return acc.result();
}

// sum_cells c_cell a_cell * dA.
double cell_integral(const GridSource& g, std::span<const double> c, std::span<const double> a) {
  ExactAccumulator acc;
  for (std::size_t k = 0; k < c.size(); ++k) acc.add(c[k] * a[k]);
  return acc.result() * g.cell_area();
}

}  // namespace

void require_phase_valued(const MapField& f) { symplectic::require_phase_dimension(f.dim()); }

double omega_bar(const MapField& f, const TangentField& u, const TangentField& v) {
  require_phase_valued(f);
  require_same_shape(f, u, "omega_bar");
  require_same_shape(f, v, "omega_bar");
  return nodal_integral(f.grid(),
                        [&](std::size_t s) { return symplectic::canonical_omega(u.at(s), v.at(s)); });
}

double h_bar(const MapField& f, const ObservableFn& h) {
  if (h.dimension() != f.dim()) throw ArgumentError("h_bar: dimension mismatch");
  return nodal_integral(f.grid(), [&](std::size_t s) { return h(f.at(s)); });
}

TangentField left_generator(const MapField& f, const ObservableFn& h) {
  require_phase_valued(f);
  if (h.dimension() != f.dim()) throw ArgumentError("left_generator: dimension mismatch");
  TangentField out(f.grid(), f.dim());
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    const auto x = symplectic::hamiltonian_vector_field(h, f.at(s));
    std::copy(x.begin(), x.end(), out.at(s).begin());
  }
  return out;
}

std::array<std::vector<double>, 2> stream_velocity(const StreamFunction& alpha) {
  auto d1 = grid::diff_s1(alpha.grid(), alpha.values());
  auto d2 = grid::diff_s2(alpha.grid(), alpha.values());
  for (double& x : d1) x = -x;
  return {std::move(d2), std::move(d1)};
}

TangentField right_generator(const MapField& f, const StreamFunction& alpha) {
  require_same_grid(f.grid(), alpha.grid(), "right_generator");
  const auto x = stream_velocity(alpha);
  TangentField out(f.grid(), f.dim());
  for (std::size_t c = 0; c < f.dim(); ++c) {
    const auto comp = f.component(c);
    const auto d1 = grid::diff_s1(f.grid(), comp);
    const auto d2 = grid::diff_s2(f.grid(), comp);
    for (std::size_t s = 0; s < f.node_count(); ++s) {
      out.at(s)[c] = d1[s] * x[0][s] + d2[s] * x[1][s];
    }
  }
  return out;
}

CellTwoForm pullback_omega(const MapField& f) {
  require_phase_valued(f);
  const auto& g = f.grid();
  const std::size_t dim = f.dim();
  const std::size_t n = dim / 2;
  std::vector<std::array<std::vector<double>, 2>> diffs;
  diffs.reserve(dim);
  for (std::size_t c = 0; c < dim; ++c) diffs.push_back(grid::cell_differences(g, f.component(c)));
  std::vector<double> out(g.cell_count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += diffs[i][0][k] * diffs[n + i][1][k] - diffs[n + i][0][k] * diffs[i][1][k];
    }
    out[k] = acc;
  }
  return CellTwoForm(g, std::move(out));
}

CellTwoForm j_R(const MapField& f) { return -pullback_omega(f); }

double omega_alpha_hat(const MapField& f, const StreamFunction& alpha) {
  require_same_grid(f.grid(), alpha.grid(), "omega_alpha_hat");
  const auto c = pullback_omega(f);
  const auto a = grid::cell_average(f.grid(), alpha.values());
  return cell_integral(f.grid(), c.values(), a);
}

double j_R_pair(const MapField& f, const StreamFunction& alpha) {
  return -omega_alpha_hat(f, alpha);
}

SourceForm SourceForm::function(const StreamFunction& alpha) {
  return SourceForm{0, {std::vector<double>(alpha.values().begin(), alpha.values().end())}};
}

SourceForm SourceForm::one_form(std::vector<double> a1, std::vector<double> a2) {
  return SourceForm{1, {std::move(a1), std::move(a2)}};
}

SourceForm SourceForm::density(std::vector<double> a) { return SourceForm{2, {std::move(a)}}; }

double hat_pairing(const MapField& f, const SourceForm& alpha, std::span<const TangentField> args) {
  require_phase_valued(f);
  const auto& g = f.grid();
  const std::size_t expected_components = alpha.degree == 1 ? 2 : 1;
  if (alpha.degree < 0 || alpha.degree > 2 || alpha.components.size() != expected_components) {
    throw ArgumentError("hat_pairing: malformed source form");
  }
  for (const auto& comp : alpha.components) {
    if (comp.size() != g.node_count()) throw ArgumentError("hat_pairing: source form shape mismatch");
  }
  // omega is a 2-form on M and S has dimension 2: p + q - k = q arguments.
  if (args.size() != static_cast<std::size_t>(alpha.degree)) {
    throw ArgumentError("hat_pairing: expected " + std::to_string(alpha.degree) +
                        " tangent arguments, got " + std::to_string(args.size()));
  }
  for (const auto& u : args) require_same_shape(f, u, "hat_pairing");

  switch (alpha.degree) {
    case 0: {
      const auto c = pullback_omega(f);
      const auto a = grid::cell_average(g, alpha.components[0]);
      return cell_integral(g, c.values(), a);
    }
    case 1: {
      // f^*(i_U omega) = omega(U, D1 f) ds1 + omega(U, D2 f) ds2, wedge (a1 ds1 + a2 ds2).
      const std::size_t dim = f.dim();
      std::vector<std::vector<double>> d1(dim), d2(dim);
      for (std::size_t c = 0; c < dim; ++c) {
        const auto comp = f.component(c);
        d1[c] = grid::diff_s1(g, comp);
        d2[c] = grid::diff_s2(g, comp);
      }
      const auto& u = args[0];
      std::vector<double> t1(dim), t2(dim);
      ExactAccumulator acc;
      for (std::size_t s = 0; s < g.node_count(); ++s) {
        for (std::size_t c = 0; c < dim; ++c) {
          t1[c] = d1[c][s];
          t2[c] = d2[c][s];
        }
        const double b1 = symplectic::canonical_omega(u.at(s), t1);
        const double b2 = symplectic::canonical_omega(u.at(s), t2);
        acc.add((b1 * alpha.components[1][s] - b2 * alpha.components[0][s]) * g.weights()[s]);
      }
      return acc.result() * (1.0 / g.mass());
    }
    default: {
      const auto& u = args[0];
      const auto& v = args[1];
      return nodal_integral(g, [&](std::size_t s) {
        return symplectic::canonical_omega(u.at(s), v.at(s)) * alpha.components[0][s];
      });
    }
  }
}

double orthogonality_residual(const MapField& f, const ObservableFn& h,
                              const StreamFunction& alpha) {
  return omega_bar(f, left_generator(f, h), right_generator(f, alpha));
}

double sigma_R_residual(const StreamFunction& alpha_x, const StreamFunction& alpha_y,
                        const MapField& f) {
  require_same_grid(f.grid(), alpha_x.grid(), "sigma_R_residual");
  require_same_grid(f.grid(), alpha_y.grid(), "sigma_R_residual");
  const auto& g = f.grid();
  if (!g.periodic()) throw ArgumentError("sigma_R_residual: requires periodic topology");

  // Potential of the bracket, mu(X, Y) = X^1 Y^2 - X^2 Y^1, per cell from the
  // corner differences of the potentials, then its zero-mean representative.
  const auto dx = grid::cell_differences(g, alpha_x.values());
  const auto dy = grid::cell_differences(g, alpha_y.values());
  std::vector<double> potential(g.cell_count());
  for (std::size_t k = 0; k < potential.size(); ++k) {
    // X = (D2 a, -D1 a)  =>  X^1 Y^2 - X^2 Y^1 = -D2ax D1ay + D1ax D2ay.
    potential[k] = dx[0][k] * dy[1][k] - dx[1][k] * dy[0][k];
  }
  const double mean = exact_sum(potential) / static_cast<double>(potential.size());
  for (double& x : potential) x -= mean;

  const auto c = pullback_omega(f);
  const double paired = cell_integral(g, c.values(), potential);
  const double generators = omega_bar(f, right_generator(f, alpha_x), right_generator(f, alpha_y));
  return paired - generators;
}

namespace {

MapField perturbed(const MapField& f, const TangentField& v, double eps) {
  std::vector<double> vals(f.values().begin(), f.values().end());
  const auto dv = v.values();
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] += eps * dv[i];
  return MapField(f.grid(), f.dim(), std::move(vals));
}

}  // namespace

double omega_alpha_hat_derivative(const MapField& f, const StreamFunction& alpha,
                                  const TangentField& v, double eps) {
  require_same_shape(f, v, "omega_alpha_hat_derivative");
  if (!(eps > 0.0)) throw ArgumentError("omega_alpha_hat_derivative: eps must be > 0");
  return (omega_alpha_hat(perturbed(f, v, eps), alpha) -
          omega_alpha_hat(perturbed(f, v, -eps), alpha)) /
         (2.0 * eps);
}

double hamiltonian_derivative_residual(const MapField& f, const StreamFunction& alpha,
                                       const TangentField& v, double eps) {
  const double derivative = -omega_alpha_hat_derivative(f, alpha, v, eps);
  return std::fabs(derivative - omega_bar(f, right_generator(f, alpha), v));
}

MapField left_act(const MapField& f, const ObservableFn& h, const FlowSpec& spec) {
  LeftFlow flow(f, h, spec.method, spec.dt);
  for (std::size_t s = 0; s < spec.steps; ++s) flow.advance();
  return flow.current();
}

LeftFlow::LeftFlow(MapField f, ObservableFn h, symplectic::Method method, double dt)
    : f_(std::move(f)), h_(std::move(h)), method_(method), dt_(dt), carry_(f_.values().size(), 0.0) {
  if (h_.dimension() != f_.dim()) throw ArgumentError("left_act: dimension mismatch");
  symplectic::validate(FlowSpec{method_, dt_, 1}, h_);
}

void LeftFlow::advance() {
  const std::size_t dim = f_.dim();
  for (std::size_t s = 0; s < f_.node_count(); ++s) {
    const auto delta = symplectic::increment(h_, f_.at(s), method_, dt_, steps_ + 1);
    symplectic::compensated_add(f_.at(s), std::span<double>(carry_).subspan(s * dim, dim), delta);
  }
  ++steps_;
}

void require_symplectic_matrix(std::span<const double> a, std::size_t dim, double tol) {
  symplectic::require_phase_dimension(dim);
  if (a.size() != dim * dim) throw ArgumentError("symplectic matrix: wrong size");
  // omega(A e_i, A e_j) must equal omega(e_i, e_j).
  std::vector<double> ci(dim), cj(dim), ei(dim), ej(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t r = 0; r < dim; ++r) {
        ci[r] = a[r * dim + i];
        cj[r] = a[r * dim + j];
      }
      std::fill(ei.begin(), ei.end(), 0.0);
      std::fill(ej.begin(), ej.end(), 0.0);
      ei[i] = 1.0;
      ej[j] = 1.0;
      if (std::fabs(symplectic::canonical_omega(ci, cj) - symplectic::canonical_omega(ei, ej)) >
          tol) {
        throw ArgumentError("matrix is not symplectic");
      }
    }
  }
}

MapField left_act_linear(const MapField& f, std::span<const double> a) {
  require_symplectic_matrix(a, f.dim());
  const std::size_t dim = f.dim();
  MapField out = f;
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    const auto in = f.at(s);
    auto dst = out.at(s);
    for (std::size_t r = 0; r < dim; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) acc += a[r * dim + c] * in[c];
      dst[r] = acc;
    }
  }
  return out;
}

MapField right_act(const MapField& f, const GridSymmetry& psi) {
  psi.require_declared(f.grid());
  MapField out = f;
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    const auto src = f.at(psi.apply(f.grid(), s));
    std::copy(src.begin(), src.end(), out.at(s).begin());
  }
  return out;
}

StreamFunction right_act(const StreamFunction& alpha, const GridSymmetry& psi) {
  psi.require_declared(alpha.grid());
  std::vector<double> v(alpha.values().size());
  for (std::size_t s = 0; s < v.size(); ++s) v[s] = alpha[psi.apply(alpha.grid(), s)];
  return StreamFunction(alpha.grid(), std::move(v));
}

CellTwoForm right_act(const CellTwoForm& c, const GridSymmetry& psi) {
  const auto& g = c.grid();
  psi.require_declared(g);
  const long n = static_cast<long>(g.cells_per_side());
  auto floor_half = [](long x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); };
  std::vector<double> v(g.cell_count());
  for (std::size_t k = 0; k < v.size(); ++k) {
    // Map the cell centre, in half-cell units, and locate the image cell.
    long a = 2 * static_cast<long>(k / g.cells_per_side()) + 1;
    long b = 2 * static_cast<long>(k % g.cells_per_side()) + 1;
    for (int t = 0; t < ((psi.quarter_turns % 4) + 4) % 4; ++t) {
      const long tmp = a;
      a = -b;
      b = tmp;
    }
    const long i1 = (((floor_half(a) + psi.shift1) % n) + n) % n;
    const long i2 = (((floor_half(b) + psi.shift2) % n) + n) % n;
    v[k] = c[static_cast<std::size_t>(i1 * n + i2)];
  }
  return CellTwoForm(g, std::move(v));
}

StreamFunction push_forward(const StreamFunction& alpha, const GridSymmetry& psi) {
  return right_act(alpha, psi.inverse());
}

}  // namespace dualpair::mapping
