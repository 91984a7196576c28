#include "dualpair/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dualpair/bridge.hpp"
#include "dualpair/epdiff.hpp"
#include "dualpair/mapping_space.hpp"
#include "dualpair/poly_poisson.hpp"
#include "dualpair/studies.hpp"

namespace dualpair::verification {

namespace {

using poly::RationalPoly;
using poly::Rational;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

double max_abs_coeff(const RationalPoly& p) {
  double m = 0.0;
  for (const auto& [mono, c] : p.terms()) m = std::max(m, std::fabs(c.get_d()));
  return m;
}

double max_abs_coeff(const poly::PolyVectorField& x) {
  double m = 0.0;
  for (const auto& c : x.components()) m = std::max(m, max_abs_coeff(c));
  return m;
}

// Tracks the worst residual of one identity over many samples.
struct ExactCheck {
  const char* id;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double worst = 0.0;

  void record(double residual) {
    ++samples;
    if (residual != 0.0) ++failures;
    worst = std::max(worst, residual);
  }
  VerificationRow row() const { return {id, samples, worst, kNaN, failures == 0}; }
};

RationalPoly random_base_component(std::mt19937_64& rng, std::size_t dof) {
  // Drop every monomial that involves a momentum variable.
  const auto full = poly::random_poly(rng, dof, 3, 4);
  RationalPoly out(dof);
  for (const auto& [mono, c] : full.terms()) {
    bool base_only = true;
    for (std::size_t i = dof; i < 2 * dof; ++i) base_only = base_only && mono[i] == 0;
    if (base_only) out += RationalPoly::monomial(dof, mono, c);
  }
  return out;
}

poly::BasePoint random_base_point(std::mt19937_64& rng, std::size_t dof) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < 2 * dof; ++i) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    c.push_back(r);
  }
  return poly::BasePoint(std::move(c));
}

}  // namespace

std::vector<VerificationRow> exact_suite(std::uint64_t seed, std::size_t samples) {
  std::mt19937_64 rng(seed);
  ExactCheck anti{"poisson_antisymmetry"}, jacobi{"poisson_jacobi"}, leibniz{"poisson_leibniz"},
      cocycle{"sigma_T_cocycle"}, iso{"iso_homomorphism"}, sign{"bracket_sign_convention"},
      calp{"calP_homomorphism"};

  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t dof = 1 + i % 2;
    const auto g = poly::random_poly(rng, dof, 4, 5);
    const auto h = poly::random_poly(rng, dof, 4, 5);
    const auto k = poly::random_poly(rng, dof, 4, 5);
    const auto m0 = random_base_point(rng, dof);

    const auto gh = poly::poisson_bracket_exact(g, h);
    anti.record(max_abs_coeff(gh + poly::poisson_bracket_exact(h, g)));
    jacobi.record(max_abs_coeff(poly::jacobi_residual(g, h, k)));
    leibniz.record(max_abs_coeff(poly::poisson_bracket_exact(g, h * k) -
                                 (gh * k + h * poly::poisson_bracket_exact(g, k))));
    cocycle.record(std::fabs(poly::two_cocycle_residual(g, h, k, m0).get_d()));

    const auto lhs = poly::iso_to_extension(gh, m0);
    const auto rhs = poly::extended_bracket(poly::iso_to_extension(g, m0),
                                            poly::iso_to_extension(h, m0), m0);
    iso.record(std::max(max_abs_coeff(lhs.field_part + (-rhs.field_part)),
                        std::fabs(Rational(lhs.central_part - rhs.central_part).get_d())));

    const auto xg = poly::PolyVectorField::hamiltonian(g);
    const auto xh = poly::PolyVectorField::hamiltonian(h);
    const auto jl = poly::jacobi_lie_bracket(xg, xh);
    const auto expected = -poly::PolyVectorField::hamiltonian(poly::omega_of(xg, xh));
    sign.record(max_abs_coeff(jl + (-expected)));

    std::vector<RationalPoly> x, y;
    for (std::size_t c = 0; c < dof; ++c) x.push_back(random_base_component(rng, dof));
    for (std::size_t c = 0; c < dof; ++c) y.push_back(random_base_component(rng, dof));
    calp.record(max_abs_coeff(bridge::calP_exact(bridge::base_bracket(x, y)) -
                              poly::poisson_bracket_exact(bridge::calP_exact(x),
                                                          bridge::calP_exact(y))));
  }
  return {anti.row(), jacobi.row(), leibniz.row(), cocycle.row(), iso.row(), sign.row(), calp.row()};
}

std::vector<grid::GridSymmetry> sample_symmetries(std::size_t n) {
  const long m = static_cast<long>(n);
  return {{1, 0, 0}, {0, m - 1, 0}, {3 % m, 5 % m, 0}, {0, 0, 1},
          {0, 0, 2}, {0, 0, 3},     {2 % m, 1, 1},     {m - 1, 4 % m, 3}};
}

std::vector<double> random_symplectic_matrix(std::mt19937_64& rng, std::size_t dof) {
  const std::size_t d = 2 * dof;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) a[i * d + i] = 1.0;
  auto left_multiply = [&](const std::vector<double>& b) {
    std::vector<double> c(d * d, 0.0);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t col = 0; col < d; ++col) c[r * d + col] += b[r * d + k] * a[k * d + col];
    a = std::move(c);
  };
  for (int round = 0; round < 3; ++round) {
    for (std::size_t i = 0; i < dof; ++i) {
      // q_i += s p_i, then p_i += t q_i, then a rotation in the (q_i, p_i) plane.
      std::vector<double> b(d * d, 0.0);
      for (std::size_t j = 0; j < d; ++j) b[j * d + j] = 1.0;
      b[i * d + dof + i] = u(rng);
      left_multiply(b);
      std::fill(b.begin(), b.end(), 0.0);
      for (std::size_t j = 0; j < d; ++j) b[j * d + j] = 1.0;
      b[(dof + i) * d + i] = u(rng);
      left_multiply(b);
      const double th = std::numbers::pi * u(rng);
      std::fill(b.begin(), b.end(), 0.0);
      for (std::size_t j = 0; j < d; ++j) b[j * d + j] = 1.0;
      b[i * d + i] = std::cos(th);
      b[i * d + dof + i] = std::sin(th);
      b[(dof + i) * d + i] = -std::sin(th);
      b[(dof + i) * d + dof + i] = std::cos(th);
      left_multiply(b);
    }
  }
  return a;
}

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}

VerificationRow threshold_row(const char* id, std::size_t n, double residual, double tol) {
  return {id, n, residual, kNaN, residual <= tol};
}

}  // namespace

std::vector<VerificationRow> numeric_suite(std::uint64_t seed, const NumericOptions& opt) {
  std::mt19937_64 rng(seed);
  const std::size_t n = opt.n;
  const grid::GridSource g(grid::Topology::Periodic, n);
  const auto f_c = studies::random_fields(rng, 4);
  const auto a_c = studies::TrigField::random(rng);
  const auto u_c = studies::random_fields(rng, 4);
  const auto v_c = studies::random_fields(rng, 4);
  const auto f = studies::sample_map(g, f_c);
  const auto alpha = studies::sample_stream(g, a_c);
  const auto u = studies::sample_tangent(g, u_c);
  const auto v = studies::sample_tangent(g, v_c);
  const auto h = studies::study_hamiltonian(2);
  const auto syms = sample_symmetries(n);

  std::vector<VerificationRow> rows;

  {
    const double uv = mapping::omega_bar(f, u, v);
    const double vu = mapping::omega_bar(f, v, u);
    const double uu = mapping::omega_bar(f, u, u);
    rows.push_back(threshold_row("omega_bar_antisymmetry", n,
                                 std::max(std::fabs(uv + vu), std::fabs(uu)) /
                                     std::max(1.0, std::fabs(uv)),
                                 opt.tol));
  }

  double jl = 0.0, jr = 0.0, pull = 0.0, commute = 0.0;
  bool bitwise = true;
  const symplectic::FlowSpec flow{symplectic::Method::ImplicitMidpoint, 1e-2, 5};
  const auto c0 = mapping::pullback_omega(f);
  for (const auto& psi : syms) {
    const auto fpsi = mapping::right_act(f, psi);
    jl = std::max(jl, std::fabs(mapping::h_bar(fpsi, h) - mapping::h_bar(f, h)));
    jr = std::max(jr, std::fabs(mapping::j_R_pair(fpsi, alpha) -
                                mapping::j_R_pair(f, mapping::push_forward(alpha, psi))));
    pull = std::max(pull, max_abs_diff(mapping::pullback_omega(fpsi).values(),
                                       mapping::right_act(c0, psi).values()));
    const auto lr = mapping::left_act(fpsi, h, flow);
    const auto rl = mapping::right_act(mapping::left_act(f, h, flow), psi);
    commute = std::max(commute, max_abs_diff(lr.values(), rl.values()));
    bitwise = bitwise && lr == rl;
  }
  rows.push_back({"jl_symmetry_invariance", n, jl, kNaN, jl == 0.0});
  rows.push_back({"jr_symmetry_equivariance", n, std::max(jr, pull), kNaN, jr == 0.0 && pull == 0.0});
  rows.push_back({"left_right_commutation", n, commute, kNaN, bitwise});

  {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_symplectic_matrix(rng, 2);
      const auto fa = mapping::left_act_linear(f, a);
      worst = std::max(worst, max_abs_diff(mapping::pullback_omega(fa).values(), c0.values()) /
                                  max_abs(c0.values()));
    }
    rows.push_back({"jr_linear_symplectic_invariance", n, worst, kNaN, worst <= 1e-13});
  }

  {
    // Constant alpha: (omega . alpha)^ is a multiple of the closed-surface integral of f^* omega.
    const auto one = grid::StreamFunction::constant(g, 1.0);
    const double d = mapping::omega_alpha_hat_derivative(f, one, u, 1e-2);
    double scale = 0.0;
    for (double c : c0.values()) scale += std::fabs(c) * g.cell_area();
    rows.push_back(threshold_row("hat_closed_alpha_derivative", n, std::fabs(d) / scale, opt.tol));
  }

  {
    double left = 0.0, symp = 0.0;
    std::normal_distribution<double> z(0.0, 1.0);
    for (std::size_t t = 0; t < opt.bridge_samples; ++t) {
      const std::size_t d = 1 + t % 3;
      auto draw = [&](std::size_t count) {
        std::vector<double> x(count);
        for (double& e : x) e = z(rng);
        return x;
      };
      const bridge::CovectorField p(g, d, draw(d * g.node_count()), draw(d * g.node_count()));
      auto mat = draw(d * d);
      auto off = draw(d);
      const auto r1 = bridge::left_square_residual(p, SmoothVectorField::affine(mat, off));
      left = std::max(left, r1.residual / r1.scale);
      const grid::TangentField v1(g, 2 * d, draw(2 * d * g.node_count()));
      const grid::TangentField v2(g, 2 * d, draw(2 * d * g.node_count()));
      const auto r2 = bridge::phi_symplecticity_residual(p, v1, v2);
      symp = std::max(symp, r2.residual / r2.scale);
    }
    rows.push_back({"bridge_left_square", opt.bridge_samples, left, kNaN, left <= 1e-14});
    rows.push_back({"bridge_phi_symplecticity", opt.bridge_samples, symp, kNaN, symp <= 1e-14});
  }

  {
    // Single peakon: q(T) = q0 + p G(0) T.
    const epdiff::SingularState st(1, {0.0}, {2.0}, {1.0}, {epdiff::KernelFamily::Exp1d, 1.0});
    const auto end = epdiff::integrate_endpoint(st, {symplectic::Method::ImplicitMidpoint, 1e-3, 5000});
    const double err = std::fabs(end.q()[0] - 5.0);
    rows.push_back({"peakon_transport", 1, err, kNaN, err <= 1e-8});
  }

  {
    const epdiff::SingularState st(1, {-4.0, 0.0}, {2.0, 1.0}, {1.0, 1.0},
                                   {epdiff::KernelFamily::Exp1d, 1.0});
    const auto traj = epdiff::integrate(st, {symplectic::Method::ImplicitMidpoint, 1e-3, 10000}, 100);
    const double h0 = epdiff::collective_hamiltonian(st);
    const double p0 = epdiff::total_momentum(st)[0];
    double dh = 0.0, dp = 0.0;
    for (const auto& s : traj.states) {
      dh = std::max(dh, std::fabs(epdiff::collective_hamiltonian(s) - h0) / std::fabs(h0));
      dp = std::max(dp, std::fabs(epdiff::total_momentum(s)[0] - p0) / std::fabs(p0));
    }
    rows.push_back({"two_peakon_energy_drift", 2, dh, kNaN, dh <= 1e-8});
    rows.push_back({"two_peakon_momentum_drift", 2, dp, kNaN, dp <= 1e-8});
  }

  {
    const auto fil = studies::random_filament(seed, 24);
    const auto m = epdiff::j_R_filament(fil);
    double jl_diff = 0.0, jr_diff = 0.0;
    const auto x = SmoothVectorField::affine({0.3, -1.0, 0.7, 0.2}, {1.0, -0.5});
    const double base = epdiff::j_L_pair(fil.state(), x);
    for (long shift : {1L, 3L, 7L, 23L, 24L, -5L}) {
      const auto r = epdiff::reparametrize(fil, shift);
      jl_diff = std::max(jl_diff, std::fabs(epdiff::j_L_pair(r.state(), x) - base));
      const auto mr = epdiff::j_R_filament(r);
      const long a_count = static_cast<long>(m.size());
      for (long a = 0; a < a_count; ++a) {
        const auto src = static_cast<std::size_t>((((a + shift) % a_count) + a_count) % a_count);
        jr_diff = std::max(jr_diff, std::fabs(mr[static_cast<std::size_t>(a)] - m[src]));
      }
    }
    rows.push_back({"jl_pair_reparametrization", fil.size(), jl_diff, kNaN, jl_diff == 0.0});
    rows.push_back({"jr_filament_equivariance", fil.size(), jr_diff, kNaN, jr_diff == 0.0});
  }

  return rows;
}

}  // namespace dualpair::verification
