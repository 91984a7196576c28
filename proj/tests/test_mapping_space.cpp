#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "dualpair/error.hpp"
#include "dualpair/mapping_space.hpp"
#include "dualpair/studies.hpp"
#include "dualpair/verification.hpp"

using namespace dualpair;
using namespace dualpair::grid;
using namespace dualpair::mapping;

namespace {

struct Data {
  GridSource g;
  MapField f;
  StreamFunction alpha;
  TangentField u, v;
};

Data make(std::uint64_t seed, std::size_t n, Topology top = Topology::Periodic) {
  std::mt19937_64 rng(seed);
  GridSource g(top, n);
  const auto fc = studies::random_fields(rng, 4);
  const auto a = studies::TrigField::random(rng);
  const auto uc = studies::random_fields(rng, 4);
  const auto vc = studies::random_fields(rng, 4);
  return {g, studies::sample_map(g, fc), studies::sample_stream(g, a), studies::sample_tangent(g, uc),
          studies::sample_tangent(g, vc)};
}

}  // namespace

TEST_CASE("omega_bar is antisymmetric and bilinear") {
  auto d = make(1, 8);
  CHECK(omega_bar(d.f, d.u, d.v) == -omega_bar(d.f, d.v, d.u));
  CHECK(omega_bar(d.f, d.u, d.u) == 0.0);
  TangentField w(d.g, 4);
  for (std::size_t i = 0; i < w.values().size(); ++i) w.values()[i] = 2 * d.u.values()[i];
  CHECK(omega_bar(d.f, w, d.v) == doctest::Approx(2 * omega_bar(d.f, d.u, d.v)));
}

TEST_CASE("h_bar of a constant is its mass") {
  GridSource g(Topology::Patch, 4, 3.0);
  MapField f(g, 2);
  CHECK(h_bar(f, symplectic::ObservableFn::constant(2, 2.0)) == doctest::Approx(6.0));
  MapField odd(g, 3);
  CHECK_THROWS_AS(require_phase_valued(odd), ArgumentError);
}

TEST_CASE("left generator pairs to dh_bar") {
  auto d = make(2, 8);
  const auto h = studies::study_hamiltonian(2);
  const auto x = left_generator(d.f, h);
  // omega_bar(X_h, V) = dh_bar(V)
  const double eps = 1e-6;
  MapField fp = d.f, fm = d.f;
  for (std::size_t i = 0; i < fp.values().size(); ++i) {
    fp.values()[i] += eps * d.v.values()[i];
    fm.values()[i] -= eps * d.v.values()[i];
  }
  const double dh = (h_bar(fp, h) - h_bar(fm, h)) / (2 * eps);
  CHECK(omega_bar(d.f, x, d.v) == doctest::Approx(dh).epsilon(1e-7));
}

TEST_CASE("J_R and the hat pairing agree") {
  auto d = make(3, 8);
  CHECK(j_R(d.f) == -pullback_omega(d.f));
  CHECK(j_R_pair(d.f, d.alpha) == -omega_alpha_hat(d.f, d.alpha));
  CHECK(hat_pairing(d.f, SourceForm::function(d.alpha), {}) == omega_alpha_hat(d.f, d.alpha));
  const std::vector<TangentField> two{d.u, d.v};
  const std::vector<double> ones(d.g.node_count(), 1.0);
  CHECK(hat_pairing(d.f, SourceForm::density(ones), two) ==
        doctest::Approx(omega_bar(d.f, d.u, d.v)).epsilon(1e-14));
  CHECK_THROWS_AS(hat_pairing(d.f, SourceForm::function(d.alpha), two), ArgumentError);
}

TEST_CASE("J_R of a constant map vanishes") {
  GridSource g(Topology::Periodic, 6);
  MapField f(g, 4);
  for (std::size_t k = 0; k < g.node_count(); ++k) f.at(k)[2] = 1.5;
  const auto c = pullback_omega(f);
  for (double v : c.values()) CHECK(v == 0.0);
}

TEST_CASE("right generator of a constant stream function is zero") {
  auto d = make(4, 8);
  const auto x = right_generator(d.f, StreamFunction::constant(d.g, 2.5));
  for (double v : x.values()) CHECK(v == 0.0);
}

TEST_CASE("orthogonality residual refines at second order") {
  const auto quad = symplectic::ObservableFn::harmonic_oscillator(2);
  const auto r32 = make(5, 32), r64 = make(5, 64);
  const double e32 = std::fabs(orthogonality_residual(r32.f, quad, r32.alpha));
  const double e64 = std::fabs(orthogonality_residual(r64.f, quad, r64.alpha));
  CHECK(std::log2(e32 / e64) >= 1.9);
}

TEST_CASE("hat derivative helpers are finite") {
  auto d = make(5, 16);
  const double deriv = omega_alpha_hat_derivative(d.f, d.alpha, d.v, 1e-3);
  CHECK(std::isfinite(deriv));
  CHECK(hamiltonian_derivative_residual(d.f, d.alpha, d.v, 1e-3) >= 0.0);
}

TEST_CASE("J_L is invariant and J_R equivariant under grid symmetries") {
  auto d = make(6, 12);
  const auto h = studies::study_hamiltonian(2);
  for (const auto& s : verification::sample_symmetries(12)) {
    const auto fs = right_act(d.f, s);
    CHECK(h_bar(fs, h) == h_bar(d.f, h));
    CHECK(pullback_omega(fs) == right_act(pullback_omega(d.f), s));
    CHECK(j_R_pair(fs, right_act(d.alpha, s)) == j_R_pair(d.f, d.alpha));
  }
}

TEST_CASE("J_R is invariant under linear symplectic maps") {
  auto d = make(7, 12);
  std::mt19937_64 rng(70);
  const auto a = verification::random_symplectic_matrix(rng, 2);
  const auto f2 = left_act_linear(d.f, a);
  const auto c0 = pullback_omega(d.f), c1 = pullback_omega(f2);
  double scale = 0.0, diff = 0.0;
  for (std::size_t k = 0; k < c0.values().size(); ++k) {
    scale = std::max(scale, std::fabs(c0[k]));
    diff = std::max(diff, std::fabs(c0[k] - c1[k]));
  }
  CHECK(diff <= 1e-13 * std::max(1.0, scale));
  std::vector<double> bad(16, 0.0);
  bad[0] = 2.0;
  CHECK_THROWS_AS(left_act_linear(d.f, bad), ArgumentError);
}

TEST_CASE("left and right actions commute bitwise") {
  auto d = make(8, 8);
  const auto h = studies::study_hamiltonian(2);
  const symplectic::FlowSpec spec{symplectic::Method::ImplicitMidpoint, 0.01, 5};
  GridSymmetry s{3, 1, 1};
  CHECK(left_act(right_act(d.f, s), h, spec) == right_act(left_act(d.f, h, spec), s));
}

TEST_CASE("left flow preserves h_bar and J_R") {
  auto d = make(9, 8);
  const auto h = symplectic::ObservableFn::harmonic_oscillator(2);
  LeftFlow flow(d.f, h, symplectic::Method::ImplicitMidpoint, 0.05);
  const double h0 = h_bar(d.f, h);
  for (int k = 0; k < 20; ++k) flow.advance();
  CHECK(flow.steps_taken() == 20);
  CHECK(h_bar(flow.current(), h) == doctest::Approx(h0).epsilon(1e-12));
  const auto c0 = pullback_omega(d.f), c1 = pullback_omega(flow.current());
  for (std::size_t k = 0; k < c0.values().size(); ++k) {
    CHECK(c1[k] == doctest::Approx(c0[k]).epsilon(1e-11));
  }
}

TEST_CASE("push forward inverts the right action") {
  auto d = make(10, 6);
  GridSymmetry s{1, 4, 3};
  CHECK(push_forward(right_act(d.alpha, s), s) == d.alpha);
}

TEST_CASE("sigma_R needs a torus") {
  auto d = make(11, 6, Topology::Patch);
  CHECK_THROWS_AS(sigma_R_residual(d.alpha, d.alpha, d.f), ArgumentError);
}
