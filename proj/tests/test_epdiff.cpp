#include <cmath>
#include <vector>

#include "doctest.h"
#include "dualpair/epdiff.hpp"
#include "dualpair/error.hpp"
#include "dualpair/studies.hpp"

using namespace dualpair;
using namespace dualpair::epdiff;
using symplectic::FlowSpec;
using symplectic::Method;

TEST_CASE("kernel names and validation") {
  CHECK(parse_kernel(kernel_name(KernelFamily::Exp1d)) == KernelFamily::Exp1d);
  CHECK(parse_kernel("gaussian") == KernelFamily::Gaussian);
  CHECK_THROWS_AS(parse_kernel("laplace"), ArgumentError);
  CHECK_THROWS_AS((KernelSpec{KernelFamily::Exp1d, 1.0}.validate(2)), ArgumentError);
  CHECK_THROWS_AS((KernelSpec{KernelFamily::Gaussian, -1.0}.validate(2)), ArgumentError);
}

TEST_CASE("exp1d kernel is symmetric with zero slope at the origin") {
  const KernelSpec k{KernelFamily::Exp1d, 2.0};
  const std::vector<double> a{0.7}, b{-0.7}, z{0.0};
  CHECK(kernel_eval(k, a) == kernel_eval(k, b));
  CHECK(kernel_eval(k, z) == 0.25);
  CHECK(kernel_grad(k, z)[0] == 0.0);
  CHECK(kernel_grad(k, a)[0] == -kernel_grad(k, b)[0]);
}

TEST_CASE("state validation") {
  const KernelSpec k{KernelFamily::Exp1d, 1.0};
  CHECK_THROWS_AS(SingularState(1, {0.0, 1.0}, {1.0}, {1.0, 1.0}, k), ArgumentError);
  CHECK_THROWS_AS(SingularState(1, {0.0}, {1.0}, {-1.0}, k), ArgumentError);
  SingularState three(2, {0, 0, 1, 0, 1, 1}, {0, 1, 1, 0, 0, 0}, {1, 1, 1},
                      {KernelFamily::Gaussian, 0.5});
  CHECK_NOTHROW(FilamentState{three});
  SingularState two(2, {0, 0, 1, 0}, {0, 1, 1, 0}, {1, 1}, {KernelFamily::Gaussian, 0.5});
  CHECK_THROWS_AS(FilamentState{two}, ArgumentError);
}

TEST_CASE("single peakon travels at its momentum") {
  // p w G(0) = 2 * 1 * 1/2 with alpha = 1.
  SingularState st(1, {0.0}, {2.0}, {1.0}, {KernelFamily::Exp1d, 1.0});
  const auto end = integrate_endpoint(st, {Method::ImplicitMidpoint, 1e-3, 5000});
  CHECK(std::fabs(end.q()[0] - 5.0) <= 1e-8);
  CHECK(end.p()[0] == 2.0);
}

TEST_CASE("two-peakon collision conserves energy and momentum") {
  SingularState st(1, {-4.0, 0.0}, {2.0, 1.0}, {1.0, 1.0}, {KernelFamily::Exp1d, 1.0});
  const double h0 = collective_hamiltonian(st);
  const double m0 = total_momentum(st)[0];
  const auto traj = integrate(st, {Method::ImplicitMidpoint, 1e-3, 10000}, 1000);
  CHECK(traj.states.size() == 11);
  CHECK(traj.t.back() == doctest::Approx(10.0));
  for (const auto& s : traj.states) {
    CHECK(std::fabs(collective_hamiltonian(s) - h0) <= 1e-8 * std::fabs(h0));
    CHECK(std::fabs(total_momentum(s)[0] - m0) <= 1e-8 * std::fabs(m0));
  }
  // peakons keep their order and exchange momentum
  const auto& last = traj.states.back();
  CHECK(last.q()[0] < last.q()[1]);
  CHECK(last.p()[1] > last.p()[0]);
}

TEST_CASE("Stormer-Verlet is refused for the nonseparable collective Hamiltonian") {
  SingularState st(1, {0.0}, {1.0}, {1.0}, {KernelFamily::Exp1d, 1.0});
  CHECK_THROWS_AS(step(st, Method::StormerVerlet, 0.1, 1), ArgumentError);
}

TEST_CASE("J_L pairing with constant and affine fields") {
  SingularState st(2, {0, 0, 1, 2}, {1, -1, 0.5, 2}, {0.5, 2}, {KernelFamily::Gaussian, 1.0});
  const auto tot = total_momentum(st);
  const auto c = SmoothVectorField::constant({3.0, -1.0});
  CHECK(j_L_pair(st, c) == doctest::Approx(3 * tot[0] - tot[1]));
  const auto rot = SmoothVectorField::affine({0, -1, 1, 0}, {0, 0});
  CHECK(j_L_pair(st, rot) == doctest::Approx(2.0));
}

TEST_CASE("reparametrization invariance and J_R equivariance on filaments") {
  const auto fs = studies::random_filament(4, 24);
  const auto c = SmoothVectorField::affine({0.3, -1, 2, 0.1}, {1, 2});
  const auto m = j_R_filament(fs);
  for (long shift : {1L, 5L, -3L, 24L}) {
    const auto rs = reparametrize(fs, shift);
    CHECK(j_L_pair(rs.state(), c) == j_L_pair(fs.state(), c));
    const auto mr = j_R_filament(rs);
    for (std::size_t a = 0; a < m.size(); ++a) {
      const std::size_t src = static_cast<std::size_t>(((static_cast<long>(a) + shift) % 24 + 24) % 24);
      CHECK(mr[a] == m[src]);
    }
  }
  CHECK(reparametrize(fs, 24) == fs);
}

TEST_CASE("filament J_R is nearly conserved") {
  const auto fs = studies::random_filament(1, 32);
  const auto m0 = j_R_filament(fs);
  const auto end = integrate_endpoint(fs.state(), {Method::ImplicitMidpoint, 1e-3, 200});
  const auto m1 = j_R_filament(FilamentState(end));
  CHECK(j_R_drift(m0, m0) == 0.0);
  CHECK(j_R_drift(m0, m1) <= 1e-3);
}

TEST_CASE("integration failure reports the step") {
  SingularState st(1, {0.0}, {1e308}, {1.0}, {KernelFamily::Exp1d, 1.0});
  CHECK_THROWS_AS(integrate_endpoint(st, {Method::RK4, 10.0, 5}), NumericError);
}
