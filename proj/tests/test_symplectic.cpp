#include <cmath>
#include <vector>

#include "doctest.h"
#include "dualpair/error.hpp"
#include "dualpair/symplectic.hpp"

using namespace dualpair;
using namespace dualpair::symplectic;

TEST_CASE("phase points need an even dimension") {
  CHECK_THROWS_AS(PhasePoint({1.0, 2.0, 3.0}), ArgumentError);
  CHECK_THROWS_AS(PhasePoint(std::vector<double>{}), ArgumentError);
  PhasePoint m{1.0, 2.0, 3.0, 4.0};
  CHECK(m.dof() == 2);
  CHECK(m.q(1) == 2.0);
  CHECK(m.p(0) == 3.0);
}

TEST_CASE("canonical omega sign and antisymmetry") {
  const std::vector<double> eq{1.0, 0.0}, ep{0.0, 1.0};
  CHECK(canonical_omega(eq, ep) == 1.0);
  CHECK(canonical_omega(ep, eq) == -1.0);
  const std::vector<double> u{0.3, -1.2, 2.5, 0.7}, v{1.1, 0.4, -0.6, 2.0};
  CHECK(canonical_omega(u, v) == -canonical_omega(v, u));
  CHECK(canonical_omega(u, u) == 0.0);
  CHECK_THROWS_AS(canonical_omega(u, eq), ArgumentError);
}

TEST_CASE("Hamiltonian vector field and bracket of coordinates") {
  const auto h = ObservableFn::harmonic_oscillator(1);
  const std::vector<double> m{2.0, 3.0};
  const auto x = hamiltonian_vector_field(h, m);
  CHECK(x[0] == 3.0);
  CHECK(x[1] == -2.0);

  const ObservableFn q(
      2, [](std::span<const double> z) { return z[0]; },
      [](std::span<const double>, std::span<double> out) { out[0] = 1.0; out[1] = 0.0; });
  const ObservableFn p(
      2, [](std::span<const double> z) { return z[1]; },
      [](std::span<const double>, std::span<double> out) { out[0] = 0.0; out[1] = 1.0; });
  CHECK(poisson_bracket_value(q, p, m) == 1.0);
}

TEST_CASE("finite difference gradient is accurate") {
  const auto h = ObservableFn::from_value(2, [](std::span<const double> z) {
    return std::sin(z[0]) * z[1] * z[1];
  });
  const std::vector<double> m{0.4, -1.3};
  const auto g = h.gradient(m);
  CHECK(g[0] == doctest::Approx(std::cos(0.4) * 1.69).epsilon(1e-9));
  CHECK(g[1] == doctest::Approx(2.0 * std::sin(0.4) * -1.3).epsilon(1e-9));
}

TEST_CASE("method names round trip") {
  for (auto m : {Method::ImplicitMidpoint, Method::StormerVerlet, Method::RK4}) {
    CHECK(parse_method(method_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_method("euler"), ArgumentError);
  CHECK(is_symplectic(Method::ImplicitMidpoint));
  CHECK_FALSE(is_symplectic(Method::RK4));
}

TEST_CASE("free particle reaches q = 1 exactly after ten steps of 0.1") {
  const auto h = ObservableFn::free_particle(1);
  for (auto method : {Method::ImplicitMidpoint, Method::StormerVerlet, Method::RK4}) {
    const auto traj = flow(h, PhasePoint{0.0, 1.0}, {method, 0.1, 10});
    REQUIRE(traj.size() == 11);
    CHECK(traj.back().q(0) == 1.0);
    CHECK(traj.back().p(0) == 1.0);
  }
}

TEST_CASE("harmonic rotation by a quarter turn") {
  const auto h = ObservableFn::harmonic_oscillator(1);
  const std::size_t steps = 1571;
  const double dt = (std::numbers::pi / 2) / steps;
  const std::vector<double> m0{1.0, 0.0};
  const auto end = flow_endpoint(h, m0, {Method::ImplicitMidpoint, dt, steps});
  CHECK(std::fabs(end[0]) <= 1e-5);
  CHECK(std::fabs(end[1] + 1.0) <= 1e-5);
}

TEST_CASE("implicit midpoint conserves a quadratic Hamiltonian") {
  const auto h = ObservableFn::harmonic_oscillator(2);
  const std::vector<double> m0{0.3, -0.2, 1.1, 0.5};
  const auto end = flow_endpoint(h, m0, {Method::ImplicitMidpoint, 0.05, 2000});
  CHECK(std::fabs(h(end) - h(m0)) <= 1e-12);
}

TEST_CASE("integrators converge at their nominal order") {
  const auto h = ObservableFn::from_value(2, [](std::span<const double> z) {
    return 0.5 * z[1] * z[1] - std::cos(z[0]);
  }, true);
  const std::vector<double> m0{1.0, 0.0};
  auto endpoint = [&](Method m, std::size_t steps) {
    return flow_endpoint(h, m0, {m, 1.0 / static_cast<double>(steps), steps});
  };
  const auto ref = endpoint(Method::RK4, 4096);
  auto err = [&](Method m, std::size_t steps) {
    const auto e = endpoint(m, steps);
    return std::hypot(e[0] - ref[0], e[1] - ref[1]);
  };
  for (auto m : {Method::ImplicitMidpoint, Method::StormerVerlet}) {
    const double order = std::log2(err(m, 32) / err(m, 64));
    CHECK(order == doctest::Approx(2.0).epsilon(0.05));
  }
  CHECK(std::log2(err(Method::RK4, 16) / err(Method::RK4, 32)) > 3.8);
}

TEST_CASE("flow validation") {
  const auto h = ObservableFn::from_value(2, [](std::span<const double> z) { return z[0] * z[1]; });
  CHECK_THROWS_AS(flow(h, PhasePoint{1.0, 1.0}, {Method::StormerVerlet, 0.1, 1}), ArgumentError);
  CHECK_THROWS_AS(flow(h, PhasePoint{1.0, 1.0}, {Method::RK4, 0.0, 1}), ArgumentError);
  CHECK_THROWS_AS(flow(h, PhasePoint{1.0, 1.0, 0.0, 0.0}, {Method::RK4, 0.1, 1}), ArgumentError);
}

TEST_CASE("blow-up raises a numeric error with the step index") {
  // dp/dt = p^2 blows up in finite time
  const ObservableFn h(
      2, [](std::span<const double> z) { return -z[0] * z[1] * z[1]; },
      [](std::span<const double> z, std::span<double> out) {
        out[0] = -z[1] * z[1];
        out[1] = -2.0 * z[0] * z[1];
      });
  try {
    flow_endpoint(h, std::vector<double>{0.0, 10.0}, {Method::RK4, 0.5, 100});
    FAIL("expected a numeric error");
  } catch (const NumericError& e) {
    CHECK(e.step() >= 1);
    CHECK(e.step() <= 100);
  }
}
