#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "dualpair/bridge.hpp"
#include "dualpair/error.hpp"
#include "dualpair/mapping_space.hpp"
#include "dualpair/poly_poisson.hpp"
#include "dualpair/studies.hpp"

using namespace dualpair;
using namespace dualpair::bridge;
using grid::GridSource;
using grid::Topology;
using poly::RationalPoly;

namespace {

CovectorField random_covector(std::mt19937_64& rng, const GridSource& g) {
  const auto comps = studies::random_fields(rng, 4);
  const auto m = studies::sample_map(g, comps);
  std::vector<double> base, cov;
  for (std::size_t s = 0; s < g.node_count(); ++s) {
    base.push_back(m.at(s)[0]);
    base.push_back(m.at(s)[1]);
    cov.push_back(m.at(s)[2]);
    cov.push_back(m.at(s)[3]);
  }
  return CovectorField(g, 2, base, cov);
}

SmoothVectorField swirl() {
  return {2,
          [](std::span<const double> x, std::span<double> out) {
            out[0] = std::sin(x[1]) + x[0] * x[0];
            out[1] = std::cos(x[0]) * x[1];
          },
          [](std::span<const double> x, std::span<double> out) {
            out[0] = 2 * x[0];
            out[1] = std::cos(x[1]);
            out[2] = -std::sin(x[0]) * x[1];
            out[3] = std::cos(x[0]);
          }};
}

}  // namespace

TEST_CASE("covector fields split into base and phase maps") {
  GridSource g(Topology::Periodic, 2);
  CovectorField p(g, 1, {1, 2, 3, 4}, {5, 6, 7, 8});
  const auto ph = p.phase_map();
  CHECK(ph.dim() == 2);
  CHECK(ph.at(2)[0] == 3.0);
  CHECK(ph.at(2)[1] == 7.0);
  CHECK(p.base_map().at(3)[0] == 4.0);
  CHECK_THROWS_AS(CovectorField(g, 1, {1, 2}, {1, 2}), ArgumentError);
}

TEST_CASE("calP evaluates P(X) with an analytic gradient") {
  const auto obs = calP(swirl());
  const std::vector<double> m{0.3, -0.5, 2.0, -1.0};
  const double x0 = std::sin(-0.5) + 0.09, x1 = std::cos(0.3) * -0.5;
  CHECK(obs(m) == doctest::Approx(2 * x0 - x1));
  const auto fd = symplectic::ObservableFn::from_value(4, [&](std::span<const double> z) { return obs(z); });
  const auto g = obs.gradient(m), gf = fd.gradient(m);
  for (std::size_t i = 0; i < 4; ++i) CHECK(g[i] == doctest::Approx(gf[i]).epsilon(1e-8));
}

TEST_CASE("calP is a Lie algebra homomorphism on polynomial fields") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 20; ++k) {
    std::vector<RationalPoly> x, y;
    for (int i = 0; i < 2; ++i) {
      auto a = poly::random_poly(rng, 2, 2, 3);
      auto b = poly::random_poly(rng, 2, 2, 3);
      // drop p-dependence: keep base monomials only
      RationalPoly ax(2), bx(2);
      for (const auto& [m, c] : a.terms()) if (m[2] == 0 && m[3] == 0) ax += RationalPoly::monomial(2, m, c);
      for (const auto& [m, c] : b.terms()) if (m[2] == 0 && m[3] == 0) bx += RationalPoly::monomial(2, m, c);
      x.push_back(ax);
      y.push_back(bx);
    }
    CHECK(calP_exact(base_bracket(x, y)) ==
          poly::poisson_bracket_exact(calP_exact(x), calP_exact(y)));
  }
  std::vector<RationalPoly> bad{RationalPoly::p(2, 0), RationalPoly::q(2, 0)};
  CHECK_THROWS_AS(calP_exact(bad), ArgumentError);
}

TEST_CASE("phi pairing is the mu-weighted sum of P(V)") {
  GridSource g(Topology::Periodic, 2, 2.0);
  CovectorField p(g, 1, {0, 0, 0, 0}, {1, 2, 3, 4});
  grid::TangentField v(g, 1, {1, 1, 1, -1});
  CHECK(phi_pair(p, v) == doctest::Approx(0.5 * (1 + 2 + 3 - 4)));
}

TEST_CASE("left square and symplecticity residuals at rounding level") {
  std::mt19937_64 rng(23);
  GridSource g(Topology::Periodic, 8);
  for (int k = 0; k < 10; ++k) {
    const auto p = random_covector(rng, g);
    const auto ls = left_square_residual(p, swirl());
    CHECK(ls.within(1e-14));
    const auto v1 = studies::sample_tangent(g, studies::random_fields(rng, 4));
    const auto v2 = studies::sample_tangent(g, studies::random_fields(rng, 4));
    CHECK(phi_symplecticity_residual(p, v1, v2).within(1e-14));
  }
}

TEST_CASE("right square converges at second order") {
  auto residual = [](std::size_t n) {
    std::mt19937_64 rng(29);
    GridSource g(Topology::Periodic, n);
    const auto p = random_covector(rng, g);
    const auto a = studies::sample_stream(g, studies::TrigField::random(rng));
    return right_square_residual(p, a).residual;
  };
  CHECK(std::log2(residual(64) / residual(128)) >= 1.9);
}
