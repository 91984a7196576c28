#include <cmath>
#include <numeric>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "dualpair/error.hpp"
#include "dualpair/grid.hpp"

using namespace dualpair;
using namespace dualpair::grid;

TEST_CASE("torus and patch layouts") {
  GridSource t(Topology::Periodic, 4);
  CHECK(t.node_count() == 16);
  CHECK(t.cell_count() == 16);
  CHECK(t.uniform());
  GridSource p(Topology::Patch, 4, 2.0);
  CHECK(p.node_count() == 25);
  CHECK_FALSE(p.uniform());
  const auto w = p.weights();
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(2.0));
  CHECK(w[0] == doctest::Approx(w[p.node(2, 2)] / 4));
  CHECK(parse_topology(topology_name(Topology::Patch)) == Topology::Patch);
  CHECK_THROWS_AS(parse_topology("sphere"), ArgumentError);
  CHECK_THROWS_AS(GridSource(Topology::Periodic, 1), ArgumentError);
  CHECK_THROWS_AS(GridSource(Topology::Periodic, 2, std::vector<double>{1, 1, 1, -1}, 2.0),
                  ArgumentError);
}

TEST_CASE("cell corners wrap on the torus") {
  GridSource t(Topology::Periodic, 3);
  const auto c = t.cell_corners(t.node(2, 2));
  CHECK(c[0] == t.node(2, 2));
  CHECK(c[1] == t.node(0, 2));
  CHECK(c[2] == t.node(2, 0));
  CHECK(c[3] == t.node(0, 0));
  CHECK(t.wrapped_node(-1, 4) == t.node(2, 1));
}

TEST_CASE("differences are exact on low modes and second order") {
  auto err = [](std::size_t n) {
    GridSource g(Topology::Periodic, n);
    std::vector<double> v(g.node_count()), d(g.node_count());
    for (std::size_t k = 0; k < v.size(); ++k) {
      const auto [s1, s2] = g.node_coords(k);
      v[k] = std::sin(2 * std::numbers::pi * s1) * std::cos(2 * std::numbers::pi * s2);
      d[k] = 2 * std::numbers::pi * std::cos(2 * std::numbers::pi * s1) *
             std::cos(2 * std::numbers::pi * s2);
    }
    const auto dv = diff_s1(g, v);
    double e = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) e = std::max(e, std::fabs(dv[k] - d[k]));
    return e;
  };
  CHECK(std::log2(err(16) / err(32)) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("patch differences are exact on quadratics") {
  GridSource g(Topology::Patch, 5);
  std::vector<double> v(g.node_count());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto [s1, s2] = g.node_coords(k);
    v[k] = s1 * s1 + 3 * s1 * s2;
  }
  const auto d1 = diff_s1(g, v);
  const auto d2 = diff_s2(g, v);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto [s1, s2] = g.node_coords(k);
    CHECK(d1[k] == doctest::Approx(2 * s1 + 3 * s2).epsilon(1e-12));
    CHECK(d2[k] == doctest::Approx(3 * s1).epsilon(1e-12));
  }
}

TEST_CASE("cell averages and corner differences of a bilinear function") {
  GridSource g(Topology::Patch, 2);
  std::vector<double> v(g.node_count());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto [s1, s2] = g.node_coords(k);
    v[k] = 1 + s1 + 2 * s2 + 4 * s1 * s2;
  }
  const auto avg = cell_average(g, v);
  const auto [d1, d2] = cell_differences(g, v);
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto [x, y] = g.cell_center(c);
    CHECK(avg[c] == doctest::Approx(1 + x + 2 * y + 4 * x * y));
    CHECK(d1[c] == doctest::Approx(1 + 4 * y));
    CHECK(d2[c] == doctest::Approx(2 + 4 * x));
  }
}

TEST_CASE("grid symmetries are bijections with inverses") {
  GridSource g(Topology::Periodic, 5);
  for (int r = 0; r < 4; ++r) {
    GridSymmetry s{2, -1, r};
    std::vector<int> hit(g.node_count(), 0);
    for (std::size_t k = 0; k < g.node_count(); ++k) {
      const auto im = s.apply(g, k);
      ++hit[im];
      CHECK(s.inverse().apply(g, im) == k);
    }
    for (int h : hit) CHECK(h == 1);
  }
  CHECK_THROWS_AS(GridSymmetry::identity().require_declared(GridSource(Topology::Patch, 5)),
                  ArgumentError);
}

TEST_CASE("stream function means and two-form integrals") {
  GridSource g(Topology::Periodic, 2, 4.0);
  StreamFunction a(g, {1, 2, 3, 6});
  CHECK(a.mean() == doctest::Approx(3.0));
  CHECK(a.zero_mean().mean() == doctest::Approx(0.0));
  CellTwoForm c(g, {1, 1, 2, 4});
  CHECK(c.integral() == 2.0);
  CHECK((-c).integral() == -2.0);
  CHECK_THROWS_AS(StreamFunction(g, {1, 2}), ArgumentError);
}
