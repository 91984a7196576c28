#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "dualpair/error.hpp"
#include "dualpair/studies.hpp"

using namespace dualpair;
using namespace dualpair::studies;

TEST_CASE("observed order fits a power law") {
  const std::vector<double> n{8, 16, 32}, r{1.0, 0.25, 0.0625};
  CHECK(observed_order(n, r) == doctest::Approx(2.0));
  const std::vector<double> z{0, 0, 0};
  CHECK(std::isinf(observed_order(n, z)));
  const std::vector<double> some{1.0, 0.0, 0.1};
  CHECK(std::isnan(observed_order(n, some)));
}

TEST_CASE("study names round trip") {
  for (auto op : {StudyOp::Ooo, StudyOp::SigmaR, StudyOp::RightSquare, StudyOp::HatDerivative,
                  StudyOp::FilamentDt, StudyOp::FilamentChain}) {
    CHECK(parse_study(study_name(op)) == op);
  }
  CHECK_THROWS_AS(parse_study("nope"), ArgumentError);
}

TEST_CASE("seeded data are reproducible") {
  std::mt19937_64 a(4), b(4);
  const auto fa = TrigField::random(a), fb = TrigField::random(b);
  CHECK(fa(0.3, 0.7) == fb(0.3, 0.7));
  CHECK(random_filament(3, 16) == random_filament(3, 16));
  const std::vector<std::size_t> sizes{8, 16};
  const auto r1 = run_study(StudyOp::Ooo, sizes, 2), r2 = run_study(StudyOp::Ooo, sizes, 2);
  CHECK(r1.rows[1].residual == r2.rows[1].residual);
}

TEST_CASE("trig fields are periodic") {
  std::mt19937_64 rng(6);
  const auto f = TrigField::random(rng);
  CHECK(f(0.2, 0.0) == doctest::Approx(f(1.2, 1.0)).epsilon(1e-12));
}

TEST_CASE("grid studies reach second order once the data are resolved") {
  const std::vector<std::size_t> sizes{32, 64, 128};
  for (auto op : {StudyOp::Ooo, StudyOp::SigmaR, StudyOp::RightSquare, StudyOp::HatDerivative}) {
    for (std::uint64_t seed : {0ULL, 1ULL}) {
      const auto r = run_study(op, sizes, seed);
      CAPTURE(study_name(op));
      CAPTURE(seed);
      CHECK(r.rows.size() == 3);
      CHECK(r.observed_order >= 1.9);
    }
  }
}

TEST_CASE("filament J_R drift orders") {
  const std::vector<std::size_t> steps{250, 500, 1000};
  const auto dt = run_study(StudyOp::FilamentDt, steps, 0);
  CHECK(dt.observed_order >= 1.0);
  const std::vector<std::size_t> points{16, 32, 64};
  const auto chain = run_study(StudyOp::FilamentChain, points, 0);
  CHECK(chain.observed_order >= 1.9);
}

TEST_CASE("study sizes are validated") {
  const std::vector<std::size_t> one{8};
  CHECK_THROWS_AS(run_study(StudyOp::Ooo, one, 0), ArgumentError);
}
