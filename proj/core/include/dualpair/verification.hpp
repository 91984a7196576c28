#pragma once

// Identity suites behind `dualpair verify` and the acceptance runner.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "dualpair/csv.hpp"
#include "dualpair/grid.hpp"

namespace dualpair::verification {

using io::VerificationRow;

/// Exact rational checks over `samples` seeded random polynomial triples
/// (degree <= 4, n alternating between 1 and 2). Residuals are exactly zero when passing.
std::vector<VerificationRow> exact_suite(std::uint64_t seed, std::size_t samples = 100);

struct NumericOptions {
  std::size_t n = 16;
  /// Relative tolerance for rounding-level identities.
  double tol = 1e-12;
  /// Random inputs for the bridge identities.
  std::size_t bridge_samples = 50;
};

/// Floating-point identities that hold exactly or to rounding at a fixed grid size.
std::vector<VerificationRow> numeric_suite(std::uint64_t seed, const NumericOptions& opt = {});

/// The declared symmetries used by the suites: translations and quarter turns.
std::vector<grid::GridSymmetry> sample_symmetries(std::size_t n);

/// Random linear symplectic map of R^{2n} (row-major), built from shears and rotations.
std::vector<double> random_symplectic_matrix(std::mt19937_64& rng, std::size_t dof);

}  // namespace dualpair::verification
