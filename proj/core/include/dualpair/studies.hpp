#pragma once

// Seeded smooth test data and grid-refinement studies.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dualpair/epdiff.hpp"
#include "dualpair/grid.hpp"
#include "dualpair/symplectic.hpp"

namespace dualpair::studies {

/// Random trigonometric polynomial on the unit square, periodic in both directions.
/// Coefficients are drawn once, so the same field can be sampled on any grid.
class TrigField {
 public:
  struct Mode {
    int k1;
    int k2;
    double cos_amp;
    double sin_amp;
  };

  /// Modes (1,0), (0,1), (1,1), (1,-1) with amplitudes U(-1, 1) and
  /// modes (2,0), (0,2) with amplitudes 0.25 U(-1, 1).
  static TrigField random(std::mt19937_64& rng);

  explicit TrigField(std::vector<Mode> modes) : modes_(std::move(modes)) {}

  double operator()(double s1, double s2) const;
  std::vector<double> sample(const grid::GridSource& g) const;
  const std::vector<Mode>& modes() const noexcept { return modes_; }

 private:
  std::vector<Mode> modes_;
};

/// Draws `dim` independent trig fields.
std::vector<TrigField> random_fields(std::mt19937_64& rng, std::size_t count);

grid::MapField sample_map(const grid::GridSource& g, std::span<const TrigField> comps);
grid::TangentField sample_tangent(const grid::GridSource& g, std::span<const TrigField> comps);
grid::StreamFunction sample_stream(const grid::GridSource& g, const TrigField& f);

/// h(q, p) = sum_i [sin(q_i) p_{i+1} + cos(q_i) + p_i^2 / 2], indices mod n.
symplectic::ObservableFn study_hamiltonian(std::size_t dof);

/// A seeded closed filament in the plane: a perturbed unit circle carrying a
/// covector with tangential and normal parts; gaussian kernel, w = 1/A.
epdiff::FilamentState random_filament(std::uint64_t seed, std::size_t points, double kernel_alpha = 0.5);

enum class StudyOp { Ooo, SigmaR, RightSquare, HatDerivative, FilamentDt, FilamentChain };

const char* study_name(StudyOp op);
StudyOp parse_study(std::string_view name);

struct StudyRow {
  std::string test_id;
  std::size_t n = 0;
  double residual = 0.0;
};

struct StudyResult {
  StudyOp op;
  std::vector<StudyRow> rows;
  double observed_order = 0.0;
};

/// Least-squares slope of -log(residual) against log(n). Infinity when every
/// residual is zero; NaN when only some are.
double observed_order(std::span<const double> n, std::span<const double> residual);

/// Filament study parameters.
struct FilamentStudy {
  double t_final = 0.5;
  /// Chain size for the dt study.
  std::size_t points = 32;
  /// Step count for the chain study.
  std::size_t steps = 1000;
  /// Reference refinement factor for the dt study.
  std::size_t reference_factor = 8;
};

/// Grid studies take N values (cells per side, periodic grid); filament-dt takes
/// step counts over t_final; filament-chain takes chain sizes A.
StudyResult run_study(StudyOp op, std::span<const std::size_t> sizes, std::uint64_t seed,
                      const FilamentStudy& filament = {});

}  // namespace dualpair::studies
