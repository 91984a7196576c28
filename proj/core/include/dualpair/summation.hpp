#pragma once

#include <span>
#include <vector>

namespace dualpair {

/// Correctly rounded sum of a sequence of doubles (Shewchuk partials).
///
/// The result depends only on the multiset of inputs, never on their order,
/// so totals over permuted grids compare bitwise equal. Non-finite inputs fall
/// back to plain accumulation so that inf/nan propagate.
double exact_sum(std::span<const double> terms);

/// Streaming form of exact_sum.
class ExactAccumulator {
 public:
  void add(double x);
  double result() const;

 private:
  std::vector<double> partials_;
  double special_ = 0.0;
  bool non_finite_ = false;
};

}  // namespace dualpair
