#include "dualpair/summation.hpp"

#include <cmath>
#include <utility>

namespace dualpair {

void ExactAccumulator::add(double x) {
  if (!std::isfinite(x)) {
    non_finite_ = true;
    special_ += x;
    return;
  }
  std::size_t used = 0;
  for (double y : partials_) {
    if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
    const double hi = x + y;
    const double lo = y - (hi - x);
    if (lo != 0.0) partials_[used++] = lo;
    x = hi;
  }
  partials_.resize(used);
  partials_.push_back(x);
}

double ExactAccumulator::result() const {
  if (non_finite_) {
    double naive = special_;
    for (double p : partials_) naive += p;
    return naive;
  }
  std::size_t n = partials_.size();
  if (n == 0) return 0.0;
  double hi = partials_[--n];
  double lo = 0.0;
  while (n > 0) {
    const double x = hi;
    const double y = partials_[--n];
    hi = x + y;
    const double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  // Round-half-even correction when the remaining partials push past a tie.
  if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    const double yr = x - hi;
    if (y == yr) hi = x;
  }
  return hi;
}

double exact_sum(std::span<const double> terms) {
  ExactAccumulator acc;
  for (double t : terms) acc.add(t);
  return acc.result();
}

}  // namespace dualpair
