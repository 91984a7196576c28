#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dualpair {

/// A smooth vector field on R^d with its Jacobian (row-major, d x d).
struct SmoothVectorField {
  using Eval = std::function<void(std::span<const double>, std::span<double>)>;

  std::size_t dim = 0;
  Eval value;
  Eval jacobian;

  std::vector<double> operator()(std::span<const double> x) const {
    std::vector<double> out(dim);
    value(x, out);
    return out;
  }

  static SmoothVectorField zero(std::size_t d) {
    return {d, [](std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); },
            [](std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); }};
  }

  static SmoothVectorField constant(std::vector<double> c) {
    const std::size_t d = c.size();
    return {d, [c](std::span<const double>, std::span<double> out) { std::copy(c.begin(), c.end(), out.begin()); },
            [](std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); }};
  }

  /// x -> A x + b.
  static SmoothVectorField affine(std::vector<double> a, std::vector<double> b) {
    const std::size_t d = b.size();
    return {d,
            [a, b, d](std::span<const double> x, std::span<double> out) {
              for (std::size_t r = 0; r < d; ++r) {
                double acc = b[r];
                for (std::size_t c = 0; c < d; ++c) acc += a[r * d + c] * x[c];
                out[r] = acc;
              }
            },
            [a](std::span<const double>, std::span<double> out) { std::copy(a.begin(), a.end(), out.begin()); }};
  }
};

}  // namespace dualpair
