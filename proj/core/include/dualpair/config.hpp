#pragma once

// Experiment settings shared by the config file and the command line.
//
// File format: one `key = value` per line, `#` starts a comment. Keys are the
// long flag names (`t-final` and `t_final` are the same key). Unknown keys and
// malformed values are errors.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dualpair/epdiff.hpp"
#include "dualpair/symplectic.hpp"

namespace dualpair {

enum class Suite { Exact, Numeric, All };

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::string out;
  /// Tolerance for identity rows in the numeric suite.
  double tol = 1e-12;
  /// Minimum observed order for convergence rows.
  double min_order = 1.9;
  Suite suite = Suite::All;

  std::vector<std::size_t> grids{8, 16, 32};
  std::string op = "ooo";

  // peakon
  std::string mode = "peakon";
  std::size_t n = 1;
  double alpha = 1.0;
  double p = 1.0;
  double spacing = 4.0;
  epdiff::KernelFamily kernel = epdiff::KernelFamily::Exp1d;
  double dt = 1e-3;
  double t_final = 1.0;
  std::size_t record_every = 1;
  symplectic::Method method = symplectic::Method::ImplicitMidpoint;

  // advect
  std::size_t grid = 16;
  std::string flow = "shear";
  std::size_t steps = 100;

  /// Parses and stores one setting; throws ArgumentError on unknown keys or bad values.
  void set(std::string_view key, std::string_view value);
  /// Applies every line of a config file. IoError if it cannot be read.
  void load_file(const std::filesystem::path& path);
  /// The set of accepted keys, in canonical spelling.
  static const std::vector<std::string>& keys();
};

const char* suite_name(Suite s);

/// "8,16,32" -> {8, 16, 32}; strictly ascending positive integers.
std::vector<std::size_t> parse_size_list(std::string_view text);
std::uint64_t parse_seed(std::string_view text);

}  // namespace dualpair
