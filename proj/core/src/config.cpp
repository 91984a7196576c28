#include "dualpair/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "dualpair/csv.hpp"
#include "dualpair/error.hpp"

namespace dualpair {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string canonical_key(std::string_view key) {
  std::string k(trim(key));
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

template <class T>
T parse_unsigned(std::string_view key, std::string_view text) {
  text = trim(text);
  T v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ArgumentError(std::string(key) + ": expected a non-negative integer, got '" +
                        std::string(text) + "'");
  }
  return v;
}

double parse_positive(std::string_view key, std::string_view text) {
  double v = 0.0;
  try {
    v = io::parse_double(text);
  } catch (const ArgumentError&) {
    throw ArgumentError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
  if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError(std::string(key) + " must be > 0");
  return v;
}

}  // namespace

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::Exact: return "exact";
    case Suite::Numeric: return "numeric";
    case Suite::All: return "all";
  }
  return "?";
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    const auto v = parse_unsigned<std::size_t>("grids", item);
    if (v == 0) throw ArgumentError("grids: sizes must be positive");
    if (!out.empty() && v <= out.back()) throw ArgumentError("grids: sizes must be ascending");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t parse_seed(std::string_view text) { return parse_unsigned<std::uint64_t>("seed", text); }

const std::vector<std::string>& ExperimentConfig::keys() {
  static const std::vector<std::string> k{
      "seed",    "out",   "tol",  "min-order", "suite",  "grids",  "op",
      "mode",    "n",     "alpha", "p",        "spacing", "kernel", "dt",
      "t-final", "record-every", "method", "grid", "flow", "steps"};
  return k;
}

void ExperimentConfig::set(std::string_view raw_key, std::string_view raw_value) {
  const std::string key = canonical_key(raw_key);
  const std::string_view value = trim(raw_value);
  if (key == "seed") {
    seed = parse_seed(value);
  } else if (key == "out") {
    if (value.empty()) throw ArgumentError("out: empty path");
    out = std::string(value);
  } else if (key == "tol") {
    tol = parse_positive(key, value);
  } else if (key == "min-order") {
    min_order = parse_positive(key, value);
  } else if (key == "suite") {
    if (value == "exact") suite = Suite::Exact;
    else if (value == "numeric") suite = Suite::Numeric;
    else if (value == "all") suite = Suite::All;
    else throw ArgumentError("suite: expected exact|numeric|all, got '" + std::string(value) + "'");
  } else if (key == "grids") {
    auto g = parse_size_list(value);
    if (g.size() < 2) throw ArgumentError("grids: need at least two sizes");
    grids = std::move(g);
  } else if (key == "op") {
    op = std::string(value);
  } else if (key == "mode") {
    if (value != "peakon" && value != "filament") {
      throw ArgumentError("mode: expected peakon|filament, got '" + std::string(value) + "'");
    }
    mode = std::string(value);
  } else if (key == "n") {
    n = parse_unsigned<std::size_t>(key, value);
    if (n == 0) throw ArgumentError("n must be > 0");
  } else if (key == "alpha") {
    alpha = parse_positive(key, value);
  } else if (key == "p") {
    p = parse_positive(key, value);
  } else if (key == "spacing") {
    spacing = parse_positive(key, value);
  } else if (key == "kernel") {
    kernel = epdiff::parse_kernel(value);
  } else if (key == "dt") {
    dt = parse_positive(key, value);
  } else if (key == "t-final") {
    t_final = parse_positive(key, value);
  } else if (key == "record-every") {
    record_every = parse_unsigned<std::size_t>(key, value);
    if (record_every == 0) throw ArgumentError("record-every must be > 0");
  } else if (key == "method") {
    method = symplectic::parse_method(value);
  } else if (key == "grid") {
    grid = parse_unsigned<std::size_t>(key, value);
    if (grid < 2) throw ArgumentError("grid must be >= 2");
  } else if (key == "flow") {
    if (value != "shear" && value != "rotation" && value != "pendulum") {
      throw ArgumentError("flow: expected shear|rotation|pendulum, got '" + std::string(value) + "'");
    }
    flow = std::string(value);
  } else if (key == "steps") {
    steps = parse_unsigned<std::size_t>(key, value);
  } else {
    throw ArgumentError("unknown config key '" + std::string(trim(raw_key)) + "'");
  }
}

void ExperimentConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      set(std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
    } catch (const ArgumentError& e) {
      throw ArgumentError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (in.bad()) throw IoError("error reading config file '" + path.string() + "'");
}

}  // namespace dualpair
