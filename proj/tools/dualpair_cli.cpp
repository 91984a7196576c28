// dualpair: verification suites, peakon/filament runs, advection of maps and
// convergence studies.
//
// Exit codes: 0 pass, 1 invariant failure, 2 usage, 3 I/O, 4 numeric.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dualpair/config.hpp"
#include "dualpair/csv.hpp"
#include "dualpair/epdiff.hpp"
#include "dualpair/error.hpp"
#include "dualpair/mapping_space.hpp"
#include "dualpair/studies.hpp"
#include "dualpair/verification.hpp"

namespace {

using namespace dualpair;

enum Exit { kPass = 0, kInvariant = 1, kUsage = 2, kIo = 3, kNumeric = 4 };

// Writes to --out when given, stdout otherwise.
void emit(const ExperimentConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("write to stdout failed");
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw IoError("cannot open '" + cfg.out + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("write to '" + cfg.out + "' failed");
}

std::size_t step_count(double t_final, double dt) {
  const double ratio = t_final / dt;
  const double steps = std::round(ratio);
  if (std::fabs(ratio - steps) > 1e-9 * std::max(1.0, ratio)) {
    throw ArgumentError("t-final must be a whole number of dt steps");
  }
  return static_cast<std::size_t>(steps);
}

int run_verify(const ExperimentConfig& cfg) {
  std::vector<io::VerificationRow> rows;
  if (cfg.suite != Suite::Numeric) {
    auto e = verification::exact_suite(cfg.seed);
    rows.insert(rows.end(), e.begin(), e.end());
  }
  if (cfg.suite != Suite::Exact) {
    verification::NumericOptions opt;
    opt.n = cfg.grid;
    opt.tol = cfg.tol;
    auto n = verification::numeric_suite(cfg.seed, opt);
    rows.insert(rows.end(), n.begin(), n.end());
  }
  std::ostringstream out;
  io::write_report(out, rows);
  if (!cfg.out.empty()) emit(cfg, out.str());
  bool ok = true;
  for (const auto& r : rows) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.test_id << " residual=" << io::format_double(r.residual)
              << '\n';
    ok = ok && r.pass;
  }
  return ok ? kPass : kInvariant;
}

epdiff::SingularState peakon_state(const ExperimentConfig& cfg) {
  if (cfg.mode == "filament") {
    return studies::random_filament(cfg.seed, cfg.n, cfg.alpha).state();
  }
  // Equal spacing, momenta decreasing from the trailing peakon.
  std::vector<double> q(cfg.n), p(cfg.n), w(cfg.n, 1.0);
  for (std::size_t a = 0; a < cfg.n; ++a) {
    q[a] = static_cast<double>(a) * cfg.spacing;
    p[a] = cfg.p * static_cast<double>(cfg.n - a) / static_cast<double>(cfg.n);
  }
  return epdiff::SingularState(1, std::move(q), std::move(p), std::move(w), {cfg.kernel, cfg.alpha});
}

int run_peakon(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  if (c.mode == "filament") c.kernel = epdiff::KernelFamily::Gaussian;
  const auto st = peakon_state(c);
  const symplectic::FlowSpec spec{c.method, c.dt, step_count(c.t_final, c.dt)};
  const auto traj = epdiff::integrate(st, spec, c.record_every);
  std::ostringstream out;
  io::write_trajectory(out, traj, c.mode == "filament");
  emit(c, out.str());
  return kPass;
}

symplectic::ObservableFn advect_hamiltonian(const std::string& flow) {
  if (flow == "shear") return symplectic::ObservableFn::free_particle(1);
  if (flow == "rotation") return symplectic::ObservableFn::harmonic_oscillator(1);
  return symplectic::ObservableFn(
      2, [](std::span<const double> m) { return 0.5 * m[1] * m[1] - std::cos(m[0]); },
      [](std::span<const double> m, std::span<double> g) {
        g[0] = std::sin(m[0]);
        g[1] = m[1];
      },
      true);
}

int run_advect(const ExperimentConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const grid::GridSource g(grid::Topology::Periodic, cfg.grid);
  const auto comps = studies::random_fields(rng, 2);
  const auto h = advect_hamiltonian(cfg.flow);
  mapping::LeftFlow flow(studies::sample_map(g, comps), h, cfg.method, cfg.dt);

  const auto c0 = mapping::j_R(flow.current());
  double c0_max = 0.0;
  for (double x : c0.values()) c0_max = std::max(c0_max, std::fabs(x));

  std::ostringstream out;
  io::CsvWriter w(out);
  w.header({"step", "t", "hbar", "jr_total", "jr_drift"});
  for (std::size_t s = 0; s <= cfg.steps; ++s) {
    if (s > 0) flow.advance();
    const auto& f = flow.current();
    const auto c = mapping::j_R(f);
    double drift = 0.0;
    for (std::size_t k = 0; k < c.values().size(); ++k) {
      drift = std::max(drift, std::fabs(c[k] - c0[k]));
    }
    w.row({std::to_string(s), io::format_double(static_cast<double>(s) * cfg.dt),
           io::format_double(mapping::h_bar(f, h)), io::format_double(c.integral()),
           io::format_double(c0_max > 0.0 ? drift / c0_max : drift)});
  }
  emit(cfg, out.str());
  return kPass;
}

int run_converge(const ExperimentConfig& cfg) {
  const auto op = studies::parse_study(cfg.op);
  const auto result = studies::run_study(op, cfg.grids, cfg.seed);
  const bool pass = result.observed_order >= cfg.min_order;
  std::vector<io::VerificationRow> rows;
  for (const auto& r : result.rows) {
    rows.push_back({r.test_id, r.n, r.residual, result.observed_order, pass});
  }
  std::ostringstream out;
  io::write_report(out, rows);
  emit(cfg, out.str());
  if (!cfg.out.empty()) {
    std::cout << (pass ? "PASS " : "FAIL ") << cfg.op
              << " observed_order=" << io::format_double(result.observed_order) << '\n';
  }
  return pass ? kPass : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-pair identities, EPDiff singular solutions and convergence studies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dualpair 0.1.0");

  // Every setting is taken as text and validated by ExperimentConfig::set.
  std::map<std::string, std::string> given;
  std::string config_path;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value settings file");
    for (const char* key : {"out", "seed", "tol"}) {
      sub->add_option(std::string("--") + key, given[key]);
    }
  };
  auto flags = [&](CLI::App* sub, std::initializer_list<const char*> keys) {
    for (const char* key : keys) sub->add_option(std::string("--") + key, given[key]);
  };

  auto* verify = app.add_subcommand("verify", "Run the identity suites");
  common(verify);
  flags(verify, {"suite", "grid"});

  auto* peakon = app.add_subcommand("peakon", "Integrate peakons or a filament and write the trajectory");
  common(peakon);
  flags(peakon, {"mode", "n", "alpha", "p", "spacing", "kernel", "dt", "t-final", "record-every", "method"});

  auto* advect = app.add_subcommand("advect", "Move a map by a Hamiltonian flow and track J_R");
  common(advect);
  flags(advect, {"grid", "flow", "steps", "dt", "method"});

  auto* converge = app.add_subcommand("converge", "Grid or time refinement study");
  common(converge);
  flags(converge, {"op", "grids", "min-order"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  ExperimentConfig cfg;
  if (advect->parsed()) cfg.dt = 1e-2;
  try {
    if (!config_path.empty()) cfg.load_file(config_path);
    for (const auto& [key, value] : given) {
      CLI::App* sub = app.get_subcommands().front();
      const CLI::Option* opt = sub->get_option_no_throw("--" + key);
      if (opt != nullptr && opt->count() > 0) cfg.set(key, value);
    }
    if (verify->parsed()) return run_verify(cfg);
    if (peakon->parsed()) return run_peakon(cfg);
    if (advect->parsed()) return run_advect(cfg);
    return run_converge(cfg);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const NumericError& e) {
    std::cerr << "numeric error at step " << e.step() << ": " << e.what() << '\n';
    return kNumeric;
  }
}
