#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "dualpair/config.hpp"
#include "dualpair/csv.hpp"
#include "dualpair/error.hpp"

using namespace dualpair;
using namespace dualpair::io;

TEST_CASE("doubles print with 17 significant digits and round trip") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
  for (double x : {1e-300, -2.5e17, 3.141592653589793, 5e-324}) {
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK(std::isnan(parse_double("nan")));
  CHECK_THROWS_AS(parse_double("1.0x"), ArgumentError);
  CHECK_THROWS_AS(parse_double(""), ArgumentError);
}

TEST_CASE("csv quoting follows RFC 4180") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  std::ostringstream out;
  CsvWriter w(out);
  w.header({"x", "note"});
  w.row(std::vector<std::string>{"1", "a,\"b\"\nc"});
  CHECK(out.str() == "x,note\r\n1,\"a,\"\"b\"\"\nc\"\r\n");
  std::istringstream in(out.str());
  const auto rows = read_csv(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][1] == "a,\"b\"\nc");
  CHECK_THROWS_AS(w.row(std::vector<double>{1.0}), ArgumentError);
}

TEST_CASE("map fields and grid configs round trip") {
  grid::GridSource g(grid::Topology::Patch, 3, 2.5);
  grid::MapField f(g, 2);
  for (std::size_t i = 0; i < f.values().size(); ++i) f.values()[i] = std::sqrt(double(i)) - 1.3;
  std::stringstream s;
  write_map_field(s, f);
  CHECK(read_map_field(s, g) == f);
  std::stringstream c;
  write_grid_config(c, g);
  CHECK(read_grid_config(c) == g);
  std::istringstream bad("topology = periodic\nN = 4\ncolour = red\n");
  CHECK_THROWS_AS(read_grid_config(bad), ArgumentError);
  CHECK(phase_component_names(4) == std::vector<std::string>{"q1", "q2", "p1", "p2"});
}

TEST_CASE("trajectory header names") {
  const auto h1 = trajectory_header(2, 1);
  CHECK(h1.front() == "t");
  CHECK(h1[1] == "q_1");
  CHECK(h1.back() == "jr_drift");
  const auto h2 = trajectory_header(1, 2);
  CHECK(h2[1] == "q_1_1");
}

TEST_CASE("verification report format") {
  std::ostringstream out;
  write_report(out, {{"poisson_jacobi", 0, 0.0, NAN, true}});
  CHECK(out.str() == "test_id,N,residual,observed_order,pass\r\npoisson_jacobi,0,0,nan,true\r\n");
}

TEST_CASE("config keys, defaults and overrides") {
  ExperimentConfig cfg;
  CHECK(cfg.tol == 1e-12);
  cfg.set("t_final", "2.5");
  cfg.set("kernel", "gaussian");
  cfg.set("grids", "16,32,64");
  CHECK(cfg.t_final == 2.5);
  CHECK(cfg.kernel == epdiff::KernelFamily::Gaussian);
  CHECK(cfg.grids == std::vector<std::size_t>{16, 32, 64});
  CHECK_THROWS_AS(cfg.set("colour", "red"), ArgumentError);
  CHECK_THROWS_AS(cfg.set("dt", "fast"), ArgumentError);
  CHECK_THROWS_AS(parse_size_list("32,16"), ArgumentError);
  CHECK_THROWS_AS(parse_seed("-1"), ArgumentError);
  CHECK(parse_seed("18446744073709551615") == 18446744073709551615ULL);
  CHECK(suite_name(Suite::Numeric) == std::string("numeric"));
}

TEST_CASE("config files") {
  const auto path = std::filesystem::temp_directory_path() / "dualpair_test_config.txt";
  {
    std::ofstream f(path);
    f << "# comment\nseed = 12\n\ndt = 0.5\n";
  }
  ExperimentConfig cfg;
  cfg.load_file(path);
  CHECK(cfg.seed == 12);
  CHECK(cfg.dt == 0.5);
  {
    std::ofstream f(path);
    f << "seed = 1\nbogus = 2\n";
  }
  CHECK_THROWS_AS(cfg.load_file(path), ArgumentError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(cfg.load_file(path), IoError);
}
