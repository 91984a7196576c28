#pragma once

// CSV (RFC 4180, CRLF line ends, header row) and text-block serialization.
// Floats use 17 significant digits and never depend on the locale.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dualpair/epdiff.hpp"
#include "dualpair/grid.hpp"

namespace dualpair::io {

std::string format_double(double x);
/// Parses a float in the C locale; throws ArgumentError on trailing junk.
double parse_double(std::string_view text);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view text);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names);
  void row(const std::vector<std::string>& fields);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
  std::size_t columns_ = 0;
};

/// Parses RFC 4180 text into records (the header is the first record).
std::vector<std::vector<std::string>> read_csv(std::istream& in);

/// Columns q1..qn, p1..pn.
std::vector<std::string> phase_component_names(std::size_t dim);

/// Header s1,s2,q1..,p1..; one row per node in index order.
void write_map_field(std::ostream& out, const grid::MapField& f);
/// Reads values written by write_map_field onto `grid`.
grid::MapField read_map_field(std::istream& in, const grid::GridSource& grid);

/// Header s1,s2,c at cell centres.
void write_cell_two_form(std::ostream& out, const grid::CellTwoForm& c);

/// topology = ..., N = ..., mass = ... lines.
void write_grid_config(std::ostream& out, const grid::GridSource& g);
grid::GridSource read_grid_config(std::istream& in);

/// Column names t, q.., p.., H, Ptot_1..d, jr_drift for a state of this shape.
std::vector<std::string> trajectory_header(std::size_t points, std::size_t dim);

/// One row per recorded state. jr_drift is the chain J_R drift when `filament`
/// is set and "nan" otherwise.
void write_trajectory(std::ostream& out, const epdiff::Trajectory& traj, bool filament);

struct VerificationRow {
  std::string test_id;
  std::size_t n = 0;
  double residual = 0.0;
  /// NaN when the row is not a convergence row.
  double observed_order = 0.0;
  bool pass = false;
};

/// Header test_id,N,residual,observed_order,pass.
void write_report(std::ostream& out, const std::vector<VerificationRow>& rows);

}  // namespace dualpair::io
