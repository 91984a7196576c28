#include "dualpair/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "dualpair/error.hpp"

namespace dualpair::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text == "nan") return std::nan("");
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  double v = 0.0;
  const auto res = std::from_chars(first, text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    throw ArgumentError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::header(const std::vector<std::string>& names) {
  columns_ = names.size();
  row(names);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (columns_ != 0 && fields.size() != columns_) {
    throw ArgumentError("csv row has " + std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(columns_));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_field(fields[i]);
  }
  out_ << "\r\n";
  if (!out_) throw IoError("csv write failed");
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> f;
  f.reserve(values.size());
  for (double v : values) f.push_back(format_double(v));
  row(f);
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, any = false;
  char c;
  auto end_record = [&] {
    rec.push_back(std::move(field));
    field.clear();
    records.push_back(std::move(rec));
    rec.clear();
    any = false;
  };
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      rec.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r') {
      if (in.peek() == '\n') in.get(c);
      end_record();
    } else if (c == '\n') {
      end_record();
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ArgumentError("csv: unterminated quoted field");
  if (any || !field.empty() || !rec.empty()) end_record();
  return records;
}

std::vector<std::string> phase_component_names(std::size_t dim) {
  std::vector<std::string> names;
  const std::size_t n = dim / 2;
  for (std::size_t i = 0; i < n; ++i) names.push_back("q" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i + 1));
  return names;
}

void write_map_field(std::ostream& out, const grid::MapField& f) {
  CsvWriter w(out);
  std::vector<std::string> head{"s1", "s2"};
  for (auto& n : phase_component_names(f.dim())) head.push_back(n);
  w.header(head);
  std::vector<double> row(2 + f.dim());
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    const auto x = f.grid().node_coords(s);
    row[0] = x[0];
    row[1] = x[1];
    const auto v = f.at(s);
    std::copy(v.begin(), v.end(), row.begin() + 2);
    w.row(row);
  }
}

grid::MapField read_map_field(std::istream& in, const grid::GridSource& g) {
  const auto rec = read_csv(in);
  if (rec.empty() || rec[0].size() < 4 || rec[0][0] != "s1" || rec[0][1] != "s2") {
    throw ArgumentError("map field csv: expected header s1,s2,<components>");
  }
  const std::size_t dim = rec[0].size() - 2;
  if (rec.size() - 1 != g.node_count()) {
    throw ArgumentError("map field csv: " + std::to_string(rec.size() - 1) + " rows for " +
                        std::to_string(g.node_count()) + " nodes");
  }
  std::vector<double> vals;
  vals.reserve(dim * g.node_count());
  for (std::size_t r = 1; r < rec.size(); ++r) {
    if (rec[r].size() != dim + 2) throw ArgumentError("map field csv: ragged row " + std::to_string(r));
    for (std::size_t c = 2; c < rec[r].size(); ++c) vals.push_back(parse_double(rec[r][c]));
  }
  return grid::MapField(g, dim, std::move(vals));
}

void write_cell_two_form(std::ostream& out, const grid::CellTwoForm& c) {
  CsvWriter w(out);
  w.header({"s1", "s2", "c"});
  for (std::size_t k = 0; k < c.values().size(); ++k) {
    const auto x = c.grid().cell_center(k);
    w.row(std::vector<double>{x[0], x[1], c[k]});
  }
}

void write_grid_config(std::ostream& out, const grid::GridSource& g) {
  out << "topology = " << grid::topology_name(g.topology()) << '\n'
      << "N = " << g.cells_per_side() << '\n'
      << "mass = " << format_double(g.mass()) << '\n';
  if (!out) throw IoError("grid config write failed");
}

grid::GridSource read_grid_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw ArgumentError("grid config: expected key = value: " + line);
    const auto key = trim(line.substr(0, eq));
    if (key != "topology" && key != "N" && key != "mass") {
      throw ArgumentError("grid config: unknown key '" + key + "'");
    }
    kv[key] = trim(line.substr(eq + 1));
  }
  if (!kv.count("topology") || !kv.count("N")) throw ArgumentError("grid config: topology and N required");
  std::size_t n = 0;
  const auto& ns = kv["N"];
  const auto res = std::from_chars(ns.data(), ns.data() + ns.size(), n);
  if (res.ec != std::errc() || res.ptr != ns.data() + ns.size() || n == 0) {
    throw ArgumentError("grid config: bad N '" + ns + "'");
  }
  const double mass = kv.count("mass") ? parse_double(kv["mass"]) : 1.0;
  return grid::GridSource(grid::parse_topology(kv["topology"]), n, mass);
}

std::vector<std::string> trajectory_header(std::size_t points, std::size_t dim) {
  std::vector<std::string> h{"t"};
  for (const char* sym : {"q", "p"}) {
    for (std::size_t a = 0; a < points; ++a) {
      if (dim == 1) {
        h.push_back(std::string(sym) + "_" + std::to_string(a + 1));
      } else {
        for (std::size_t k = 0; k < dim; ++k) {
          h.push_back(std::string(sym) + "_" + std::to_string(a + 1) + "_" + std::to_string(k + 1));
        }
      }
    }
  }
  h.push_back("H");
  for (std::size_t k = 0; k < dim; ++k) h.push_back("Ptot_" + std::to_string(k + 1));
  h.push_back("jr_drift");
  return h;
}

void write_trajectory(std::ostream& out, const epdiff::Trajectory& traj, bool filament) {
  if (traj.states.empty()) throw ArgumentError("empty trajectory");
  const auto& first = traj.states.front();
  CsvWriter w(out);
  w.header(trajectory_header(first.size(), first.dim()));
  std::vector<double> m0;
  if (filament) m0 = epdiff::j_R_filament(epdiff::FilamentState(first));
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& st = traj.states[i];
    std::vector<double> row{traj.t[i]};
    row.insert(row.end(), st.q().begin(), st.q().end());
    row.insert(row.end(), st.p().begin(), st.p().end());
    row.push_back(epdiff::collective_hamiltonian(st));
    for (double v : epdiff::total_momentum(st)) row.push_back(v);
    row.push_back(filament ? epdiff::j_R_drift(m0, epdiff::j_R_filament(epdiff::FilamentState(st)))
                           : std::nan(""));
    w.row(row);
  }
}

void write_report(std::ostream& out, const std::vector<VerificationRow>& rows) {
  CsvWriter w(out);
  w.header({"test_id", "N", "residual", "observed_order", "pass"});
  for (const auto& r : rows) {
    w.row({r.test_id, std::to_string(r.n), format_double(r.residual), format_double(r.observed_order),
           r.pass ? "true" : "false"});
  }
}

}  // namespace dualpair::io
