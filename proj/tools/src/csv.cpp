#include "pdm/app/csv.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <system_error>

namespace pdm::app {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

}  // namespace

void write_spectrum_csv(std::ostream& os, std::span<const SpectrumEntry> entries) {
  os << "m,n,E,residual,valid,variant\n";
  for (const SpectrumEntry& e : entries) {
    os << e.m << ',' << e.n << ',' << format_number(e.energy) << ','
       << format_number(e.residual) << ',' << (e.valid.all() ? 1 : 0) << ','
       << to_string(e.variant) << '\n';
  }
}

void write_field_csv(std::ostream& os, const Grid2D& grid,
                     const std::function<double(double, double)>& field) {
  os << "x,y,value\n";
  for (int j = 0; j < grid.y.n(); ++j) {
    const double y = grid.y.node(j);
    for (int i = 0; i < grid.x.n(); ++i) {
      const double x = grid.x.node(i);
      os << format_number(x) << ',' << format_number(y) << ','
         << format_number(field(x, y)) << '\n';
    }
  }
}

void write_table_compare_csv(std::ostream& os, const TableComparison& report) {
  os << "m,n,E_ref,E_fp,dE_fp,E_pp,dE_pp,match_fp,match_pp\n";
  for (const TableRow& row : report.rows) {
    os << row.reference.m << ',' << row.reference.n << ','
       << format_number(row.reference.energy) << ','
       << optional_number(row.e_first_principles) << ','
       << optional_number(row.delta_first_principles()) << ','
       << optional_number(row.e_paper_printed) << ','
       << optional_number(row.delta_paper_printed()) << ','
       << (row.match_first_principles ? 1 : 0) << ','
       << (row.match_paper_printed ? 1 : 0) << '\n';
  }
}

}  // namespace pdm::app
