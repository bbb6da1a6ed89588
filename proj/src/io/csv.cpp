#include "qtherm/io/csv.hpp"

#include <cstdio>

#include "qtherm/errors.hpp"

namespace qtherm {

std::string format_sci17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

void write_scan_csv(std::ostream& out, const std::vector<CurveSample>& samples) {
  out << "t,concurrence,min_pt_eig\n";
  for (const CurveSample& s : samples)
    out << format_sci17(s.t) << ',' << format_sci17(s.concurrence) << ','
        << format_sci17(s.min_pt_eig) << '\n';
}

void write_grid_csv(std::ostream& out, const std::vector<double>& h_values,
                    const std::vector<std::vector<CurveSample>>& per_h) {
  if (h_values.size() != per_h.size())
    throw InvalidInput("write_grid_csv: one sweep per h value required");
  out << "h,t,concurrence,min_pt_eig\n";
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    const std::string h = format_sci17(h_values[i]);
    for (const CurveSample& s : per_h[i])
      out << h << ',' << format_sci17(s.t) << ',' << format_sci17(s.concurrence) << ','
          << format_sci17(s.min_pt_eig) << '\n';
  }
}

void write_intervals_csv(std::ostream& out, const std::vector<Interval>& intervals) {
  out << "t_lo,t_hi\n";
  for (const Interval& iv : intervals)
    out << format_sci17(iv.t_lo) << ',' << format_sci17(iv.t_hi) << '\n';
}

}  // namespace qtherm
