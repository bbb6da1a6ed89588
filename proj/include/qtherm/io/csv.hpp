#pragma once

// Deterministic CSV output: 17-significant-digit scientific notation, '.'
// decimal separator regardless of locale, '\n' line endings.

#include <ostream>
#include <string>
#include <vector>

#include "qtherm/regions.hpp"

namespace qtherm {

// "%.16e" rendering: one leading digit plus 16 decimals.
std::string format_sci17(double x);

// Header t,concurrence,min_pt_eig and one row per sample.
void write_scan_csv(std::ostream& out, const std::vector<CurveSample>& samples);

// Header h,t,concurrence,min_pt_eig; per_h[i] holds the temperature sweep at
// h_values[i]. Sizes must agree.
void write_grid_csv(std::ostream& out, const std::vector<double>& h_values,
                    const std::vector<std::vector<CurveSample>>& per_h);

// Header t_lo,t_hi and one row per entangled interval.
void write_intervals_csv(std::ostream& out, const std::vector<Interval>& intervals);

}  // namespace qtherm
