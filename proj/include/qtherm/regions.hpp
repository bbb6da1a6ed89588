#pragma once

// Temperature scanning and entangled-region detection. A region is a maximal
// temperature interval on which the thermal state is entangled; boundaries
// are refined by bisection on the same predicate the scan uses, so the
// reported endpoints are consistent with the scan by construction.

#include <functional>
#include <optional>
#include <vector>

#include "qtherm/hamiltonian.hpp"

namespace qtherm {

struct RegionOptions {
  int t_points = 2000;      // scan grid size (excluding the exact T = 0 point)
  double refine_tol = 1e-9;  // relative width at which boundary bisection stops
  double neg_tol = 1e-10;    // entangled iff min PT eigenvalue < -neg_tol
  // When positive, the predicate becomes concurrence > conc_tol instead of
  // the PT-eigenvalue test. Slower (full concurrence per point) but lets a
  // caller ask for regions that are entangled above a given strength.
  double conc_tol = 0.0;
};

struct Interval {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

struct RegionReport {
  std::vector<Interval> intervals;  // disjoint, ascending
  bool includes_zero = false;       // true iff intervals.front().t_lo == 0
  double t_max_scanned = 0.0;
  RegionOptions opts;               // everything needed to reproduce the scan
};

struct CurveSample {
  double t = 0.0;
  double concurrence = 0.0;
  double min_pt_eig = 0.0;
};

// Reference-path samples (full eigensolves) of the concurrence and minimum
// PT eigenvalue over an ascending temperature grid.
std::vector<CurveSample> concurrence_curve(const PauliHamiltonian& h,
                                           const std::vector<double>& t_grid);

// Default scan ceiling: 20x the spectral width, at which the thermal state
// is within 1e-3 of maximally mixed and safely separable. Falls back to 1
// for a (physically trivial) zero-width spectrum.
double default_t_max(const PauliHamiltonian& h);

// The scan grid: exact 0, then a logarithmic half from t_max*1e-6 up to
// t_max/2 (low-temperature regions can end arbitrarily close to 0), then a
// linear half up to t_max inclusive.
std::vector<double> default_t_grid(double t_max, int points);

// Scan, detect runs of entangled samples, and bisect the boundaries to
// relative tolerance opts.refine_tol. Throws ComputationError if the state
// is still entangled at t_max (raise t_max), InvalidInput for bad options.
RegionReport detect_regions(const PauliHamiltonian& h, double t_max, const RegionOptions& opts = {});

// Region count on the same grid without boundary refinement; the cheap core
// of the campaign drivers. Identical count to detect_regions.
int count_regions(const PauliHamiltonian& h, double t_max, const RegionOptions& opts = {});

struct HGrid {
  double h_min = 0.0;
  double h_max = 5.0;
  int points = 201;
};

// Smallest grid h for which family(h) shows at least two entangled regions,
// or nullopt. t_max defaults per Hamiltonian via default_t_max.
std::optional<double> two_regions_over_h(const std::function<PauliHamiltonian(double)>& family,
                                         const HGrid& grid = {}, const RegionOptions& opts = {});

}  // namespace qtherm
