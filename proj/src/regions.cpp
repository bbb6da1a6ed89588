#include "qtherm/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <utility>

#include "qtherm/entanglement.hpp"
#include "qtherm/errors.hpp"
#include "qtherm/kernels/pt_scan.hpp"
#include "qtherm/thermal.hpp"

namespace qtherm {

namespace {

void validate_options(const RegionOptions& opts) {
  if (opts.t_points < 16) {
    throw InvalidInput("region scan needs at least 16 temperature points");
  }
  if (!(opts.refine_tol > 0.0) || opts.refine_tol > 0.1) {
    throw InvalidInput("refine_tol must lie in (0, 0.1]");
  }
  if (!(opts.neg_tol > 0.0) || !std::isfinite(opts.neg_tol)) {
    throw InvalidInput("neg_tol must be positive and finite");
  }
  if (opts.conc_tol < 0.0 || !std::isfinite(opts.conc_tol)) {
    throw InvalidInput("conc_tol must be non-negative and finite");
  }
}

void validate_t_max(double t_max) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw InvalidInput("t_max must be positive and finite");
  }
}

// The entanglement predicate over the scan grid, plus a point evaluator for
// bisection. Both modes share this shape so the region logic is written once.
struct Predicate {
  std::vector<char> flags;                       // entangled at grid[i]?
  std::function<bool(double)> entangled_at;      // t >= 0
};

// The scan determinant is a Laplace expansion over entries bounded by 1, so
// its absolute error sits near 1e-15. Weakly entangled near-pure states have
// true determinants as small as C^4/16, far below that, and their sign must
// come from the eigenvalue path instead.
constexpr double kDetTrustFloor = 1e-13;

bool eigen_entangled(const PauliHamiltonian& h, double t, double neg_tol) {
  return pt_report(thermal_state(h, t)).min_eigenvalue < -neg_tol;
}

struct DetPredicateState {
  ThermalPtContext ctx;
  PauliHamiltonian h;
  double neg_tol = 0.0;
  // Below this temperature every Boltzmann factor matches its T = 0 value to
  // ~1e-14, so the verdict is the frozen ground-state one.
  double plateau_t = 0.0;
  bool zero_verdict = false;

  bool verdict(double t, double det) const {
    if (t < plateau_t) return zero_verdict;
    if (std::abs(det) >= kDetTrustFloor) return det < 0.0;
    return eigen_entangled(h, t, neg_tol);
  }
};

Predicate det_predicate(const PauliHamiltonian& h, const std::vector<double>& grid,
                        double neg_tol) {
  auto st = std::make_shared<DetPredicateState>();
  st->ctx = make_pt_context(h);
  st->h = h;
  st->neg_tol = neg_tol;
  // Spectral gap above the ground cluster (the same degeneracy tolerance
  // gibbs_weights applies at T = 0); exp(-gap/t) < 5e-15 for t below gap/33.
  const double width = st->ctx.energies[3];
  double gap = std::numeric_limits<double>::infinity();
  for (double e : st->ctx.energies) {
    if (e > 1e-10 * width) gap = std::min(gap, e);
  }
  st->plateau_t = gap / 33.0;
  st->zero_verdict = eigen_entangled(h, 0.0, neg_tol);

  const std::size_t n = grid.size();
  std::vector<double> dets(n, 0.0);
  pt_det_scan(st->ctx, grid.data() + 1, n - 1, neg_tol, dets.data() + 1);

  Predicate p;
  p.flags.resize(n);
  p.flags[0] = st->zero_verdict;
  for (std::size_t i = 1; i < n; ++i) p.flags[i] = st->verdict(grid[i], dets[i]);
  p.entangled_at = [st](double t) {
    if (t < st->plateau_t) return st->zero_verdict;
    double det = 0.0;
    pt_det_scan(st->ctx, &t, 1, st->neg_tol, &det);
    return st->verdict(t, det);
  };
  return p;
}

Predicate conc_predicate(const PauliHamiltonian& h, const std::vector<double>& grid,
                         double conc_tol) {
  auto ham = std::make_shared<PauliHamiltonian>(h);
  Predicate p;
  p.entangled_at = [ham, conc_tol](double t) {
    return concurrence(thermal_state(*ham, t)) > conc_tol;
  };
  p.flags.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) p.flags[i] = p.entangled_at(grid[i]);
  return p;
}

Predicate make_predicate(const PauliHamiltonian& h, const std::vector<double>& grid,
                         const RegionOptions& opts) {
  return opts.conc_tol > 0.0 ? conc_predicate(h, grid, opts.conc_tol)
                             : det_predicate(h, grid, opts.neg_tol);
}

// Bracket (lo, hi) with entangled_at(lo) != entangled_at(hi); returns the
// midpoint once the bracket is narrower than refine_tol relative to hi.
double bisect_boundary(const std::function<bool(double)>& entangled_at, double lo, double hi,
                       bool lo_entangled, double refine_tol) {
  while (hi - lo > refine_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket exhausted in double precision
    if (entangled_at(mid) == lo_entangled) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Maximal runs of set flags, as [first, last] index pairs.
std::vector<std::pair<std::size_t, std::size_t>> entangled_runs(const std::vector<char>& flags) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t i = 0;
  while (i < flags.size()) {
    if (!flags[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < flags.size() && flags[j + 1]) ++j;
    runs.emplace_back(i, j);
    i = j + 1;
  }
  return runs;
}

}  // namespace

std::vector<CurveSample> concurrence_curve(const PauliHamiltonian& h,
                                           const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw InvalidInput("temperature grid is empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (std::isnan(t_grid[i]) || t_grid[i] < 0.0) {
      throw InvalidInput("temperature grid values must be >= 0");
    }
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
      throw InvalidInput("temperature grid must be strictly ascending");
    }
  }
  std::vector<CurveSample> curve;
  curve.reserve(t_grid.size());
  for (double t : t_grid) {
    const DensityMatrix rho = thermal_state(h, t);
    curve.push_back({t, concurrence(rho), pt_report(rho).min_eigenvalue});
  }
  return curve;
}

double default_t_max(const PauliHamiltonian& h) {
  const EigenSystem<4> eig = hermitian_eig<4>(h.matrix());
  const double width = eig.values[3] - eig.values[0];
  return width > 0.0 ? 20.0 * width : 1.0;
}

std::vector<double> default_t_grid(double t_max, int points) {
  validate_t_max(t_max);
  if (points < 16) throw InvalidInput("region scan needs at least 16 temperature points");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points) + 1);
  grid.push_back(0.0);
  const int n_low = points / 2;
  const int n_up = points - n_low;
  const double lo = t_max * 1e-6;
  const double mid = t_max * 0.5;
  for (int i = 0; i < n_low; ++i) {
    grid.push_back(lo * std::pow(mid / lo, static_cast<double>(i) / n_low));
  }
  for (int i = 0; i < n_up; ++i) {
    grid.push_back(mid + (t_max - mid) * static_cast<double>(i) / (n_up - 1));
  }
  return grid;
}

RegionReport detect_regions(const PauliHamiltonian& h, double t_max, const RegionOptions& opts) {
  validate_options(opts);
  validate_t_max(t_max);
  const std::vector<double> grid = default_t_grid(t_max, opts.t_points);
  const Predicate pred = make_predicate(h, grid, opts);

  if (pred.flags.back()) {
    throw ComputationError("state is still entangled at t_max; raise t_max");
  }

  RegionReport report;
  report.t_max_scanned = t_max;
  report.opts = opts;
  for (const auto& [first, last] : entangled_runs(pred.flags)) {
    Interval iv;
    if (first == 0) {
      iv.t_lo = 0.0;
    } else {
      iv.t_lo = bisect_boundary(pred.entangled_at, grid[first - 1], grid[first],
                                /*lo_entangled=*/false, opts.refine_tol);
    }
    iv.t_hi = bisect_boundary(pred.entangled_at, grid[last], grid[last + 1],
                              /*lo_entangled=*/true, opts.refine_tol);
    report.intervals.push_back(iv);
  }
  report.includes_zero = !report.intervals.empty() && report.intervals.front().t_lo == 0.0;
  return report;
}

int count_regions(const PauliHamiltonian& h, double t_max, const RegionOptions& opts) {
  validate_options(opts);
  validate_t_max(t_max);
  const std::vector<double> grid = default_t_grid(t_max, opts.t_points);
  const Predicate pred = make_predicate(h, grid, opts);
  if (pred.flags.back()) {
    throw ComputationError("state is still entangled at t_max; raise t_max");
  }
  return static_cast<int>(entangled_runs(pred.flags).size());
}

std::optional<double> two_regions_over_h(const std::function<PauliHamiltonian(double)>& family,
                                         const HGrid& grid, const RegionOptions& opts) {
  if (!family) throw InvalidInput("family callback is empty");
  if (grid.points < 2 || !(grid.h_max > grid.h_min) || !std::isfinite(grid.h_min) ||
      !std::isfinite(grid.h_max)) {
    throw InvalidInput("h grid must be ascending with at least 2 points");
  }
  for (int i = 0; i < grid.points; ++i) {
    const double h_val =
        grid.h_min + (grid.h_max - grid.h_min) * static_cast<double>(i) / (grid.points - 1);
    const PauliHamiltonian ham = family(h_val);
    if (count_regions(ham, default_t_max(ham), opts) >= 2) return h_val;
  }
  return std::nullopt;
}

}  // namespace qtherm
