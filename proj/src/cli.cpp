#include "qtherm/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtherm/belldiag.hpp"
#include "qtherm/bounds.hpp"
#include "qtherm/entanglement.hpp"
#include "qtherm/errors.hpp"
#include "qtherm/experiments.hpp"
#include "qtherm/hamiltonian.hpp"
#include "qtherm/io/csv.hpp"
#include "qtherm/io/report.hpp"
#include "qtherm/io/specfile.hpp"
#include "qtherm/kernels/pt_scan.hpp"
#include "qtherm/regions.hpp"
#include "qtherm/rng.hpp"
#include "qtherm/thermal.hpp"

namespace qtherm {
namespace {

std::string quote_arg(const std::string& arg) {
  bool plain = !arg.empty();
  for (const char ch : arg) {
    if (ch == ' ' || ch == '\t' || ch == '"' || ch == '\\' || ch == '\'') {
      plain = false;
      break;
    }
  }
  if (plain) return arg;
  std::string out = "\"";
  for (const char ch : arg) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

// The invocation echoed into every report, reconstructed with shell-style
// quoting so the line can be replayed as-is.
std::string command_echo(int argc, const char* const* argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) out += ' ';
    out += quote_arg(argv[i] != nullptr ? std::string(argv[i]) : std::string());
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw InvalidInput("failed reading file: " + path);
  return buf.str();
}

// Stdout or a file, chosen by --out. Content is always rendered to a string
// first so both destinations receive identical bytes.
void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open output file: " + out_path);
  out << content << std::flush;
  if (!out) throw ComputationError("failed writing output file: " + out_path);
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

nlohmann::json curve_json(const std::vector<CurveSample>& samples) {
  nlohmann::json rows = nlohmann::json::array();
  for (const CurveSample& s : samples) {
    rows.push_back({{"t", s.t}, {"concurrence", s.concurrence}, {"min_pt_eig", s.min_pt_eig}});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Per-command option bags. Each subcommand owns one so flags cannot alias.

struct ScanOpts {
  std::string ham_path;
  double t_max = 0.0;  // 0 = derive from the spectral width
  int t_points = 2000;
  std::string out_path;
  std::string format = "csv";
};

struct GridOpts {
  std::string ham_path;
  double h_min = 0.0;
  double h_max = 5.0;
  int h_points = 201;
  double t_max = 0.0;
  int t_points = 2000;
  int threads = 1;
  std::string out_path;
  std::string format = "csv";
};

struct RegionsOpts {
  std::string ham_path;
  double t_max = 0.0;
  int t_points = 2000;
  double neg_tol = 1e-10;
  double refine_tol = 1e-9;
  std::string out_path;
  std::string format = "report";
};

struct BoundOpts {
  std::string ham_path;
  std::string out_path;
  std::string format = "report";
};

struct CampaignOpts {
  long long samples = 0;  // per-subcommand default applied at registration
  std::uint64_t seed = 0;
  int threads = 1;
  double h_min = 0.0;
  double h_max = 5.0;
  int h_points = 201;
  int t_points = 2000;
  std::string out_path;
  std::string format = "report";
};

struct CheckOpts {
  long long samples = 1000;
  std::uint64_t seed = 0;
  int t_points = 2000;
  std::string out_path;
  std::string format = "report";
};

void require_report_format(const std::string& format, const std::string& command) {
  if (format != "report") {
    throw InvalidInput(command + " produces a report; --format csv is not available here");
  }
}

double resolved_t_max(double flag_value, const PauliHamiltonian& h) {
  if (flag_value == 0.0) return default_t_max(h);
  if (!(flag_value > 0.0)) throw InvalidInput("--t-max must be positive");
  return flag_value;
}

// ---------------------------------------------------------------------------
// scan: temperature sweep of one Hamiltonian.

int run_scan(const ScanOpts& opt, const std::string& echo) {
  const Stopwatch timer;
  const PauliHamiltonian h = parse_spec(read_text_file(opt.ham_path));
  const double t_max = resolved_t_max(opt.t_max, h);
  const std::vector<double> grid = default_t_grid(t_max, opt.t_points);
  const std::vector<CurveSample> samples = concurrence_curve(h, grid);
  if (opt.format == "csv") {
    std::ostringstream os;
    write_scan_csv(os, samples);
    emit(opt.out_path, os.str());
    return 0;
  }
  nlohmann::json payload{{"hamiltonian", to_json(h)},
                         {"t_max", t_max},
                         {"t_points", opt.t_points},
                         {"samples", curve_json(samples)}};
  emit(opt.out_path, render_report(echo, payload, timer.seconds()));
  return 0;
}

// ---------------------------------------------------------------------------
// grid: temperature sweep at every field value of a family.

int run_grid(const GridOpts& opt, const std::string& echo) {
  const Stopwatch timer;
  FamilySpec spec = parse_family_spec(read_text_file(opt.ham_path));
  if (spec.family == Family::explicit_ || spec.family == Family::example11) {
    throw InvalidInput(
        "grid scans a field parameter; use a family with one "
        "(rosci, homogeneous, wang, anisotropic, misaligned)");
  }
  if (opt.h_points < 2 || !(opt.h_max > opt.h_min) || !std::isfinite(opt.h_min) ||
      !std::isfinite(opt.h_max)) {
    throw InvalidInput("h grid must be ascending with at least 2 points");
  }

  std::vector<double> h_values(static_cast<std::size_t>(opt.h_points));
  for (int i = 0; i < opt.h_points; ++i) {
    h_values[static_cast<std::size_t>(i)] =
        opt.h_min + (opt.h_max - opt.h_min) * static_cast<double>(i) / (opt.h_points - 1);
  }

  std::vector<std::vector<CurveSample>> per_h(h_values.size());
  parallel_for(opt.h_points, opt.threads, [&](long long i) {
    FamilySpec point = spec;
    point.h = h_values[static_cast<std::size_t>(i)];
    const PauliHamiltonian h = build(point);
    const double t_max = resolved_t_max(opt.t_max, h);
    per_h[static_cast<std::size_t>(i)] = concurrence_curve(h, default_t_grid(t_max, opt.t_points));
  });

  if (opt.format == "csv") {
    std::ostringstream os;
    write_grid_csv(os, h_values, per_h);
    emit(opt.out_path, os.str());
    return 0;
  }
  nlohmann::json curves = nlohmann::json::array();
  for (const std::vector<CurveSample>& curve : per_h) curves.push_back(curve_json(curve));
  nlohmann::json payload{{"h_values", h_values},
                         {"t_points", opt.t_points},
                         {"curves", std::move(curves)}};
  emit(opt.out_path, render_report(echo, payload, timer.seconds()));
  return 0;
}

// ---------------------------------------------------------------------------
// regions: entangled-interval detection with refined boundaries.

int run_regions(const RegionsOpts& opt, const std::string& echo) {
  const Stopwatch timer;
  const PauliHamiltonian h = parse_spec(read_text_file(opt.ham_path));
  RegionOptions region_opts;
  region_opts.t_points = opt.t_points;
  region_opts.neg_tol = opt.neg_tol;
  region_opts.refine_tol = opt.refine_tol;
  const RegionReport report = detect_regions(h, resolved_t_max(opt.t_max, h), region_opts);
  if (opt.format == "csv") {
    std::ostringstream os;
    write_intervals_csv(os, report.intervals);
    emit(opt.out_path, os.str());
    return 0;
  }
  nlohmann::json payload = to_json(report);
  payload["hamiltonian"] = to_json(h);
  emit(opt.out_path, render_report(echo, payload, timer.seconds()));
  return 0;
}

// ---------------------------------------------------------------------------
// bound: certified region-count bound from the rationalized spectrum.

int run_bound(const BoundOpts& opt, const std::string& echo) {
  const Stopwatch timer;
  require_report_format(opt.format, "bound");
  const PauliHamiltonian h = parse_spec(read_text_file(opt.ham_path));
  const ThermalPtContext ctx = make_pt_context(h);
  const RationalSpectrum spec = rationalize_energies(ctx.energies);
  const ExpPolynomial poly = pt_det_polynomial(h, spec);
  const int sign_changes = derivative_sign_changes(poly);
  const int bound = descartes_region_bound(poly);
  nlohmann::json payload{
      {"hamiltonian", to_json(h)},
      {"levels", spec.integer_levels},
      {"r", spec.r},
      {"approx_error", spec.approx_error},
      {"terms", poly.terms.size()},
      {"sign_changes", sign_changes},
      {"bound", bound},
  };
  emit(opt.out_path, render_report(echo, payload, timer.seconds()));
  return 0;
}

// ---------------------------------------------------------------------------
// campaign: seeded random searches.

CampaignGrids campaign_grids(const CampaignOpts& opt) {
  CampaignGrids grids;
  grids.h_grid.h_min = opt.h_min;
  grids.h_grid.h_max = opt.h_max;
  grids.h_grid.points = opt.h_points;
  grids.region_opts.t_points = opt.t_points;
  return grids;
}

int run_campaign(const CampaignOpts& opt, const std::string& kind, const std::string& echo) {
  const Stopwatch timer;
  require_report_format(opt.format, "campaign");
  nlohmann::json payload;
  if (kind == "homogeneous") {
    payload = to_json(run_homogeneous_campaign(opt.samples, opt.seed, campaign_grids(opt),
                                               opt.threads));
  } else if (kind == "gue") {
    payload = to_json(run_gue_campaign(opt.samples, opt.seed, campaign_grids(opt), opt.threads));
  } else {
    payload = to_json(run_sepground_search(opt.samples, opt.seed, /*stop_after=*/-1,
                                           campaign_grids(opt), opt.threads));
  }
  emit(opt.out_path, render_report(echo, payload, timer.seconds(), opt.seed));
  return 0;
}

// ---------------------------------------------------------------------------
// check majorization: heating never sharpens the Gibbs spectrum.

int run_check_majorization(const CheckOpts& opt, const std::string& echo) {
  const Stopwatch timer;
  require_report_format(opt.format, "check");
  if (opt.samples < 1) throw InvalidInput("--samples must be at least 1");
  long long violations = 0;
  for (long long i = 0; i < opt.samples; ++i) {
    const std::uint64_t seed = mix_seed(opt.seed, static_cast<std::uint64_t>(i));
    const PauliHamiltonian h{pauli_decompose(sample_gue(seed))};
    // Decorrelate the temperature draws from the GUE stream, which also
    // starts from `seed`.
    Xoshiro256pp rng(splitmix64(seed ^ 0x74656d7065726174ull));
    const EigenSystem eig = hermitian_eig(h.matrix());
    double width = eig.values[3] - eig.values[0];
    if (width < 1e-9) width = 1.0;
    const double t1 = width * rng.uniform01_positive();
    const double t2 = t1 + width * rng.uniform01_positive();
    const Spectrum cold = gibbs_spectrum(h, t1);
    const Spectrum hot = gibbs_spectrum(h, t2);
    if (!majorizes(cold, hot)) ++violations;
    // Endpoints: T = 0 majorizes everything, everything majorizes T = inf.
    if (!majorizes(gibbs_spectrum(h, 0.0), cold)) ++violations;
    if (!majorizes(hot, gibbs_spectrum(h, kInfiniteTemperature))) ++violations;
  }
  nlohmann::json payload{{"samples", opt.samples},
                         {"pairs_checked", 3 * opt.samples},
                         {"violations", violations}};
  emit(opt.out_path, render_report(echo, payload, timer.seconds(), opt.seed));
  return violations == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// check belldiag: zero-field Hamiltonians have one entangled region at most,
// separability is monotone in T, and the Bell-permutation machinery holds up.

int run_check_belldiag(const CheckOpts& opt, const std::string& echo) {
  const Stopwatch timer;
  require_report_format(opt.format, "check");
  if (opt.samples < 1) throw InvalidInput("--samples must be at least 1");
  long long monotone_violations = 0;
  long long multi_region = 0;
  for (long long i = 0; i < opt.samples; ++i) {
    const std::uint64_t seed = mix_seed(opt.seed, static_cast<std::uint64_t>(i));
    const PauliHamiltonian h =
        split_local_nonlocal(PauliHamiltonian{pauli_decompose(sample_gue(seed))}).first;
    const double t_max = default_t_max(h);
    if (!check_monotone_separability(h, default_t_grid(t_max, opt.t_points)).monotone) {
      ++monotone_violations;
    }
    RegionOptions region_opts;
    region_opts.t_points = opt.t_points;
    if (detect_regions(h, t_max, region_opts).intervals.size() > 1) ++multi_region;
  }
  // Throws ComputationError if any swap fails its conjugation check or the
  // closure is not the full 24-element permutation group.
  const std::size_t swaps = bell_swaps().size();
  const std::size_t permutations = bell_permutation_group().size();
  if (permutations != 24) throw ComputationError("Bell permutation closure is not S4");
  nlohmann::json payload{{"samples", opt.samples},
                         {"monotone_violations", monotone_violations},
                         {"multi_region_count", multi_region},
                         {"swaps_verified", swaps},
                         {"bell_permutations", permutations}};
  emit(opt.out_path, render_report(echo, payload, timer.seconds(), opt.seed));
  return (monotone_violations == 0 && multi_region == 0) ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Flag registration helpers.

void add_output_flags(CLI::App* cmd, std::string& out_path, std::string& format) {
  cmd->add_option("--out", out_path, "Write output to this file instead of stdout");
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "report"}))
      ->capture_default_str();
}

void add_hamiltonian_flag(CLI::App* cmd, std::string& path) {
  cmd->add_option("--hamiltonian", path, "Hamiltonian spec file (JSON)")
      ->required();
}

void add_t_flags(CLI::App* cmd, double& t_max, int& t_points) {
  cmd->add_option("--t-max", t_max, "Top of the temperature scan (default: 20x spectral width)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--t-points", t_points, "Temperature grid size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_h_flags(CLI::App* cmd, double& h_min, double& h_max, int& h_points) {
  cmd->add_option("--h-min", h_min, "Lowest field value")->capture_default_str();
  cmd->add_option("--h-max", h_max, "Highest field value")->capture_default_str();
  cmd->add_option("--h-points", h_points, "Field grid size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  const std::string echo = command_echo(argc, argv);
  CLI::App app{"Thermal entanglement of two-qubit Hamiltonians"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  int rc = 0;

  auto scan_opts = std::make_shared<ScanOpts>();
  CLI::App* scan = app.add_subcommand(
      "scan", "Concurrence and minimum PT eigenvalue over a temperature grid");
  add_hamiltonian_flag(scan, scan_opts->ham_path);
  add_t_flags(scan, scan_opts->t_max, scan_opts->t_points);
  add_output_flags(scan, scan_opts->out_path, scan_opts->format);
  scan->callback([scan_opts, &echo, &rc] { rc = run_scan(*scan_opts, echo); });

  auto grid_opts = std::make_shared<GridOpts>();
  CLI::App* grid =
      app.add_subcommand("grid", "Temperature sweep at every field value of a family");
  add_hamiltonian_flag(grid, grid_opts->ham_path);
  add_h_flags(grid, grid_opts->h_min, grid_opts->h_max, grid_opts->h_points);
  add_t_flags(grid, grid_opts->t_max, grid_opts->t_points);
  grid->add_option("--threads", grid_opts->threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output_flags(grid, grid_opts->out_path, grid_opts->format);
  grid->callback([grid_opts, &echo, &rc] { rc = run_grid(*grid_opts, echo); });

  auto regions_opts = std::make_shared<RegionsOpts>();
  CLI::App* regions =
      app.add_subcommand("regions", "Detect entangled temperature intervals");
  add_hamiltonian_flag(regions, regions_opts->ham_path);
  add_t_flags(regions, regions_opts->t_max, regions_opts->t_points);
  regions->add_option("--neg-tol", regions_opts->neg_tol,
                      "Entangled iff min PT eigenvalue < -neg-tol")
      ->capture_default_str();
  regions->add_option("--refine-tol", regions_opts->refine_tol,
                      "Relative width at which boundary bisection stops")
      ->capture_default_str();
  add_output_flags(regions, regions_opts->out_path, regions_opts->format);
  regions->callback([regions_opts, &echo, &rc] { rc = run_regions(*regions_opts, echo); });

  auto bound_opts = std::make_shared<BoundOpts>();
  CLI::App* bound = app.add_subcommand(
      "bound", "Certified upper bound on the number of entangled regions");
  add_hamiltonian_flag(bound, bound_opts->ham_path);
  add_output_flags(bound, bound_opts->out_path, bound_opts->format);
  bound->callback([bound_opts, &echo, &rc] { rc = run_bound(*bound_opts, echo); });

  CLI::App* campaign = app.add_subcommand("campaign", "Seeded random-search campaigns");
  campaign->require_subcommand(1);
  const struct {
    const char* name;
    const char* help;
    long long default_samples;
  } campaign_kinds[] = {
      {"homogeneous", "Diagonal interactions in a scanned homogeneous field", 1000},
      {"gue", "GUE interactions with the local part scaled by a scanned field", 4096},
      {"sepground", "Direct search for separable-ground multi-region Hamiltonians", 100000},
  };
  for (const auto& kind : campaign_kinds) {
    auto opts = std::make_shared<CampaignOpts>();
    opts->samples = kind.default_samples;
    CLI::App* cmd = campaign->add_subcommand(kind.name, kind.help);
    cmd->add_option("--samples", opts->samples, "Number of random draws")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed")->capture_default_str();
    cmd->add_option("--threads", opts->threads, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_h_flags(cmd, opts->h_min, opts->h_max, opts->h_points);
    cmd->add_option("--t-points", opts->t_points, "Temperature grid size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(cmd, opts->out_path, opts->format);
    const std::string name = kind.name;
    cmd->callback([opts, name, &echo, &rc] { rc = run_campaign(*opts, name, echo); });
  }

  CLI::App* check = app.add_subcommand("check", "Self-checks of the analytic invariants");
  check->require_subcommand(1);
  const struct {
    const char* name;
    const char* help;
    int default_t_points;
  } check_kinds[] = {
      {"majorization", "Heating never sharpens the Gibbs spectrum", 2000},
      {"belldiag", "Zero-field states: one region at most, monotone separability", 2000},
  };
  for (const auto& kind : check_kinds) {
    auto opts = std::make_shared<CheckOpts>();
    opts->t_points = kind.default_t_points;
    CLI::App* cmd = check->add_subcommand(kind.name, kind.help);
    cmd->add_option("--samples", opts->samples, "Number of random draws")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", opts->seed, "Master seed")->capture_default_str();
    if (std::string(kind.name) == "belldiag") {
      cmd->add_option("--t-points", opts->t_points, "Temperature grid size")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
    }
    add_output_flags(cmd, opts->out_path, opts->format);
    const std::string name = kind.name;
    cmd->callback([opts, name, &echo, &rc] {
      rc = name == "majorization" ? run_check_majorization(*opts, echo)
                                  : run_check_belldiag(*opts, echo);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ComputationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}

}  // namespace qtherm
