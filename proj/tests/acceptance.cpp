// Acceptance runner: one line per criterion, [PASS]/[FAIL], exit 0 only if
// every criterion holds. Criterion 11 launches the qtherm binary, whose path
// arrives as argv[1].

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtherm/belldiag.hpp"
#include "qtherm/bounds.hpp"
#include "qtherm/entanglement.hpp"
#include "qtherm/experiments.hpp"
#include "qtherm/hamiltonian.hpp"
#include "qtherm/kernels/pt_scan.hpp"
#include "qtherm/regions.hpp"
#include "qtherm/rng.hpp"
#include "qtherm/smallmat.hpp"
#include "qtherm/thermal.hpp"

namespace {

using namespace qtherm;

std::string g_qtherm_path;
int g_failures = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

void run_criterion(int index, const std::string& name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] criterion %2d: %s (%s; %.1f s)\n", outcome.pass ? "PASS" : "FAIL", index,
              name.c_str(), outcome.detail.c_str(), seconds);
  std::fflush(stdout);
  if (!outcome.pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// Hermitian matrix with a prescribed spectrum over a random eigenbasis.
PauliHamiltonian with_spectrum(std::uint64_t seed, const std::array<double, 4>& energies) {
  const EigenSystem<4> basis = hermitian_eig<4>(sample_gue(seed));
  CMat4 m = CMat4::zero();
  for (int i = 0; i < 4; ++i) {
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        m(r, c) += energies[static_cast<std::size_t>(i)] * basis.vectors(r, i) *
                   std::conj(basis.vectors(c, i));
      }
    }
  }
  return PauliHamiltonian{pauli_decompose(m)};
}

// Cancellation-free magnitude of the polynomial at x, the right scale for
// relative comparisons of a sum that can cancel to near zero.
double magnitude_at(const ExpPolynomial& p, double x) {
  double sum = 0.0;
  for (const auto& [n, c] : p.terms) sum += std::abs(c) * std::pow(x, static_cast<double>(n));
  return sum;
}

std::vector<double> default_h_values() {
  std::vector<double> values(201);
  for (int i = 0; i < 201; ++i) values[static_cast<std::size_t>(i)] = 5.0 * i / 200.0;
  return values;
}

// ---------------------------------------------------------------------------

Outcome criterion1_rosci_band() {
  for (const double h : {1.8, 2.0, 2.2}) {
    const PauliHamiltonian ham = make_rosci(1.0, h);
    const std::size_t n = detect_regions(ham, default_t_max(ham)).intervals.size();
    if (n != 2) return {false, fmt("h=%.2f gave %zu intervals, want 2", h, n)};
  }
  for (const double h : {0.5, 1.0}) {
    const PauliHamiltonian ham = make_rosci(1.0, h);
    const std::size_t n = detect_regions(ham, default_t_max(ham)).intervals.size();
    if (n != 1) return {false, fmt("h=%.2f gave %zu intervals, want 1", h, n)};
  }
  double band_lo = 1e300;
  double band_hi = -1e300;
  for (int i = 0; i <= 250; ++i) {
    const double h = 0.02 * i;
    const PauliHamiltonian ham = make_rosci(1.0, h);
    if (count_regions(ham, default_t_max(ham)) == 2) {
      band_lo = std::min(band_lo, h);
      band_hi = std::max(band_hi, h);
      if (h < 1.35 || h > 2.45) {
        return {false, fmt("two regions at h=%.2f, outside [1.35, 2.45]", h)};
      }
    }
  }
  if (band_lo > band_hi) return {false, "no h in the sweep produced two regions"};
  return {true, fmt("two-region band [%.2f, %.2f] within [1.35, 2.45]", band_lo, band_hi)};
}

Outcome criterion2_wang() {
  bool revival = false;
  double revival_h = 0.0;
  for (const double h : default_h_values()) {
    const PauliHamiltonian ham = make_wang(1.0, h);
    const int n = count_regions(ham, default_t_max(ham));
    if (n >= 2) return {false, fmt("h=%.3f yields %d regions; none expected", h, n)};
    if (!revival && n == 1 && concurrence(thermal_state(ham, 0.0)) < 1e-10) {
      revival = true;
      revival_h = h;
    }
  }
  if (!revival) return {false, "no h with a separable ground state yet entanglement at T > 0"};
  return {true, fmt("revival at h=%.3f, never two regions", revival_h)};
}

Outcome criterion3_perturbations() {
  double aniso_h = -1.0;
  for (const double h : default_h_values()) {
    const PauliHamiltonian ham = make_anisotropic(1.0, h, 1e-6);
    if (count_regions(ham, default_t_max(ham)) == 2) {
      aniso_h = h;
      break;
    }
  }
  if (aniso_h < 0.0) return {false, "anisotropic gamma=1e-6: no h with two regions"};

  RegionOptions fine;
  fine.neg_tol = 1e-14;  // the second-order ground concurrence sits near 1e-13
  double mis_h = -1.0;
  for (const double h : default_h_values()) {
    const PauliHamiltonian ham = make_misaligned(1.0, h, 1e-6);
    if (count_regions(ham, default_t_max(ham), fine) == 2) {
      mis_h = h;
      break;
    }
  }
  if (mis_h < 0.0) return {false, "misaligned delta=1e-6: no h with two regions"};
  return {true, fmt("anisotropic at h=%.3f, misaligned at h=%.3f", aniso_h, mis_h)};
}

Outcome criterion4_separable_ground() {
  const PauliHamiltonian ham = make_example11();
  const double ground_c = concurrence(thermal_state(ham, 0.0));
  if (!(ground_c < 1e-9)) return {false, fmt("ground concurrence %.2e, want < 1e-9", ground_c)};
  RegionOptions opts;
  opts.conc_tol = 1e-6;
  const RegionReport report = detect_regions(ham, default_t_max(ham), opts);
  if (report.intervals.size() != 2) {
    return {false, fmt("%zu intervals, want 2", report.intervals.size())};
  }
  if (report.includes_zero || !(report.intervals[0].t_lo > 0.0)) {
    return {false, "first interval touches T = 0"};
  }
  return {true, fmt("ground C=%.1e, regions [%.3f, %.3f] and [%.3f, %.3f]", ground_c,
                    report.intervals[0].t_lo, report.intervals[0].t_hi,
                    report.intervals[1].t_lo, report.intervals[1].t_hi)};
}

Outcome criterion5_homogeneous_campaign() {
  const CampaignResult result = run_homogeneous_campaign(1000, 0x20260814ULL);
  if (result.fraction < 0.99) {
    return {false, fmt("positive fraction %.4f, want >= 0.99", result.fraction)};
  }
  return {true, fmt("%lld/%lld positive (%.2f%%)", result.positives, result.samples,
                    100.0 * result.fraction)};
}

Outcome criterion6_gue_campaign() {
  const CampaignResult result = run_gue_campaign(4096, 0x47554535ULL);
  if (result.fraction < 0.005 || result.fraction > 0.08) {
    return {false, fmt("positive fraction %.4f, want within [0.005, 0.08]", result.fraction)};
  }
  return {true, fmt("%lld/%lld positive (%.2f%%), Wilson95 [%.2f%%, %.2f%%]", result.positives,
                    result.samples, 100.0 * result.fraction, 100.0 * result.wilson95.first,
                    100.0 * result.wilson95.second)};
}

Outcome criterion7_bounds() {
  std::vector<PauliHamiltonian> corpus;
  for (const double h : {0.5, 1.0, 1.8, 2.0, 2.2}) corpus.push_back(make_rosci(1.0, h));
  for (const double h : {0.3, 2.0}) corpus.push_back(make_wang(1.0, h));
  corpus.push_back(make_anisotropic(1.0, 1.025, 1e-6));
  corpus.push_back(make_misaligned(1.0, 1.025, 1e-6));
  corpus.push_back(make_example11());

  Xoshiro256pp rng(0xb0b0b0b0ULL);
  for (int trial = 0; trial < 100; ++trial) {
    const long long q = 1 + static_cast<long long>(rng.uniform01() * 29.0);
    std::array<long long, 4> levels{};
    for (auto& v : levels) {
      v = static_cast<long long>(rng.uniform01() * static_cast<double>(q + 1));
    }
    levels[0] = 0;
    std::sort(levels.begin(), levels.end());
    const double r = 0.2 + 2.0 * rng.uniform01();
    std::array<double, 4> energies{};
    for (int i = 0; i < 4; ++i) {
      energies[static_cast<std::size_t>(i)] = r * static_cast<double>(levels[static_cast<std::size_t>(i)]);
    }
    corpus.push_back(with_spectrum(mix_seed(0xacce7ULL, static_cast<std::uint64_t>(trial)), energies));
  }

  int max_terms = 0;
  int max_changes = 0;
  int max_bound = 0;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const PauliHamiltonian& ham = corpus[k];
    const ThermalPtContext ctx = make_pt_context(ham);
    // A denominator bound of 1e8 keeps every corpus spectrum rationalizable
    // to better than 1e-9, which the 1e-8 evaluation comparison needs at the
    // lowest test temperature.
    const RationalSpectrum spec = rationalize_energies(ctx.energies, 100000000);
    const ExpPolynomial poly = pt_det_polynomial(ham, spec);
    const int terms = static_cast<int>(poly.terms.size());
    const int changes = derivative_sign_changes(poly);
    const int bound = descartes_region_bound(poly);
    const int detected = count_regions(ham, default_t_max(ham));
    max_terms = std::max(max_terms, terms);
    max_changes = std::max(max_changes, changes);
    max_bound = std::max(max_bound, bound);
    if (terms > 35) return {false, fmt("member %zu: %d terms > 35", k, terms)};
    if (changes > 34) return {false, fmt("member %zu: %d sign changes > 34", k, changes)};
    if (bound > 17) return {false, fmt("member %zu: bound %d > 17", k, bound)};
    if (bound < detected) {
      return {false, fmt("member %zu: bound %d < detected %d", k, bound, detected)};
    }
    const double width = ctx.energies[3] > 0.0 ? ctx.energies[3] : 1.0;
    for (const double factor : {0.05, 0.2, 1.0, 5.0, 20.0}) {
      const double t = factor * width;
      const double x = std::exp(-poly.r / t);
      double z = 0.0;
      for (const double e : ctx.energies) z += std::exp(-e / t);
      const double numeric = z * z * z * z * pt_report(thermal_state(ham, t)).determinant;
      const double poly_val = evaluate(poly, x);
      const double scale =
          std::max({std::abs(numeric), std::abs(poly_val), magnitude_at(poly, x)});
      if (std::abs(numeric - poly_val) > 1e-8 * scale) {
        return {false, fmt("member %zu: polynomial mismatch %.2e at T=%.3f", k,
                           std::abs(numeric - poly_val) / scale, t)};
      }
    }
  }
  return {true, fmt("%zu members: terms <= %d, sign changes <= %d, bound <= %d, all sound",
                    corpus.size(), max_terms, max_changes, max_bound)};
}

Outcome criterion8_majorization() {
  long long violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t seed = mix_seed(0x8a10cULL, static_cast<std::uint64_t>(i));
    const PauliHamiltonian ham{pauli_decompose(sample_gue(seed))};
    Xoshiro256pp rng(splitmix64(seed ^ 0x7431ULL));
    const EigenSystem<4> eig = hermitian_eig<4>(ham.matrix());
    double width = eig.values[3] - eig.values[0];
    if (width < 1e-9) width = 1.0;
    const double t1 = width * rng.uniform01_positive();
    const double t2 = t1 + width * rng.uniform01_positive();
    const Spectrum cold = gibbs_spectrum(ham, t1);
    const Spectrum hot = gibbs_spectrum(ham, t2);
    if (!majorizes(cold, hot)) ++violations;
    if (!majorizes(gibbs_spectrum(ham, 0.0), cold)) ++violations;
    if (!majorizes(hot, gibbs_spectrum(ham, kInfiniteTemperature))) ++violations;
  }
  if (violations != 0) return {false, fmt("%lld violations across 3000 pairs", violations)};
  return {true, "1000 Hamiltonians x 3 ordered pairs, zero violations"};
}

Outcome criterion9_zero_field() {
  long long multi_region = 0;
  long long non_monotone = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t seed = mix_seed(0xbe11ULL, static_cast<std::uint64_t>(i));
    const PauliHamiltonian ham =
        split_local_nonlocal(PauliHamiltonian{pauli_decompose(sample_gue(seed))}).first;
    const double t_max = default_t_max(ham);
    if (count_regions(ham, t_max) > 1) ++multi_region;
    if (!check_monotone_separability(ham, default_t_grid(t_max, 2000)).monotone) ++non_monotone;
  }
  if (multi_region != 0 || non_monotone != 0) {
    return {false, fmt("%lld multi-region, %lld non-monotone samples", multi_region, non_monotone)};
  }
  const std::size_t swaps = bell_swaps().size();  // verifies each conjugation to 1e-12
  const std::size_t perms = bell_permutation_group().size();
  if (swaps != 3 || perms != 24) {
    return {false, fmt("%zu swaps, %zu permutations; want 3 and 24", swaps, perms)};
  }
  return {true, "1000 samples: <= 1 region, monotone; 3 swaps generate all 24 permutations"};
}

Outcome criterion10_cross_validation() {
  Xoshiro256pp temp_rng(0xcc0551ULL);
  long long entangled = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t seed = mix_seed(0xc105eULL, static_cast<std::uint64_t>(i));
    const PauliHamiltonian ham{pauli_decompose(sample_gue(seed))};
    const EigenSystem<4> eig = hermitian_eig<4>(ham.matrix());
    double width = eig.values[3] - eig.values[0];
    if (width < 1e-9) width = 1.0;
    const double u = temp_rng.uniform01();
    const double t = width * std::exp(std::log(0.01) + u * std::log(20.0 / 0.01));
    const DensityMatrix rho = thermal_state(ham, t);
    const double c = concurrence(rho);
    const PTReport pt = pt_report(rho);
    const bool by_pt = is_entangled(rho);
    const bool by_c = c > 1e-10;
    if (by_pt) ++entangled;
    if (by_pt != by_c && !(std::abs(pt.min_eigenvalue) < 1e-12)) {
      return {false, fmt("sample %d: PT says %d, concurrence %.2e, min eig %.2e", i, by_pt, c,
                         pt.min_eigenvalue)};
    }
    const EigenSystem<4> pt_eigs = hermitian_eig<4>(partial_transpose(rho.rho));
    if (pt_eigs.values[1] < -1e-12) {
      return {false, fmt("sample %d: second PT eigenvalue %.2e < -1e-12", i, pt_eigs.values[1])};
    }
  }
  return {true, fmt("10000 states (%lld entangled): criteria agree, one negative PT eigenvalue "
                    "at most",
                    entangled)};
}

// Launch the real binary twice with different --threads and compare payloads.
Outcome criterion11_determinism() {
  if (g_qtherm_path.empty()) return {false, "qtherm binary path missing (argv[1])"};
  const std::filesystem::path dir = std::filesystem::temp_directory_path();
  const struct {
    const char* kind;
    const char* args;
  } runs[] = {
      {"homogeneous", "--samples 12 --seed 5"},
      {"gue", "--samples 12 --seed 7"},
      {"sepground", "--samples 60 --seed 11"},
  };
  for (const auto& r : runs) {
    std::array<std::string, 2> payloads;
    for (int which = 0; which < 2; ++which) {
      const std::filesystem::path out =
          dir / (std::string("qtherm_accept_") + r.kind + (which == 0 ? "_a.json" : "_b.json"));
      std::ostringstream cmd;
      cmd << '"' << g_qtherm_path << "\" campaign " << r.kind << ' ' << r.args << " --threads "
          << (which == 0 ? 1 : 4) << " --out \"" << out.string() << '"';
      const int status = std::system(cmd.str().c_str());
      if (status != 0) return {false, fmt("%s run exited with status %d", r.kind, status)};
      std::ifstream in(out, std::ios::binary);
      if (!in) return {false, fmt("%s: missing output file", r.kind)};
      std::ostringstream buf;
      buf << in.rdbuf();
      const nlohmann::json report = nlohmann::json::parse(buf.str());
      payloads[static_cast<std::size_t>(which)] = report.at("payload").dump();
    }
    if (payloads[0] != payloads[1]) {
      return {false, fmt("%s payloads differ between --threads 1 and 4", r.kind)};
    }
  }
  return {true, "three campaigns byte-identical across --threads 1 and 4"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_qtherm_path = argv[1];
  run_criterion(1, "two-region band of the XY-chain family", criterion1_rosci_band);
  run_criterion(2, "XX-chain revival without a second region", criterion2_wang);
  run_criterion(3, "perturbed families resolve two regions", criterion3_perturbations);
  run_criterion(4, "separable ground state with two regions", criterion4_separable_ground);
  run_criterion(5, "homogeneous-class campaign fraction", criterion5_homogeneous_campaign);
  run_criterion(6, "GUE campaign fraction", criterion6_gue_campaign);
  run_criterion(7, "certified region bounds on the corpus", criterion7_bounds);
  run_criterion(8, "Gibbs spectra majorize under cooling", criterion8_majorization);
  run_criterion(9, "zero-field single-region theorem", criterion9_zero_field);
  run_criterion(10, "PT and concurrence criteria agree", criterion10_cross_validation);
  run_criterion(11, "campaign payloads independent of threads", criterion11_determinism);
  if (g_failures > 0) {
    std::printf("%d of 11 criteria failed\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
