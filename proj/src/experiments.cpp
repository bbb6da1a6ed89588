#include "qtherm/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

#include "qtherm/entanglement.hpp"
#include "qtherm/errors.hpp"
#include "qtherm/rng.hpp"
#include "qtherm/thermal.hpp"

namespace qtherm {

namespace {

constexpr double kZ95 = 1.959963984540054;  // Phi^{-1}(0.975)

void validate_campaign_args(long long n, int threads) {
  if (n < 1) throw InvalidInput("campaign: sample count must be >= 1");
  if (threads < 1) throw InvalidInput("campaign: thread count must be >= 1");
}

// Shared campaign core: evaluate hit(seed) per sample, then reduce in sample
// order. hit returns the field value of a positive, or nothing.
CampaignResult run_campaign(long long n, std::uint64_t master_seed, const CampaignGrids& grids,
                            int threads,
                            const std::function<std::optional<double>(std::uint64_t)>& hit) {
  validate_campaign_args(n, threads);
  std::vector<char> positive(static_cast<std::size_t>(n), 0);
  std::vector<double> hit_h(static_cast<std::size_t>(n), 0.0);
  parallel_for(n, threads, [&](long long i) {
    const std::uint64_t seed = mix_seed(master_seed, static_cast<std::uint64_t>(i));
    if (const std::optional<double> h = hit(seed)) {
      positive[static_cast<std::size_t>(i)] = 1;
      hit_h[static_cast<std::size_t>(i)] = *h;
    }
  });

  CampaignResult out;
  out.samples = n;
  out.master_seed = master_seed;
  out.grids = grids;
  for (long long i = 0; i < n; ++i) {
    if (!positive[static_cast<std::size_t>(i)]) continue;
    ++out.positives;
    if (out.exemplars.size() < 10)
      out.exemplars.push_back(Exemplar{mix_seed(master_seed, static_cast<std::uint64_t>(i)),
                                       hit_h[static_cast<std::size_t>(i)]});
  }
  out.fraction = static_cast<double>(out.positives) / static_cast<double>(out.samples);
  out.wilson95 = wilson_interval95(out.positives, out.samples);
  return out;
}

}  // namespace

void parallel_for(long long n, int threads, const std::function<void(long long)>& body) {
  if (n < 0) throw InvalidInput("parallel_for: negative count");
  if (threads < 1) throw InvalidInput("parallel_for: thread count must be >= 1");
  if (!body) throw InvalidInput("parallel_for: empty body");

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  const auto guarded = [&](long long i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };

  const long long workers = std::min<long long>(threads, n);
  if (workers <= 1) {
    for (long long i = 0; i < n; ++i) guarded(i);
  } else {
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (long long w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (long long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) guarded(i);
      });
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

std::pair<double, double> wilson_interval95(long long positives, long long samples) {
  if (samples < 1) throw InvalidInput("wilson_interval95: samples must be >= 1");
  if (positives < 0 || positives > samples)
    throw InvalidInput("wilson_interval95: positives must be in [0, samples]");
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(positives) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = kZ95 / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // p = 0 and p = 1 are exact roots of the score equation at the extremes;
  // pin them so rounding in sqrt cannot push an endpoint past the estimate.
  const double lo = positives == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = positives == samples ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

CampaignResult run_homogeneous_campaign(long long n, std::uint64_t master_seed,
                                        const CampaignGrids& grids, int threads) {
  return run_campaign(
      n, master_seed, grids, threads, [&grids](std::uint64_t seed) -> std::optional<double> {
        const HomogeneousParams p = sample_homogeneous(seed);
        // The field enters as h * beta_j, so the grid scans the effective
        // field x = h * max_j|beta_j|: a fixed x range covers the
        // polarization crossover (at field ~ interaction strength) for every
        // beta draw, where a fixed range in raw h misses small-|beta|
        // samples whose crossover sits beyond it.
        const double s = std::max({std::abs(p.beta[0]), std::abs(p.beta[1]), std::abs(p.beta[2])});
        if (s <= 0.0) return std::nullopt;  // zero field direction: h is inert
        const std::optional<double> x = two_regions_over_h(
            [&p, s](double eff) { return build_homogeneous(p, eff / s); }, grids.h_grid,
            grids.region_opts);
        if (!x) return std::nullopt;
        return *x / s;  // exemplars record the actual field value
      });
}

CampaignResult run_gue_campaign(long long n, std::uint64_t master_seed,
                                const CampaignGrids& grids, int threads) {
  return run_campaign(n, master_seed, grids, threads,
                      [&grids](std::uint64_t seed) -> std::optional<double> {
                        const PauliHamiltonian full{pauli_decompose(sample_gue(seed))};
                        const auto [nonlocal, local] = split_local_nonlocal(full);
                        return two_regions_over_h(
                            [&](double h) { return nonlocal + h * local; }, grids.h_grid,
                            grids.region_opts);
                      });
}

bool sepground_positive(const PauliHamiltonian& h, const RegionOptions& opts) {
  if (concurrence(thermal_state(h, 0.0)) >= 1e-10) return false;
  const RegionReport report = detect_regions(h, default_t_max(h), opts);
  return report.intervals.size() >= 2 && !report.includes_zero;
}

SepgroundResult run_sepground_search_with(
    const std::function<PauliHamiltonian(std::uint64_t)>& sampler, long long n,
    std::uint64_t master_seed, long long stop_after, const CampaignGrids& grids, int threads) {
  if (!sampler) throw InvalidInput("sepground search: empty sampler");
  validate_campaign_args(n, threads);
  if (stop_after == 0 || stop_after < -1)
    throw InvalidInput("sepground search: stop_after must be positive or -1");

  SepgroundResult out;
  out.stats.master_seed = master_seed;
  out.stats.grids = grids;

  // Evaluate in blocks so the early stop is decided strictly in sample
  // order: work past the stopping index is computed and discarded, never
  // counted, so results do not depend on the thread count.
  const long long block = std::max<long long>(64, 16LL * threads);
  long long examined = 0;
  bool stop = false;
  for (long long start = 0; start < n && !stop; start += block) {
    const long long m = std::min(block, n - start);
    std::vector<char> positive(static_cast<std::size_t>(m), 0);
    std::vector<PauliHamiltonian> hams(static_cast<std::size_t>(m));
    parallel_for(m, threads, [&](long long j) {
      const std::uint64_t seed =
          mix_seed(master_seed, static_cast<std::uint64_t>(start + j));
      hams[static_cast<std::size_t>(j)] = sampler(seed);
      positive[static_cast<std::size_t>(j)] =
          sepground_positive(hams[static_cast<std::size_t>(j)], grids.region_opts) ? 1 : 0;
    });
    for (long long j = 0; j < m && !stop; ++j) {
      ++examined;
      if (!positive[static_cast<std::size_t>(j)]) continue;
      ++out.stats.positives;
      const std::uint64_t seed =
          mix_seed(master_seed, static_cast<std::uint64_t>(start + j));
      out.found.push_back(FoundHamiltonian{seed, hams[static_cast<std::size_t>(j)]});
      if (out.stats.exemplars.size() < 10) out.stats.exemplars.push_back(Exemplar{seed, 0.0});
      if (stop_after > 0 && out.stats.positives == stop_after) stop = true;
    }
  }

  out.stats.samples = examined;
  out.stats.fraction =
      static_cast<double>(out.stats.positives) / static_cast<double>(out.stats.samples);
  out.stats.wilson95 = wilson_interval95(out.stats.positives, out.stats.samples);
  return out;
}

SepgroundResult run_sepground_search(long long n, std::uint64_t master_seed, long long stop_after,
                                     const CampaignGrids& grids, int threads) {
  return run_sepground_search_with(
      [](std::uint64_t seed) { return sample_separable_ground(seed); }, n, master_seed,
      stop_after, grids, threads);
}

}  // namespace qtherm
