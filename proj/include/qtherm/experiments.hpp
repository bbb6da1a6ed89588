#pragma once

// Seeded random-search campaigns at desk scale: the homogeneous-field class,
// GUE interactions with a scanned homogeneous field, and the direct search
// for separable-ground two-region Hamiltonians. Samples are independent
// units of work; the seed of sample i is mix_seed(master_seed, i) and all
// reductions run in sample order, so every result is identical for any
// worker count.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qtherm/hamiltonian.hpp"
#include "qtherm/regions.hpp"

namespace qtherm {

// Deterministic worker pool: body(i) for i in [0, n) distributed over up to
// `threads` threads. body must only write to per-index state. Exceptions are
// collected and the lowest-index one is rethrown after all workers join.
void parallel_for(long long n, int threads, const std::function<void(long long)>& body);

struct CampaignGrids {
  HGrid h_grid{};               // field scan, default [0, 5] x 201
  RegionOptions region_opts{};  // region detection parameters
};

struct Exemplar {
  std::uint64_t seed = 0;  // per-sample seed, already mixed
  double h = 0.0;          // field value that produced the hit (0 when not scanned)
};

struct CampaignResult {
  long long samples = 0;
  long long positives = 0;
  double fraction = 0.0;
  std::pair<double, double> wilson95{0.0, 0.0};
  std::uint64_t master_seed = 0;
  CampaignGrids grids{};
  std::vector<Exemplar> exemplars;  // first 10 positives, in sample order
};

// 95% Wilson score interval. Always satisfies
// 0 <= lo <= positives/samples <= hi <= 1.
std::pair<double, double> wilson_interval95(long long positives, long long samples);

// Diagonal-interaction-plus-homogeneous-field ensemble: a sample is positive
// when some field value on the grid yields two entangled regions. Because the
// field term scales as h * beta_j and |beta| can be arbitrarily small, the
// grid is interpreted in the effective field x = h * max_j|beta_j| (the
// sample is tested at h = x / max|beta|); exemplars record the actual h.
CampaignResult run_homogeneous_campaign(long long n, std::uint64_t master_seed,
                                        const CampaignGrids& grids = {}, int threads = 1);

// GUE ensemble: each draw splits into nonlocal + local parts and the local
// part is scaled by the scanned field, H(h) = H_N + h H_L.
CampaignResult run_gue_campaign(long long n, std::uint64_t master_seed,
                                const CampaignGrids& grids = {}, int threads = 1);

// The separable-ground acceptance predicate: at least two entangled regions,
// ground concurrence below 1e-10, and a first region detached from T = 0.
bool sepground_positive(const PauliHamiltonian& h, const RegionOptions& opts = {});

struct FoundHamiltonian {
  std::uint64_t seed = 0;
  PauliHamiltonian h;
};

struct SepgroundResult {
  CampaignResult stats;
  std::vector<FoundHamiltonian> found;  // every positive, in sample order
};

// Scan n draws of sample_separable_ground for sepground_positive hits.
// stop_after > 0 ends the search once that many positives have appeared, in
// which case stats.samples is the 1-based index of the last positive
// (identical for any thread count); stop_after = -1 scans all n.
SepgroundResult run_sepground_search(long long n, std::uint64_t master_seed,
                                     long long stop_after = -1,
                                     const CampaignGrids& grids = {}, int threads = 1);

// Same search against a caller-provided ensemble; sampler receives the mixed
// per-sample seed. run_sepground_search uses sample_separable_ground.
SepgroundResult run_sepground_search_with(
    const std::function<PauliHamiltonian(std::uint64_t)>& sampler, long long n,
    std::uint64_t master_seed, long long stop_after = -1, const CampaignGrids& grids = {},
    int threads = 1);

}  // namespace qtherm
