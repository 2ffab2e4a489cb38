#include "maskkit/occlusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "maskkit/error.hpp"

namespace maskkit {

namespace {

void require_trials(std::uint64_t trials) {
  if (trials < 1) throw Error(Errc::invalid_parameter, "trials must be >= 1");
}

// Runs `body(partition, rng, begin, end)` over every partition, spreading
// partitions round-robin across threads. Each partition writes only its own
// slot, so the caller's reduction is order-independent.
template <typename Body>
void for_each_partition(std::uint64_t trials, std::uint64_t seed, unsigned threads, Body&& body) {
  const std::uint64_t partitions = (trials + kTrialsPerPartition - 1) / kTrialsPerPartition;
  auto worker = [&](unsigned tid, unsigned stride) {
    for (std::uint64_t p = tid; p < partitions; p += stride) {
      Rng rng = Rng::substream(seed, p);
      const std::uint64_t begin = p * kTrialsPerPartition;
      body(p, rng, begin, std::min(trials, begin + kTrialsPerPartition));
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(partitions)));
  if (n == 1) {
    worker(0, 1);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker, t, n);
}

OcclusionEstimate mc_estimate(std::uint64_t hits, std::uint64_t trials) {
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return OcclusionEstimate{p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)),
                           EstimateMethod::monte_carlo, trials};
}

}  // namespace

void validate_region(const PatchGrid& grid, const Region& region) {
  if (region.w < 1 || region.h < 1 || !grid.contains(region.x, region.y) ||
      !grid.contains(region.x + region.w - 1, region.y + region.h - 1)) {
    throw Error(Errc::invalid_dimension,
                "region " + std::to_string(region.w) + "x" + std::to_string(region.h) + " at (" +
                    std::to_string(region.x) + ", " + std::to_string(region.y) +
                    ") does not lie inside the grid");
  }
}

std::vector<int> region_cells(const PatchGrid& grid, const Region& region) {
  validate_region(grid, region);
  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(region.area()));
  for (int row = region.y; row < region.y + region.h; ++row) {
    for (int col = region.x; col < region.x + region.w; ++col) {
      cells.push_back(grid.linear_index(col, row));
    }
  }
  return cells;
}

double hypergeometric_all_drawn(int total, int masked, int cells) {
  if (total < 0 || masked < 0 || cells < 0 || masked > total || cells > total) {
    throw Error(Errc::invalid_parameter, "hypergeometric arguments out of range");
  }
  if (cells > masked) return 0.0;
  long double p = 1.0L;
  for (int i = 0; i < cells; ++i) {
    p *= static_cast<long double>(masked - i) / static_cast<long double>(total - i);
  }
  return static_cast<double>(p);
}

OcclusionEstimate exact_random_occlusion_count(const PatchGrid& grid, int masked,
                                               const Region& region) {
  validate_region(grid, region);
  if (masked < 0 || masked > grid.total_patches()) {
    throw Error(Errc::invalid_parameter, "masked count outside [0, total patches]");
  }
  return OcclusionEstimate{hypergeometric_all_drawn(grid.total_patches(), masked, region.area()), 0.0,
                           EstimateMethod::exact, 0};
}

OcclusionEstimate exact_random_occlusion(const PatchGrid& grid, double ratio, const Region& region) {
  return exact_random_occlusion_count(grid, random_masked_count(grid, ratio), region);
}

OcclusionEstimate exact_mesh_occlusion(const PatchGrid& grid, const MeshSpec& spec,
                                       const Region& region) {
  validate(spec, grid);
  const std::vector<int> cells = region_cells(grid, region);
  const int keep = keep_count(grid, spec.ratio, spec.rounding);
  long double total = 0.0L;
  for (int p = 0; p < 2; ++p) {
    const CandidateSet cand = mesh_candidates(grid, ParityClass(p), spec.parity_mode);
    const int pool = static_cast<int>(cand.cells.size());
    if (keep > pool) {
      throw Error(Errc::kept_exceeds_candidates,
                  "keep count " + std::to_string(keep) + " exceeds parity class " +
                      std::to_string(p) + " of size " + std::to_string(pool));
    }
    const int inside = static_cast<int>(
        std::count_if(cells.begin(), cells.end(), [&](int c) { return cand.contains(c); }));
    // None of `inside` specific candidates kept = all of them among the
    // pool - keep candidates left out.
    total += hypergeometric_all_drawn(pool, pool - keep, inside);
  }
  return OcclusionEstimate{static_cast<double>(total / 2.0L), 0.0, EstimateMethod::exact, 0};
}

OcclusionEstimate exact_mesh_occlusion(const PatchGrid& grid, double ratio, const Region& region) {
  return exact_mesh_occlusion(grid, MeshSpec{ratio}, region);
}

OcclusionEstimate mc_occlusion_cells(const PatternSpec& spec, const PatchGrid& grid,
                                     std::span<const int> cells, std::uint64_t trials,
                                     std::uint64_t seed, unsigned threads) {
  require_trials(trials);
  validate(spec, grid);
  for (int c : cells) {
    if (c < 0 || c >= grid.total_patches()) {
      throw Error(Errc::invalid_dimension, "cell index " + std::to_string(c) + " outside grid");
    }
  }
  const std::uint64_t partitions = (trials + kTrialsPerPartition - 1) / kTrialsPerPartition;
  std::vector<std::uint64_t> hits(partitions, 0);
  for_each_partition(trials, seed, threads,
                     [&](std::uint64_t p, Rng& rng, std::uint64_t begin, std::uint64_t end) {
                       std::uint64_t h = 0;
                       for (std::uint64_t t = begin; t < end; ++t) {
                         const MaskMap mask = generate(spec, grid, rng);
                         if (std::all_of(cells.begin(), cells.end(),
                                         [&](int c) { return mask.masked(c); })) {
                           ++h;
                         }
                       }
                       hits[p] = h;
                     });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return mc_estimate(total, trials);
}

OcclusionEstimate mc_occlusion(const PatternSpec& spec, const PatchGrid& grid, const Region& region,
                               std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  const std::vector<int> cells = region_cells(grid, region);
  return mc_occlusion_cells(spec, grid, cells, trials, seed, threads);
}

FrequencyGrid patch_mask_frequency(const PatternSpec& spec, const PatchGrid& grid,
                                   std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  require_trials(trials);
  validate(spec, grid);
  const auto cells = static_cast<std::size_t>(grid.total_patches());
  const std::uint64_t partitions = (trials + kTrialsPerPartition - 1) / kTrialsPerPartition;
  std::vector<std::vector<std::uint64_t>> counts(partitions, std::vector<std::uint64_t>(cells, 0));
  for_each_partition(trials, seed, threads,
                     [&](std::uint64_t p, Rng& rng, std::uint64_t begin, std::uint64_t end) {
                       auto& local = counts[p];
                       for (std::uint64_t t = begin; t < end; ++t) {
                         const MaskMap mask = generate(spec, grid, rng);
                         const auto m = mask.cells();
                         for (std::size_t i = 0; i < cells; ++i) local[i] += m[i];
                       }
                     });
  FrequencyGrid out{grid.cols(), grid.rows(), trials, std::vector<double>(cells, 0.0)};
  for (std::size_t i = 0; i < cells; ++i) {
    std::uint64_t total = 0;
    for (const auto& part : counts) total += part[i];
    out.values[i] = static_cast<double>(total) / static_cast<double>(trials);
  }
  return out;
}

OcclusionComparison compare_mesh_random(const PatchGrid& grid, double ratio, const Region& region) {
  OcclusionComparison c;
  c.ratio = ratio;
  c.region = region;
  c.mesh_masked = target_masked_count(grid, ratio);
  c.mesh = exact_mesh_occlusion(grid, ratio, region).probability;
  c.random_nominal_masked = random_masked_count(grid, ratio);
  c.random_nominal = exact_random_occlusion(grid, ratio, region).probability;
  c.random_count_matched = exact_random_occlusion_count(grid, c.mesh_masked, region).probability;
  return c;
}

}  // namespace maskkit
