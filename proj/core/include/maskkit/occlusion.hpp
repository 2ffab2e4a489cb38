#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maskkit/grid.hpp"
#include "maskkit/patterns.hpp"

// Probability that a small object is hidden completely by a mask pattern.
// Closed forms exist for the random and mesh patterns; every pattern can be
// estimated by seeded Monte-Carlo.

namespace maskkit {

struct Region {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;

  int area() const noexcept { return w * h; }
};

/// Throws Errc::invalid_dimension unless the region lies inside the grid.
void validate_region(const PatchGrid& grid, const Region& region);
std::vector<int> region_cells(const PatchGrid& grid, const Region& region);

enum class EstimateMethod { exact, monte_carlo };

struct OcclusionEstimate {
  double probability = 0.0;
  double std_error = 0.0;  // 0 for exact results
  EstimateMethod method = EstimateMethod::exact;
  std::uint64_t trials = 0;  // 0 for exact results
};

/// P(all `cells` of a fixed set are among `masked` drawn uniformly from
/// `total`) = C(total - cells, masked - cells) / C(total, masked).
double hypergeometric_all_drawn(int total, int masked, int cells);

/// Full-occlusion probability under gen_random at `ratio`.
OcclusionEstimate exact_random_occlusion(const PatchGrid& grid, double ratio, const Region& region);

/// Same, for a uniform mask with an explicit masked count (count-matched comparisons).
OcclusionEstimate exact_random_occlusion_count(const PatchGrid& grid, int masked,
                                               const Region& region);

/**
 * Full-occlusion probability under gen_mesh.
 *
 * The region is fully masked iff none of its cells in the chosen parity class
 * is kept, so with k kept out of |K_p| candidates and c_p region cells in class p:
 *
 *   P = 1/2 * sum_p C(|K_p| - c_p, k) / C(|K_p|, k)
 */
OcclusionEstimate exact_mesh_occlusion(const PatchGrid& grid, const MeshSpec& spec,
                                       const Region& region);
OcclusionEstimate exact_mesh_occlusion(const PatchGrid& grid, double ratio, const Region& region);

/// Trials are split into partitions of this many; partition p draws from
/// Rng::substream(seed, p). Results do not depend on the thread count.
inline constexpr std::uint64_t kTrialsPerPartition = 4096;

OcclusionEstimate mc_occlusion(const PatternSpec& spec, const PatchGrid& grid, const Region& region,
                               std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

/// Monte-Carlo over an arbitrary cell set (linear indices).
OcclusionEstimate mc_occlusion_cells(const PatternSpec& spec, const PatchGrid& grid,
                                     std::span<const int> cells, std::uint64_t trials,
                                     std::uint64_t seed, unsigned threads = 1);

struct FrequencyGrid {
  int cols = 0;
  int rows = 0;
  std::uint64_t trials = 0;
  std::vector<double> values;  // row-major masked frequency per cell

  double at(int col, int row) const { return values[static_cast<std::size_t>(row * cols + col)]; }
};

FrequencyGrid patch_mask_frequency(const PatternSpec& spec, const PatchGrid& grid,
                                   std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

// Mesh against random at the same nominal ratio and at the same masked count.
// They differ by one patch on odd grids (random masks floor(r*T), mesh masks
// T - floor((1-r)*T)).
struct OcclusionComparison {
  double ratio = 0.0;
  Region region;
  int mesh_masked = 0;
  double mesh = 0.0;
  int random_nominal_masked = 0;
  double random_nominal = 0.0;
  double random_count_matched = 0.0;
};

OcclusionComparison compare_mesh_random(const PatchGrid& grid, double ratio, const Region& region);

}  // namespace maskkit
