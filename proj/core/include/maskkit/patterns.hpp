#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "maskkit/grid.hpp"
#include "maskkit/rng.hpp"

namespace maskkit {

/**
 * How a cell's parity is computed for the mesh candidates.
 *
 * `linear` uses (cols * row + col) mod 2, the row-major index. On odd-width
 * grids this is the usual checkerboard; on even-width grids it degenerates to
 * alternating column stripes. `checkerboard` uses (col + row) mod 2 and gives
 * a true checkerboard on every grid.
 */
enum class ParityMode { linear, checkerboard };

struct ParityClass {
  int value = 0;
  explicit ParityClass(int parity);
};

/// One parity class of the lattice: the cells the mesh mask may leave visible.
struct CandidateSet {
  PatchGrid grid;
  ParityClass parity;
  std::vector<int> cells;  // linear indices, ascending

  bool contains(int linear) const;
};

int cell_parity(const PatchGrid& grid, int linear, ParityMode mode = ParityMode::linear);

CandidateSet mesh_candidates(const PatchGrid& grid, ParityClass parity,
                             ParityMode mode = ParityMode::linear);

struct MeshSpec {
  double ratio = 0.6;
  KeepRounding rounding = KeepRounding::floor;
  ParityMode parity_mode = ParityMode::linear;
};

struct RandomSpec {
  double ratio = 0.6;
};

struct SquareSpec {
  int side = 2;
  double ratio = 0.6;
};

// Defaults follow the BEiT block-wise sampler.
struct BlockWiseSpec {
  double ratio = 0.6;
  int min_block_area = 4;
  double aspect_low = 0.3;
  double aspect_high = 1.0 / 0.3;
};

using PatternSpec = std::variant<MeshSpec, RandomSpec, SquareSpec, BlockWiseSpec>;

std::string_view pattern_name(const PatternSpec& spec);
double pattern_ratio(const PatternSpec& spec);

/// Throws maskkit::Error if `spec` cannot be generated on `grid`.
void validate(const PatternSpec& spec, const PatchGrid& grid);

/// Masked count a spec lands on exactly (mesh, random), or the lower end of
/// the overshoot band (square, block-wise).
int expected_masked_count(const PatternSpec& spec, const PatchGrid& grid);

// Axis-aligned rectangle of cells.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Union the cells of `rect` into `mask`. Throws if rect leaves the grid.
void stamp(MaskMap& mask, const Rect& rect);

struct MeshDraw {
  MaskMap mask;
  ParityClass parity;
};

struct Placement {
  Rect rect;
  int sampled_area = 0;   // block-wise only: area drawn before rounding/clamping
  double aspect = 1.0;    // block-wise only: h / w as drawn
};

struct PlacementDraw {
  MaskMap mask;
  std::vector<Placement> placements;
};

/**
 * Mesh mask.
 *
 * Picks the even candidate class when a uniform draw exceeds 0.5 and the odd
 * class otherwise, keeps keep_count(grid, ratio) cells drawn uniformly
 * without replacement from that class (a truncated Fisher-Yates shuffle), and
 * masks everything else.
 *
 * Requires ratio >= 0.5. Throws Errc::kept_exceeds_candidates rather than
 * clamping when the keep count exceeds the chosen class, which can happen
 * under KeepRounding::half_up.
 */
MeshDraw mesh_draw(const PatchGrid& grid, const MeshSpec& spec, Rng& rng);
MaskMap gen_mesh(const PatchGrid& grid, const MeshSpec& spec, Rng& rng);
MaskMap gen_mesh(const PatchGrid& grid, double ratio, std::uint64_t seed);

/// Masks random_masked_count(grid, ratio) cells chosen uniformly without replacement.
MaskMap gen_random(const PatchGrid& grid, const RandomSpec& spec, Rng& rng);
MaskMap gen_random(const PatchGrid& grid, double ratio, std::uint64_t seed);

/// Unions side x side squares at uniform in-bounds positions until the
/// target count is reached. Overlap is allowed.
PlacementDraw square_draw(const PatchGrid& grid, const SquareSpec& spec, Rng& rng);
MaskMap gen_square(const PatchGrid& grid, const SquareSpec& spec, Rng& rng);
MaskMap gen_square(const PatchGrid& grid, int side, double ratio, std::uint64_t seed);

/// BEiT-style block-wise sampler: random-area, log-uniform-aspect rectangles
/// unioned until the target count is reached.
PlacementDraw blockwise_draw(const PatchGrid& grid, const BlockWiseSpec& spec, Rng& rng);
MaskMap gen_blockwise(const PatchGrid& grid, const BlockWiseSpec& spec, Rng& rng);
MaskMap gen_blockwise(const PatchGrid& grid, const BlockWiseSpec& spec, std::uint64_t seed);

MaskMap generate(const PatternSpec& spec, const PatchGrid& grid, Rng& rng);
MaskMap generate(const PatternSpec& spec, const PatchGrid& grid, std::uint64_t seed);

// Flat key=value provenance text, e.g.
//   pattern=mesh grid=7x7 ratio=0.7 seed=42 rounding=floor parity_mode=linear
struct PatternRequest {
  PatternSpec spec;
  PatchGrid grid;
  std::uint64_t seed = 0;
};

std::string describe(const PatternSpec& spec, const PatchGrid& grid, std::uint64_t seed);

/// Inverse of describe(). Accepts space- or comma-separated pairs; unknown
/// keys are rejected, missing optional keys take the struct defaults.
PatternRequest parse_description(std::string_view text);

}  // namespace maskkit
