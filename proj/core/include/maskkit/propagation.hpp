#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maskkit/grid.hpp"

// Support-level model of a hierarchical convolution stack fed a masked input.
//
// A cell is "active" when its feature can be nonzero. In a dense stack the
// masked (zero-filled) positions pick up nonzero values from any active
// neighbour inside the kernel, so the support dilates every layer and the
// mask pattern washes out. A sparse stack evaluates only active positions,
// so within a stage the support never changes. Between stages both modes
// downsample by 2 with any-active pooling, the support of a stride-2 layer.

namespace maskkit {

struct SupportMap {
  int cols = 0;
  int rows = 0;
  std::vector<std::uint8_t> cells;  // row-major, 1 = active

  SupportMap() = default;
  SupportMap(int c, int r, bool fill = false);

  bool active(int col, int row) const { return cells[static_cast<std::size_t>(row * cols + col)] != 0; }
  void set(int col, int row, bool v) { cells[static_cast<std::size_t>(row * cols + col)] = v ? 1 : 0; }
  int active_count() const noexcept;
  bool is_full() const noexcept { return active_count() == cols * rows; }
  bool is_empty() const noexcept { return active_count() == 0; }
  bool subset_of(const SupportMap& other) const;

  friend bool operator==(const SupportMap&, const SupportMap&) = default;
};

/// Unmasked cells of `mask` become active.
SupportMap support_of(const MaskMap& mask);

/// 2x2 any-active pooling; odd trailing rows/columns pool as if padded with
/// masked (inactive) cells, so the output is ceil(cols/2) x ceil(rows/2).
SupportMap pool_any(const SupportMap& in);

/// 2x2 all-active pooling with the same padding rule (padding counts as active).
SupportMap pool_all(const SupportMap& in);

/// Chebyshev dilation by a (2*radius + 1)-square structuring element.
SupportMap dilate(const SupportMap& in, int radius);

SupportMap invert(const SupportMap& in);

struct StageStack {
  static constexpr int kDownsampleFactor = 2;

  int num_stages = 4;
  int layers_per_stage = 2;
  int kernel_radius = 1;

  void validate() const;
  int total_layers() const noexcept { return num_stages * layers_per_stage; }
};

/// Support at stages 1..stages: any-unmasked pooling applied s times.
std::vector<SupportMap> downsample_mask(const MaskMap& mask, int stages);

struct LayerSupport {
  int layer = 0;  // 0 is the input
  int stage = 0;
  SupportMap support;
};

enum class PropagationMode { dense, sparse };

/**
 * Per-layer support through `stack`.
 *
 * Entry 0 is the input support at stage 0. Each stage then contributes
 * `layers_per_stage` layers; the first layer of stage s > 0 sees the previous
 * stage's final support pooled by pool_any. Dense layers dilate by the kernel
 * radius, sparse layers keep the stage input unchanged.
 */
std::vector<LayerSupport> propagate(const MaskMap& mask, const StageStack& stack, PropagationMode mode);
std::vector<LayerSupport> dense_propagate(const MaskMap& mask, const StageStack& stack);
std::vector<LayerSupport> sparse_propagate(const MaskMap& mask, const StageStack& stack);

/// First layer whose support covers its whole grid; nullopt when the stack
/// ends first. Sparse stacks report nullopt for any mask with a masked cell
/// and 0 for an unmasked input.
std::optional<int> pattern_loss_depth(const MaskMap& mask, const StageStack& stack,
                                      PropagationMode mode = PropagationMode::dense);

/// One line per row, '#' active and '.' inactive.
std::string render_frame(const SupportMap& support);

}  // namespace maskkit
