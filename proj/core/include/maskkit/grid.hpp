#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace maskkit {

/**
 * Square-patch lattice laid over the top-left corner of an image.
 *
 * Patches tile the region [0, cols*patch_size) x [0, rows*patch_size). Pixels
 * to the right of or below that region form the remainder margins and are
 * never part of any patch.
 */
class PatchGrid {
 public:
  /// Grid whose image is exactly cols x rows patches (no margins).
  static PatchGrid lattice(int cols, int rows, int patch_size = 1);

  int cols() const noexcept { return cols_; }
  int rows() const noexcept { return rows_; }
  int patch_size() const noexcept { return patch_size_; }
  int image_width() const noexcept { return image_width_; }
  int image_height() const noexcept { return image_height_; }
  int total_patches() const noexcept { return cols_ * rows_; }
  int margin_right() const noexcept { return image_width_ - cols_ * patch_size_; }
  int margin_bottom() const noexcept { return image_height_ - rows_ * patch_size_; }

  /// Row-major index with (0, 0) at the top-left patch.
  int linear_index(int col, int row) const noexcept { return cols_ * row + col; }
  bool contains(int col, int row) const noexcept {
    return col >= 0 && row >= 0 && col < cols_ && row < rows_;
  }

  bool same_lattice(const PatchGrid& other) const noexcept {
    return cols_ == other.cols_ && rows_ == other.rows_;
  }
  friend bool operator==(const PatchGrid&, const PatchGrid&) = default;

 private:
  friend PatchGrid partition(int, int, int);
  PatchGrid(int cols, int rows, int patch_size, int width, int height)
      : cols_(cols), rows_(rows), patch_size_(patch_size),
        image_width_(width), image_height_(height) {}

  int cols_;
  int rows_;
  int patch_size_;
  int image_width_;
  int image_height_;
};

/// Throws Errc::invalid_dimension unless all arguments are >= 1 and
/// patch_size <= min(image_width, image_height).
PatchGrid partition(int image_width, int image_height, int patch_size);

// Boolean assignment over a PatchGrid, row-major, true = masked.
class MaskMap {
 public:
  explicit MaskMap(PatchGrid grid, bool fill = false);
  MaskMap(PatchGrid grid, std::vector<std::uint8_t> cells);

  static MaskMap from_indices(PatchGrid grid, std::span<const int> masked);

  const PatchGrid& grid() const noexcept { return grid_; }
  std::span<const std::uint8_t> cells() const noexcept { return cells_; }

  bool masked(int col, int row) const { return cells_[index(col, row)] != 0; }
  bool masked(int linear) const { return cells_.at(static_cast<std::size_t>(linear)) != 0; }
  void set(int col, int row, bool value) { cells_[index(col, row)] = value ? 1 : 0; }
  void set(int linear, bool value) { cells_.at(static_cast<std::size_t>(linear)) = value ? 1 : 0; }

  int masked_count() const noexcept;
  int unmasked_count() const noexcept { return grid_.total_patches() - masked_count(); }

  /// Masked/unmasked linear indices in ascending order.
  std::vector<int> masked_indices() const;
  std::vector<int> unmasked_indices() const;

  /// Flat 0/1 byte buffer, row-major; pairs with (cols, rows) for foreign callers.
  std::vector<std::uint8_t> to_bytes() const { return cells_; }
  static MaskMap from_bytes(int cols, int rows, std::span<const std::uint8_t> bytes);

  friend bool operator==(const MaskMap&, const MaskMap&) = default;

 private:
  std::size_t index(int col, int row) const;

  PatchGrid grid_;
  std::vector<std::uint8_t> cells_;
};

struct GrayImage {
  int width = 0;
  int height = 0;
  int max_value = 255;
  std::vector<std::uint16_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h, int maxval = 255, std::uint16_t fill = 0);

  std::uint16_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint16_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }

  /// Throws Errc::invalid_dimension if sizes or values break the invariants.
  void validate() const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

enum class KeepRounding { floor, half_up };

/// Fraction of masked patches, masked_count / total_patches.
double masked_ratio(const MaskMap& mask);

/// Patches left visible at `ratio`: floor((1 - ratio) * T), or Round() under
/// half_up. Throws Errc::ratio_out_of_range unless ratio is in [0, 1].
int keep_count(const PatchGrid& grid, double ratio,
               KeepRounding rounding = KeepRounding::floor);

/// T - keep_count(grid, ratio): the masked count the mesh, square and
/// block-wise generators aim for.
int target_masked_count(const PatchGrid& grid, double ratio,
                        KeepRounding rounding = KeepRounding::floor);

/// floor(ratio * T): the random generator's count ("29 out of 49" at 0.6).
int random_masked_count(const PatchGrid& grid, double ratio);

/// Replace every pixel of each masked patch with `fill`. Margins pass through.
GrayImage apply_mask(const GrayImage& image, const MaskMap& mask, std::uint16_t fill);

MaskMap complement(const MaskMap& mask);

void require_ratio(double ratio);

}  // namespace maskkit
