#include "maskkit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maskkit/error.hpp"

namespace maskkit {

namespace {

// Decimal ratios such as 0.29 are not exact in binary; 0.29 * 100 evaluates
// to 28.999999999999996. Counts are taken after adding this slack.
constexpr double kCountSlack = 1e-9;

int floor_count(double x) { return static_cast<int>(std::floor(x + kCountSlack)); }

}  // namespace

PatchGrid PatchGrid::lattice(int cols, int rows, int patch_size) {
  if (cols < 1 || rows < 1 || patch_size < 1) {
    throw Error(Errc::invalid_dimension,
                "lattice needs cols, rows, patch_size >= 1 (got " + std::to_string(cols) +
                    "x" + std::to_string(rows) + ", patch " + std::to_string(patch_size) + ")");
  }
  return partition(cols * patch_size, rows * patch_size, patch_size);
}

PatchGrid partition(int image_width, int image_height, int patch_size) {
  if (image_width < 1 || image_height < 1 || patch_size < 1) {
    throw Error(Errc::invalid_dimension, "image dimensions and patch size must be >= 1");
  }
  if (patch_size > std::min(image_width, image_height)) {
    throw Error(Errc::invalid_dimension,
                "patch size " + std::to_string(patch_size) + " exceeds image " +
                    std::to_string(image_width) + "x" + std::to_string(image_height));
  }
  return PatchGrid(image_width / patch_size, image_height / patch_size, patch_size,
                   image_width, image_height);
}

MaskMap::MaskMap(PatchGrid grid, bool fill)
    : grid_(grid), cells_(static_cast<std::size_t>(grid.total_patches()), fill ? 1 : 0) {}

MaskMap::MaskMap(PatchGrid grid, std::vector<std::uint8_t> cells)
    : grid_(grid), cells_(std::move(cells)) {
  if (cells_.size() != static_cast<std::size_t>(grid_.total_patches())) {
    throw Error(Errc::length_mismatch, "mask cell count " + std::to_string(cells_.size()) +
                                           " does not match grid of " +
                                           std::to_string(grid_.total_patches()));
  }
  for (auto& c : cells_) c = c ? 1 : 0;
}

MaskMap MaskMap::from_indices(PatchGrid grid, std::span<const int> masked) {
  MaskMap mask(grid);
  for (int idx : masked) {
    if (idx < 0 || idx >= grid.total_patches()) {
      throw Error(Errc::invalid_dimension, "cell index " + std::to_string(idx) + " outside grid");
    }
    mask.cells_[static_cast<std::size_t>(idx)] = 1;
  }
  return mask;
}

MaskMap MaskMap::from_bytes(int cols, int rows, std::span<const std::uint8_t> bytes) {
  return MaskMap(PatchGrid::lattice(cols, rows),
                 std::vector<std::uint8_t>(bytes.begin(), bytes.end()));
}

std::size_t MaskMap::index(int col, int row) const {
  if (!grid_.contains(col, row)) {
    throw Error(Errc::invalid_dimension, "cell (" + std::to_string(col) + ", " +
                                             std::to_string(row) + ") outside grid");
  }
  return static_cast<std::size_t>(grid_.linear_index(col, row));
}

int MaskMap::masked_count() const noexcept {
  return static_cast<int>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

std::vector<int> MaskMap::masked_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> MaskMap::unmasked_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!cells_[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

GrayImage::GrayImage(int w, int h, int maxval, std::uint16_t fill)
    : width(w), height(h), max_value(maxval) {
  if (w < 1 || h < 1 || maxval < 1 || maxval > 65535) {
    throw Error(Errc::invalid_dimension, "image must be at least 1x1 with max value in [1, 65535]");
  }
  pixels.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

void GrayImage::validate() const {
  if (width < 1 || height < 1 || max_value < 1 || max_value > 65535) {
    throw Error(Errc::invalid_dimension, "image must be at least 1x1 with max value in [1, 65535]");
  }
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(Errc::invalid_dimension, "pixel buffer does not match image dimensions");
  }
  for (auto p : pixels) {
    if (p > max_value) throw Error(Errc::invalid_dimension, "pixel value exceeds max value");
  }
}

void require_ratio(double ratio) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw Error(Errc::ratio_out_of_range, "mask ratio must lie in [0, 1], got " + std::to_string(ratio));
  }
}

double masked_ratio(const MaskMap& mask) {
  return static_cast<double>(mask.masked_count()) / mask.grid().total_patches();
}

int keep_count(const PatchGrid& grid, double ratio, KeepRounding rounding) {
  require_ratio(ratio);
  const double kept = (1.0 - ratio) * grid.total_patches();
  return rounding == KeepRounding::floor ? floor_count(kept) : floor_count(kept + 0.5);
}

int target_masked_count(const PatchGrid& grid, double ratio, KeepRounding rounding) {
  return grid.total_patches() - keep_count(grid, ratio, rounding);
}

int random_masked_count(const PatchGrid& grid, double ratio) {
  require_ratio(ratio);
  return floor_count(ratio * grid.total_patches());
}

GrayImage apply_mask(const GrayImage& image, const MaskMap& mask, std::uint16_t fill) {
  const PatchGrid& g = mask.grid();
  if (image.width != g.image_width() || image.height != g.image_height()) {
    // Masks read from files carry only the lattice; accept any image that
    // partitions to the same lattice at the grid's patch size.
    const PatchGrid implied = partition(image.width, image.height, g.patch_size());
    if (!implied.same_lattice(g)) {
      throw Error(Errc::geometry_mismatch,
                  "mask lattice " + std::to_string(g.cols()) + "x" + std::to_string(g.rows()) +
                      " does not fit image " + std::to_string(image.width) + "x" +
                      std::to_string(image.height) + " at patch size " +
                      std::to_string(g.patch_size()));
    }
  }
  if (fill > image.max_value) {
    throw Error(Errc::invalid_parameter, "fill value exceeds image max value");
  }
  GrayImage out = image;
  const int ps = g.patch_size();
  for (int row = 0; row < g.rows(); ++row) {
    for (int col = 0; col < g.cols(); ++col) {
      if (!mask.masked(col, row)) continue;
      for (int y = row * ps; y < (row + 1) * ps; ++y) {
        std::fill_n(out.pixels.begin() + static_cast<std::ptrdiff_t>(y) * out.width + col * ps, ps, fill);
      }
    }
  }
  return out;
}

MaskMap complement(const MaskMap& mask) {
  std::vector<std::uint8_t> cells(mask.cells().begin(), mask.cells().end());
  for (auto& c : cells) c = c ? 0 : 1;
  return MaskMap(mask.grid(), std::move(cells));
}

}  // namespace maskkit
