#pragma once

#include <cstdint>
#include <vector>

#include "maskkit/grid.hpp"
#include "maskkit/rng.hpp"

namespace maskkit {

class MixCoefficient {
 public:
  /// Throws Errc::invalid_parameter outside [0, 1].
  explicit MixCoefficient(double lambda);
  double value() const noexcept { return lambda_; }

 private:
  double lambda_;
};

struct LabelVec {
  std::vector<double> probs;

  /// Throws unless every entry is in [0, 1] and the sum is 1 within 1e-9.
  void validate() const;
  static LabelVec one_hot(std::size_t classes, std::size_t index);
};

/// Pixel mix x_a * lambda + x_b * (1 - lambda), rounded half-up and clamped.
GrayImage mixup_pixels(const GrayImage& a, const GrayImage& b, MixCoefficient lam);

/// y_a * lambda + y_b * (1 - lambda), componentwise.
LabelVec mix_labels(const LabelVec& ya, const LabelVec& yb, MixCoefficient lam);

/// Beta(alpha, alpha) via two Gamma(alpha) draws, combined in log space.
MixCoefficient sample_lambda(double alpha, Rng& rng);
MixCoefficient sample_lambda(double alpha, std::uint64_t seed);

// Pixel rectangle; w or h may be 0 (empty paste).
struct PixelBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  long long area() const noexcept { return static_cast<long long>(w) * h; }
  friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

struct CutMixResult {
  GrayImage image;
  double lambda = 1.0;          // 1 - pasted area / image area; feed this to mix_labels
  double sampled_lambda = 1.0;  // the Beta draw that sized the box
  PixelBox box;
};

/// Box of area fraction (1 - lambda) centred at (cx, cy), clipped to the image.
PixelBox cutmix_box(int width, int height, double lambda, int cx, int cy);

/// Paste `box` of `b` into `a`; lambda = 1 - box area / image area.
CutMixResult paste_box(const GrayImage& a, const GrayImage& b, const PixelBox& box);

CutMixResult cutmix(const GrayImage& a, const GrayImage& b, double alpha, Rng& rng);
CutMixResult cutmix(const GrayImage& a, const GrayImage& b, double alpha, std::uint64_t seed);

struct CropSpec {
  double scale_low = 0.08;
  double scale_high = 1.0;
  double aspect_low = 3.0 / 4.0;
  double aspect_high = 4.0 / 3.0;
  int out_size = 224;

  void validate() const;

  /// Fine-tuning pipeline: crop 8% to 100% of the image.
  static CropSpec downstream() { return CropSpec{}; }
  /// Contrastive pretraining pipeline: crop 20% to 100% of the image.
  static CropSpec contrastive() { return CropSpec{0.20, 1.0, 3.0 / 4.0, 4.0 / 3.0, 224}; }
};

struct CropBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  bool fallback = false;  // true when all attempts left the image
};

/// (round(sqrt(f*W*H*r)), round(sqrt(f*W*H/r))).
std::pair<int, int> crop_dims(int width, int height, double area_fraction, double aspect);

/// Up to 10 attempts with f ~ U[scale_low, scale_high] and log-uniform
/// aspect, then a centre crop clamped to the aspect range.
CropBox sample_crop_box(int width, int height, const CropSpec& spec, Rng& rng);

/// Bilinear resample of `box` to out_w x out_h using pixel-centre alignment.
GrayImage resize_bilinear(const GrayImage& img, const CropBox& box, int out_w, int out_h);

GrayImage random_resized_crop(const GrayImage& img, const CropSpec& spec, Rng& rng);
GrayImage random_resized_crop(const GrayImage& img, const CropSpec& spec, std::uint64_t seed);

GrayImage mirror(const GrayImage& img);

struct FlipResult {
  GrayImage image;
  bool flipped = false;
};

/// Horizontal mirror with probability p.
FlipResult random_flip(const GrayImage& img, double p, Rng& rng);
FlipResult random_flip(const GrayImage& img, double p, std::uint64_t seed);

}  // namespace maskkit
