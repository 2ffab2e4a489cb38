#include "maskkit/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "maskkit/error.hpp"

namespace maskkit {

namespace {

// 255 * 0.7 evaluates to 178.49999999999997 in binary; integer-valued pixel
// mixes land on exact .5 ties only up to representation error.
constexpr double kRoundingSlack = 1e-9;
constexpr int kCropAttempts = 10;

std::uint16_t round_pixel(double v, int max_value) {
  const double r = std::floor(v + 0.5 + kRoundingSlack);
  return static_cast<std::uint16_t>(std::clamp(r, 0.0, static_cast<double>(max_value)));
}

void require_same_dims(const GrayImage& a, const GrayImage& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(Errc::dimension_mismatch,
                "images differ in size: " + std::to_string(a.width) + "x" + std::to_string(a.height) +
                    " vs " + std::to_string(b.width) + "x" + std::to_string(b.height));
  }
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(Errc::invalid_parameter, "Beta alpha must be positive and finite");
  }
}

}  // namespace

MixCoefficient::MixCoefficient(double lambda) : lambda_(lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(Errc::invalid_parameter, "mixing coefficient must lie in [0, 1]");
  }
}

void LabelVec::validate() const {
  if (probs.empty()) throw Error(Errc::invalid_parameter, "label vector is empty");
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::invalid_parameter, "label entry outside [0, 1]");
  }
  const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) throw Error(Errc::invalid_parameter, "label vector does not sum to 1");
}

LabelVec LabelVec::one_hot(std::size_t classes, std::size_t index) {
  if (index >= classes) throw Error(Errc::invalid_parameter, "one-hot index out of range");
  LabelVec v{std::vector<double>(classes, 0.0)};
  v.probs[index] = 1.0;
  return v;
}

GrayImage mixup_pixels(const GrayImage& a, const GrayImage& b, MixCoefficient lam) {
  require_same_dims(a, b);
  const double l = lam.value();
  GrayImage out = a;
  out.max_value = std::max(a.max_value, b.max_value);
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    out.pixels[i] = round_pixel(a.pixels[i] * l + b.pixels[i] * (1.0 - l), out.max_value);
  }
  return out;
}

LabelVec mix_labels(const LabelVec& ya, const LabelVec& yb, MixCoefficient lam) {
  if (ya.probs.size() != yb.probs.size()) {
    throw Error(Errc::dimension_mismatch, "label vectors have different class counts");
  }
  const double l = lam.value();
  LabelVec out{std::vector<double>(ya.probs.size())};
  for (std::size_t i = 0; i < out.probs.size(); ++i) {
    out.probs[i] = ya.probs[i] * l + yb.probs[i] * (1.0 - l);
  }
  return out;
}

MixCoefficient sample_lambda(double alpha, Rng& rng) {
  require_alpha(alpha);
  const double lg1 = rng.log_gamma_variate(alpha);
  const double lg2 = rng.log_gamma_variate(alpha);
  // g1 / (g1 + g2) = 1 / (1 + exp(lg2 - lg1)); exp overflow saturates to 0.
  return MixCoefficient(1.0 / (1.0 + std::exp(lg2 - lg1)));
}

MixCoefficient sample_lambda(double alpha, std::uint64_t seed) {
  Rng rng(seed);
  return sample_lambda(alpha, rng);
}

PixelBox cutmix_box(int width, int height, double lambda, int cx, int cy) {
  MixCoefficient check(lambda);
  const double cut = std::sqrt(1.0 - lambda);
  const int cut_w = static_cast<int>(std::lround(width * cut));
  const int cut_h = static_cast<int>(std::lround(height * cut));
  const int x1 = std::clamp(cx - cut_w / 2, 0, width);
  const int y1 = std::clamp(cy - cut_h / 2, 0, height);
  const int x2 = std::clamp(cx - cut_w / 2 + cut_w, 0, width);
  const int y2 = std::clamp(cy - cut_h / 2 + cut_h, 0, height);
  return PixelBox{x1, y1, x2 - x1, y2 - y1};
}

CutMixResult paste_box(const GrayImage& a, const GrayImage& b, const PixelBox& box) {
  require_same_dims(a, b);
  if (box.w < 0 || box.h < 0 || box.x < 0 || box.y < 0 || box.x + box.w > a.width ||
      box.y + box.h > a.height) {
    throw Error(Errc::geometry_mismatch, "paste box leaves the image");
  }
  CutMixResult out{a, 1.0, 1.0, box};
  out.image.max_value = std::max(a.max_value, b.max_value);
  for (int y = box.y; y < box.y + box.h; ++y) {
    for (int x = box.x; x < box.x + box.w; ++x) out.image.at(x, y) = b.at(x, y);
  }
  const long long total = static_cast<long long>(a.width) * a.height;
  out.lambda = 1.0 - static_cast<double>(box.area()) / static_cast<double>(total);
  return out;
}

CutMixResult cutmix(const GrayImage& a, const GrayImage& b, double alpha, Rng& rng) {
  require_same_dims(a, b);
  const double lam0 = sample_lambda(alpha, rng).value();
  const int cx = static_cast<int>(rng.below(static_cast<std::uint64_t>(a.width)));
  const int cy = static_cast<int>(rng.below(static_cast<std::uint64_t>(a.height)));
  CutMixResult out = paste_box(a, b, cutmix_box(a.width, a.height, lam0, cx, cy));
  out.sampled_lambda = lam0;
  return out;
}

CutMixResult cutmix(const GrayImage& a, const GrayImage& b, double alpha, std::uint64_t seed) {
  Rng rng(seed);
  return cutmix(a, b, alpha, rng);
}

void CropSpec::validate() const {
  if (!(scale_low > 0.0 && scale_low <= scale_high && scale_high <= 1.0)) {
    throw Error(Errc::invalid_parameter, "crop scale must satisfy 0 < low <= high <= 1");
  }
  if (!(aspect_low > 0.0 && aspect_low <= aspect_high && std::isfinite(aspect_high))) {
    throw Error(Errc::invalid_parameter, "crop aspect must satisfy 0 < low <= high");
  }
  if (out_size < 1) throw Error(Errc::invalid_parameter, "output size must be >= 1");
}

std::pair<int, int> crop_dims(int width, int height, double area_fraction, double aspect) {
  const double area = area_fraction * width * height;
  return {static_cast<int>(std::lround(std::sqrt(area * aspect))),
          static_cast<int>(std::lround(std::sqrt(area / aspect)))};
}

CropBox sample_crop_box(int width, int height, const CropSpec& spec, Rng& rng) {
  spec.validate();
  const double log_lo = std::log(spec.aspect_low);
  const double log_hi = std::log(spec.aspect_high);
  for (int attempt = 0; attempt < kCropAttempts; ++attempt) {
    const double f = rng.uniform(spec.scale_low, spec.scale_high);
    const double r = std::exp(rng.uniform(log_lo, log_hi));
    const auto [w, h] = crop_dims(width, height, f, r);
    if (w > 0 && h > 0 && w <= width && h <= height) {
      const int x = static_cast<int>(rng.between(0, width - w));
      const int y = static_cast<int>(rng.between(0, height - h));
      return CropBox{x, y, w, h, false};
    }
  }
  const double in_ratio = static_cast<double>(width) / height;
  int w = width, h = height;
  if (in_ratio < spec.aspect_low) {
    h = std::max(1, static_cast<int>(std::lround(w / spec.aspect_low)));
  } else if (in_ratio > spec.aspect_high) {
    w = std::max(1, static_cast<int>(std::lround(h * spec.aspect_high)));
  }
  return CropBox{(width - w) / 2, (height - h) / 2, w, h, true};
}

GrayImage resize_bilinear(const GrayImage& img, const CropBox& box, int out_w, int out_h) {
  if (box.w < 1 || box.h < 1 || box.x < 0 || box.y < 0 || box.x + box.w > img.width ||
      box.y + box.h > img.height) {
    throw Error(Errc::geometry_mismatch, "crop box leaves the image");
  }
  GrayImage out(out_w, out_h, img.max_value);
  const double sx = static_cast<double>(box.w) / out_w;
  const double sy = static_cast<double>(box.h) / out_h;
  for (int y = 0; y < out_h; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(box.h - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, box.h - 1);
    const double wy = fy - y0;
    for (int x = 0; x < out_w; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(box.w - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, box.w - 1);
      const double wx = fx - x0;
      const double top = img.at(box.x + x0, box.y + y0) * (1.0 - wx) + img.at(box.x + x1, box.y + y0) * wx;
      const double bot = img.at(box.x + x0, box.y + y1) * (1.0 - wx) + img.at(box.x + x1, box.y + y1) * wx;
      out.at(x, y) = round_pixel(top * (1.0 - wy) + bot * wy, img.max_value);
    }
  }
  return out;
}

GrayImage random_resized_crop(const GrayImage& img, const CropSpec& spec, Rng& rng) {
  img.validate();
  const CropBox box = sample_crop_box(img.width, img.height, spec, rng);
  return resize_bilinear(img, box, spec.out_size, spec.out_size);
}

GrayImage random_resized_crop(const GrayImage& img, const CropSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return random_resized_crop(img, spec, rng);
}

GrayImage mirror(const GrayImage& img) {
  GrayImage out = img;
  for (int y = 0; y < img.height; ++y) {
    auto row = out.pixels.begin() + static_cast<std::ptrdiff_t>(y) * img.width;
    std::reverse(row, row + img.width);
  }
  return out;
}

FlipResult random_flip(const GrayImage& img, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::invalid_parameter, "flip probability must lie in [0, 1]");
  const bool flip = rng.uniform() < p;
  return FlipResult{flip ? mirror(img) : img, flip};
}

FlipResult random_flip(const GrayImage& img, double p, std::uint64_t seed) {
  Rng rng(seed);
  return random_flip(img, p, rng);
}

}  // namespace maskkit
