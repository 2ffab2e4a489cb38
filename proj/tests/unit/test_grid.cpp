#include "doctest.h"

#include "maskkit/error.hpp"
#include "maskkit/grid.hpp"

using namespace maskkit;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected maskkit::Error");
  return Errc::io_error;
}

GrayImage ramp(int w, int h) {
  GrayImage img(w, h, 255);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = static_cast<std::uint16_t>(1 + i % 200);
  return img;
}

}  // namespace

TEST_CASE("partition builds the patch lattice") {
  const auto g = partition(224, 224, 32);
  CHECK(g.cols() == 7);
  CHECK(g.rows() == 7);
  CHECK(g.total_patches() == 49);

  CHECK(partition(224, 224, 16).total_patches() == 196);

  const auto one = partition(32, 32, 32);
  CHECK(one.cols() == 1);
  CHECK(one.total_patches() == 1);
}

TEST_CASE("partition records remainder margins") {
  const auto g = partition(230, 100, 32);
  CHECK(g.cols() == 7);
  CHECK(g.rows() == 3);
  CHECK(g.margin_right() == 6);
  CHECK(g.margin_bottom() == 4);
}

TEST_CASE("partition rejects bad dimensions") {
  CHECK(code_of([] { partition(0, 10, 1); }) == Errc::invalid_dimension);
  CHECK(code_of([] { partition(10, 10, 0); }) == Errc::invalid_dimension);
  CHECK(code_of([] { partition(31, 64, 32); }) == Errc::invalid_dimension);
}

TEST_CASE("masked_ratio") {
  const auto g = PatchGrid::lattice(7, 7);
  CHECK(masked_ratio(MaskMap(g, false)) == 0.0);
  CHECK(masked_ratio(MaskMap(g, true)) == 1.0);

  std::vector<int> cells;
  for (int i = 0; i < 29; ++i) cells.push_back(i);
  CHECK(masked_ratio(MaskMap::from_indices(g, cells)) == doctest::Approx(29.0 / 49.0));
}

TEST_CASE("masked_ratio of an explicit cell list is list length over total") {
  const auto g = PatchGrid::lattice(5, 3);
  for (int n = 0; n <= 15; ++n) {
    std::vector<int> cells;
    for (int i = 0; i < n; ++i) cells.push_back((i * 7) % 15);  // 7 is coprime to 15
    CHECK(masked_ratio(MaskMap::from_indices(g, cells)) == static_cast<double>(n) / 15.0);
  }
}

TEST_CASE("target_masked_count uses the keep-side floor") {
  const auto g = PatchGrid::lattice(7, 7);
  CHECK(target_masked_count(g, 0.60) == 30);
  CHECK(target_masked_count(g, 0.50) == 25);
  CHECK(target_masked_count(g, 1.0) == 49);
  CHECK(target_masked_count(g, 0.70) == 35);
  CHECK(target_masked_count(g, 0.80) == 40);
  CHECK(code_of([&] { target_masked_count(g, 1.5); }) == Errc::ratio_out_of_range);
  CHECK(code_of([&] { target_masked_count(g, -0.1); }) == Errc::ratio_out_of_range);
}

TEST_CASE("half-up rounding keeps one more patch at 0.5") {
  const auto g = PatchGrid::lattice(7, 7);
  CHECK(keep_count(g, 0.5, KeepRounding::floor) == 24);
  CHECK(keep_count(g, 0.5, KeepRounding::half_up) == 25);
}

TEST_CASE("random_masked_count matches the 29 of 49 anchor") {
  const auto g = PatchGrid::lattice(7, 7);
  CHECK(random_masked_count(g, 0.6) == 29);
  CHECK(random_masked_count(PatchGrid::lattice(10, 10), 0.29) == 29);
}

TEST_CASE("apply_mask") {
  const auto g = partition(64, 64, 32);
  const GrayImage img = ramp(64, 64);

  CHECK(apply_mask(img, MaskMap(g, false), 0) == img);

  const GrayImage all = apply_mask(img, MaskMap(g, true), 0);
  for (auto p : all.pixels) CHECK(p == 0);

  MaskMap one(g);
  one.set(0, 0, true);
  const GrayImage out = apply_mask(img, one, 7);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      const bool inside = x < 32 && y < 32;
      CHECK(out.at(x, y) == (inside ? 7 : img.at(x, y)));
    }
  }
}

TEST_CASE("apply_mask leaves margins untouched and is idempotent") {
  const auto g = partition(70, 40, 32);
  const GrayImage img = ramp(70, 40);
  const GrayImage once = apply_mask(img, MaskMap(g, true), 9);
  for (int y = 0; y < 40; ++y) {
    for (int x = 0; x < 70; ++x) {
      CHECK(once.at(x, y) == ((x < 64 && y < 32) ? 9 : img.at(x, y)));
    }
  }
  CHECK(apply_mask(once, MaskMap(g, true), 9) == once);
}

TEST_CASE("apply_mask rejects mismatched geometry") {
  const auto g = partition(64, 64, 32);
  CHECK(code_of([&] { apply_mask(ramp(96, 64), MaskMap(g), 0); }) == Errc::geometry_mismatch);
}

TEST_CASE("complement") {
  const auto g = PatchGrid::lattice(7, 7);
  CHECK(complement(MaskMap(g, true)) == MaskMap(g, false));

  std::vector<int> cells;
  for (int i = 0; i < 30; ++i) cells.push_back(i);
  const auto m = MaskMap::from_indices(g, cells);
  CHECK(complement(m).masked_count() == 19);
  CHECK(complement(complement(m)) == m);
  CHECK(masked_ratio(complement(m)) == doctest::Approx(1.0 - masked_ratio(m)));
}

TEST_CASE("flat byte buffers round-trip") {
  const auto g = PatchGrid::lattice(4, 3);
  MaskMap m(g);
  m.set(1, 2, true);
  m.set(3, 0, true);
  const auto bytes = m.to_bytes();
  CHECK(bytes.size() == 12);
  CHECK(MaskMap::from_bytes(4, 3, bytes) == m);
  CHECK(code_of([&] { MaskMap::from_bytes(4, 4, bytes); }) == Errc::length_mismatch);
}
