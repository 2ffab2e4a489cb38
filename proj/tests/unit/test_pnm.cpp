#include "doctest.h"

#include "maskkit/error.hpp"
#include "maskkit/patterns.hpp"
#include "maskkit/pnm.hpp"

using namespace maskkit;

TEST_CASE("P1 encoding layout") {
  MaskMap m(PatchGrid::lattice(3, 2));
  m.set(0, 0, true);
  m.set(2, 1, true);
  const std::vector<std::string> comments{"pattern=test"};
  CHECK(pnm::encode_pbm(m, comments) == "P1\n# pattern=test\n3 2\n1 0 0\n0 0 1\n");
}

TEST_CASE("P1 round-trips masks and comments") {
  const auto grid = PatchGrid::lattice(7, 7);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = gen_random(grid, 0.6, seed);
    const std::vector<std::string> comments{"a=1", "b=two words"};
    const auto file = pnm::decode_pbm(pnm::encode_pbm(m, comments));
    CHECK(file.mask == m);
    CHECK(file.comments == comments);
  }
}

TEST_CASE("P1 decoding accepts packed digits and inline comments") {
  const auto file = pnm::decode_pbm("P1\n# hello\n4 2 # dims\n0110\n# mid\n1 0 0 1\n");
  CHECK(file.mask.grid().cols() == 4);
  CHECK(file.mask.masked_count() == 4);
  CHECK(file.mask.masked(1, 0));
  CHECK(file.mask.masked(3, 1));
  CHECK(file.comments == std::vector<std::string>{"hello", "dims", "mid"});
}

TEST_CASE("P1 rejects malformed input") {
  CHECK_THROWS_AS(pnm::decode_pbm("P4\n1 1\n0"), Error);
  CHECK_THROWS_AS(pnm::decode_pbm("P1\n2 2\n0 1 1"), Error);
  CHECK_THROWS_AS(pnm::decode_pbm("P1\n2 2\n0 1 2 1"), Error);
  CHECK_THROWS_AS(pnm::decode_pbm("P1\nx 2\n"), Error);
}

TEST_CASE("wide P1 rows wrap at 70 characters") {
  const auto m = gen_random(PatchGrid::lattice(50, 2), 0.5, 1);
  const std::string text = pnm::encode_pbm(m);
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    CHECK(end - start <= 70);
    start = end + 1;
  }
  CHECK(pnm::decode_pbm(text).mask == m);
}

TEST_CASE("graymaps round-trip in both encodings") {
  GrayImage img(5, 3, 255);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = static_cast<std::uint16_t>(i * 17);
  for (auto fmt : {pnm::GrayFormat::plain, pnm::GrayFormat::binary}) {
    const auto file = pnm::decode_pgm(pnm::encode_pgm(img, fmt, std::vector<std::string>{"x=1"}));
    CHECK(file.image == img);
    CHECK(file.format == fmt);
    CHECK(file.comments == std::vector<std::string>{"x=1"});
  }
  GrayImage wide(2, 2, 1000);
  wide.pixels = {0, 999, 256, 1000};
  CHECK(pnm::decode_pgm(pnm::encode_pgm(wide, pnm::GrayFormat::binary)).image == wide);
  CHECK(pnm::decode_pgm(pnm::encode_pgm(wide, pnm::GrayFormat::plain)).image == wide);
}

TEST_CASE("plain graymap header layout") {
  GrayImage img(2, 1, 255);
  img.pixels = {3, 250};
  CHECK(pnm::encode_pgm(img, pnm::GrayFormat::plain) == "P2\n2 1\n255\n3 250\n");
}

TEST_CASE("graymap errors") {
  CHECK_THROWS_AS(pnm::decode_pgm("P2\n2 1\n10\n3 11\n"), Error);
  CHECK_THROWS_AS(pnm::decode_pgm("P5\n2 2\n255\n\x01"), Error);
  CHECK_THROWS_AS(pnm::read_pgm("/nonexistent/file.pgm"), Error);
}
