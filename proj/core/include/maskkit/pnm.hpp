#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maskkit/grid.hpp"

// Netpbm codecs: plain bitmap (P1) for masks, plain/binary graymap (P2/P5)
// for single-channel images. Header comments round-trip so that provenance
// lines written into a file can be recovered later.

namespace maskkit::pnm {

enum class GrayFormat { plain, binary };

struct MaskFile {
  MaskMap mask;
  std::vector<std::string> comments;  // text after "# ", in file order
};

struct ImageFile {
  GrayImage image;
  GrayFormat format = GrayFormat::plain;
  std::vector<std::string> comments;
};

/// P1 with width = cols, height = rows, 1 = masked.
std::string encode_pbm(const MaskMap& mask, std::span<const std::string> comments = {});
MaskFile decode_pbm(std::string_view bytes);

std::string encode_pgm(const GrayImage& image, GrayFormat format,
                       std::span<const std::string> comments = {});
ImageFile decode_pgm(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

inline MaskFile read_pbm(const std::filesystem::path& path) { return decode_pbm(read_file(path)); }
inline ImageFile read_pgm(const std::filesystem::path& path) { return decode_pgm(read_file(path)); }

}  // namespace maskkit::pnm
