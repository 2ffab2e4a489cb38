#include "maskkit/pnm.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "maskkit/error.hpp"

namespace maskkit::pnm {

namespace {

constexpr std::size_t kMaxPlainLine = 70;

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::parse_error, what); }

// Tokenizer over the header and plain raster; '#' starts a comment that runs
// to end of line and may appear between any two tokens.
class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        std::size_t end = bytes_.find('\n', pos_);
        if (end == std::string_view::npos) end = bytes_.size();
        std::string_view text = bytes_.substr(pos_ + 1, end - pos_ - 1);
        if (!text.empty() && text.front() == ' ') text.remove_prefix(1);
        if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
        comments_.emplace_back(text);
        pos_ = end;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::string_view magic() {
    if (bytes_.size() < 2) fail("file too short for a netpbm header");
    pos_ = 2;
    return bytes_.substr(0, 2);
  }

  long integer(const char* what) {
    skip_space_and_comments();
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) fail(std::string(what) + " is too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) fail(std::string("expected ") + what);
    return value;
  }

  char bit() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) fail("bitmap raster ends early");
    const char c = bytes_[pos_++];
    if (c != '0' && c != '1') fail(std::string("unexpected character in bitmap raster: '") + c + "'");
    return c;
  }

  // Exactly one whitespace byte separates the header from a binary raster.
  std::string_view binary_tail() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      fail("missing separator before binary raster");
    }
    return bytes_.substr(pos_ + 1);
  }

  std::vector<std::string> take_comments() { return std::move(comments_); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
  std::vector<std::string> comments_;
};

void write_header(std::ostringstream& os, std::string_view magic,
                  std::span<const std::string> comments, int w, int h) {
  os << magic << '\n';
  for (const auto& c : comments) {
    if (c.find('\n') != std::string::npos) {
      throw Error(Errc::invalid_parameter, "netpbm comments must be single lines");
    }
    os << "# " << c << '\n';
  }
  os << w << ' ' << h << '\n';
}

}  // namespace

std::string encode_pbm(const MaskMap& mask, std::span<const std::string> comments) {
  const PatchGrid& g = mask.grid();
  std::ostringstream os;
  write_header(os, "P1", comments, g.cols(), g.rows());
  for (int row = 0; row < g.rows(); ++row) {
    std::size_t line = 0;
    for (int col = 0; col < g.cols(); ++col) {
      if (line + 2 > kMaxPlainLine) {
        os << '\n';
        line = 0;
      } else if (col > 0) {
        os << ' ';
        ++line;
      }
      os << (mask.masked(col, row) ? '1' : '0');
      ++line;
    }
    os << '\n';
  }
  return os.str();
}

MaskFile decode_pbm(std::string_view bytes) {
  Reader r(bytes);
  if (r.magic() != "P1") fail("not a plain bitmap (expected magic P1)");
  const long w = r.integer("width");
  const long h = r.integer("height");
  if (w < 1 || h < 1) fail("bitmap dimensions must be positive");
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(w * h));
  for (auto& c : cells) c = r.bit() == '1' ? 1 : 0;
  r.skip_space_and_comments();
  return MaskFile{MaskMap(PatchGrid::lattice(static_cast<int>(w), static_cast<int>(h)), std::move(cells)),
                  r.take_comments()};
}

std::string encode_pgm(const GrayImage& image, GrayFormat format,
                       std::span<const std::string> comments) {
  image.validate();
  std::ostringstream os;
  write_header(os, format == GrayFormat::plain ? "P2" : "P5", comments, image.width, image.height);
  os << image.max_value << '\n';
  if (format == GrayFormat::binary) {
    const bool wide = image.max_value > 255;
    for (auto p : image.pixels) {
      if (wide) os.put(static_cast<char>(p >> 8));
      os.put(static_cast<char>(p & 0xFF));
    }
    return os.str();
  }
  for (int y = 0; y < image.height; ++y) {
    std::size_t line = 0;
    for (int x = 0; x < image.width; ++x) {
      const std::string value = std::to_string(image.at(x, y));
      if (line > 0 && line + 1 + value.size() > kMaxPlainLine) {
        os << '\n';
        line = 0;
      } else if (line > 0) {
        os << ' ';
        ++line;
      }
      os << value;
      line += value.size();
    }
    os << '\n';
  }
  return os.str();
}

ImageFile decode_pgm(std::string_view bytes) {
  Reader r(bytes);
  const std::string_view magic = r.magic();
  if (magic != "P2" && magic != "P5") fail("not a graymap (expected magic P2 or P5)");
  const long w = r.integer("width");
  const long h = r.integer("height");
  const long maxval = r.integer("max value");
  if (w < 1 || h < 1) fail("graymap dimensions must be positive");
  if (maxval < 1 || maxval > 65535) fail("graymap max value must lie in [1, 65535]");

  GrayImage img(static_cast<int>(w), static_cast<int>(h), static_cast<int>(maxval));
  ImageFile out{std::move(img), GrayFormat::plain, {}};
  auto& px = out.image.pixels;
  if (magic == "P2") {
    for (auto& p : px) {
      const long v = r.integer("pixel value");
      if (v > maxval) fail("pixel value exceeds max value");
      p = static_cast<std::uint16_t>(v);
    }
    r.skip_space_and_comments();
  } else {
    out.format = GrayFormat::binary;
    const std::string_view raster = r.binary_tail();
    const std::size_t bpp = maxval > 255 ? 2 : 1;
    if (raster.size() < px.size() * bpp) fail("binary raster ends early");
    for (std::size_t i = 0; i < px.size(); ++i) {
      const auto hi = static_cast<unsigned char>(raster[i * bpp]);
      const unsigned v = bpp == 2 ? (hi << 8) | static_cast<unsigned char>(raster[i * bpp + 1]) : hi;
      if (v > static_cast<unsigned>(maxval)) fail("pixel value exceeds max value");
      px[i] = static_cast<std::uint16_t>(v);
    }
  }
  out.comments = r.take_comments();
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::io_error, "write failed for '" + path.string() + "'");
}

}  // namespace maskkit::pnm
