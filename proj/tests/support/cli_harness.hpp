#pragma once

// In-process driver for the command-line tool plus scratch-directory helpers.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "maskkit/cli/cli.hpp"
#include "maskkit/grid.hpp"
#include "maskkit/pnm.hpp"

namespace harness {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

inline Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = maskkit::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("maskkit-" + std::to_string(stamp) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Deterministic non-constant test image.
inline maskkit::GrayImage gradient(int w, int h, int maxval = 255) {
  maskkit::GrayImage img(w, h, maxval);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.pixels[static_cast<std::size_t>(y * w + x)] =
          static_cast<std::uint16_t>(1 + (x * 7 + y * 13) % maxval);
    }
  }
  return img;
}

inline void write_gray(const std::string& path, const maskkit::GrayImage& img,
                       maskkit::pnm::GrayFormat fmt = maskkit::pnm::GrayFormat::plain) {
  maskkit::pnm::write_file(path, maskkit::pnm::encode_pgm(img, fmt));
}

inline std::vector<std::string> with(std::vector<std::string> args, const std::vector<std::string>& extra) {
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

// CSV body lines after the manifest comment.
inline std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// One invocation per command, each writing its main output to `out`.
struct ReplayCase {
  std::string name;
  std::vector<std::string> args;
  std::string out;
};

inline std::vector<ReplayCase> replay_cases(const TempDir& dir, const std::string& predictions_csv) {
  using maskkit::pnm::GrayFormat;
  const std::string a = dir.file("a.pgm");
  const std::string b = dir.file("b.pgm");
  const std::string big = dir.file("big.pgm");
  const std::string mask = dir.file("mask.pbm");
  write_gray(a, gradient(64, 48));
  write_gray(b, gradient(64, 48, 200), GrayFormat::binary);
  write_gray(big, gradient(224, 224));
  run({"gen", "--pattern", "mesh", "--grid", "7x7", "--ratio", "0.6", "--seed", "3", "-o", mask});

  std::vector<ReplayCase> cases;
  auto add = [&](std::string name, std::vector<std::string> args) {
    const std::string out = dir.file("out-" + name);
    args.push_back("-o");
    args.push_back(out);
    cases.push_back({std::move(name), std::move(args), out});
  };
  add("gen-mesh", {"gen", "--pattern", "mesh", "--ratio", "0.7", "--seed", "42", "--parity-mode", "checkerboard"});
  add("gen-random", {"gen", "--pattern", "random", "--grid", "9x5", "--ratio", "0.45", "--seed", "11"});
  add("gen-square", {"gen", "--pattern", "square", "--side", "3", "--ratio", "0.6", "--seed", "5"});
  add("gen-blockwise", {"gen", "--pattern", "blockwise", "--grid", "14x14", "--ratio", "0.4", "--seed", "8",
                        "--aspect-high", "2.5"});
  add("apply", {"apply", "--image", big, "--mask", mask, "--patch-size", "32", "--fill", "7"});
  add("occlusion", {"occlusion", "--pattern", "random", "--ratio", "0.6", "--region", "2x3", "--at", "1,2",
                    "--mode", "both", "--trials", "5000", "--threads", "3", "--seed", "9"});
  add("compare", {"compare", "--ratios", "0.6,0.8", "--regions", "1x1,2x2"});
  add("stats", {"stats", "--pattern", "square", "--ratio", "0.5", "--trials", "300", "--seed", "4"});
  add("propagate", {"propagate", "--mask", mask, "--mode", "dense", "--stages", "2", "--layers", "2",
                    "--frames", dir.file("frames.txt")});
  add("metrics", {"metrics", "--csv", predictions_csv});
  add("weights", {"weights", "--n0", "1258", "--n1", "166", "--timestamp", "1700000000"});
  add("mixup", {"augment", "mixup", "--a", a, "--b", b, "--alpha", "0.4", "--seed", "12"});
  add("cutmix", {"augment", "cutmix", "--a", a, "--b", b, "--alpha", "1", "--seed", "13", "--format", "binary"});
  add("crop", {"augment", "crop", "--image", a, "--size", "32", "--seed", "14"});
  add("flip", {"augment", "flip", "--image", a, "--p", "0.5", "--seed", "15"});
  add("lambda", {"augment", "lambda", "--alpha", "0.2", "--count", "5", "--seed", "16"});
  return cases;
}

}  // namespace harness
