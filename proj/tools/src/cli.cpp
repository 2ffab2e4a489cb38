#include "maskkit/cli/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "maskkit/augment.hpp"
#include "maskkit/cli/manifest.hpp"
#include "maskkit/error.hpp"
#include "maskkit/format.hpp"
#include "maskkit/grid.hpp"
#include "maskkit/metrics.hpp"
#include "maskkit/occlusion.hpp"
#include "maskkit/patterns.hpp"
#include "maskkit/pnm.hpp"
#include "maskkit/propagation.hpp"
#include "maskkit/rng.hpp"

#ifndef MASKKIT_VERSION
#define MASKKIT_VERSION "0.0.0"
#endif

namespace maskkit::cli {

const char* version() noexcept { return MASKKIT_VERSION; }

namespace {

// A bad flag value. The message starts with the flag name.
class FlagError : public std::runtime_error {
 public:
  FlagError(std::string_view flag, const std::string& what)
      : std::runtime_error(std::string(flag) + ": " + what) {}
};

template <class F>
auto for_flag(std::string_view flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw FlagError(flag, std::string(e.what()) + " (" + std::string(to_string(e.code())) + ")");
  }
}

struct Common {
  std::uint64_t seed = 0;
  long long timestamp = 0;
  std::string out;
};

struct PatternFlags {
  std::string pattern;
  std::string grid = "7x7";
  double ratio = 0.6;
  int side = 2;
  int min_area = 4;
  double aspect_low = 0.3;
  double aspect_high = 1.0 / 0.3;
  std::string rounding = "floor";
  std::string parity_mode = "linear";
};

std::uint64_t env_seed() {
  const char* s = std::getenv("MASKKIT_SEED");
  if (s == nullptr || *s == '\0') return 0;
  return for_flag("MASKKIT_SEED", [&] { return parse_unsigned(s, "MASKKIT_SEED"); });
}

long long env_timestamp() {
  const char* s = std::getenv("SOURCE_DATE_EPOCH");
  if (s == nullptr || *s == '\0') return 0;
  return for_flag("SOURCE_DATE_EPOCH", [&] { return parse_integer(s, "SOURCE_DATE_EPOCH"); });
}

void add_common(CLI::App* sub, Common& c, bool with_out = true) {
  sub->add_option("--seed", c.seed, "RNG seed (default: MASKKIT_SEED or 0)")->capture_default_str();
  sub->add_option("--timestamp", c.timestamp,
                  "Timestamp recorded in the manifest (default: SOURCE_DATE_EPOCH or 0)")
      ->capture_default_str();
  if (with_out) sub->add_option("-o,--out", c.out, "Output path (default: standard output)");
}

void add_pattern_flags(CLI::App* sub, PatternFlags& p) {
  sub->add_option("--pattern", p.pattern, "mesh, random, square or blockwise")
      ->required()
      ->check(CLI::IsMember({"mesh", "random", "square", "blockwise"}));
  sub->add_option("--grid", p.grid, "Patch lattice COLSxROWS")->capture_default_str();
  sub->add_option("--ratio", p.ratio, "Mask ratio")->capture_default_str();
  sub->add_option("--side", p.side, "Square side in patches")->capture_default_str();
  sub->add_option("--min-area", p.min_area, "Minimum block area (blockwise)")->capture_default_str();
  sub->add_option("--aspect-low", p.aspect_low, "Lowest block aspect (blockwise)")->capture_default_str();
  sub->add_option("--aspect-high", p.aspect_high, "Highest block aspect (blockwise)")->capture_default_str();
  sub->add_option("--rounding", p.rounding, "Mesh keep-count rounding")
      ->check(CLI::IsMember({"floor", "half-up"}))
      ->capture_default_str();
  sub->add_option("--parity-mode", p.parity_mode, "Mesh parity classes")
      ->check(CLI::IsMember({"linear", "checkerboard"}))
      ->capture_default_str();
}

std::pair<int, int> parse_pair(std::string_view flag, const std::string& text, char sep) {
  const auto at = text.find(sep);
  if (at == std::string::npos) {
    throw FlagError(flag, std::string("expected A") + sep + "B, got '" + text + "'");
  }
  return for_flag(flag, [&] {
    return std::pair<int, int>{static_cast<int>(parse_integer(text.substr(0, at), "first value")),
                               static_cast<int>(parse_integer(text.substr(at + 1), "second value"))};
  });
}

PatchGrid parse_grid(const std::string& text) {
  const auto [cols, rows] = parse_pair("--grid", text, 'x');
  return for_flag("--grid", [&] { return PatchGrid::lattice(cols, rows); });
}

PatternRequest build_pattern(const PatternFlags& f, std::uint64_t seed) {
  const PatchGrid grid = parse_grid(f.grid);
  PatternSpec spec;
  if (f.pattern == "mesh") {
    MeshSpec m{f.ratio};
    m.rounding = f.rounding == "half-up" ? KeepRounding::half_up : KeepRounding::floor;
    m.parity_mode = f.parity_mode == "checkerboard" ? ParityMode::checkerboard : ParityMode::linear;
    spec = m;
  } else if (f.pattern == "random") {
    spec = RandomSpec{f.ratio};
  } else if (f.pattern == "square") {
    spec = SquareSpec{f.side, f.ratio};
  } else {
    if (f.min_area < 1) throw FlagError("--min-area", "minimum block area must be >= 1");
    if (!(f.aspect_low > 0.0 && f.aspect_low <= 1.0)) {
      throw FlagError("--aspect-low", "must lie in (0, 1]");
    }
    if (!(f.aspect_high >= 1.0 && std::isfinite(f.aspect_high))) {
      throw FlagError("--aspect-high", "must be finite and >= 1");
    }
    spec = BlockWiseSpec{f.ratio, f.min_area, f.aspect_low, f.aspect_high};
  }
  try {
    validate(spec, grid);
  } catch (const Error& e) {
    const std::string msg = std::string(e.what()) + " (" + std::string(to_string(e.code())) + ")";
    if (e.code() == Errc::impossible_geometry) throw FlagError("--side", msg);
    throw FlagError("--ratio", msg);
  }
  return PatternRequest{spec, grid, seed};
}

void finish(Manifest& m, const Common& c) {
  m.set("seed", std::to_string(c.seed));
  m.set("version", version());
  m.set("rng", std::string(Rng::kName));
  m.set("timestamp", std::to_string(c.timestamp));
}

std::string comment_line(const Manifest& m) { return "# " + m.line() + "\n"; }

void emit(const std::string& path, std::string_view bytes, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << bytes;
  } else {
    for_flag("--out", [&] { pnm::write_file(path, bytes); });
  }
}

pnm::ImageFile load_image(std::string_view flag, const std::string& path) {
  return for_flag(flag, [&] { return pnm::read_pgm(path); });
}

pnm::GrayFormat resolve_format(const std::string& choice, pnm::GrayFormat input) {
  if (choice == "plain") return pnm::GrayFormat::plain;
  if (choice == "binary") return pnm::GrayFormat::binary;
  return input;
}

std::string_view format_name(pnm::GrayFormat f) {
  return f == pnm::GrayFormat::plain ? "plain" : "binary";
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

std::string box_text(int x, int y, int w, int h) {
  return std::to_string(x) + ',' + std::to_string(y) + ',' + std::to_string(w) + ',' + std::to_string(h);
}

// ---- commands ---------------------------------------------------------------

struct GenCmd {
  Common common;
  PatternFlags pattern;

  void attach(CLI::App& app, std::ostream& out) {
    auto* sub = app.add_subcommand("gen", "Generate a mask and write it as a P1 bitmap");
    add_pattern_flags(sub, pattern);
    add_common(sub, common);
    sub->callback([this, &out] { exec(out); });
  }

  void exec(std::ostream& out) const {
    const PatternRequest req = build_pattern(pattern, common.seed);
    const MaskMap mask = generate(req.spec, req.grid, req.seed);
    Manifest m("gen");
    m.set_tokens(describe(req.spec, req.grid, req.seed));
    finish(m, common);
    const std::vector<std::string> comments{m.line()};
    emit(common.out, pnm::encode_pbm(mask, comments), out);
  }
};

struct ApplyCmd {
  Common common;
  std::string image;
  std::string mask;
  int patch_size = 0;
  int fill = 0;
  std::string format = "same";

  void attach(CLI::App& app, std::ostream& out) {
    auto* sub = app.add_subcommand("apply", "Fill the masked patches of a graymap");
    sub->add_option("--image", image, "Input P2/P5 graymap")->required();
    sub->add_option("--mask", mask, "P1/P4 mask, one bit per patch")->required();
    sub->add_option("--patch-size", patch_size, "Patch side in pixels")->required();
    sub->add_option("--fill", fill, "Value written into masked patches")->capture_default_str();
    sub->add_option("--format", format, "Output encoding")
        ->check(CLI::IsMember({"same", "plain", "binary"}))
        ->capture_default_str();
    add_common(sub, common);
    sub->callback([this, &out] { exec(out); });
  }

  void exec(std::ostream& out) const {
    const pnm::ImageFile img = load_image("--image", image);
    const pnm::MaskFile mf = for_flag("--mask", [&] { return pnm::read_pbm(mask); });
    const PatchGrid grid = for_flag("--patch-size", [&] {
      return partition(img.image.width, img.image.height, patch_size);
    });
    if (grid.cols() != mf.mask.grid().cols() || grid.rows() != mf.mask.grid().rows()) {
      throw FlagError("--mask", "mask is " + std::to_string(mf.mask.grid().cols()) + "x" +
                                    std::to_string(mf.mask.grid().rows()) + " but the image at patch size " +
                                    std::to_string(patch_size) + " has " + std::to_string(grid.cols()) +
                                    "x" + std::to_string(grid.rows()) + " patches (geometry-mismatch)");
    }
    if (fill < 0 || fill > img.image.max_value) {
      throw FlagError("--fill", "must lie in [0, " + std::to_string(img.image.max_value) + "]");
    }
    const MaskMap m(grid, mf.mask.to_bytes());
    const GrayImage result = apply_mask(img.image, m, static_cast<std::uint16_t>(fill));
    const pnm::GrayFormat fmt = resolve_format(format, img.format);

    Manifest man("apply");
    man.set("image", image);
    man.set("mask", mask);
    man.set("patch_size", std::to_string(patch_size));
    man.set("fill", std::to_string(fill));
    man.set("format", std::string(format_name(fmt)));
    finish(man, common);
    const std::vector<std::string> comments{man.line()};
    emit(common.out, pnm::encode_pgm(result, fmt, comments), out);
  }
};

struct OcclusionCmd {
  Common common;
  PatternFlags pattern;
  std::string region = "2x2";
  std::string at = "0,0";
  std::string mode = "exact";
  std::uint64_t trials = 100000;
  unsigned threads = 1;

  void attach(CLI::App& app, std::ostream& out) {
    auto* sub = app.add_subcommand("occlusion", "Probability that a region is fully masked");
    add_pattern_flags(sub, pattern);
    sub->add_option("--region", region, "Region size WxH in patches")->capture_default_str();
    sub->add_option("--at", at, "Region origin X,Y")->capture_default_str();
    sub->add_option("--mode", mode, "exact, mc or both")
        ->check(CLI::IsMember({"exact", "mc", "both"}))
        ->capture_default_str();
    sub->add_option("--trials", trials, "Monte-Carlo trials")->capture_default_str();
    sub->add_option("--threads", threads, "Monte-Carlo worker threads")->capture_default_str();
    add_common(sub, common);
    sub->callback([this, &out] { exec(out); });
  }

  void exec(std::ostream& out) const {
    const PatternRequest req = build_pattern(pattern, common.seed);
    const auto [w, h] = parse_pair("--region", region, 'x');
    const auto [x, y] = parse_pair("--at", at, ',');
    const Region r{x, y, w, h};
    for_flag("--region", [&] { validate_region(req.grid, r); });
    if (trials < 1) throw FlagError("--trials", "must be >= 1");
    if (threads < 1) throw FlagError("--threads", "must be >= 1");

    Manifest m("occlusion");
    m.set_tokens(describe(req.spec, req.grid, req.seed));
    m.set("region", region);
    m.set("at", at);
    m.set("mode", mode);
    m.set("trials", std::to_string(trials));
    m.set("threads", std::to_string(threads));
    finish(m, common);

    const std::string name(pattern_name(req.spec));
    const std::string prefix = name + ',' + format_double(pattern_ratio(req.spec)) + ',' +
                               std::to_string(w) + ',' + std::to_string(h) + ',';
    std::string csv = comment_line(m) + "pattern,ratio,region_w,region_h,method,probability,stderr,trials,seed\n";
    if (mode != "mc") {
      OcclusionEstimate e;
      if (const auto* mesh = std::get_if<MeshSpec>(&req.spec)) {
        e = exact_mesh_occlusion(req.grid, *mesh, r);
      } else if (std::holds_alternative<RandomSpec>(req.spec)) {
        e = exact_random_occlusion(req.grid, pattern_ratio(req.spec), r);
      } else {
        throw FlagError("--mode", "exact probabilities exist only for mesh and random patterns");
      }
      csv += prefix + "exact," + format_double(e.probability) + ",0,0,\n";
    }
    if (mode != "exact") {
      const OcclusionEstimate e = mc_occlusion(req.spec, req.grid, r, trials, req.seed, threads);
      csv += prefix + "mc," + format_double(e.probability) + ',' + format_double(e.std_error) + ',' +
             std::to_string(e.trials) + ',' + std::to_string(req.seed) + '\n';
    }
    emit(common.out, csv, out);
  }
};

struct CompareCmd {
  Common common;
  std::string grid = "7x7";
  std::vector<double> ratios{0.5, 0.6, 0.7, 0.8};
  std::string regions = "all";
  std::string at = "0,0";

  void attach(CLI::App& app, std::ostream& out) {
    auto* sub = app.add_subcommand("compare", "Mesh against random occlusion, nominal and count-matched");
    sub->add_option("--grid", grid, "Patch lattice COLSxROWS")->capture_default_str();
    sub->add_option("--ratios", ratios, "Comma-separated mask ratios")->delimiter(',')->capture_default_str();
    sub->add_option("--regions", regions, "Comma-separated WxH sizes, or all")->capture_default_str();
    sub->add_option("--at", at, "Region origin X,Y")->capture_default_str();
    add_common(sub, common);
    sub->callback([this, &out] { exec(out); });
  }

  void exec(std::ostream& out) const {
    const PatchGrid g = parse_grid(grid);
    const auto [x, y] = parse_pair("--at", at, ',');
    std::vector<Region> rs;
    if (regions == "all") {
      for (int h = 1; y + h <= g.rows(); ++h) {
        for (int w = 1; x + w <= g.cols(); ++w) rs.push_back(Region{x, y, w, h});
      }
      if (rs.empty()) throw FlagError("--at", "origin lies outside the grid");
    } else {
      std::size_t start = 0;
      while (start <= regions.size()) {
        auto comma = regions.find(',', start);
        if (comma == std::string::npos) comma = regions.size();
        const auto [w, h] = parse_pair("--regions", regions.substr(start, comma - start), 'x');
        rs.push_back(Region{x, y, w, h});
        start = comma + 1;
      }
    }
    for (const auto& r : rs) for_flag("--regions", [&] { validate_region(g, r); });
    for (double ratio : ratios) {
      for_flag("--ratios", [&] { validate(MeshSpec{ratio}, g); });
    }

    Manifest m("compare");
    m.set("grid", grid);
    m.set("ratios", join_doubles(ratios));
    m.set("regions", regions);
    m.set("at", at);
    finish(m, common);

    std::string csv = comment_line(m) +
                      "ratio,region_w,region_h,mesh_masked,mesh_probability,random_masked,"
                      "random_probability,random_matched_probability\n";
    for (double ratio : ratios) {
      for (const auto& r : rs) {
        const OcclusionComparison c = compare_mesh_random(g, ratio, r);
        csv += format_double(ratio) + ',' + std::to_string(r.w) + ',' + std::to_string(r.h) + ',' +
               std::to_string(c.mesh_masked) + ',' + format_double(c.mesh) + ',' +
               std::to_string(c.random_nominal_masked) + ',' + format_double(c.random_nominal) + ',' +
               format_double(c.random_count_matched) + '\n';
      }
    }
    emit(common.out, csv, out);
  }
};

struct StatsCmd {
  Common common;
  PatternFlags pattern;
  std::uint64_t trials = 10000;
  unsigned threads = 1;

  void attach(CLI::App& app, std::ostream& out) {
    auto* sub = app.add_subcommand("stats", "Per-patch masking frequency over many draws");
    add_pattern_flags(sub, pattern);
    sub->add_option("--trials", trials, "Number of masks drawn")->capture_default_str();
    sub->add_option("--threads", threads, "Worker threads")->capture_default_str();
    add_common(sub, common);
    sub->callback([this, &out] { exec(out); });
  }

  void exec(std::ostream& out) const {
    const PatternRequest req = build_pattern(pattern, common.seed);
    if (trials < 1) throw FlagError("--trials", "must be >= 1");
    if (threads < 1) throw FlagError("--threads", "must be >= 1");
    const FrequencyGrid f = patch_mask_frequency(req.spec, req.grid, trials, req.seed, threads);

    Manifest m("stats");
    m.set_tokens(describe(req.spec, req.grid, req.seed));
    m.set("trials", std::to_string(trials));
    m.set("threads", std::to_string(threads));
    finish(m, common);

    std::string csv = comment_line(m) + "row";
    for (int c = 0; c < f.cols; ++c) csv += ",c" + std::to_string(c);
    csv += '\n';
    for (int r = 0; r < f.rows; ++r) {
      csv += std::to_string(r);
      for (int c = 0; c < f.cols; ++c) csv += ',' + format_double(f.at(c, r));
      csv += '\n';
    }
    emit(common.out, csv, out);
  }
};

struct PropagateCmd {
  Common common;
  std::string mask;
  std::string mode = "dense";
  int stages = 1;
  int layers = 2;
  int radius = 1;
  std::string frames;

  void attach(CLI::App& app, std::ostream& out) {
    auto* sub = app.add_subcommand("propagate", "Track active support through a convolution stack");
    sub->add_option("--mask", mask, "P1/P4 mask")->required();
    sub->add_option("--mode", mode, "dense or sparse")
        ->check(CLI::IsMember({"dense", "sparse"}))
        ->capture_default_str();
    sub->add_option("--stages", stages, "Resolution stages")->capture_default_str();
    sub->add_option("--layers", layers, "Layers per stage")->capture_default_str();
    sub->add_option("--radius", radius, "Kernel radius")->capture_default_str();
    sub->add_option("--frames", frames, "Also write per-layer support grids to this file");
    add_common(sub, common);
    sub->callback([this, &out] { exec(out); });
  }

  void exec(std::ostream& out) const {
    const pnm::MaskFile mf = for_flag("--mask", [&] { return pnm::read_pbm(mask); });
    StageStack stack{stages, layers, radius};
    if (stages < 1) throw FlagError("--stages", "must be >= 1");
    if (layers < 1) throw FlagError("--layers", "must be >= 1");
    for_flag("--radius", [&] { stack.validate(); });
    const auto trace = propagate(mf.mask, stack, mode == "sparse" ? PropagationMode::sparse : PropagationMode::dense);

    Manifest m("propagate");
    m.set("mask", mask);
    m.set("mode", mode);
    m.set("stages", std::to_string(stages));
    m.set("layers", std::to_string(layers));
    m.set("radius", std::to_string(radius));
    if (!frames.empty()) m.set("frames", frames);
    finish(m, common);

    std::string csv = comment_line(m) + "layer,active_count,is_full\n";
    for (const auto& l : trace) {
      csv += std::to_string(l.layer) + ',' + std::to_string(l.support.active_count()) + ',' +
             (l.support.is_full() ? "1" : "0") + '\n';
    }
    if (!frames.empty()) {
      std::string text = comment_line(m);
      for (const auto& l : trace) {
        text += "layer " + std::to_string(l.layer) + " stage " + std::to_string(l.stage) + " active " +
                std::to_string(l.support.active_count()) + "/" +
                std::to_string(l.support.cols * l.support.rows) + '\n';
        text += render_frame(l.support) + '\n';
      }
      for_flag("--frames", [&] { pnm::write_file(frames, text); });
    }
    emit(common.out, csv, out);
  }
};

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

ConfusionCounts read_prediction_csv(const std::string& path) {
  const std::string body = for_flag("--csv", [&] { return pnm::read_file(path); });
  std::vector<int> truth;
  std::vector<int> pred;
  std::size_t pos = 0;
  int line_no = 0;
  bool seen_data = false;
  while (pos < body.size()) {
    std::size_t end = body.find('\n', pos);
    if (end == std::string::npos) end = body.size();
    const std::string line = trim(std::string_view(body).substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto where = path + ":" + std::to_string(line_no);
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw FlagError("--csv", where + ": expected two columns truth,pred");
    }
    const std::string a = trim(std::string_view(line).substr(0, comma));
    const std::string b = trim(std::string_view(line).substr(comma + 1));
    auto bit = [&](const std::string& v) -> int {
      if (v == "0") return 0;
      if (v == "1") return 1;
      return -1;
    };
    if (!seen_data && (bit(a) < 0 || bit(b) < 0) && !a.empty() && !std::isdigit(static_cast<unsigned char>(a[0]))) {
      seen_data = true;  // header row
      continue;
    }
    seen_data = true;
    if (bit(a) < 0 || bit(b) < 0) throw FlagError("--csv", where + ": labels must be 0 or 1");
    truth.push_back(bit(a));
    pred.push_back(bit(b));
  }
  return for_flag("--csv", [&] { return confusion_from_pairs(truth, pred); });
}

struct MetricsCmd {
  Common common;
  std::string csv;
  std::string counts;

  void attach(CLI::App& app, std::ostream& out) {
    auto* sub = app.add_subcommand("metrics", "Accuracy, precision, recall and F1 as one-decimal percentages");
    auto* c = sub->add_option("--csv", csv, "Two-column CSV of truth,pred labels (0/1)");
    auto* k = sub->add_option("--counts", counts, "Confusion counts TP,FP,TN,FN");
    c->excludes(k);
    add_common(sub, common);
    sub->callback([this, c, k, &out] {
      if (c->count() == 0 && k->count() == 0) throw FlagError("--csv", "give --csv or --counts");
      exec(out);
    });
  }

  void exec(std::ostream& out) const {
    ConfusionCounts cc;
    Manifest m("metrics");
    if (!csv.empty()) {
      cc = read_prediction_csv(csv);
      m.set("csv", csv);
    } else {
      std::vector<std::uint64_t> v;
      std::size_t start = 0;
      while (start <= counts.size()) {
        auto comma = counts.find(',', start);
        if (comma == std::string::npos) comma = counts.size();
        v.push_back(for_flag("--counts", [&] { return parse_unsigned(counts.substr(start, comma - start), "count"); }));
        start = comma + 1;
      }
      if (v.size() != 4) throw FlagError("--counts", "expected TP,FP,TN,FN");
      cc = ConfusionCounts{v[0], v[1], v[2], v[3]};
      m.set("counts", counts);
    }
    finish(m, common);
    const std::string text = comment_line(m) + "accuracy,precision,recall,f1\n" + format_report_row(metrics(cc)) + '\n';
    emit(common.out, text, out);
  }
};

struct WeightsCmd {
  Common common;
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;

  void attach(CLI::App& app, std::ostream& out) {
    auto* sub = app.add_subcommand("weights", "Inverse-frequency class weights");
    sub->add_option("--n0", n0, "Samples of class 0")->required();
    sub->add_option("--n1", n1, "Samples of class 1")->required();
    add_common(sub, common);
    sub->callback([this, &out] { exec(out); });
  }

  void exec(std::ostream& out) const {
    if (n0 == 0) throw FlagError("--n0", "must be >= 1 (zero-count)");
    if (n1 == 0) throw FlagError("--n1", "must be >= 1 (zero-count)");
    const ClassWeights w = class_weights(n0, n1);
    Manifest m("weights");
    m.set("n0", std::to_string(n0));
    m.set("n1", std::to_string(n1));
    finish(m, common);
    auto frac = [](Fraction f) { return std::to_string(f.num) + "/" + std::to_string(f.den); };
    const std::string text = comment_line(m) + "n0,n1,w0,w1,w0_exact,w1_exact\n" + std::to_string(n0) + ',' +
                             std::to_string(n1) + ',' + format_double(w.w0) + ',' + format_double(w.w1) + ',' +
                             frac(w.w0_exact()) + ',' + frac(w.w1_exact()) + '\n';
    emit(common.out, text, out);
  }
};

// Labels for the two-source augmentations: one-hot class indices mixed by lambda.
struct LabelFlags {
  std::size_t classes = 2;
  std::size_t label_a = 0;
  std::size_t label_b = 1;

  void attach(CLI::App* sub) {
    sub->add_option("--classes", classes, "Number of classes")->capture_default_str();
    sub->add_option("--label-a", label_a, "Class of the first image")->capture_default_str();
    sub->add_option("--label-b", label_b, "Class of the second image")->capture_default_str();
  }

  void record(Manifest& m) const {
    m.set("classes", std::to_string(classes));
    m.set("label_a", std::to_string(label_a));
    m.set("label_b", std::to_string(label_b));
  }

  std::string mixed(double lambda) const {
    const LabelVec a = for_flag("--label-a", [&] { return LabelVec::one_hot(classes, label_a); });
    const LabelVec b = for_flag("--label-b", [&] { return LabelVec::one_hot(classes, label_b); });
    return join_doubles(mix_labels(a, b, MixCoefficient(lambda)).probs);
  }
};

std::string require_out(const Common& c) {
  if (c.out.empty() || c.out == "-") throw FlagError("--out", "an output image path is required");
  return c.out;
}

struct MixupCmd {
  Common common;
  LabelFlags labels;
  std::string a;
  std::string b;
  double lambda = 0.5;
  double alpha = 1.0;
  std::string format = "same";
  CLI::Option* lambda_opt = nullptr;

  void attach(CLI::App* aug, std::ostream& out) {
    auto* sub = aug->add_subcommand("mixup", "Blend two graymaps");
    sub->add_option("--a", a, "First graymap")->required();
    sub->add_option("--b", b, "Second graymap")->required();
    lambda_opt = sub->add_option("--lambda", lambda, "Fixed mixing coefficient");
    auto* al = sub->add_option("--alpha", alpha, "Draw lambda from Beta(alpha, alpha)");
    lambda_opt->excludes(al);
    sub->add_option("--format", format, "Output encoding")
        ->check(CLI::IsMember({"same", "plain", "binary"}))
        ->capture_default_str();
    labels.attach(sub);
    add_common(sub, common);
    sub->callback([this, al, &out] {
      if (lambda_opt->count() == 0 && al->count() == 0) throw FlagError("--alpha", "give --lambda or --alpha");
      exec(out);
    });
  }

  void exec(std::ostream& out) const {
    const pnm::ImageFile ia = load_image("--a", a);
    const pnm::ImageFile ib = load_image("--b", b);
    const bool fixed = lambda_opt->count() > 0;
    const double lam = fixed ? for_flag("--lambda", [&] { return MixCoefficient(lambda).value(); })
                             : for_flag("--alpha", [&] { return sample_lambda(alpha, common.seed).value(); });
    const GrayImage mixed = for_flag("--b", [&] { return mixup_pixels(ia.image, ib.image, MixCoefficient(lam)); });
    const std::string label = labels.mixed(lam);
    const pnm::GrayFormat fmt = resolve_format(format, ia.format);

    Manifest m("augment.mixup");
    m.set("a", a);
    m.set("b", b);
    if (fixed) {
      m.set("lambda", format_double(lambda));
    } else {
      m.set("alpha", format_double(alpha));
    }
    m.set("format", std::string(format_name(fmt)));
    labels.record(m);
    finish(m, common);
    const std::vector<std::string> comments{m.line()};
    emit(require_out(common), pnm::encode_pgm(mixed, fmt, comments), out);
    out << comment_line(m) << "lambda=" << format_double(lam) << "\nseed=" << common.seed << "\nlabel=" << label
        << '\n';
  }
};

struct CutmixCmd {
  Common common;
  LabelFlags labels;
  std::string a;
  std::string b;
  double alpha = 1.0;
  std::string format = "same";

  void attach(CLI::App* aug, std::ostream& out) {
    auto* sub = aug->add_subcommand("cutmix", "Paste a box of one graymap into another");
    sub->add_option("--a", a, "Base graymap")->required();
    sub->add_option("--b", b, "Graymap the box is cut from")->required();
    sub->add_option("--alpha", alpha, "Beta(alpha, alpha) parameter")->required();
    sub->add_option("--format", format, "Output encoding")
        ->check(CLI::IsMember({"same", "plain", "binary"}))
        ->capture_default_str();
    labels.attach(sub);
    add_common(sub, common);
    sub->callback([this, &out] { exec(out); });
  }

  void exec(std::ostream& out) const {
    const pnm::ImageFile ia = load_image("--a", a);
    const pnm::ImageFile ib = load_image("--b", b);
    for_flag("--alpha", [&] { (void)sample_lambda(alpha, 0); });
    const CutMixResult r = for_flag("--b", [&] { return cutmix(ia.image, ib.image, alpha, common.seed); });
    const std::string label = labels.mixed(r.lambda);
    const pnm::GrayFormat fmt = resolve_format(format, ia.format);

    Manifest m("augment.cutmix");
    m.set("a", a);
    m.set("b", b);
    m.set("alpha", format_double(alpha));
    m.set("format", std::string(format_name(fmt)));
    labels.record(m);
    finish(m, common);
    const std::vector<std::string> comments{m.line()};
    emit(require_out(common), pnm::encode_pgm(r.image, fmt, comments), out);
    out << comment_line(m) << "lambda=" << format_double(r.lambda)
        << "\nsampled_lambda=" << format_double(r.sampled_lambda)
        << "\nbox=" << box_text(r.box.x, r.box.y, r.box.w, r.box.h) << "\nseed=" << common.seed
        << "\nlabel=" << label << '\n';
  }
};

struct CropCmd {
  Common common;
  std::string image;
  CropSpec spec;
  std::string format = "same";

  void attach(CLI::App* aug, std::ostream& out) {
    auto* sub = aug->add_subcommand("crop", "Random resized crop");
    sub->add_option("--image", image, "Input graymap")->required();
    sub->add_option("--scale-low", spec.scale_low, "Smallest area fraction")->capture_default_str();
    sub->add_option("--scale-high", spec.scale_high, "Largest area fraction")->capture_default_str();
    sub->add_option("--aspect-low", spec.aspect_low, "Smallest aspect ratio")->capture_default_str();
    sub->add_option("--aspect-high", spec.aspect_high, "Largest aspect ratio")->capture_default_str();
    sub->add_option("--size", spec.out_size, "Output side in pixels")->capture_default_str();
    sub->add_option("--format", format, "Output encoding")
        ->check(CLI::IsMember({"same", "plain", "binary"}))
        ->capture_default_str();
    add_common(sub, common);
    sub->callback([this, &out] { exec(out); });
  }

  void exec(std::ostream& out) const {
    const pnm::ImageFile img = load_image("--image", image);
    try {
      spec.validate();
    } catch (const Error& e) {
      if (spec.out_size < 1) throw FlagError("--size", e.what());
      if (!(spec.scale_low > 0.0 && spec.scale_low <= spec.scale_high && spec.scale_high <= 1.0)) {
        throw FlagError("--scale-low", e.what());
      }
      throw FlagError("--aspect-low", e.what());
    }
    Rng rng(common.seed);
    const CropBox box = sample_crop_box(img.image.width, img.image.height, spec, rng);
    const GrayImage result = resize_bilinear(img.image, box, spec.out_size, spec.out_size);
    const pnm::GrayFormat fmt = resolve_format(format, img.format);

    Manifest m("augment.crop");
    m.set("image", image);
    m.set("scale_low", format_double(spec.scale_low));
    m.set("scale_high", format_double(spec.scale_high));
    m.set("aspect_low", format_double(spec.aspect_low));
    m.set("aspect_high", format_double(spec.aspect_high));
    m.set("size", std::to_string(spec.out_size));
    m.set("format", std::string(format_name(fmt)));
    finish(m, common);
    const std::vector<std::string> comments{m.line()};
    emit(require_out(common), pnm::encode_pgm(result, fmt, comments), out);
    out << comment_line(m) << "box=" << box_text(box.x, box.y, box.w, box.h)
        << "\nfallback=" << (box.fallback ? 1 : 0) << "\nseed=" << common.seed << '\n';
  }
};

struct FlipCmd {
  Common common;
  std::string image;
  double p = 0.5;
  std::string format = "same";

  void attach(CLI::App* aug, std::ostream& out) {
    auto* sub = aug->add_subcommand("flip", "Horizontal flip with probability p");
    sub->add_option("--image", image, "Input graymap")->required();
    sub->add_option("--p", p, "Flip probability")->capture_default_str();
    sub->add_option("--format", format, "Output encoding")
        ->check(CLI::IsMember({"same", "plain", "binary"}))
        ->capture_default_str();
    add_common(sub, common);
    sub->callback([this, &out] { exec(out); });
  }

  void exec(std::ostream& out) const {
    const pnm::ImageFile img = load_image("--image", image);
    if (!(p >= 0.0 && p <= 1.0)) throw FlagError("--p", "must lie in [0, 1]");
    const FlipResult r = random_flip(img.image, p, common.seed);
    const pnm::GrayFormat fmt = resolve_format(format, img.format);

    Manifest m("augment.flip");
    m.set("image", image);
    m.set("p", format_double(p));
    m.set("format", std::string(format_name(fmt)));
    finish(m, common);
    const std::vector<std::string> comments{m.line()};
    emit(require_out(common), pnm::encode_pgm(r.image, fmt, comments), out);
    out << comment_line(m) << "flipped=" << (r.flipped ? 1 : 0) << "\nseed=" << common.seed << '\n';
  }
};

struct LambdaCmd {
  Common common;
  double alpha = 1.0;
  std::uint64_t count = 1;

  void attach(CLI::App* aug, std::ostream& out) {
    auto* sub = aug->add_subcommand("lambda", "Draw mixing coefficients from Beta(alpha, alpha)");
    sub->add_option("--alpha", alpha, "Beta parameter")->required();
    sub->add_option("--count", count, "Number of draws")->capture_default_str();
    add_common(sub, common);
    sub->callback([this, &out] { exec(out); });
  }

  void exec(std::ostream& out) const {
    Manifest m("augment.lambda");
    m.set("alpha", format_double(alpha));
    m.set("count", std::to_string(count));
    finish(m, common);
    Rng rng(common.seed);
    std::string text = comment_line(m) + "seed=" + std::to_string(common.seed) + '\n';
    for (std::uint64_t i = 0; i < count; ++i) {
      text += "lambda=" + format_double(for_flag("--alpha", [&] { return sample_lambda(alpha, rng).value(); })) + '\n';
    }
    emit(common.out, text, out);
  }
};

struct ReplayCmd {
  std::string file;
  std::string out_path;

  void attach(CLI::App& app, std::ostream& out, std::ostream& err) {
    auto* sub = app.add_subcommand("replay", "Re-run the command recorded in an output's manifest");
    sub->add_option("file", file, "Any maskkit output")->required();
    sub->add_option("-o,--out", out_path, "Output path for the re-run");
    sub->callback([this, &out, &err] { exec(out, err); });
  }

  void exec(std::ostream& out, std::ostream& err) const {
    const std::string body = for_flag("file", [&] { return pnm::read_file(file); });
    const auto m = for_flag("file", [&] { return Manifest::find(body); });
    if (!m) throw FlagError("file", "no manifest line in '" + file + "'");
    if (m->command() == "replay") throw FlagError("file", "manifest records a replay");
    if (auto v = m->get("version"); v && *v != version()) {
      err << "warning: recorded with maskkit " << *v << ", running " << version() << '\n';
    }
    std::vector<std::string> args = m->to_args();
    if (!out_path.empty()) {
      args.push_back("--out");
      args.push_back(out_path);
    }
    code = run(args, out, err);
  }

  mutable int code = kExitOk;
};

struct Commands {
  GenCmd gen;
  ApplyCmd apply;
  OcclusionCmd occlusion;
  CompareCmd compare;
  StatsCmd stats;
  PropagateCmd propagate;
  MetricsCmd metrics;
  WeightsCmd weights;
  MixupCmd mixup;
  CutmixCmd cutmix;
  CropCmd crop;
  FlipCmd flip;
  LambdaCmd lambda;
  ReplayCmd replay;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mask pattern toolkit for masked image modeling", "maskkit"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  Commands cmds;
  try {
    const std::uint64_t seed = env_seed();
    const long long ts = env_timestamp();
    for (Common* c : {&cmds.gen.common, &cmds.apply.common, &cmds.occlusion.common, &cmds.compare.common,
                      &cmds.stats.common, &cmds.propagate.common, &cmds.metrics.common, &cmds.weights.common,
                      &cmds.mixup.common, &cmds.cutmix.common, &cmds.crop.common, &cmds.flip.common,
                      &cmds.lambda.common}) {
      c->seed = seed;
      c->timestamp = ts;
    }

    cmds.gen.attach(app, out);
    cmds.apply.attach(app, out);
    cmds.occlusion.attach(app, out);
    cmds.compare.attach(app, out);
    cmds.stats.attach(app, out);
    cmds.propagate.attach(app, out);
    cmds.metrics.attach(app, out);
    cmds.weights.attach(app, out);
    auto* aug = app.add_subcommand("augment", "Mixup, CutMix, cropping and flipping on graymaps");
    aug->require_subcommand(1);
    cmds.mixup.attach(aug, out);
    cmds.cutmix.attach(aug, out);
    cmds.crop.attach(aug, out);
    cmds.flip.attach(aug, out);
    cmds.lambda.attach(aug, out);
    cmds.replay.attach(app, out, err);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }
    out.flush();
    return cmds.replay.code;
  } catch (const FlagError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << " (" << to_string(e.code()) << ")\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace maskkit::cli
