#include "maskkit/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "maskkit/error.hpp"
#include "maskkit/format.hpp"

namespace maskkit {

namespace {

// Guard against a pathological block-wise configuration looping forever.
constexpr int kMaxPlacements = 1'000'000;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string_view to_string(KeepRounding r) { return r == KeepRounding::floor ? "floor" : "half-up"; }
std::string_view to_string(ParityMode m) { return m == ParityMode::linear ? "linear" : "checkerboard"; }

}  // namespace

ParityClass::ParityClass(int parity) : value(parity) {
  if (parity != 0 && parity != 1) {
    throw Error(Errc::invalid_parameter, "parity must be 0 or 1");
  }
}

bool CandidateSet::contains(int linear) const {
  return std::binary_search(cells.begin(), cells.end(), linear);
}

int cell_parity(const PatchGrid& grid, int linear, ParityMode mode) {
  if (mode == ParityMode::linear) return linear % 2;
  return (linear % grid.cols() + linear / grid.cols()) % 2;
}

CandidateSet mesh_candidates(const PatchGrid& grid, ParityClass parity, ParityMode mode) {
  CandidateSet set{grid, parity, {}};
  for (int i = 0; i < grid.total_patches(); ++i) {
    if (cell_parity(grid, i, mode) == parity.value) set.cells.push_back(i);
  }
  return set;
}

std::string_view pattern_name(const PatternSpec& spec) {
  return std::visit(overloaded{
                        [](const MeshSpec&) { return std::string_view("mesh"); },
                        [](const RandomSpec&) { return std::string_view("random"); },
                        [](const SquareSpec&) { return std::string_view("square"); },
                        [](const BlockWiseSpec&) { return std::string_view("blockwise"); },
                    },
                    spec);
}

double pattern_ratio(const PatternSpec& spec) {
  return std::visit([](const auto& s) { return s.ratio; }, spec);
}

void validate(const PatternSpec& spec, const PatchGrid& grid) {
  require_ratio(pattern_ratio(spec));
  std::visit(overloaded{
                 [](const MeshSpec& s) {
                   if (s.ratio < 0.5) {
                     throw Error(Errc::ratio_below_half,
                                 "mesh mask ratio must be at least 0.5, got " + format_double(s.ratio));
                   }
                 },
                 [](const RandomSpec&) {},
                 [&](const SquareSpec& s) {
                   if (s.side < 1 || s.side > std::min(grid.cols(), grid.rows())) {
                     throw Error(Errc::impossible_geometry,
                                 "square side " + std::to_string(s.side) + " does not fit a " +
                                     std::to_string(grid.cols()) + "x" + std::to_string(grid.rows()) +
                                     " grid");
                   }
                 },
                 [](const BlockWiseSpec& s) {
                   if (s.ratio <= 0.0) {
                     throw Error(Errc::ratio_out_of_range, "block-wise ratio must be in (0, 1]");
                   }
                   if (s.min_block_area < 1) {
                     throw Error(Errc::invalid_parameter, "minimum block area must be >= 1");
                   }
                   if (!(s.aspect_low > 0.0 && s.aspect_low <= 1.0 && s.aspect_high >= 1.0 &&
                         std::isfinite(s.aspect_high))) {
                     throw Error(Errc::invalid_parameter,
                                 "aspect range must satisfy 0 < low <= 1 <= high");
                   }
                 },
             },
             spec);
}

int expected_masked_count(const PatternSpec& spec, const PatchGrid& grid) {
  return std::visit(overloaded{
                        [&](const MeshSpec& s) { return target_masked_count(grid, s.ratio, s.rounding); },
                        [&](const RandomSpec& s) { return random_masked_count(grid, s.ratio); },
                        [&](const auto& s) { return target_masked_count(grid, s.ratio); },
                    },
                    spec);
}

void stamp(MaskMap& mask, const Rect& rect) {
  const PatchGrid& g = mask.grid();
  if (rect.w < 1 || rect.h < 1 || !g.contains(rect.x, rect.y) ||
      !g.contains(rect.x + rect.w - 1, rect.y + rect.h - 1)) {
    throw Error(Errc::impossible_geometry, "rectangle leaves the grid");
  }
  for (int row = rect.y; row < rect.y + rect.h; ++row) {
    for (int col = rect.x; col < rect.x + rect.w; ++col) mask.set(col, row, true);
  }
}

MeshDraw mesh_draw(const PatchGrid& grid, const MeshSpec& spec, Rng& rng) {
  validate(spec, grid);
  const ParityClass parity(rng.uniform() > 0.5 ? 0 : 1);
  const CandidateSet candidates = mesh_candidates(grid, parity, spec.parity_mode);
  const int keep = keep_count(grid, spec.ratio, spec.rounding);
  if (keep > static_cast<int>(candidates.cells.size())) {
    throw Error(Errc::kept_exceeds_candidates,
                "mesh mask would keep " + std::to_string(keep) + " patches but parity class " +
                    std::to_string(parity.value) + " has only " +
                    std::to_string(candidates.cells.size()) + " candidates");
  }
  const std::vector<int> kept = shuffle_prefix(candidates.cells, static_cast<std::size_t>(keep), rng);
  MaskMap mask(grid, true);
  for (int idx : kept) mask.set(idx, false);
  return MeshDraw{std::move(mask), parity};
}

MaskMap gen_mesh(const PatchGrid& grid, const MeshSpec& spec, Rng& rng) {
  return mesh_draw(grid, spec, rng).mask;
}

MaskMap gen_mesh(const PatchGrid& grid, double ratio, std::uint64_t seed) {
  Rng rng(seed);
  return gen_mesh(grid, MeshSpec{ratio}, rng);
}

MaskMap gen_random(const PatchGrid& grid, const RandomSpec& spec, Rng& rng) {
  validate(spec, grid);
  std::vector<int> all(static_cast<std::size_t>(grid.total_patches()));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  const auto chosen = shuffle_prefix(std::move(all),
                                     static_cast<std::size_t>(random_masked_count(grid, spec.ratio)), rng);
  return MaskMap::from_indices(grid, chosen);
}

MaskMap gen_random(const PatchGrid& grid, double ratio, std::uint64_t seed) {
  Rng rng(seed);
  return gen_random(grid, RandomSpec{ratio}, rng);
}

PlacementDraw square_draw(const PatchGrid& grid, const SquareSpec& spec, Rng& rng) {
  validate(spec, grid);
  const int target = target_masked_count(grid, spec.ratio);
  Rng loop = rng.split();
  PlacementDraw out{MaskMap(grid), {}};
  int masked = 0;
  while (masked < target) {
    const Rect rect{static_cast<int>(loop.between(0, grid.cols() - spec.side)),
                    static_cast<int>(loop.between(0, grid.rows() - spec.side)), spec.side, spec.side};
    stamp(out.mask, rect);
    out.placements.push_back(Placement{rect, spec.side * spec.side, 1.0});
    masked = out.mask.masked_count();
  }
  return out;
}

MaskMap gen_square(const PatchGrid& grid, const SquareSpec& spec, Rng& rng) {
  return square_draw(grid, spec, rng).mask;
}

MaskMap gen_square(const PatchGrid& grid, int side, double ratio, std::uint64_t seed) {
  Rng rng(seed);
  return gen_square(grid, SquareSpec{side, ratio}, rng);
}

PlacementDraw blockwise_draw(const PatchGrid& grid, const BlockWiseSpec& spec, Rng& rng) {
  validate(spec, grid);
  const int target = target_masked_count(grid, spec.ratio);
  const double log_lo = std::log(spec.aspect_low);
  const double log_hi = std::log(spec.aspect_high);
  Rng loop = rng.split();
  PlacementDraw out{MaskMap(grid), {}};
  int masked = 0;
  while (masked < target) {
    if (static_cast<int>(out.placements.size()) >= kMaxPlacements) {
      throw Error(Errc::invalid_parameter, "block-wise sampler did not reach its target");
    }
    const int remaining = target - masked;
    const int area = static_cast<int>(
        loop.between(spec.min_block_area, std::max(spec.min_block_area, remaining)));
    const double aspect = std::exp(loop.uniform(log_lo, log_hi));
    // Height rounds; width rounds up so that w * h >= area before clamping.
    const int h0 = std::max(1, static_cast<int>(std::lround(std::sqrt(area * aspect))));
    const int w0 = (area + h0 - 1) / h0;
    const int w = std::min(w0, grid.cols());
    const int h = std::min(h0, grid.rows());
    const Rect rect{static_cast<int>(loop.between(0, grid.cols() - w)),
                    static_cast<int>(loop.between(0, grid.rows() - h)), w, h};
    stamp(out.mask, rect);
    out.placements.push_back(Placement{rect, area, aspect});
    masked = out.mask.masked_count();
  }
  return out;
}

MaskMap gen_blockwise(const PatchGrid& grid, const BlockWiseSpec& spec, Rng& rng) {
  return blockwise_draw(grid, spec, rng).mask;
}

MaskMap gen_blockwise(const PatchGrid& grid, const BlockWiseSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return gen_blockwise(grid, spec, rng);
}

MaskMap generate(const PatternSpec& spec, const PatchGrid& grid, Rng& rng) {
  return std::visit(overloaded{
                        [&](const MeshSpec& s) { return gen_mesh(grid, s, rng); },
                        [&](const RandomSpec& s) { return gen_random(grid, s, rng); },
                        [&](const SquareSpec& s) { return gen_square(grid, s, rng); },
                        [&](const BlockWiseSpec& s) { return gen_blockwise(grid, s, rng); },
                    },
                    spec);
}

MaskMap generate(const PatternSpec& spec, const PatchGrid& grid, std::uint64_t seed) {
  Rng rng(seed);
  return generate(spec, grid, rng);
}

std::string describe(const PatternSpec& spec, const PatchGrid& grid, std::uint64_t seed) {
  std::ostringstream os;
  os << "pattern=" << pattern_name(spec) << " grid=" << grid.cols() << 'x' << grid.rows()
     << " ratio=" << format_double(pattern_ratio(spec)) << " seed=" << seed;
  std::visit(overloaded{
                 [&](const MeshSpec& s) {
                   os << " rounding=" << to_string(s.rounding) << " parity_mode=" << to_string(s.parity_mode);
                 },
                 [](const RandomSpec&) {},
                 [&](const SquareSpec& s) { os << " side=" << s.side; },
                 [&](const BlockWiseSpec& s) {
                   os << " min_area=" << s.min_block_area << " aspect_low=" << format_double(s.aspect_low)
                      << " aspect_high=" << format_double(s.aspect_high);
                 },
             },
             spec);
  return os.str();
}

PatternRequest parse_description(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream is(normalized);
  std::string token;
  while (is >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(Errc::parse_error, "expected key=value, got '" + token + "'");
    }
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto require = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw Error(Errc::parse_error, "missing key '" + key + "'");
    return *v;
  };

  const std::string name = require("pattern");
  const std::string grid_text = require("grid");
  const auto x = grid_text.find('x');
  if (x == std::string::npos) throw Error(Errc::parse_error, "grid must look like COLSxROWS");
  const PatchGrid grid = PatchGrid::lattice(static_cast<int>(parse_integer(grid_text.substr(0, x), "grid cols")),
                                            static_cast<int>(parse_integer(grid_text.substr(x + 1), "grid rows")));
  const double ratio = parse_double(require("ratio"), "ratio");
  std::uint64_t seed = 0;
  if (auto s = take("seed")) seed = parse_unsigned(*s, "seed");

  PatternSpec spec;
  if (name == "mesh") {
    MeshSpec m{ratio};
    if (auto r = take("rounding")) {
      if (*r == "floor") m.rounding = KeepRounding::floor;
      else if (*r == "half-up") m.rounding = KeepRounding::half_up;
      else throw Error(Errc::parse_error, "rounding must be floor or half-up");
    }
    if (auto p = take("parity_mode")) {
      if (*p == "linear") m.parity_mode = ParityMode::linear;
      else if (*p == "checkerboard") m.parity_mode = ParityMode::checkerboard;
      else throw Error(Errc::parse_error, "parity_mode must be linear or checkerboard");
    }
    spec = m;
  } else if (name == "random") {
    spec = RandomSpec{ratio};
  } else if (name == "square") {
    SquareSpec s{2, ratio};
    if (auto v = take("side")) s.side = static_cast<int>(parse_integer(*v, "side"));
    spec = s;
  } else if (name == "blockwise") {
    BlockWiseSpec b{ratio};
    if (auto v = take("min_area")) b.min_block_area = static_cast<int>(parse_integer(*v, "min_area"));
    if (auto v = take("aspect_low")) b.aspect_low = parse_double(*v, "aspect_low");
    if (auto v = take("aspect_high")) b.aspect_high = parse_double(*v, "aspect_high");
    spec = b;
  } else {
    throw Error(Errc::parse_error, "unknown pattern '" + name + "'");
  }
  if (!kv.empty()) throw Error(Errc::parse_error, "unknown key '" + kv.begin()->first + "'");
  validate(spec, grid);
  return PatternRequest{spec, grid, seed};
}

}  // namespace maskkit
