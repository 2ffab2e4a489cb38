#include "maskkit/propagation.hpp"

#include <algorithm>

#include "maskkit/error.hpp"

namespace maskkit {

namespace {

template <typename Combine>
SupportMap pool(const SupportMap& in, bool pad_value, bool identity, Combine combine) {
  SupportMap out((in.cols + 1) / 2, (in.rows + 1) / 2);
  for (int r = 0; r < out.rows; ++r) {
    for (int c = 0; c < out.cols; ++c) {
      bool acc = identity;
      for (int dr = 0; dr < 2; ++dr) {
        for (int dc = 0; dc < 2; ++dc) {
          const int sc = 2 * c + dc, sr = 2 * r + dr;
          const bool v = (sc < in.cols && sr < in.rows) ? in.active(sc, sr) : pad_value;
          acc = combine(acc, v);
        }
      }
      out.set(c, r, acc);
    }
  }
  return out;
}

}  // namespace

SupportMap::SupportMap(int c, int r, bool fill)
    : cols(c), rows(r), cells(static_cast<std::size_t>(c) * static_cast<std::size_t>(r), fill ? 1 : 0) {
  if (c < 1 || r < 1) throw Error(Errc::invalid_dimension, "support map must be at least 1x1");
}

int SupportMap::active_count() const noexcept {
  return static_cast<int>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

bool SupportMap::subset_of(const SupportMap& other) const {
  if (cols != other.cols || rows != other.rows) return false;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] && !other.cells[i]) return false;
  }
  return true;
}

SupportMap support_of(const MaskMap& mask) {
  const PatchGrid& g = mask.grid();
  SupportMap s(g.cols(), g.rows());
  const auto m = mask.cells();
  for (std::size_t i = 0; i < s.cells.size(); ++i) s.cells[i] = m[i] ? 0 : 1;
  return s;
}

SupportMap pool_any(const SupportMap& in) {
  return pool(in, false, false, [](bool a, bool b) { return a || b; });
}

SupportMap pool_all(const SupportMap& in) {
  return pool(in, true, true, [](bool a, bool b) { return a && b; });
}

SupportMap dilate(const SupportMap& in, int radius) {
  if (radius < 0) throw Error(Errc::invalid_parameter, "kernel radius must be >= 0");
  SupportMap out(in.cols, in.rows);
  for (int r = 0; r < in.rows; ++r) {
    for (int c = 0; c < in.cols; ++c) {
      if (!in.active(c, r)) continue;
      const int r0 = std::max(0, r - radius), r1 = std::min(in.rows - 1, r + radius);
      const int c0 = std::max(0, c - radius), c1 = std::min(in.cols - 1, c + radius);
      for (int rr = r0; rr <= r1; ++rr) {
        for (int cc = c0; cc <= c1; ++cc) out.set(cc, rr, true);
      }
    }
  }
  return out;
}

SupportMap invert(const SupportMap& in) {
  SupportMap out = in;
  for (auto& c : out.cells) c = c ? 0 : 1;
  return out;
}

void StageStack::validate() const {
  if (num_stages < 1) throw Error(Errc::invalid_parameter, "stage stack needs at least one stage");
  if (layers_per_stage < 1) throw Error(Errc::invalid_parameter, "each stage needs at least one layer");
  if (kernel_radius < 1) throw Error(Errc::invalid_parameter, "kernel radius must be >= 1");
}

std::vector<SupportMap> downsample_mask(const MaskMap& mask, int stages) {
  if (stages < 0) throw Error(Errc::invalid_parameter, "stage count must be >= 0");
  std::vector<SupportMap> out;
  out.reserve(static_cast<std::size_t>(stages));
  SupportMap current = support_of(mask);
  for (int s = 0; s < stages; ++s) {
    current = pool_any(current);
    out.push_back(current);
  }
  return out;
}

std::vector<LayerSupport> propagate(const MaskMap& mask, const StageStack& stack, PropagationMode mode) {
  stack.validate();
  std::vector<LayerSupport> layers;
  layers.reserve(static_cast<std::size_t>(stack.total_layers()) + 1);
  layers.push_back(LayerSupport{0, 0, support_of(mask)});
  int layer = 0;
  for (int stage = 0; stage < stack.num_stages; ++stage) {
    SupportMap current = layers.back().support;
    if (stage > 0) current = pool_any(current);
    for (int l = 0; l < stack.layers_per_stage; ++l) {
      if (mode == PropagationMode::dense) current = dilate(current, stack.kernel_radius);
      layers.push_back(LayerSupport{++layer, stage, current});
    }
  }
  return layers;
}

std::vector<LayerSupport> dense_propagate(const MaskMap& mask, const StageStack& stack) {
  return propagate(mask, stack, PropagationMode::dense);
}

std::vector<LayerSupport> sparse_propagate(const MaskMap& mask, const StageStack& stack) {
  return propagate(mask, stack, PropagationMode::sparse);
}

std::optional<int> pattern_loss_depth(const MaskMap& mask, const StageStack& stack, PropagationMode mode) {
  if (mode == PropagationMode::sparse) {
    stack.validate();
    if (mask.masked_count() == 0) return 0;
    return std::nullopt;
  }
  for (const auto& l : dense_propagate(mask, stack)) {
    if (l.support.is_full()) return l.layer;
  }
  return std::nullopt;
}

std::string render_frame(const SupportMap& support) {
  std::string out;
  out.reserve(static_cast<std::size_t>((support.cols + 1) * support.rows));
  for (int r = 0; r < support.rows; ++r) {
    for (int c = 0; c < support.cols; ++c) out.push_back(support.active(c, r) ? '#' : '.');
    out.push_back('\n');
  }
  return out;
}

}  // namespace maskkit
