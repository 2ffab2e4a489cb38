#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's probability or propagation code; the oracles only share
// plain data types with it.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

// Pascal's triangle in exact integers.
inline std::vector<std::vector<unsigned __int128>> pascal(int n) {
  std::vector<std::vector<unsigned __int128>> c(n + 1, std::vector<unsigned __int128>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c;
}

inline long double to_ld(unsigned __int128 v) { return static_cast<long double>(v); }

// Calls visit(subset) for every k-subset of [0, n), as index vectors.
inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  if (k > n || k < 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

struct Grid {
  int cols;
  int rows;
  int total() const { return cols * rows; }
};

inline std::vector<int> rect_cells(const Grid& g, int x, int y, int w, int h) {
  std::vector<int> out;
  for (int r = y; r < y + h; ++r)
    for (int c = x; c < x + w; ++c) out.push_back(r * g.cols + c);
  return out;
}

// Mesh full-occlusion by walking every keep-set of both parity classes.
// Parity is (cols * row + col) mod 2 as a plain integer computation.
inline long double enumerate_mesh_occlusion(const Grid& g, int keep, const std::vector<int>& region) {
  long double total = 0.0L;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<int> candidates;
    for (int r = 0; r < g.rows; ++r)
      for (int c = 0; c < g.cols; ++c)
        if ((g.cols * r + c) % 2 == parity) candidates.push_back(r * g.cols + c);
    std::uint64_t hidden = 0, sets = 0;
    for_each_subset(static_cast<int>(candidates.size()), keep, [&](const std::vector<int>& sub) {
      ++sets;
      bool any_kept = false;
      for (int s : sub) {
        if (std::find(region.begin(), region.end(), candidates[static_cast<std::size_t>(s)]) != region.end()) {
          any_kept = true;
          break;
        }
      }
      if (!any_kept) ++hidden;
    });
    total += static_cast<long double>(hidden) / static_cast<long double>(sets);
  }
  return total / 2.0L;
}

// Uniform masks with exactly m masked cells: count the subsets that contain
// the whole region via Pascal counts.
inline long double counted_random_occlusion(const Grid& g, int m, int region_cells) {
  const auto c = pascal(g.total());
  if (region_cells > m) return 0.0L;
  return to_ld(c[g.total() - region_cells][m - region_cells]) / to_ld(c[g.total()][m]);
}

// Same probability by visiting every bitmask of a small grid (T <= 25).
inline long double bitmask_random_occlusion(const Grid& g, int m, const std::vector<int>& region) {
  std::uint32_t region_bits = 0;
  for (int c : region) region_bits |= 1u << c;
  std::uint64_t hits = 0, total = 0;
  const std::uint32_t limit = 1u << g.total();
  for (std::uint32_t s = 0; s < limit; ++s) {
    if (std::popcount(s) != m) continue;
    ++total;
    if ((s & region_bits) == region_bits) ++hits;
  }
  return static_cast<long double>(hits) / static_cast<long double>(total);
}

// Chebyshev distance from every cell to the nearest active cell (-1 if none).
inline std::vector<int> distance_to_active(const Grid& g, const std::vector<std::uint8_t>& active) {
  std::vector<int> dist(static_cast<std::size_t>(g.total()), -1);
  for (int r = 0; r < g.rows; ++r) {
    for (int c = 0; c < g.cols; ++c) {
      int best = -1;
      for (int rr = 0; rr < g.rows; ++rr)
        for (int cc = 0; cc < g.cols; ++cc)
          if (active[static_cast<std::size_t>(rr * g.cols + cc)]) {
            const int d = std::max(std::abs(rr - r), std::abs(cc - c));
            if (best < 0 || d < best) best = d;
          }
      dist[static_cast<std::size_t>(r * g.cols + c)] = best;
    }
  }
  return dist;
}

// Upper alpha critical value of chi-square via Wilson-Hilferty.
inline double chi_square_critical(int df, double z_upper) {
  const double a = 2.0 / (9.0 * df);
  const double t = 1.0 - a + z_upper * std::sqrt(a);
  return df * t * t * t;
}

inline constexpr double kZ99 = 2.3263478740408408;  // one-sided 0.01

// One-sample Kolmogorov-Smirnov statistic against Uniform(0, 1).
inline double ks_uniform(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max(d, std::max((i + 1) / n - xs[i], xs[i] - i / n));
  }
  return d;
}

// Asymptotic KS critical value at alpha = 0.01.
inline double ks_critical_01(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

}  // namespace oracle
