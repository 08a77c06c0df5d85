#pragma once

// Greedy 1xL rectangle decomposition of exposure masks, shape inventories
// and the per-array statistics derived from them.

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oligoplan/core.hpp"
#include "oligoplan/maskgen.hpp"

namespace oligoplan {

enum class Orientation { horizontal, vertical };

struct Rect {
  Orientation orientation = Orientation::horizontal;
  std::size_t length = 1;
  std::size_t row = 0;  // topmost / leftmost covered cell
  std::size_t col = 0;

  Spot cell(std::size_t i) const noexcept {
    return orientation == Orientation::horizontal ? Spot{row, col + i}
                                                  : Spot{row + i, col};
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class DecompositionMode { horizontal_only, h_and_v };

inline std::string to_string(DecompositionMode m) {
  return m == DecompositionMode::horizontal_only ? "h" : "hv";
}

inline DecompositionMode parse_decomposition_mode(std::string_view s) {
  if (s == "h" || s == "horizontal") return DecompositionMode::horizontal_only;
  if (s == "hv" || s == "h_and_v") return DecompositionMode::h_and_v;
  throw InvalidArgument("unknown decomposition mode: " + std::string(s));
}

namespace detail {

// Maximal run of true cells through (r, c) along one axis: {start, length}.
inline std::pair<std::size_t, std::size_t> run_through(const BitGrid& g,
                                                       std::size_t r, std::size_t c,
                                                       Orientation o) {
  const std::size_t m = g.side();
  const bool horiz = o == Orientation::horizontal;
  auto at = [&](std::size_t i) { return horiz ? g(r, i) : g(i, c); };
  std::size_t lo = horiz ? c : r;
  std::size_t hi = lo;
  while (lo > 0 && at(lo - 1)) --lo;
  while (hi + 1 < m && at(hi + 1)) ++hi;
  return {lo, hi - lo + 1};
}

}  // namespace detail

/// Row-major scan; every true cell not yet covered seeds a rectangle equal to
/// the longer of its maximal horizontal and vertical runs (horizontal on
/// ties, and always horizontal in horizontal_only mode). Covered cells are
/// never seeds again, but later runs may pass over them.
inline std::vector<Rect> decompose_mask(const BitGrid& grid, DecompositionMode mode) {
  const std::size_t m = grid.side();
  BitGrid examined(m);
  std::vector<Rect> rects;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      if (!grid(r, c) || examined(r, c)) continue;
      const auto [h_start, h_len] = detail::run_through(grid, r, c, Orientation::horizontal);
      Rect rect{Orientation::horizontal, h_len, r, h_start};
      if (mode == DecompositionMode::h_and_v) {
        const auto [v_start, v_len] = detail::run_through(grid, r, c, Orientation::vertical);
        if (v_len > h_len) rect = {Orientation::vertical, v_len, v_start, c};
      }
      for (std::size_t i = 0; i < rect.length; ++i) {
        const auto s = rect.cell(i);
        examined.set(s.row, s.col);
      }
      rects.push_back(rect);
    }
  }
  return rects;
}

inline std::vector<Rect> decompose_mask(const Mask& mask, DecompositionMode mode) {
  return decompose_mask(mask.grid, mode);
}

/// Rectangle counts keyed by length; orientation is dropped because a 1xL
/// piece can be rotated.
class ShapeInventory {
 public:
  void add(std::size_t length, std::size_t n = 1) {
    if (n > 0) counts_[length] += n;
  }
  ShapeInventory& operator+=(const ShapeInventory& other) {
    for (const auto& [len, n] : other.counts_) add(len, n);
    return *this;
  }

  const std::map<std::size_t, std::size_t>& counts() const noexcept { return counts_; }
  std::size_t distinct_shapes() const noexcept { return counts_.size(); }
  std::size_t total() const noexcept {
    std::size_t n = 0;
    for (const auto& [len, c] : counts_) n += c;
    return n;
  }
  std::size_t count(std::size_t length) const {
    const auto it = counts_.find(length);
    return it == counts_.end() ? 0 : it->second;
  }

  friend bool operator==(const ShapeInventory&, const ShapeInventory&) = default;

 private:
  std::map<std::size_t, std::size_t> counts_;
};

inline ShapeInventory inventory(std::span<const Rect> rects) {
  ShapeInventory inv;
  for (const auto& r : rects) inv.add(r.length);
  return inv;
}

struct ArrayDecomposition {
  std::size_t array_id = 0;
  std::size_t n_masks = 0;
  ShapeInventory shapes;
};

inline ArrayDecomposition decompose_mask_set(const MaskSet& set, DecompositionMode mode) {
  ArrayDecomposition out{set.array_id, set.p(), {}};
  for (const auto& mask : set.masks) out.shapes += inventory(decompose_mask(mask, mode));
  return out;
}

struct DecompositionStats {
  double n_masks = 0;
  double n_shapes = 0;
  double n_rectangles = 0;
  double rects_per_mask = 0;
};

inline DecompositionStats stats(const ArrayDecomposition& d) {
  DecompositionStats s;
  s.n_masks = static_cast<double>(d.n_masks);
  s.n_shapes = static_cast<double>(d.shapes.distinct_shapes());
  s.n_rectangles = static_cast<double>(d.shapes.total());
  s.rects_per_mask = d.n_masks == 0 ? 0.0 : s.n_rectangles / s.n_masks;
  return s;
}

struct StatsReport {
  std::vector<DecompositionStats> per_array;
  DecompositionStats aggregate;  // averages over arrays
};

/// The aggregate averages each column over the arrays; its rects_per_mask is
/// mean rectangles over mean masks so that the row stays self-consistent.
inline StatsReport stats(std::span<const ArrayDecomposition> decompositions) {
  StatsReport report;
  for (const auto& d : decompositions) {
    const auto s = stats(d);
    report.per_array.push_back(s);
    report.aggregate.n_masks += s.n_masks;
    report.aggregate.n_shapes += s.n_shapes;
    report.aggregate.n_rectangles += s.n_rectangles;
  }
  if (!decompositions.empty()) {
    const auto n = static_cast<double>(decompositions.size());
    report.aggregate.n_masks /= n;
    report.aggregate.n_shapes /= n;
    report.aggregate.n_rectangles /= n;
  }
  report.aggregate.rects_per_mask =
      report.aggregate.n_masks == 0 ? 0.0
                                    : report.aggregate.n_rectangles / report.aggregate.n_masks;
  return report;
}

inline std::map<std::size_t, std::size_t> length_histogram(const ShapeInventory& inv) {
  return inv.counts();
}

inline std::string histogram_csv(const ShapeInventory& inv) {
  std::ostringstream os;
  os << "length,count\n";
  for (const auto& [len, n] : length_histogram(inv)) os << len << ',' << n << '\n';
  return os.str();
}

}  // namespace oligoplan
