#pragma once

// Brute-force references for tiny instances. They share no code path with
// the heuristics they are compared against.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "oligoplan/core.hpp"
#include "oligoplan/maskgen.hpp"
#include "oligoplan/rectcover.hpp"

namespace oligoplan::oracles {

inline constexpr std::size_t kMaxCoverCells = 16;

struct CoverResult {
  std::size_t size = 0;
  std::vector<Rect> witness;
};

/// Minimum number of 1xL runs of true cells whose union is exactly the true
/// cells. Candidates are all sub-runs of maximal runs in both orientations;
/// the search memoizes the minimum over every reachable uncovered set.
inline CoverResult min_rect_cover(const BitGrid& grid) {
  const std::size_t m = grid.side();
  std::vector<Spot> cells;
  std::vector<int> index_of(m * m, -1);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      if (grid(r, c)) {
        index_of[r * m + c] = static_cast<int>(cells.size());
        cells.push_back({r, c});
      }
  if (cells.size() > kMaxCoverCells)
    throw InvalidArgument("min_rect_cover handles at most 16 true cells");
  if (cells.empty()) return {};

  struct Candidate {
    Rect rect;
    std::uint32_t bits;
  };
  std::vector<Candidate> candidates;
  auto add_runs = [&](Orientation o) {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t start = 0; start < m; ++start) {
        std::uint32_t bits = 0;
        for (std::size_t end = start; end < m; ++end) {
          const std::size_t r = o == Orientation::horizontal ? a : end;
          const std::size_t c = o == Orientation::horizontal ? end : a;
          if (!grid(r, c)) break;
          bits |= 1u << index_of[r * m + c];
          const std::size_t len = end - start + 1;
          // Single cells are only listed once, as horizontal runs.
          if (o == Orientation::vertical && len == 1) continue;
          const Rect rect = o == Orientation::horizontal ? Rect{o, len, a, start}
                                                         : Rect{o, len, start, a};
          candidates.push_back({rect, bits});
        }
      }
    }
  };
  add_runs(Orientation::horizontal);
  add_runs(Orientation::vertical);

  const std::uint32_t full = (1u << cells.size()) - 1;
  constexpr std::uint8_t unknown = 0xFF;
  std::vector<std::uint8_t> best(std::size_t{1} << cells.size(), unknown);
  std::vector<std::uint16_t> choice(best.size(), 0);
  best[0] = 0;

  std::function<std::uint8_t(std::uint32_t)> solve = [&](std::uint32_t uncovered) {
    if (best[uncovered] != unknown) return best[uncovered];
    const std::uint32_t lowest = uncovered & (~uncovered + 1);
    std::uint8_t result = unknown;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!(candidates[i].bits & lowest)) continue;
      const auto sub = solve(uncovered & ~candidates[i].bits);
      if (sub + 1 < result) {
        result = static_cast<std::uint8_t>(sub + 1);
        choice[uncovered] = static_cast<std::uint16_t>(i);
      }
    }
    return best[uncovered] = result;
  };

  CoverResult out;
  out.size = solve(full);
  for (std::uint32_t u = full; u != 0; u &= ~candidates[choice[u]].bits)
    out.witness.push_back(candidates[choice[u]].rect);
  return out;
}

/// Length of a shortest common supersequence, found by enumerating strings
/// over ACGT in order of length. A prefix is abandoned once the remaining
/// length cannot fit the longest unmatched suffix.
inline std::size_t brute_scs(const std::vector<std::string>& strings, std::size_t max_len) {
  std::size_t total = 0, longest = 0;
  for (const auto& s : strings) {
    if (!is_nucleotide_string(s)) throw InvalidArgument("input contains a symbol outside ACGT");
    total += s.size();
    longest = std::max(longest, s.size());
  }
  if (total > 12) throw InvalidArgument("brute_scs is limited to 12 input bases in total");

  const std::string alphabet = "ACGT";
  std::function<bool(std::vector<std::size_t>&, std::size_t)> extend =
      [&](std::vector<std::size_t>& pos, std::size_t left) {
        std::size_t need = 0;
        for (std::size_t i = 0; i < strings.size(); ++i)
          need = std::max(need, strings[i].size() - pos[i]);
        if (need == 0) return true;
        if (need > left) return false;
        for (const char c : alphabet) {
          auto next = pos;
          for (std::size_t i = 0; i < strings.size(); ++i)
            if (next[i] < strings[i].size() && strings[i][next[i]] == c) ++next[i];
          if (extend(next, left - 1)) return true;
        }
        return false;
      };

  for (std::size_t len = longest; len <= max_len; ++len) {
    std::vector<std::size_t> pos(strings.size(), 0);
    if (extend(pos, len)) return len;
  }
  throw InvalidArgument("no common supersequence within " + std::to_string(max_len) + " bases");
}

}  // namespace oligoplan::oracles
