#pragma once

// Per-cycle exposure masks and the cross-array deposition table.
//
// A mask bit is true when the spot is deprotected (light passes) in that
// cycle. Spots follow the leftmost embedding of their oligo into the
// synthesis sequence.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oligoplan/core.hpp"
#include "oligoplan/supersequence.hpp"

namespace oligoplan {

class BitGrid {
 public:
  BitGrid() = default;
  explicit BitGrid(std::size_t side) : side_(side), bits_(side * side, 0) {}

  std::size_t side() const noexcept { return side_; }
  bool operator()(std::size_t r, std::size_t c) const noexcept {
    return bits_[r * side_ + c] != 0;
  }
  void set(std::size_t r, std::size_t c, bool v = true) noexcept {
    bits_[r * side_ + c] = v ? 1 : 0;
  }
  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
  }
  bool none() const noexcept { return count() == 0; }

  friend bool operator==(const BitGrid&, const BitGrid&) = default;

 private:
  std::size_t side_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct Mask {
  std::size_t array_id = 0;
  std::size_t cycle = 0;
  BitGrid grid;
  friend bool operator==(const Mask&, const Mask&) = default;
};

struct MaskSet {
  std::size_t array_id = 0;
  std::vector<Mask> masks;

  std::size_t p() const noexcept { return masks.size(); }
};

class NotSupersequence : public std::runtime_error {
 public:
  NotSupersequence(std::size_t array_id, Spot spot)
      : std::runtime_error("synthesis sequence of array " +
                           std::to_string(array_id) +
                           " does not contain the oligo at spot (" +
                           std::to_string(spot.row) + ", " +
                           std::to_string(spot.col) + ")"),
        array_id_(array_id),
        spot_(spot) {}

  std::size_t array_id() const noexcept { return array_id_; }
  Spot spot() const noexcept { return spot_; }

 private:
  std::size_t array_id_;
  Spot spot_;
};

/// Masks of one array driven by an arbitrary sequence (s_i, or s* in the
/// merged mode).
inline MaskSet generate_masks(const ArraySpec& array, std::size_t array_id,
                              std::string_view seq) {
  const auto& oligos = array.oligos();
  for (std::size_t j = 0; j < oligos.size(); ++j)
    if (!is_supersequence(seq, oligos[j].bases()))
      throw NotSupersequence(array_id, array.spot_of(j));

  MaskSet out{array_id, {}};
  out.masks.reserve(seq.size());
  std::vector<std::size_t> next(oligos.size(), 0);
  for (std::size_t t = 0; t < seq.size(); ++t) {
    Mask mask{array_id, t, BitGrid(array.side())};
    for (std::size_t j = 0; j < oligos.size(); ++j) {
      const auto& bases = oligos[j].bases();
      if (next[j] < bases.size() && bases[next[j]] == seq[t]) {
        const auto s = array.spot_of(j);
        mask.grid.set(s.row, s.col);
        ++next[j];
      }
    }
    out.masks.push_back(std::move(mask));
  }
  return out;
}

inline MaskSet generate_masks(const ArraySpec& array, const SynthesisSequence& seq) {
  return generate_masks(array, seq.array_id, seq.bases);
}

struct DepositionCycle {
  std::size_t cycle = 0;
  char base = 'A';
  std::vector<std::size_t> arrays;  // ascending array indices
};

/// For each base of s*, the arrays whose next unconsumed base of s_j
/// matches it. Those arrays are deprotected and share one deposition run.
inline std::vector<DepositionCycle> deposition_schedule(const SynthesisPlan& plan) {
  std::vector<std::size_t> next(plan.sequences.size(), 0);
  std::vector<DepositionCycle> out;
  out.reserve(plan.super.size());
  for (std::size_t t = 0; t < plan.super.size(); ++t) {
    DepositionCycle cycle{t, plan.super[t], {}};
    for (std::size_t j = 0; j < plan.sequences.size(); ++j) {
      const auto& s = plan.sequences[j].bases;
      if (next[j] < s.size() && s[next[j]] == plan.super[t]) {
        cycle.arrays.push_back(j);
        ++next[j];
      }
    }
    out.push_back(std::move(cycle));
  }
  for (std::size_t j = 0; j < next.size(); ++j)
    if (next[j] != plan.sequences[j].bases.size())
      throw InvalidArgument("s* is not a supersequence of the sequence of array " +
                            std::to_string(j));
  return out;
}

// Mask files: a header "m m cycle array_id" followed by m rows of '0'/'1'.

inline void write_mask(std::ostream& os, const Mask& mask) {
  const auto m = mask.grid.side();
  os << m << ' ' << m << ' ' << mask.cycle << ' ' << mask.array_id << '\n';
  std::string row(m, '0');
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) row[c] = mask.grid(r, c) ? '1' : '0';
    os << row << '\n';
  }
}

inline Mask read_mask(std::istream& is) {
  std::size_t rows = 0, cols = 0;
  Mask mask;
  if (!(is >> rows >> cols >> mask.cycle >> mask.array_id))
    throw std::runtime_error("malformed mask header");
  if (rows != cols || rows == 0)
    throw std::runtime_error("mask must be square and non-empty");
  mask.grid = BitGrid(rows);
  std::string row;
  for (std::size_t r = 0; r < rows; ++r) {
    if (!(is >> row) || row.size() != cols)
      throw std::runtime_error("mask row " + std::to_string(r) + " is malformed");
    for (std::size_t c = 0; c < cols; ++c) {
      if (row[c] != '0' && row[c] != '1')
        throw std::runtime_error("mask rows may only hold '0' and '1'");
      mask.grid.set(r, c, row[c] == '1');
    }
  }
  return mask;
}

inline std::filesystem::path mask_path(const std::filesystem::path& root,
                                       std::size_t array_id, std::size_t cycle) {
  return root / ("array" + std::to_string(array_id)) /
         ("cycle" + std::to_string(cycle) + ".pbm");
}

inline void write_mask_set(const std::filesystem::path& root, const MaskSet& set) {
  std::filesystem::create_directories(root / ("array" + std::to_string(set.array_id)));
  for (const auto& mask : set.masks) {
    std::ofstream out(mask_path(root, set.array_id, mask.cycle));
    if (!out) throw std::runtime_error("cannot write mask file");
    write_mask(out, mask);
  }
}

/// Reads array{id}/cycle{0..} until the first missing cycle file.
inline MaskSet read_mask_set(const std::filesystem::path& root, std::size_t array_id) {
  MaskSet set{array_id, {}};
  for (std::size_t t = 0;; ++t) {
    std::ifstream in(mask_path(root, array_id, t));
    if (!in) break;
    set.masks.push_back(read_mask(in));
  }
  return set;
}

}  // namespace oligoplan
