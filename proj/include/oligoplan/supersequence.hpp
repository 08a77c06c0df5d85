#pragma once

// Synthesis sequences and common supersequences.
//
// Each array needs a synthesis sequence that contains all of its oligos as
// subsequences; several arrays can share deposition runs when their
// sequences are merged into one common supersequence s*.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oligoplan/core.hpp"

namespace oligoplan {

/// True iff `sub` embeds left-to-right into `sup`.
inline bool is_supersequence(std::string_view sup, std::string_view sub) noexcept {
  std::size_t next = 0;
  for (std::size_t i = 0; i < sup.size() && next < sub.size(); ++i)
    if (sup[i] == sub[next]) ++next;
  return next == sub.size();
}

struct SynthesisSequence {
  std::size_t array_id = 0;
  Sequence bases;

  /// Number of masks (synthesis cycles) this sequence needs.
  std::size_t p() const noexcept { return bases.size(); }
  friend bool operator==(const SynthesisSequence&, const SynthesisSequence&) = default;
};

enum class PlanMethod { periodic, greedy, exact };

inline std::string to_string(PlanMethod m) {
  switch (m) {
    case PlanMethod::periodic: return "periodic";
    case PlanMethod::greedy: return "greedy";
    case PlanMethod::exact: return "exact";
  }
  return "unknown";
}

inline PlanMethod parse_plan_method(std::string_view s) {
  if (s == "periodic") return PlanMethod::periodic;
  if (s == "greedy") return PlanMethod::greedy;
  if (s == "exact") return PlanMethod::exact;
  throw InvalidArgument("unknown plan method: " + std::string(s));
}

struct SynthesisPlan {
  std::vector<SynthesisSequence> sequences;
  Sequence super;
  std::size_t steps_reduced = 0;
  PlanMethod method = PlanMethod::greedy;

  std::size_t total_sequence_length() const noexcept {
    std::size_t total = 0;
    for (const auto& s : sequences) total += s.p();
    return total;
  }
};

/// (ACGT)^r cut to 4 * longest oligo. Any string of that length over ACGT
/// embeds into it, one base per period.
inline Sequence periodic_string(std::size_t max_oligo_len) {
  Sequence out(4 * max_oligo_len, 'A');
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = to_char(kNucleotides[i % 4]);
  return out;
}

inline std::vector<SynthesisSequence> periodic_sequence(const ArraySet& arrays) {
  std::vector<SynthesisSequence> out;
  out.reserve(arrays.size());
  for (std::size_t i = 0; i < arrays.size(); ++i)
    out.push_back({i, periodic_string(arrays[i].max_oligo_length())});
  return out;
}

/// Majority merge: repeatedly emit the base at the front of the most inputs
/// (ties go to the smaller base) and advance every input whose front matches.
template <typename Strings>
Sequence greedy_scs(const Strings& strings) {
  std::vector<std::string_view> views;
  for (const auto& s : strings) views.emplace_back(s);
  if (std::none_of(views.begin(), views.end(),
                   [](std::string_view v) { return !v.empty(); }))
    throw InvalidArgument("greedy_scs needs at least one non-empty input");

  std::vector<std::size_t> front(views.size(), 0);
  Sequence out;
  for (;;) {
    std::array<std::size_t, 4> votes{};
    bool any = false;
    for (std::size_t i = 0; i < views.size(); ++i) {
      if (front[i] < views[i].size()) {
        const auto n = from_char(views[i][front[i]]);
        if (!n) throw InvalidArgument("input contains a symbol outside ACGT");
        ++votes[static_cast<std::size_t>(*n)];
        any = true;
      }
    }
    if (!any) break;
    // max_element returns the first maximum, i.e. the smallest base on ties.
    const auto winner = static_cast<std::size_t>(
        std::max_element(votes.begin(), votes.end()) - votes.begin());
    const char c = to_char(kNucleotides[winner]);
    out.push_back(c);
    for (std::size_t i = 0; i < views.size(); ++i)
      if (front[i] < views[i].size() && views[i][front[i]] == c) ++front[i];
  }
  return out;
}

inline Sequence greedy_scs(std::initializer_list<std::string_view> strings) {
  return greedy_scs(std::vector<std::string_view>(strings));
}

inline constexpr std::size_t kMaxScsLattice = 10'000'000;

/// Minimum-length common supersequence of at most three strings, by dynamic
/// programming over the lattice of position tuples. Among optimal choices the
/// smallest base is taken first, so the result is deterministic.
template <typename Strings>
Sequence exact_scs_dp(const Strings& strings) {
  std::vector<std::string_view> views;
  for (const auto& s : strings) views.emplace_back(s);
  if (views.empty() || views.size() > 3)
    throw InvalidArgument("exact_scs_dp takes 1 to 3 strings, got " +
                          std::to_string(views.size()));
  for (auto v : views)
    if (!is_nucleotide_string(v))
      throw InvalidArgument("input contains a symbol outside ACGT");

  const std::size_t k = views.size();
  std::array<std::size_t, 3> radix{1, 1, 1};
  std::array<std::size_t, 3> stride{0, 0, 0};
  std::size_t cells = 1;
  for (std::size_t i = 0; i < k; ++i) {
    radix[i] = views[i].size() + 1;
    stride[i] = cells;
    if (cells > kMaxScsLattice / radix[i])
      throw InvalidArgument("exact_scs_dp lattice exceeds 10^7 cells");
    cells *= radix[i];
  }

  auto decode = [&](std::size_t index) {
    std::array<std::size_t, 3> pos{};
    for (std::size_t i = 0; i < k; ++i) pos[i] = (index / stride[i]) % radix[i];
    return pos;
  };
  // Index reached from `index` by emitting base c.
  auto step = [&](std::size_t index, const std::array<std::size_t, 3>& pos,
                  char c) {
    for (std::size_t i = 0; i < k; ++i)
      if (pos[i] < views[i].size() && views[i][pos[i]] == c) index += stride[i];
    return index;
  };

  // Emitting a base that is some front strictly increases the index, so a
  // descending sweep sees every successor before its predecessor.
  std::vector<std::uint32_t> remaining(cells, 0);
  for (std::size_t index = cells - 1; index-- > 0;) {
    const auto pos = decode(index);
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t i = 0; i < k; ++i) {
      if (pos[i] >= views[i].size()) continue;
      const auto next = step(index, pos, views[i][pos[i]]);
      best = std::min(best, remaining[next] + 1);
    }
    remaining[index] = best;
  }

  Sequence out;
  out.reserve(remaining[0]);
  for (std::size_t index = 0; index != cells - 1;) {
    const auto pos = decode(index);
    for (const auto n : kNucleotides) {
      const char c = to_char(n);
      const auto next = step(index, pos, c);
      if (next != index && remaining[next] + 1 == remaining[index]) {
        out.push_back(c);
        index = next;
        break;
      }
    }
  }
  return out;
}

inline Sequence exact_scs_dp(std::initializer_list<std::string_view> strings) {
  return exact_scs_dp(std::vector<std::string_view>(strings));
}

/// One majority-merge sequence per array over that array's oligos. Empty
/// arrays get an empty sequence.
inline std::vector<SynthesisSequence> greedy_sequences(const ArraySet& arrays) {
  std::vector<SynthesisSequence> out;
  out.reserve(arrays.size());
  for (std::size_t i = 0; i < arrays.size(); ++i) {
    const auto& oligos = arrays[i].oligos();
    std::vector<std::string_view> views;
    views.reserve(oligos.size());
    for (const auto& o : oligos) views.emplace_back(o.bases());
    out.push_back({i, views.empty() ? Sequence{} : greedy_scs(views)});
  }
  return out;
}

inline SynthesisPlan merge_plan(std::vector<SynthesisSequence> sequences,
                                PlanMethod method) {
  if (sequences.empty()) throw InvalidArgument("no arrays");
  std::vector<std::string_view> views;
  views.reserve(sequences.size());
  for (const auto& s : sequences) views.emplace_back(s.bases);

  SynthesisPlan plan;
  plan.method = method;
  if (method == PlanMethod::exact) {
    if (sequences.size() >= 4)
      throw InvalidArgument("exact merge is limited to fewer than 4 arrays");
    plan.super = exact_scs_dp(views);
  } else {
    plan.super = greedy_scs(views);
  }
  plan.sequences = std::move(sequences);
  plan.steps_reduced = plan.total_sequence_length() - plan.super.size();
  return plan;
}

/// Per-array sequences plus the merged s*. periodic uses (ACGT)^r per array;
/// greedy and exact both build per-array sequences by majority merge and
/// differ only in how s* is merged.
inline SynthesisPlan make_plan(const ArraySet& arrays, PlanMethod method) {
  auto sequences = method == PlanMethod::periodic ? periodic_sequence(arrays)
                                                  : greedy_sequences(arrays);
  return merge_plan(std::move(sequences), method);
}

}  // namespace oligoplan
