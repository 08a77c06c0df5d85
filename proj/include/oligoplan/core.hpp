#pragma once

// Shared domain types: nucleotides, oligos, arrays and the seeded
// random dataset generator.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oligoplan {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Nucleotide : std::uint8_t { A = 0, C = 1, G = 2, T = 3 };

inline constexpr std::array<Nucleotide, 4> kNucleotides = {
    Nucleotide::A, Nucleotide::C, Nucleotide::G, Nucleotide::T};

inline constexpr char to_char(Nucleotide n) {
  constexpr char symbols[] = {'A', 'C', 'G', 'T'};
  return symbols[static_cast<std::size_t>(n)];
}

inline constexpr std::optional<Nucleotide> from_char(char c) {
  switch (c) {
    case 'A': return Nucleotide::A;
    case 'C': return Nucleotide::C;
    case 'G': return Nucleotide::G;
    case 'T': return Nucleotide::T;
    default: return std::nullopt;
  }
}

/// Nucleotide strings are kept as uppercase std::string over "ACGT".
/// Ordering A < C < G < T coincides with ASCII ordering.
using Sequence = std::string;

inline bool is_nucleotide_string(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return from_char(c).has_value(); });
}

inline constexpr std::size_t kMaxOligoLength = 100;

class Oligo {
 public:
  Oligo() = default;
  explicit Oligo(Sequence bases) : bases_(std::move(bases)) {
    if (bases_.empty() || bases_.size() > kMaxOligoLength)
      throw InvalidArgument("oligo length must be in [1, 100], got " +
                            std::to_string(bases_.size()));
    if (!is_nucleotide_string(bases_))
      throw InvalidArgument("oligo contains a symbol outside ACGT: " + bases_);
  }

  const Sequence& bases() const noexcept { return bases_; }
  std::size_t length() const noexcept { return bases_.size(); }

  friend bool operator==(const Oligo&, const Oligo&) = default;

 private:
  Sequence bases_;
};

struct Spot {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Spot&, const Spot&) = default;
};

/// One array of side m; oligo j sits at (j / m, j % m).
class ArraySpec {
 public:
  ArraySpec(std::size_t side_m, std::vector<Oligo> oligos)
      : side_(side_m), oligos_(std::move(oligos)) {
    if (side_ == 0) throw InvalidArgument("array side must be positive");
    if (oligos_.size() > side_ * side_)
      throw InvalidArgument("array of side " + std::to_string(side_) +
                            " cannot hold " + std::to_string(oligos_.size()) +
                            " oligos");
  }

  std::size_t side() const noexcept { return side_; }
  std::size_t spots() const noexcept { return side_ * side_; }
  const std::vector<Oligo>& oligos() const noexcept { return oligos_; }
  std::size_t size() const noexcept { return oligos_.size(); }
  bool empty() const noexcept { return oligos_.empty(); }

  Spot spot_of(std::size_t index) const noexcept {
    return {index / side_, index % side_};
  }

  /// nullptr for spots past the last placed oligo.
  const Oligo* oligo_at(Spot s) const noexcept {
    const std::size_t index = s.row * side_ + s.col;
    return (s.row < side_ && s.col < side_ && index < oligos_.size())
               ? &oligos_[index]
               : nullptr;
  }

  std::size_t max_oligo_length() const noexcept {
    std::size_t best = 0;
    for (const auto& o : oligos_) best = std::max(best, o.length());
    return best;
  }

  std::size_t total_bases() const noexcept {
    std::size_t total = 0;
    for (const auto& o : oligos_) total += o.length();
    return total;
  }

  friend bool operator==(const ArraySpec&, const ArraySpec&) = default;

 private:
  std::size_t side_;
  std::vector<Oligo> oligos_;
};

class ArraySet {
 public:
  explicit ArraySet(std::vector<ArraySpec> arrays) : arrays_(std::move(arrays)) {
    if (arrays_.empty()) throw InvalidArgument("no arrays");
    const auto side = arrays_.front().side();
    for (const auto& a : arrays_)
      if (a.side() != side)
        throw InvalidArgument("all arrays in a set must share the same side");
  }

  const std::vector<ArraySpec>& arrays() const noexcept { return arrays_; }
  const ArraySpec& operator[](std::size_t i) const { return arrays_.at(i); }
  std::size_t size() const noexcept { return arrays_.size(); }
  std::size_t side() const noexcept { return arrays_.front().side(); }

  friend bool operator==(const ArraySet&, const ArraySet&) = default;

 private:
  std::vector<ArraySpec> arrays_;
};

struct DatasetParams {
  std::size_t n_genes = 0;
  std::size_t gene_len = 0;
  std::size_t oligo_len = 25;
  std::size_t n_arrays = 1;
  std::size_t side_m = 0;
  std::uint64_t seed = 0;

  void validate() const {
    if (oligo_len == 0 || oligo_len > kMaxOligoLength)
      throw InvalidArgument("oligo length must be in [1, 100]");
    if (oligo_len > gene_len)
      throw InvalidArgument("oligo length " + std::to_string(oligo_len) +
                            " exceeds gene length " + std::to_string(gene_len));
    if (n_arrays == 0) throw InvalidArgument("at least one array is required");
    if (side_m == 0) throw InvalidArgument("array side must be positive");
  }
};

/// Random genes, one random substring per gene as its oligo, arrays filled
/// row-major in gene order. Arrays after the genes run out stay empty.
inline ArraySet generate_dataset(const DatasetParams& params) {
  params.validate();
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<int> base(0, 3);
  std::uniform_int_distribution<std::size_t> offset(
      0, params.gene_len - params.oligo_len);

  std::vector<Oligo> oligos;
  oligos.reserve(params.n_genes);
  Sequence gene(params.gene_len, 'A');
  for (std::size_t g = 0; g < params.n_genes; ++g) {
    for (auto& c : gene) c = to_char(static_cast<Nucleotide>(base(rng)));
    oligos.emplace_back(gene.substr(offset(rng), params.oligo_len));
  }

  const std::size_t capacity = params.side_m * params.side_m;
  std::vector<ArraySpec> arrays;
  arrays.reserve(params.n_arrays);
  auto next = oligos.begin();
  for (std::size_t a = 0; a < params.n_arrays; ++a) {
    const auto take = std::min<std::size_t>(
        capacity, static_cast<std::size_t>(oligos.end() - next));
    arrays.emplace_back(params.side_m, std::vector<Oligo>(next, next + take));
    next += static_cast<std::ptrdiff_t>(take);
  }
  return ArraySet(std::move(arrays));
}

}  // namespace oligoplan
