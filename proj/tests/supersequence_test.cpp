#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "oligoplan/supersequence.hpp"
#include "test_support.hpp"

namespace oligoplan {
namespace {

using testing::embeds;
using testing::random_dna;

TEST(IsSupersequence, Examples) {
  EXPECT_TRUE(is_supersequence("ACGT", "ACG"));
  EXPECT_FALSE(is_supersequence("ACGT", "TG"));
  EXPECT_TRUE(is_supersequence("ACGT", "AGT"));
  EXPECT_TRUE(is_supersequence("ACGT", ""));
  EXPECT_FALSE(is_supersequence("", "A"));
}

TEST(IsSupersequence, AgreesWithIndependentScan) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto sup = random_dna(rng, rng() % 12);
    const auto sub = random_dna(rng, rng() % 6);
    EXPECT_EQ(is_supersequence(sup, sub), embeds(sup, sub)) << sup << " / " << sub;
  }
}

TEST(PeriodicSequence, LengthAndCoverage) {
  EXPECT_EQ(periodic_string(25).size(), 100u);
  EXPECT_EQ(periodic_string(4), "ACGTACGTACGTACGT");
  EXPECT_TRUE(is_supersequence(periodic_string(4), "AAAA"));

  std::mt19937_64 rng(8);
  const ArraySet set({testing::random_array(rng, 10, 100, 1, 25)});
  const auto seqs = periodic_sequence(set);
  ASSERT_EQ(seqs.size(), 1u);
  EXPECT_EQ(seqs[0].p(), 4 * set[0].max_oligo_length());
  for (const auto& o : set[0].oligos()) EXPECT_TRUE(embeds(seqs[0].bases, o.bases()));
}

TEST(GreedyScs, FourSequenceExample) {
  EXPECT_EQ(greedy_scs({"ACG", "ACT", "CGT", "AGT"}), "ACGT");
}

TEST(GreedyScs, SingleInputIsReturnedUnchanged) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto s = random_dna(rng, 1 + rng() % 40);
    EXPECT_EQ(greedy_scs(std::vector<std::string>{s}), s);
  }
}

TEST(GreedyScs, TiesGoToSmallerBase) {
  EXPECT_EQ(greedy_scs({"T", "G", "C", "A"}), "ACGT");
  EXPECT_EQ(greedy_scs({"CA", "AC"}), "ACA");
}

TEST(GreedyScs, RejectsAllEmptyInput) {
  EXPECT_THROW(greedy_scs(std::vector<std::string>{}), InvalidArgument);
  EXPECT_THROW(greedy_scs(std::vector<std::string>{"", ""}), InvalidArgument);
}

TEST(GreedyScs, LengthBoundsAndSupersequence) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> in(1 + rng() % 6);
    std::size_t longest = 0, total = 0;
    for (auto& s : in) {
      s = random_dna(rng, 1 + rng() % 10);
      longest = std::max(longest, s.size());
      total += s.size();
    }
    const auto out = greedy_scs(in);
    EXPECT_GE(out.size(), longest);
    EXPECT_LE(out.size(), total);
    for (const auto& s : in) EXPECT_TRUE(embeds(out, s));
    EXPECT_EQ(out, greedy_scs(in));
  }
}

TEST(ExactScs, ThreeStringExampleIsMinimal) {
  const std::vector<std::string> in{"ACG", "ACT", "CGT"};
  const auto out = exact_scs_dp(in);
  EXPECT_EQ(out.size(), 4u);
  for (const auto& s : in) EXPECT_TRUE(embeds(out, s));
  // No string of length 3 contains all three.
  for (const auto& cand : testing::all_strings(3))
    EXPECT_FALSE(embeds(cand, "ACG") && embeds(cand, "ACT") && embeds(cand, "CGT")) << cand;
  bool acgt_qualifies = true;
  for (const auto& s : in) acgt_qualifies &= embeds("ACGT", s);
  EXPECT_TRUE(acgt_qualifies);
}

TEST(ExactScs, IdenticalInputs) { EXPECT_EQ(exact_scs_dp({"AAA", "AAA"}), "AAA"); }

TEST(ExactScs, CrossedPair) {
  const auto out = exact_scs_dp({"AC", "CA"});
  EXPECT_EQ(out.size(), 3u);
  EXPECT_TRUE(out == "ACA" || out == "CAC") << out;
}

TEST(ExactScs, TwoStringsMatchLcsIdentity) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_dna(rng, rng() % 15);
    const auto b = random_dna(rng, rng() % 15);
    const auto out = exact_scs_dp(std::vector<std::string>{a, b});
    EXPECT_EQ(out.size(), a.size() + b.size() - testing::lcs_length(a, b)) << a << " " << b;
    EXPECT_TRUE(embeds(out, a));
    EXPECT_TRUE(embeds(out, b));
  }
}

TEST(ExactScs, NeverLongerThanGreedy) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> in(1 + rng() % 3);
    for (auto& s : in) s = random_dna(rng, 1 + rng() % 8);
    const auto exact = exact_scs_dp(in);
    for (const auto& s : in) EXPECT_TRUE(embeds(exact, s));
    EXPECT_LE(exact.size(), greedy_scs(in).size());
  }
}

TEST(ExactScs, RejectsTooManyInputsOrHugeLattice) {
  EXPECT_THROW(exact_scs_dp({"A", "C", "G", "T"}), InvalidArgument);
  EXPECT_THROW(exact_scs_dp(std::vector<std::string>{}), InvalidArgument);
  const std::string big(300, 'A');
  EXPECT_THROW(exact_scs_dp(std::vector<std::string>{big, big, big}), InvalidArgument);
  EXPECT_THROW(exact_scs_dp({"AXG"}), InvalidArgument);
}

TEST(MergePlan, FourSequenceExampleSavesEightSteps) {
  std::vector<SynthesisSequence> seqs{{0, "ACG"}, {1, "ACT"}, {2, "CGT"}, {3, "AGT"}};
  const auto plan = merge_plan(seqs, PlanMethod::greedy);
  EXPECT_EQ(plan.super, "ACGT");
  EXPECT_EQ(plan.total_sequence_length(), 12u);
  EXPECT_EQ(plan.steps_reduced, 8u);
  EXPECT_THROW(merge_plan(seqs, PlanMethod::exact), InvalidArgument);
}

TEST(MergePlan, SingleSequenceSavesNothing) {
  const auto plan = merge_plan({{0, "ACGTTGCA"}}, PlanMethod::greedy);
  EXPECT_EQ(plan.super, "ACGTTGCA");
  EXPECT_EQ(plan.steps_reduced, 0u);
}

TEST(MergePlan, ExactIsNoLongerThanGreedyOnRandomTriples) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SynthesisSequence> seqs;
    for (std::size_t j = 0; j < 3; ++j) seqs.push_back({j, random_dna(rng, 8)});
    const auto exact = merge_plan(seqs, PlanMethod::exact);
    const auto greedy = merge_plan(seqs, PlanMethod::greedy);
    EXPECT_LE(exact.super.size(), greedy.super.size());
    EXPECT_GE(exact.steps_reduced, greedy.steps_reduced);
    for (const auto& s : seqs) {
      EXPECT_TRUE(embeds(exact.super, s.bases));
      EXPECT_TRUE(embeds(greedy.super, s.bases));
    }
  }
}

TEST(MakePlan, EveryOligoEmbedsInItsArraySequence) {
  const auto set = generate_dataset({150, 80, 20, 2, 10, 4});
  for (const auto method : {PlanMethod::periodic, PlanMethod::greedy, PlanMethod::exact}) {
    const auto plan = make_plan(set, method);
    ASSERT_EQ(plan.sequences.size(), 2u);
    EXPECT_EQ(plan.method, method);
    for (std::size_t j = 0; j < 2; ++j) {
      for (const auto& o : set[j].oligos()) EXPECT_TRUE(embeds(plan.sequences[j].bases, o.bases()));
      EXPECT_TRUE(embeds(plan.super, plan.sequences[j].bases));
    }
    EXPECT_EQ(plan.steps_reduced + plan.super.size(), plan.total_sequence_length());
  }
}

TEST(PlanMethod, ParsesNames) {
  EXPECT_EQ(parse_plan_method("exact"), PlanMethod::exact);
  EXPECT_EQ(to_string(PlanMethod::periodic), "periodic");
  EXPECT_THROW(parse_plan_method("lap"), InvalidArgument);
}

}  // namespace
}  // namespace oligoplan
