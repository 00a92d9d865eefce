// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include <gtest/gtest.h>

#include <charconv>
#include <set>

#include "symtax/common.hpp"
#include "test_util.hpp"

namespace symtax {
namespace {

TEST(Hashing, Fnv1aKnownVectors) {
  // Published FNV-1a 64-bit test vectors.
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Hashing, DeriveSeedSeparatesLabels) {
  EXPECT_EQ(derive_seed(12, "split"), derive_seed(12, "split"));
  EXPECT_NE(derive_seed(12, "split"), derive_seed(12, "triplets"));
  EXPECT_NE(derive_seed(12, "split"), derive_seed(13, "split"));
}

TEST(Rng, StreamIsReproducible) {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Rng, UniformStaysInRange) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform(-2.0, 3.0);
    ASSERT_GE(v, -2.0);
    ASSERT_LT(v, 3.0);
  }
}

TEST(Rng, BelowCoversEveryValueRoughlyEvenly) {
  Rng rng(3);
  std::vector<int> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++counts[rng.below(7)];
  for (int c : counts) EXPECT_NEAR(c, draws / 7, 400);
}

TEST(Rng, NormalMoments) {
  Rng rng(5);
  double sum = 0.0, sq = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.03);
  EXPECT_NEAR(sq / n, 1.0, 0.03);
}

TEST(Rng, ShuffleIsAPermutation) {
  Rng rng(9);
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  rng.shuffle(v);
  std::set<int> s(v.begin(), v.end());
  EXPECT_EQ(s.size(), 50u);
  EXPECT_EQ(*s.begin(), 0);
  EXPECT_EQ(*s.rbegin(), 49);
}

TEST(Text, TokenizeLowercasesAndSplits) {
  EXPECT_EQ(tokenize("Deep-Learning, for IR!"), (std::vector<std::string>{"deep", "learning", "for", "ir"}));
  EXPECT_EQ(tokenize("[SEP]"), (std::vector<std::string>{"sep"}));
  EXPECT_TRUE(tokenize("  ,.;").empty());
  EXPECT_EQ(tokenize("caf\xc3\xa9 x2"), (std::vector<std::string>{"caf\xc3\xa9", "x2"}));
}

TEST(Text, NormalizeTitleCollapsesWhitespace) {
  EXPECT_EQ(normalize_title("  Attention   Is\tAll You\nNeed  "), "attention is all you need");
  EXPECT_EQ(normalize_title(""), "");
  EXPECT_EQ(normalize_title("A:B"), "a:b");
}

TEST(Text, FormatDoubleRoundTrips) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.normal() * std::pow(10.0, rng.uniform(-20, 20));
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    ASSERT_EQ(back, v) << s;
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Files, MissingFileRaisesMissingArtifact) {
  testing::TempDir dir("common");
  EXPECT_THROW(read_file(dir.file("nope.txt")), MissingArtifactError);
  write_file(dir.file("x.txt"), std::string("a\0b", 3));
  EXPECT_EQ(read_file(dir.file("x.txt")), std::string("a\0b", 3));
}

}  // namespace
}  // namespace symtax
