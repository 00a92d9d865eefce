// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include <gtest/gtest.h>

#include "symtax/synthetic.hpp"
#include "symtax/taxonomy.hpp"
#include "test_util.hpp"

namespace symtax {
namespace {

TEST(Synthetic, DefaultShape) {
  const auto s = generate_synthetic(SyntheticSpec{});
  ASSERT_EQ(s.papers.size(), 200u);
  ASSERT_EQ(s.cluster.size(), 200u);
  EXPECT_FALSE(s.contexts.empty());
  for (std::size_t i = 1; i < s.papers.size(); ++i) EXPECT_LT(s.papers[i - 1].id, s.papers[i].id);
  std::map<std::size_t, std::set<std::string>> cats;
  for (std::size_t i = 0; i < s.papers.size(); ++i) cats[s.cluster[i]].insert(s.papers[i].category);
  EXPECT_EQ(cats.size(), 4u);
  for (const auto& [c, set] : cats) EXPECT_EQ(set.size(), 1u) << "cluster " << c;
}

TEST(Synthetic, ContextsReferenceEarlierCorpusPapers) {
  const auto s = generate_synthetic(SyntheticSpec{});
  const Corpus corpus(s.papers);
  std::set<std::string> context_ids;
  for (const auto& c : s.contexts) {
    ASSERT_TRUE(corpus.contains(c.citing_id));
    ASSERT_TRUE(corpus.contains(c.cited_id));
    EXPECT_LT(c.cited_id, c.citing_id);
    EXPECT_FALSE(c.text.empty());
    EXPECT_TRUE(context_ids.insert(c.context_id).second);
  }
}

TEST(Synthetic, FullIntraProbabilityKeepsEdgesInsideClusters) {
  SyntheticSpec spec;
  spec.intra_cluster_probability = 1.0;
  const auto s = generate_synthetic(spec);
  std::map<std::string, std::size_t> cluster_of;
  for (std::size_t i = 0; i < s.papers.size(); ++i) cluster_of[s.papers[i].id] = s.cluster[i];
  for (const auto& c : s.contexts) EXPECT_EQ(cluster_of[c.citing_id], cluster_of[c.cited_id]);
}

TEST(Synthetic, LowerIntraProbabilityAddsCrossClusterEdges) {
  SyntheticSpec spec;
  spec.intra_cluster_probability = 0.3;
  const auto s = generate_synthetic(spec);
  std::map<std::string, std::size_t> cluster_of;
  for (std::size_t i = 0; i < s.papers.size(); ++i) cluster_of[s.papers[i].id] = s.cluster[i];
  std::size_t cross = 0;
  for (const auto& c : s.contexts) cross += cluster_of[c.citing_id] != cluster_of[c.cited_id] ? 1 : 0;
  EXPECT_GT(cross, 0u);
}

TEST(Synthetic, SeedDeterminesOutput) {
  SyntheticSpec spec;
  const auto a = generate_synthetic(spec);
  const auto b = generate_synthetic(spec);
  EXPECT_EQ(to_jsonl(a.papers), to_jsonl(b.papers));
  EXPECT_EQ(to_jsonl(a.contexts), to_jsonl(b.contexts));
  spec.seed = 13;
  EXPECT_NE(to_jsonl(generate_synthetic(spec).papers), to_jsonl(a.papers));
}

TEST(Synthetic, TaxonomyCoversEveryCategory) {
  SyntheticSpec spec;
  spec.n_clusters = 10;
  spec.papers_per_cluster = 5;
  const auto s = generate_synthetic(spec);
  const auto tax = parse_taxonomy(s.mapping_json, s.acm_tree_json);
  EXPECT_NO_THROW(validate_categories(tax, Corpus(s.papers)));
  EXPECT_EQ(tax.classes.size(), 10u);
}

TEST(Synthetic, WrittenFilesParseBack) {
  testing::TempDir dir("synth");
  const auto s = generate_synthetic(SyntheticSpec{});
  write_synthetic(s, dir.path().string());
  const Corpus corpus = load_papers(dir.file("papers.jsonl"));
  EXPECT_EQ(corpus.size(), 200u);
  const auto ctx = load_contexts(dir.file("contexts.jsonl"), corpus);
  EXPECT_EQ(ctx.contexts.size(), s.contexts.size());
  EXPECT_EQ(ctx.dropped(), 0u);
  EXPECT_NO_THROW(load_taxonomy(dir.file("mapping.json"), dir.file("acm_tree.json")));
  EXPECT_THROW(write_synthetic(s, dir.file("missing/sub")), MissingArtifactError);
}

TEST(Synthetic, RejectsInvalidSpecs) {
  SyntheticSpec spec;
  spec.intra_cluster_probability = 1.5;
  EXPECT_THROW(generate_synthetic(spec), ValidationError);
  spec = SyntheticSpec{};
  spec.n_clusters = 0;
  EXPECT_THROW(generate_synthetic(spec), ValidationError);
  spec = SyntheticSpec{};
  spec.min_references = 9;
  EXPECT_THROW(generate_synthetic(spec), ValidationError);
}

}  // namespace
}  // namespace symtax
