// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "symtax/prefetch.hpp"
#include "test_util.hpp"

namespace symtax {
namespace {

Corpus word_corpus(std::size_t n, std::uint64_t seed) {
  static const std::vector<std::string> words = {"graph", "neural", "network", "citation", "retrieval", "ranking",
                                                 "vision", "language", "model", "learning", "search", "index"};
  Rng rng(seed);
  std::vector<Paper> papers;
  for (std::size_t i = 0; i < n; ++i) {
    std::string title, abstract;
    for (int w = 0; w < 3; ++w) title += words[rng.below(words.size())] + " ";
    for (int w = 0; w < 12; ++w) abstract += words[rng.below(words.size())] + " ";
    char id[16];
    std::snprintf(id, sizeof id, "p%03zu", i);
    papers.push_back({id, title, abstract, "cs.IR", {}});
  }
  return Corpus(papers);
}

TEST(Texts, DocumentAndQueryConcatenation) {
  const Paper p{"x", "Title", "Abstract", "cs.IR", {}};
  EXPECT_EQ(document_text(p), "Title Abstract");
  EXPECT_EQ(query_text("ctx", p), "ctx Title Abstract");
}

TEST(DenseIndex, PrefetchMatchesBruteForceCosine) {
  const Corpus corpus = word_corpus(60, 1);
  const HashedTokenEmbedder emb(32);
  const DenseIndex index = build_dense_index(corpus, emb);
  ASSERT_EQ(index.size(), 60u);
  const std::string q = "neural ranking for citation search";
  const Embedding qe = emb.embed(q);

  std::vector<ScoredId> oracle;
  for (const auto& p : corpus.papers()) {
    if (p.id == "p007") continue;
    // Rows are stored as float32; score against the same rounded values.
    const Embedding d = emb.embed(document_text(p)).cast<float>().cast<double>();
    oracle.push_back({p.id, cosine(qe, d)});
  }
  std::stable_sort(oracle.begin(), oracle.end(),
                   [](const ScoredId& a, const ScoredId& b) { return a.score > b.score; });
  oracle.resize(15);

  const auto got = prefetch(q, index, emb, 15, std::string_view("p007")).candidates;
  ASSERT_EQ(got.size(), 15u);
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].id, oracle[i].id) << i;
    EXPECT_NEAR(got[i].score, oracle[i].score, 1e-12);
  }
}

TEST(DenseIndex, TiesGoToSmallerIdAndTruncationFlag) {
  const Corpus corpus({{"b", "same", "", "", {}}, {"a", "same", "", "", {}}, {"c", "other", "", "", {}}});
  const HashedTokenEmbedder emb(16);
  const DenseIndex index = build_dense_index(corpus, emb);
  const auto r = prefetch("same", index, emb, 10);
  EXPECT_TRUE(r.truncated_request);
  ASSERT_EQ(r.candidates.size(), 3u);
  EXPECT_EQ(r.candidates[0].id, "a");
  EXPECT_EQ(r.candidates[1].id, "b");
  EXPECT_TRUE(prefetch("same", index, emb, 0).candidates.empty());
}

TEST(DenseIndex, ZeroQueryScoresZero) {
  const Corpus corpus = word_corpus(5, 2);
  const HashedTokenEmbedder emb(16);
  const DenseIndex index = build_dense_index(corpus, emb);
  for (const auto& c : prefetch("", index, emb, 5).candidates) EXPECT_EQ(c.score, 0.0);
}

TEST(DenseIndex, SerializationRoundTrip) {
  const Corpus corpus = word_corpus(20, 3);
  const HashedTokenEmbedder emb(24, 5);
  const DenseIndex index = build_dense_index(corpus, emb);
  const DenseIndex back = DenseIndex::deserialize(index.serialize());
  EXPECT_EQ(back, index);
  EXPECT_EQ(back.serialize(), index.serialize());
  EXPECT_EQ(prefetch("graph", back, emb, 5).candidates, prefetch("graph", index, emb, 5).candidates);
  std::string bad = index.serialize();
  bad[0] = 'X';
  EXPECT_THROW(DenseIndex::deserialize(bad), ValidationError);
  EXPECT_THROW(DenseIndex::deserialize(index.serialize().substr(0, 40)), ValidationError);
}

TEST(DenseIndex, EmbedderMismatchRejected) {
  const Corpus corpus = word_corpus(5, 4);
  const DenseIndex index = build_dense_index(corpus, HashedTokenEmbedder(16, 0));
  EXPECT_THROW(prefetch("graph", index, HashedTokenEmbedder(16, 1), 3), ValidationError);
  EXPECT_THROW(prefetch(Embedding::Zero(8), index, 3), ValidationError);
}

// Scores every document from raw token lists, with no inverted index.
std::vector<double> naive_bm25(const Corpus& corpus, const std::string& query, const Bm25Params& prm) {
  std::vector<std::vector<std::string>> docs;
  double total = 0.0;
  for (const auto& p : corpus.papers()) {
    docs.push_back(tokenize(document_text(p)));
    total += static_cast<double>(docs.back().size());
  }
  const double n = static_cast<double>(docs.size());
  const double avgdl = total / n;
  auto terms = tokenize(query);
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  std::vector<double> scores(docs.size(), 0.0);
  for (const auto& t : terms) {
    double df = 0.0;
    for (const auto& d : docs) df += std::count(d.begin(), d.end(), t) > 0 ? 1.0 : 0.0;
    if (df == 0.0) continue;
    const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const double tf = static_cast<double>(std::count(docs[i].begin(), docs[i].end(), t));
      if (tf == 0.0) continue;
      const double norm = 1.0 - prm.b + prm.b * static_cast<double>(docs[i].size()) / avgdl;
      scores[i] += idf * (tf * (prm.k1 + 1.0)) / (tf + prm.k1 * norm);
    }
  }
  return scores;
}

TEST(Bm25, IndexedScoresEqualNaiveScoresExactly) {
  const Corpus corpus = word_corpus(80, 6);
  const Bm25Index index(corpus);
  Rng rng(7);
  for (const Bm25Params prm : {Bm25Params{}, Bm25Params{2.0, 0.3}, Bm25Params{0.0, 1.0}}) {
    for (const char* q : {"graph graph retrieval", "vision language model", "unknownword", "index search ranking"}) {
      EXPECT_EQ(index.score_all(q, prm), naive_bm25(corpus, q, prm)) << q;
    }
  }
}

TEST(Bm25, RankKeepsZeroScoresAndExcludes) {
  const Corpus corpus({{"a", "apple pie", "", "", {}}, {"b", "banana", "", "", {}}, {"c", "apple", "", "", {}}});
  const Bm25Index index(corpus);
  EXPECT_GT(index.idf("banana"), index.idf("apple"));
  const auto r = bm25_rank("apple", index, {}, 10, std::string_view("a"));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].id, "c");
  EXPECT_EQ(r[1].id, "b");
  EXPECT_EQ(r[1].score, 0.0);
  EXPECT_THROW(bm25_rank("apple", index, {1.2, 1.5}, 10), ValidationError);
}

}  // namespace
}  // namespace symtax
