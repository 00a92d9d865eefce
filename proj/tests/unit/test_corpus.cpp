// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "symtax/corpus.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace symtax {
namespace {

std::string paper_line(const std::string& id, const std::string& cat = "cs.IR") {
  return R"({"id":")" + id + R"(","title":"T )" + id + R"(","abstract":"A )" + id + R"(","category":")" + cat +
         "\"}\n";
}

std::string context_line(const std::string& cid, const std::string& from, const std::string& to) {
  return R"({"context_id":")" + cid + R"(","citing_id":")" + from + R"(","cited_id":")" + to +
         R"(","text":"as shown in prior work"})" + "\n";
}

Corpus abc_corpus() { return parse_papers(paper_line("A") + paper_line("B") + paper_line("C", "cs.CV")); }

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(ParsePapers, SortsByIdAndSkipsBlankLines) {
  const Corpus c = parse_papers(paper_line("b") + "\n   \n" + paper_line("a"));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.papers()[0].id, "a");
  EXPECT_EQ(c.at("b").title, "T b");
  EXPECT_EQ(c.find("zzz"), nullptr);
  EXPECT_THROW(c.at("zzz"), ValidationError);
}

TEST(ParsePapers, DuplicateIdNamesBothLines) {
  const std::string msg = error_of([] { parse_papers(paper_line("x") + paper_line("y") + paper_line("x")); });
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 1"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'x'"), std::string::npos) << msg;
}

TEST(ParsePapers, MalformedLineReportsLineNumber) {
  const std::string msg = error_of([] { parse_papers(paper_line("x") + "{not json\n"); });
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_THROW(parse_papers("{\"title\":\"no id\"}\n"), ValidationError);
  EXPECT_THROW(parse_papers("[1,2]\n"), ValidationError);
}

TEST(ParsePapers, OptionalFieldsDefault) {
  const Corpus c = parse_papers("{\"id\":\"p\"}\n{\"id\":\"q\",\"pub_date\":\"2020-01-01\"}");
  EXPECT_EQ(c.at("p").title, "");
  EXPECT_FALSE(c.at("p").pub_date.has_value());
  EXPECT_EQ(c.at("q").pub_date.value(), "2020-01-01");
}

TEST(ParseContexts, DropsSelfAndDanglingCitations) {
  const Corpus corpus = abc_corpus();
  const ContextSet s = parse_contexts(context_line("1", "A", "B") + context_line("2", "A", "A") +
                                          context_line("3", "A", "Z") + context_line("4", "Z", "B") +
                                          context_line("5", "C", "A"),
                                      corpus);
  EXPECT_EQ(s.contexts.size(), 2u);
  EXPECT_EQ(s.dropped_self_citation, 1u);
  EXPECT_EQ(s.dropped_unknown_cited, 1u);
  EXPECT_EQ(s.dropped_unknown_citing, 1u);
  EXPECT_EQ(s.dropped(), 3u);
}

TEST(ParseContexts, DuplicateContextIdRejected) {
  EXPECT_THROW(parse_contexts(context_line("1", "A", "B") + context_line("1", "B", "C"), abc_corpus()),
               ValidationError);
}

TEST(CitationGraph, EdgesAreDirectedAndDeduplicated) {
  CitationGraph g;
  EXPECT_TRUE(g.add_edge("A", "B"));
  EXPECT_FALSE(g.add_edge("A", "B"));
  EXPECT_TRUE(g.add_edge("B", "A"));
  EXPECT_THROW(g.add_edge("A", "A"), ValidationError);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.out_neighbors("A"), (std::set<std::string>{"B"}));
  EXPECT_EQ(g.in_neighbors("A"), (std::set<std::string>{"B"}));
  EXPECT_THROW(g.out_neighbors("Q"), ValidationError);
}

TEST(CitationGraph, CorpusVariantIncludesIsolatedPapers) {
  const Corpus corpus = abc_corpus();
  const auto ctx = parse_contexts(context_line("1", "A", "B"), corpus).contexts;
  EXPECT_EQ(build_citation_graph(ctx).vertex_count(), 2u);
  const CitationGraph g = build_citation_graph(ctx, corpus);
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_TRUE(g.out_neighbors("C").empty());
}

std::vector<CitationContext> numbered_contexts(std::size_t n) {
  std::vector<CitationContext> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back({std::to_string(i), "A", "B", "t", std::nullopt});
  return v;
}

TEST(Split, PartitionSizesAndDisjointness) {
  const auto ctx = numbered_contexts(103);
  const ContextSplit s = split_contexts(ctx, SplitSpec{0.8, 0.1, 0.1, 12});
  EXPECT_EQ(s.train.size(), 82u);
  EXPECT_EQ(s.val.size(), 10u);
  EXPECT_EQ(s.test.size(), 11u);
  std::set<std::string> seen;
  for (const auto* part : {&s.train, &s.val, &s.test}) {
    for (const auto& c : *part) EXPECT_TRUE(seen.insert(c.context_id).second);
  }
  EXPECT_EQ(seen.size(), 103u);
}

TEST(Split, DeterministicPerSeed) {
  const auto ctx = numbered_contexts(50);
  auto ids = [](const ContextSplit& s) {
    std::vector<std::string> out;
    for (const auto& c : s.test) out.push_back(c.context_id);
    return out;
  };
  EXPECT_EQ(ids(split_contexts(ctx, {0.8, 0.1, 0.1, 4})), ids(split_contexts(ctx, {0.8, 0.1, 0.1, 4})));
  EXPECT_NE(ids(split_contexts(ctx, {0.8, 0.1, 0.1, 4})), ids(split_contexts(ctx, {0.8, 0.1, 0.1, 5})));
  EXPECT_THROW(split_contexts(ctx, {0.8, 0.3, 0.1, 4}), ValidationError);
}

TEST(GraphStats, TriangleAndStar) {
  CitationGraph tri;
  tri.add_edge("a", "b");
  tri.add_edge("b", "c");
  tri.add_edge("c", "a");
  EXPECT_DOUBLE_EQ(graph_stats(tri).avg_local_clustering, 1.0);
  EXPECT_DOUBLE_EQ(graph_stats(tri).avg_degree, 2.0);

  CitationGraph star;
  for (const char* leaf : {"x", "y", "z", "w"}) star.add_edge(leaf, "hub");
  const GraphStats s = graph_stats(star);
  EXPECT_EQ(s.avg_local_clustering, 0.0);
  EXPECT_EQ(s.undirected_edges, 4u);
  EXPECT_DOUBLE_EQ(s.avg_degree, 8.0 / 5.0);
}

// Zero-padded so that id order matches index order and both sides sum the
// per-vertex coefficients in the same sequence.
std::string vertex_name(std::size_t i) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "v%02zu", i);
  return buf;
}

TEST(GraphStats, MatchesCubicOracleOnRandomGraphs) {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 20;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    CitationGraph g;
    for (std::size_t i = 0; i < n; ++i) g.add_vertex(vertex_name(i));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && rng.bernoulli(0.15)) {
          g.add_edge(vertex_name(i), vertex_name(j));
          adj[i][j] = adj[j][i] = true;
        }
      }
    }
    EXPECT_EQ(graph_stats(g).avg_local_clustering, oracle::clustering(adj));
  }
}

TEST(GraphStats, ReportShape) {
  const Corpus corpus = abc_corpus();
  const auto ctx = parse_contexts(context_line("1", "A", "B"), corpus).contexts;
  const GraphStats s = graph_stats(build_citation_graph(ctx, corpus), &corpus);
  EXPECT_EQ(s.category_histogram.at("cs.IR"), 2u);
  const std::string text = stats_to_text(s);
  EXPECT_NE(text.find("# Papers"), std::string::npos);
  EXPECT_NE(text.find("LCC"), std::string::npos);
  EXPECT_NE(text.find("Deg"), std::string::npos);
  EXPECT_NE(stats_to_json(s).find("\"avg_local_clustering\""), std::string::npos);
}

TEST(Jsonl, PapersAndContextsRoundTrip) {
  const Corpus corpus = parse_papers(paper_line("A") + "{\"id\":\"B\",\"title\":\"x\\\"y\",\"pub_date\":\"1999\"}\n");
  const Corpus again = parse_papers(to_jsonl(corpus.papers()));
  ASSERT_EQ(again.size(), 2u);
  EXPECT_EQ(again.at("B").title, "x\"y");
  EXPECT_EQ(again.at("B").pub_date.value(), "1999");

  std::vector<CitationContext> ctx{{"c1", "A", "B", "txt", std::string("Intro")}};
  const auto back = parse_contexts(to_jsonl(ctx), again).contexts;
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].section_heading.value(), "Intro");
}

}  // namespace
}  // namespace symtax
