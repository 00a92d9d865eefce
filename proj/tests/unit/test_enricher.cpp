// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symtax/enricher.hpp"
#include "test_util.hpp"

namespace symtax {
namespace {

CitationGraph graph_from(const std::map<std::string, std::set<std::string>>& out) {
  CitationGraph g;
  for (const auto& [u, vs] : out) {
    g.add_vertex(u);
    for (const auto& v : vs) g.add_edge(u, v);
  }
  return g;
}

CandidateList cands(std::initializer_list<const char*> ids) {
  CandidateList out;
  double s = 1.0;
  for (const char* id : ids) {
    out.push_back({id, s});
    s -= 0.01;
  }
  return out;
}

TEST(Enricher, WorkedExample) {
  // a cites c and d; b cites c; c cites d.
  const auto g = graph_from({{"a", {"c", "d"}}, {"b", {"c"}}, {"c", {"d"}}, {"d", {}}, {"e", {"a"}}});
  const auto out = enrich(cands({"a", "b", "c"}), g, 10);
  // c: prefetched + cited by a and b = 3; d: cited by a and c = 2; a, b: 1.
  const EnrichedList expected = {{"c", 3, Origin::kPrefetched},
                                 {"d", 2, Origin::kEgo},
                                 {"a", 1, Origin::kPrefetched},
                                 {"b", 1, Origin::kPrefetched}};
  EXPECT_EQ(out, expected);
}

TEST(Enricher, IncomingEdgesNeverContribute) {
  const auto g = graph_from({{"a", {}}, {"z", {"a"}}});
  const auto out = enrich(cands({"a"}), g, 10);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].id, "a");
  EXPECT_EQ(out[0].frequency, 1u);
}

TEST(Enricher, CapAndExclude) {
  const auto g = graph_from({{"a", {"q", "x", "y"}}, {"b", {"q", "x"}}, {"q", {}}, {"x", {}}, {"y", {}}});
  const auto out = enrich(cands({"a", "b"}), g, 2, std::string_view("q"));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].id, "x");
  EXPECT_EQ(out[1].id, "a");
  for (const auto& c : out) EXPECT_NE(c.id, "q");
}

TEST(Enricher, UnknownCandidateIsRejected) {
  const auto g = graph_from({{"a", {}}});
  EXPECT_THROW(enrich(cands({"a", "ghost"}), g, 10), ValidationError);
  EXPECT_THROW(ego_out(g, "ghost"), ValidationError);
}

TEST(Enricher, MatchesMultisetOracleOnRandomGraphs) {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng.below(40);
    std::map<std::string, std::set<std::string>> out_edges;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
    for (const auto& u : ids) {
      out_edges[u];
      for (const auto& v : ids)
        if (u != v && rng.bernoulli(0.15)) out_edges[u].insert(v);
    }
    const auto g = graph_from(out_edges);

    std::vector<std::string> shuffled = ids;
    rng.shuffle(shuffled);
    const std::size_t m = 1 + rng.below(n);
    CandidateList candidates;
    for (std::size_t i = 0; i < m; ++i) candidates.push_back({shuffled[i], 1.0 - 0.001 * static_cast<double>(i)});
    const std::size_t cap = 1 + rng.below(2 * n);
    std::optional<std::string> exclude;
    if (rng.bernoulli(0.5)) exclude = ids[rng.below(n)];

    const auto got = exclude ? enrich(candidates, g, cap, std::string_view(*exclude)) : enrich(candidates, g, cap);
    EXPECT_EQ(got, oracle::enrich(candidates, out_edges, cap, exclude)) << "trial " << trial;
  }
}

TEST(Enricher, WithoutEnrichmentIsIdentity) {
  const auto c = cands({"b", "a", "c"});
  const auto out = without_enrichment(c);
  EXPECT_EQ(ids_of(out), (std::vector<std::string>{"b", "a", "c"}));
  for (const auto& e : out) {
    EXPECT_EQ(e.frequency, 1u);
    EXPECT_EQ(e.origin, Origin::kPrefetched);
  }
}

TEST(Enricher, InvocationCounter) {
  const auto g = graph_from({{"a", {}}});
  const auto before = enrich_invocations();
  enrich(cands({"a"}), g, 5);
  enrich(cands({"a"}), g, 5);
  without_enrichment(cands({"a"}));
  EXPECT_EQ(enrich_invocations(), before + 2);
}

}  // namespace
}  // namespace symtax
