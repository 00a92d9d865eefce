// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include <benchmark/benchmark.h>

#include "symtax/enricher.hpp"
#include "symtax/hypermath.hpp"
#include "symtax/matcher.hpp"
#include "symtax/prefetch.hpp"
#include "symtax/synthetic.hpp"

namespace symtax {
namespace {

Vector ball_point(Rng& rng, Eigen::Index d) {
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = rng.normal();
  return v * (0.9 * rng.uniform() / v.norm());
}

void BM_MobiusAdd(benchmark::State& state) {
  Rng rng(1);
  const auto d = static_cast<Eigen::Index>(state.range(0));
  const Vector a = ball_point(rng, d), b = ball_point(rng, d);
  for (auto _ : state) benchmark::DoNotOptimize(mobius_add(a, b));
}
BENCHMARK(BM_MobiusAdd)->Arg(64)->Arg(512);

void BM_SeparationBackward(benchmark::State& state) {
  Rng rng(2);
  const Vector q = ball_point(rng, 512), c = ball_point(rng, 512);
  for (auto _ : state) benchmark::DoNotOptimize(separation_backward(q, c, GeometryMode::kPaperAtan, 1.0));
}
BENCHMARK(BM_SeparationBackward);

void BM_MinHashSignature(benchmark::State& state) {
  const auto shingles = shingle("Deep Residual Learning for Image Recognition in Large Scale Settings");
  for (auto _ : state) benchmark::DoNotOptimize(minhash_signature(shingles));
}
BENCHMARK(BM_MinHashSignature);

const SyntheticCorpus& corpus() {
  static const SyntheticCorpus c = [] {
    SyntheticSpec spec;
    spec.n_clusters = 8;
    spec.papers_per_cluster = 250;
    return generate_synthetic(spec);
  }();
  return c;
}

void BM_Prefetch(benchmark::State& state) {
  const Corpus papers(corpus().papers);
  const HashedTokenEmbedder embedder(768);
  const DenseIndex index = build_dense_index(papers, embedder);
  const Embedding q = embedder.embed(corpus().contexts.front().text);
  for (auto _ : state) benchmark::DoNotOptimize(prefetch(q, index, 100));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(index.size()));
}
BENCHMARK(BM_Prefetch);

void BM_Enrich(benchmark::State& state) {
  const Corpus papers(corpus().papers);
  const CitationGraph graph = build_citation_graph(corpus().contexts, papers);
  CandidateList candidates;
  for (std::size_t i = 0; i < 100; ++i) candidates.push_back({papers.papers()[i * 7].id, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(enrich(candidates, graph, 300));
}
BENCHMARK(BM_Enrich);

}  // namespace
}  // namespace symtax

BENCHMARK_MAIN();
