// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include "symtax/pipeline.hpp"

namespace symtax {

RerankerModel apply_ablation(RerankerModel model, const AblationConfig& ablation) {
  if (ablation.no_taxonomy) model.config.use_taxonomy = false;
  if (ablation.euclidean) model.config.geometry = GeometryMode::kEuclidean;
  if (ablation.with_section) model.config.use_section = true;
  return model;
}

namespace {

PrefetchResult prefetch_for(const Pipeline& p, const QueryBundle& q) {
  std::string text = q.context + " " + q.title + " " + q.abstract;
  std::optional<std::string_view> exclude;
  if (!q.citing_id.empty()) exclude = q.citing_id;
  return prefetch(text, p.index, p.provider, p.config.prefetch_m, exclude);
}

}  // namespace

EnrichedList candidate_pool(const Pipeline& p, const QueryBundle& q) {
  const auto pre = prefetch_for(p, q);
  if (p.config.ablation.no_symbiosis || p.config.ablation.prefetch_only) return without_enrichment(pre.candidates);
  std::optional<std::string_view> exclude;
  if (!q.citing_id.empty()) exclude = q.citing_id;
  return enrich(pre.candidates, p.graph, p.config.enrich_cap, exclude);
}

RankedList recommend(const Pipeline& p, const QueryBundle& q) {
  if (p.config.ablation.prefetch_only) return prefetch_for(p, q).candidates;
  const auto ids = ids_of(candidate_pool(p, q));
  return rerank(p.model, q, ids, p.corpus, p.fused, p.provider);
}

std::vector<TrainingQuery> training_queries(const Pipeline& p, std::span<const CitationContext> contexts) {
  std::vector<TrainingQuery> out;
  out.reserve(contexts.size());
  for (const auto& c : contexts) {
    TrainingQuery tq{make_query(c, p.corpus), c.cited_id, {}};
    for (auto& e : candidate_pool(p, tq.query)) tq.candidates.push_back({std::move(e.id), static_cast<double>(e.frequency)});
    out.push_back(std::move(tq));
  }
  return out;
}

MetricReport evaluate(const Pipeline& p, std::span<const CitationContext> test) {
  MetricAccumulator acc;
  for (const auto& c : test) acc.add(recommend(p, make_query(c, p.corpus)), c.cited_id);
  return acc.finish();
}

}  // namespace symtax
