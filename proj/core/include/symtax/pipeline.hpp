// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "symtax/corpus.hpp"
#include "symtax/embedder.hpp"
#include "symtax/enricher.hpp"
#include "symtax/eval.hpp"
#include "symtax/prefetch.hpp"
#include "symtax/reranker.hpp"
#include "symtax/taxonomy.hpp"

namespace symtax {

struct PipelineConfig {
  std::size_t prefetch_m = 100;
  std::size_t enrich_cap = 300;
  AblationConfig ablation;
};

/// Non-owning view over every built artifact a query needs.
struct Pipeline {
  const Corpus& corpus;
  const CitationGraph& graph;
  const DenseIndex& index;
  const EmbeddingProvider& provider;
  const FusedClassEmbeddings& fused;
  const RerankerModel& model;
  PipelineConfig config;
};

/// Model with the scoring-time ablations applied: no_taxonomy clears
/// use_taxonomy, euclidean switches the geometry, with_section sets use_section.
RerankerModel apply_ablation(RerankerModel model, const AblationConfig& ablation);

/// Candidate pool for a query: prefetch, then enrichment unless no_symbiosis.
EnrichedList candidate_pool(const Pipeline& p, const QueryBundle& q);

/// prefetch -> enrich -> rerank (or the prefetch order alone under
/// prefetch_only). `p.model` is used as given; see apply_ablation.
RankedList recommend(const Pipeline& p, const QueryBundle& q);

/// One training query per context, negatives drawn from candidate_pool().
std::vector<TrainingQuery> training_queries(const Pipeline& p, std::span<const CitationContext> contexts);

/// Mean metrics over `test`; throws ValidationError when it is empty.
MetricReport evaluate(const Pipeline& p, std::span<const CitationContext> test);

}  // namespace symtax
