// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "symtax/prefetch.hpp"

namespace symtax {

/// 1 when `gold_id` is among the first `k` entries, else 0. k must be >= 1.
double recall_at_k(std::span<const ScoredId> ranked, const std::string& gold_id, std::size_t k);

/// Reciprocal rank of the gold paper; 0 when it is absent.
double mrr(std::span<const ScoredId> ranked, const std::string& gold_id);

/// Single-relevant-item NDCG: 1/log2(1 + rank) for rank <= 10, else 0.
double ndcg_at_10(std::span<const ScoredId> ranked, const std::string& gold_id);

struct MetricReport {
  double recall_at_5 = 0.0;
  double recall_at_10 = 0.0;
  double recall_at_20 = 0.0;
  double recall_at_50 = 0.0;
  double ndcg_at_10 = 0.0;
  double mrr = 0.0;
  std::size_t queries = 0;

  bool operator==(const MetricReport&) const = default;
};

/// Per-query sums accumulated in query order; finish() divides by the count.
class MetricAccumulator {
 public:
  void add(std::span<const ScoredId> ranked, const std::string& gold_id);
  std::size_t count() const noexcept { return n_; }
  /// Throws ValidationError when nothing was added.
  MetricReport finish() const;

 private:
  MetricReport sum_;
  std::size_t n_ = 0;
};

struct AblationConfig {
  bool no_symbiosis = false;   // skip the enricher
  bool no_taxonomy = false;    // feed s = 0 to the scoring head
  bool euclidean = false;      // Euclidean separation instead of the ball
  bool with_section = false;   // prepend section headings to contexts
  bool prefetch_only = false;  // rank by prefetch order alone (no enrich, no rerank)

  bool operator==(const AblationConfig&) const = default;
};

/// Comma-separated flag names; "" and "none" give the default config.
AblationConfig parse_ablation(const std::string& spec);
std::string to_string(const AblationConfig& ablation);

/// Object with one key per metric plus "queries" and "ablation".
std::string report_to_json(const MetricReport& report, const AblationConfig& ablation);

/// Aligned two-line table: header row then values, four decimals.
std::string report_to_text(const MetricReport& report, const AblationConfig& ablation);

}  // namespace symtax
