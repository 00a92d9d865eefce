// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "symtax/corpus.hpp"

namespace symtax {

/// Clustered toy corpus. Clusters are grouped into topics of
/// `clusters_per_topic`; clusters in one topic draw part of their content
/// words from a common pool, so text alone cannot tell them apart while the
/// category can.
struct SyntheticSpec {
  std::size_t n_clusters = 4;
  std::size_t papers_per_cluster = 50;
  std::size_t vocab_per_cluster = 40;
  std::size_t generic_vocab = 80;
  std::size_t clusters_per_topic = 2;
  double own_word_fraction = 0.35;      // content words from the cluster's own pool
  double intra_cluster_probability = 0.9;
  double chain_probability = 0.5;       // cite something a reference already cites
  double signature_probability = 0.4;   // context names a word unique to the cited paper
  std::size_t min_references = 3;
  std::size_t max_references = 6;
  std::uint64_t seed = 12;
};

struct SyntheticCorpus {
  std::vector<Paper> papers;              // ascending id (= creation order)
  std::vector<std::size_t> cluster;       // cluster of papers[i]
  std::vector<CitationContext> contexts;  // one per citation edge
  std::string mapping_json;
  std::string acm_tree_json;
};

/// Throws ValidationError for out-of-range probabilities or empty sizes.
void validate(const SyntheticSpec& spec);

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

/// Writes papers.jsonl, contexts.jsonl, mapping.json and acm_tree.json into
/// `dir` (which must exist).
void write_synthetic(const SyntheticCorpus& corpus, const std::string& dir);

}  // namespace symtax
