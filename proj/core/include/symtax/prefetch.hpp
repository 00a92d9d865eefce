// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "symtax/corpus.hpp"
#include "symtax/embedder.hpp"

namespace symtax {

struct ScoredId {
  std::string id;
  double score = 0.0;

  bool operator==(const ScoredId&) const = default;
};

/// Ranked candidates: scores non-increasing, ids distinct.
using CandidateList = std::vector<ScoredId>;

/// Document text seen by every first-stage ranker: title, a space, abstract.
std::string document_text(const Paper& paper);

/// Query text for a citation placeholder: context, citing title, citing abstract.
std::string query_text(std::string_view context, const Paper& citing);

/// One embedding row per paper, rows in ascending id order, stored as float32.
class DenseIndex {
 public:
  DenseIndex() = default;
  DenseIndex(std::vector<std::string> ids, std::size_t dim, std::vector<float> rows,
             std::uint64_t fingerprint);

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t dimension() const noexcept { return dim_; }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const float* row(std::size_t i) const noexcept { return rows_.data() + i * dim_; }
  double row_norm(std::size_t i) const noexcept { return norms_[i]; }

  /// Row-major matrix, header (magic, version, D, N, fingerprint), id table, floats.
  std::string serialize() const;
  static DenseIndex deserialize(std::string_view bytes);
  void save(const std::string& path) const;
  static DenseIndex load(const std::string& path);

  bool operator==(const DenseIndex& o) const {
    return ids_ == o.ids_ && dim_ == o.dim_ && rows_ == o.rows_ && fingerprint_ == o.fingerprint_;
  }

 private:
  std::vector<std::string> ids_;
  std::size_t dim_ = 0;
  std::vector<float> rows_;
  std::vector<double> norms_;
  std::uint64_t fingerprint_ = 0;
};

DenseIndex build_dense_index(const Corpus& corpus, const EmbeddingProvider& provider);

struct PrefetchResult {
  CandidateList candidates;
  bool truncated_request = false;  // m exceeded the number of rankable papers
};

/// Top-m papers by cosine similarity; ties go to the smaller id. The paper
/// named by `exclude_id` (the querying paper) is never returned.
PrefetchResult prefetch(const Embedding& query, const DenseIndex& index, std::size_t m,
                        std::optional<std::string_view> exclude_id = std::nullopt);

PrefetchResult prefetch(std::string_view query_text, const DenseIndex& index,
                        const EmbeddingProvider& provider, std::size_t m,
                        std::optional<std::string_view> exclude_id = std::nullopt);

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

/// Inverted index over document_text() tokens.
class Bm25Index {
 public:
  explicit Bm25Index(const Corpus& corpus);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  double avg_doc_length() const noexcept { return avgdl_; }
  double idf(const std::string& term) const;

  /// Score of every document (index order) for the distinct query terms.
  std::vector<double> score_all(std::string_view query, const Bm25Params& params) const;

 private:
  struct Posting {
    std::uint32_t doc;
    std::uint32_t tf;
  };
  std::vector<std::string> ids_;
  std::vector<std::uint32_t> doc_len_;
  double avgdl_ = 0.0;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
};

CandidateList bm25_rank(std::string_view query, const Bm25Index& index, const Bm25Params& params,
                        std::size_t k, std::optional<std::string_view> exclude_id = std::nullopt);

}  // namespace symtax
