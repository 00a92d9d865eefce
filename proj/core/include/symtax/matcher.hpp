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

namespace symtax {

/// Distinct character k-grams of a normalized title, sorted.
using ShingleSet = std::vector<std::string>;

ShingleSet shingle(std::string_view title, std::size_t k = 3);

struct MinHashSignature {
  std::vector<std::uint64_t> slots;
  std::uint64_t seed = 0;

  bool operator==(const MinHashSignature&) const = default;
};

/// Slot h holds the minimum over shingles of hash_h(shingle). Throws
/// ValidationError on an empty shingle set.
MinHashSignature minhash_signature(const ShingleSet& shingles, std::size_t num_hashes = 128,
                                   std::uint64_t seed = 1);

/// Fraction of slots on which two signatures agree; estimates Jaccard.
double signature_agreement(const MinHashSignature& a, const MinHashSignature& b);

/// Exact |A ∩ B| / |A ∪ B| over sorted shingle sets. Two empty sets give 1.
double jaccard(const ShingleSet& a, const ShingleSet& b);

/// Longest common contiguous substring of the normalized strings over the
/// longer normalized length. Both empty gives 1.
double lcs_similarity(std::string_view a, std::string_view b);

struct LshParams {
  std::size_t bands = 32;
  std::size_t rows = 4;
  std::size_t shingle_k = 3;
  std::uint64_t seed = 1;

  std::size_t num_hashes() const noexcept { return bands * rows; }
};

struct LshCandidate {
  std::string id;
  std::size_t shared_bands = 0;
};

/// Banded MinHash index over paper titles.
class LshIndex {
 public:
  explicit LshIndex(LshParams params = {});

  /// Titles whose shingle set is empty are skipped (nothing to sign).
  void add(const std::string& id, std::string_view title);
  std::size_t size() const noexcept { return ids_.size(); }
  const LshParams& params() const noexcept { return params_; }

  /// Ids sharing at least one band bucket, by shared-band count desc then id.
  std::vector<LshCandidate> query(std::string_view title, std::size_t limit = 100) const;

  /// Bucket contents for band `band` under the given key (for inspection).
  std::vector<std::string> bucket(std::size_t band, std::uint64_t key) const;
  std::vector<std::uint64_t> band_keys(std::string_view title) const;

 private:
  std::vector<std::uint64_t> band_keys(const MinHashSignature& sig) const;

  LshParams params_;
  std::vector<std::string> ids_;
  std::vector<std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>> buckets_;
};

LshIndex build_lsh_index(const Corpus& corpus, LshParams params = {});

struct TitleMatch {
  std::string id;
  double similarity = 0.0;
};

/// Best LCS-verified LSH candidate, or nullopt when the best similarity is
/// under `threshold`. Ties go to the smaller id.
std::optional<TitleMatch> match_title(std::string_view title, const LshIndex& index,
                                      const Corpus& corpus, double threshold = 0.9,
                                      std::size_t candidate_limit = 100);

}  // namespace symtax
