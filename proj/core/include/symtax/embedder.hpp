// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace symtax {

using Embedding = Eigen::VectorXd;

/// Text -> fixed-length dense vector. Implementations are immutable after
/// construction, so embed() may be called concurrently.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::size_t dimension() const noexcept = 0;
  virtual Embedding embed(std::string_view text) const = 0;
  /// Stable identifier of the configuration; stored in index files.
  virtual std::uint64_t fingerprint() const noexcept = 0;
};

/// Signed feature hashing over lowercased alphanumeric tokens with
/// log(1 + count) weights, L2-normalized. Empty text maps to the zero vector.
class HashedTokenEmbedder final : public EmbeddingProvider {
 public:
  explicit HashedTokenEmbedder(std::size_t dimension = 768, std::uint64_t seed = 0);

  std::size_t dimension() const noexcept override { return dim_; }
  Embedding embed(std::string_view text) const override;
  std::uint64_t fingerprint() const noexcept override;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

/// Exact-lookup provider over vectors exported by an external encoder.
class PrecomputedEmbedder final : public EmbeddingProvider {
 public:
  PrecomputedEmbedder(std::size_t dimension, std::map<std::string, Embedding> table);

  std::size_t dimension() const noexcept override { return dim_; }
  /// Throws ValidationError naming the key when it is not in the table.
  Embedding embed(std::string_view text) const override;
  std::uint64_t fingerprint() const noexcept override { return fingerprint_; }
  std::size_t size() const noexcept { return table_.size(); }
  const std::map<std::string, Embedding, std::less<>>& table() const noexcept { return table_; }

 private:
  std::size_t dim_;
  std::map<std::string, Embedding, std::less<>> table_;
  std::uint64_t fingerprint_ = 0;
};

/// Parses `key<TAB>f1 f2 ... fD` records. Dimension is taken from the first
/// record; a record of a different width or a repeated key is rejected.
std::unique_ptr<PrecomputedEmbedder> parse_precomputed(const std::string& text);
std::unique_ptr<PrecomputedEmbedder> load_precomputed(const std::string& path);

/// Serializes in the same `key<TAB>values` layout, round-trip exact.
std::string format_embedding_table(const std::map<std::string, Embedding>& table);

double cosine(const Embedding& a, const Embedding& b);

}  // namespace symtax
